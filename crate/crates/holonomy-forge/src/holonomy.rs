//! Generation of hol_0 from the curvature data (Ambrose-Singer span plus
//! bracket closure), classification into the four normal forms, and the
//! final certificate against the target algebra.

use crate::curvature::{
    christoffel, covariant_derivative, metric_matrix, origin_operator, riemann, CurvatureError,
};
use crate::forge::{assemble_metric, ForgeError, MetricSpec};
use crate::lie::{
    lie_closure, triple_embed, LieError, LieSubalgebra, LorTriple, SkewMatrix, TargetAlgebra,
};
use crate::matrix::{span_equal, Matrix, MatrixError, SpanBasis};
use crate::pspace::{is_weak_berger, FamilyStrategy, PSpaceError};
use crate::scalar::Scalar;

#[derive(Debug, thiserror::Error)]
pub enum HolonomyError {
    #[error("h is not weak-Berger; no metric of this family realizes it")]
    NotWeakBerger,
    #[error("generated element is not in the parabolic algebra")]
    OutsideParabolic,
    #[error(transparent)]
    Forge(#[from] ForgeError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    PSpace(#[from] PSpaceError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Outcome of comparing the generated algebra with the target.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Equal,
    ProperSubalgebra,
    NotContained,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Equal => "equal",
            Verdict::ProperSubalgebra => "proper-subalgebra",
            Verdict::NotContained => "not-contained",
        })
    }
}

/// Raw structure of a bracket-closed subalgebra of the parabolic model, in
/// the shape of the four normal forms.
#[derive(Clone, Debug)]
pub struct Classification {
    pub type_tag: u8,
    pub h: LieSubalgebra,
    /// Recovered phi on basis(h) (type 3).
    pub phi: Option<Vec<Scalar>>,
    /// Recovered translation-part dimension (type 4).
    pub m: Option<usize>,
    /// Recovered psi on basis(h), components over coordinates m+1..n
    /// (type 4, present when the translation part is coordinate-aligned).
    pub psi: Option<Vec<Vec<Scalar>>>,
}

/// Machine-checkable record of a holonomy computation.
#[derive(Clone, Debug)]
pub struct HolonomyCertificate {
    pub n: usize,
    /// Basis triples of the generated algebra, in insertion order.
    pub generated: Vec<LorTriple>,
    /// Span dimension after each computed order (post bracket closure).
    pub dimension_trajectory: Vec<usize>,
    pub max_order_used: usize,
    /// Whether the span was unchanged for two consecutive orders. A
    /// heuristic completeness certificate, not a proof.
    pub stabilized: bool,
    pub classified: Option<Classification>,
    pub verdict: Option<Verdict>,
    /// Discrepancy element when verdict != equal: a generated triple
    /// outside the target, or a target basis triple not generated.
    pub witness: Option<LorTriple>,
}

impl HolonomyCertificate {
    pub fn dim(&self) -> usize {
        self.generated.len()
    }

    pub fn generated_matrices(&self) -> Vec<Matrix> {
        self.generated.iter().map(triple_embed).collect()
    }
}

/// Growing span of parabolic triples, tracked on the flattened embeddings.
struct TripleSpan {
    span: SpanBasis,
    basis: Vec<LorTriple>,
}

impl TripleSpan {
    fn new(n: usize) -> Self {
        TripleSpan {
            span: SpanBasis::new((n + 2) * (n + 2)),
            basis: Vec::new(),
        }
    }

    fn insert(&mut self, t: LorTriple) -> bool {
        if self.span.insert(&triple_embed(&t).flatten()) {
            self.basis.push(t);
            true
        } else {
            false
        }
    }

    /// Bracket closure on the embedded matrices; projection back cannot
    /// fail because the parabolic model is a subalgebra.
    fn close_under_bracket(&mut self) -> Result<(), HolonomyError> {
        let mut frontier: Vec<LorTriple> = self.basis.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for t in &frontier {
                let tm = triple_embed(t);
                for s in self.basis.clone() {
                    let sm = triple_embed(&s);
                    let br = tm.mul(&sm).sub(&sm.mul(&tm));
                    let tr = crate::lie::triple_project(&br)
                        .ok_or(HolonomyError::OutsideParabolic)?;
                    if self.insert(tr.clone()) {
                        next.push(tr);
                    }
                }
            }
            frontier = next;
        }
        Ok(())
    }

    fn rank(&self) -> usize {
        self.span.rank()
    }
}

/// All direction tuples of length `r`: only the repeated d_{n+1} tuple by
/// default, or every tuple over 0..n+2 with `full_directions`.
fn direction_tuples(n: usize, r: usize, full_directions: bool) -> Vec<Vec<usize>> {
    if !full_directions || r == 0 {
        return vec![vec![n + 1; r]];
    }
    let nv = n + 2;
    let mut tuples = vec![Vec::new()];
    for _ in 0..r {
        let mut next = Vec::with_capacity(tuples.len() * nv);
        for t in &tuples {
            for l in 0..nv {
                let mut t2 = t.clone();
                t2.push(l);
                next.push(t2);
            }
        }
        tuples = next;
    }
    tuples
}

/// Ambrose-Singer generation: iterates the derivative order, adding every
/// origin operator over all index pairs (d, f) and the configured direction
/// tuples, closing under the bracket after each order. Stops when the span
/// dimension is unchanged for two consecutive orders, or at `max_order`.
pub fn generate_holonomy(
    spec: &MetricSpec,
    max_order: usize,
    full_directions: bool,
) -> Result<HolonomyCertificate, HolonomyError> {
    let n = spec.n;
    let mm = metric_matrix(spec)?;
    let ct = christoffel(&mm);
    let mut cd = riemann(&ct);
    let mut span = TripleSpan::new(n);
    let mut trajectory = Vec::new();
    let mut stable_orders = 0usize;
    let mut order = 0usize;
    loop {
        for dirs in direction_tuples(n, order, full_directions) {
            for d in 0..n + 2 {
                for f in (d + 1)..n + 2 {
                    let t = origin_operator(&cd, d, f, &dirs)?;
                    if !t.is_zero() {
                        span.insert(t);
                    }
                }
            }
        }
        span.close_under_bracket()?;
        let dim = span.rank();
        if trajectory.last() == Some(&dim) {
            stable_orders += 1;
        } else {
            stable_orders = 0;
        }
        trajectory.push(dim);
        if stable_orders >= 2 || order == max_order {
            break;
        }
        cd = covariant_derivative(&cd, &ct);
        order += 1;
    }
    Ok(HolonomyCertificate {
        n,
        generated: span.basis,
        dimension_trajectory: trajectory,
        max_order_used: order,
        stabilized: stable_orders >= 2,
        classified: None,
        verdict: None,
        witness: None,
    })
}

/// Basis of { X : (0, 0, X) in span(gens) }.
fn translation_part(n: usize, gens: &[LorTriple]) -> Vec<Vec<Scalar>> {
    intersection_x_parts(n, gens, false)
}

/// Linear-algebra core shared by the translation part and the unlinked-a
/// test: vectors in span(gens) whose rot-part vanishes, and (unless
/// `allow_a`) whose a-part vanishes too; returns the X-parts (with the
/// a-part appended when `allow_a`).
fn intersection_x_parts(n: usize, gens: &[LorTriple], allow_a: bool) -> Vec<Vec<Scalar>> {
    if gens.is_empty() {
        return Vec::new();
    }
    // unknowns: coefficients over gens; constraints: rot entries (i < j
    // suffices by skewness) and optionally a
    let mut constraint_rows = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            constraint_rows.push(
                gens.iter()
                    .map(|g| g.rot.entries()[(i, j)].clone())
                    .collect::<Vec<_>>(),
            );
        }
    }
    if !allow_a {
        constraint_rows.push(gens.iter().map(|g| g.a.clone()).collect());
    }
    let rows = constraint_rows.len().max(1);
    let m = if constraint_rows.is_empty() {
        Matrix::zero(1, gens.len())
    } else {
        let flat: Vec<Vec<Scalar>> = constraint_rows;
        Matrix::from_fn(rows, gens.len(), |r, c| flat[r][c].clone())
    };
    m.nullspace()
        .into_iter()
        .map(|coeffs| {
            let mut x = vec![Scalar::zero(); if allow_a { n + 1 } else { n }];
            for (g, c) in gens.iter().zip(&coeffs) {
                if c.is_zero() {
                    continue;
                }
                for (j, xg) in g.x.iter().enumerate() {
                    x[j] += &(c * xg);
                }
                if allow_a {
                    x[n] += &(c * &g.a);
                }
            }
            x
        })
        .collect()
}

/// Solves sum c_t rot_t = b over the gens with zero residual; returns the
/// combined (a, X) of the solution, or None when b is not reachable.
fn solve_rot_combo(n: usize, gens: &[LorTriple], b: &SkewMatrix) -> Option<(Scalar, Vec<Scalar>)> {
    // augmented system over the independent rot entries (i < j)
    let cols = gens.len();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut row: Vec<Scalar> = gens
                .iter()
                .map(|g| g.rot.entries()[(i, j)].clone())
                .collect();
            row.push(b.entries()[(i, j)].clone());
            rows.push(row);
        }
    }
    let m = Matrix::from_fn(rows.len(), cols + 1, |r, c| rows[r][c].clone());
    let (red, pivots) = m.rref();
    if pivots.contains(&cols) {
        return None; // inconsistent
    }
    let mut coeffs = vec![Scalar::zero(); cols];
    for (row, &p) in pivots.iter().enumerate() {
        coeffs[p] = red[(row, cols)].clone();
    }
    let mut a = Scalar::zero();
    let mut x = vec![Scalar::zero(); n];
    for (g, c) in gens.iter().zip(&coeffs) {
        if c.is_zero() {
            continue;
        }
        a += &(c * &g.a);
        for (j, xg) in g.x.iter().enumerate() {
            x[j] += &(c * xg);
        }
    }
    Some((a, x))
}

/// True when T equals span{e_1, ..., e_m}.
fn is_leading_coordinate_span(n: usize, t_basis: &[Vec<Scalar>]) -> bool {
    let m = t_basis.len();
    if m == 0 {
        return true;
    }
    let mat = Matrix::from_fn(m, n, |r, c| t_basis[r][c].clone());
    let (_, pivots) = mat.rref();
    pivots == (0..m).collect::<Vec<_>>() && {
        // no support past column m
        let (red, _) = mat.rref();
        (0..m).all(|r| (m..n).all(|c| red[(r, c)].is_zero()))
    }
}

/// Classifies a bracket-closed list of parabolic triples into the shape of
/// one of the four normal forms; the descriptor reports raw structure and
/// does not decide weak irreducibility.
pub fn classify(n: usize, gens: &[LorTriple]) -> Result<Classification, HolonomyError> {
    let rot_parts: Vec<SkewMatrix> = gens
        .iter()
        .map(|g| g.rot.clone())
        .filter(|r| !r.is_zero())
        .collect();
    let h = lie_closure(&rot_parts)
        .or_else(|_| Ok::<_, LieError>(LieSubalgebra::trivial(n)))
        .unwrap_or_else(|_| LieSubalgebra::trivial(n));
    let h = if rot_parts.is_empty() {
        LieSubalgebra::trivial(n)
    } else {
        h
    };

    // unlinked R-part: an element (a, 0, X) with a != 0
    let has_free_a = intersection_x_parts(n, gens, true)
        .iter()
        .any(|v| !v[n].is_zero());
    let t_basis = translation_part(n, gens);
    let t_dim = t_basis.len();

    if has_free_a {
        return Ok(Classification {
            type_tag: 1,
            h,
            phi: None,
            m: None,
            psi: None,
        });
    }

    let all_a_zero = gens.iter().all(|g| g.a.is_zero());
    if all_a_zero && t_dim == n {
        return Ok(Classification {
            type_tag: 2,
            h,
            phi: None,
            m: None,
            psi: None,
        });
    }

    if !all_a_zero {
        // a is linked to the rot part: recover phi on basis(h); the combo
        // is well-defined because no free a exists
        let mut phi = Vec::with_capacity(h.dim());
        for b in h.basis() {
            match solve_rot_combo(n, gens, b) {
                Some((a, _)) => phi.push(a),
                None => {
                    return Ok(Classification {
                        type_tag: 3,
                        h,
                        phi: None,
                        m: None,
                        psi: None,
                    })
                }
            }
        }
        return Ok(Classification {
            type_tag: 3,
            h,
            phi: Some(phi),
            m: None,
            psi: None,
        });
    }

    // all a = 0, T proper: type 4 with m = dim T; psi is reported when T
    // is spanned by the leading coordinates, as in the aligned metrics
    let m = t_dim;
    let psi = if is_leading_coordinate_span(n, &t_basis) && m < n {
        let mut psi = Vec::with_capacity(h.dim());
        let mut ok = true;
        for b in h.basis() {
            match solve_rot_combo(n, gens, b) {
                Some((_, x)) => psi.push(x[m..].to_vec()),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            Some(psi)
        } else {
            None
        }
    } else {
        None
    };
    Ok(Classification {
        type_tag: 4,
        h,
        phi: None,
        m: Some(m),
        psi,
    })
}

/// Options for the full verification pipeline.
#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub strategy: Option<FamilyStrategy>,
    pub phi: Option<Vec<Scalar>>,
    pub m: Option<usize>,
    pub psi: Option<Vec<Vec<Scalar>>>,
    /// Default: N + 2, where N is the family length.
    pub max_order: Option<usize>,
    pub full_directions: bool,
}

/// Full pipeline: family selection, metric forging, holonomy generation,
/// classification, and span comparison against the independently built
/// target. Verdict `Equal` certifies that the forged metric realizes the
/// target at the origin.
pub fn verify(
    h: &LieSubalgebra,
    type_tag: u8,
    options: VerifyOptions,
) -> Result<(MetricSpec, HolonomyCertificate), HolonomyError> {
    if !is_weak_berger(h)? {
        return Err(HolonomyError::NotWeakBerger);
    }
    let strategy = options
        .strategy
        .clone()
        .unwrap_or(FamilyStrategy::GreedyMinimal);
    let spec = assemble_metric(
        h,
        strategy,
        type_tag,
        options.phi.clone(),
        options.m,
        options.psi.clone(),
    )?;
    let cert = verify_spec(&spec, &options)?;
    Ok((spec, cert))
}

/// Verification of an already-forged spec against its own stored target.
pub fn verify_spec(
    spec: &MetricSpec,
    options: &VerifyOptions,
) -> Result<HolonomyCertificate, HolonomyError> {
    let max_order = options.max_order.unwrap_or(spec.family.len() + 2);
    let mut cert = generate_holonomy(spec, max_order, options.full_directions)?;
    cert.classified = Some(classify(spec.n, &cert.generated)?);
    let (verdict, witness) = compare_with_target(&cert, &spec.target)?;
    cert.verdict = Some(verdict);
    cert.witness = witness;
    Ok(cert)
}

/// Span comparison with witness extraction.
pub fn compare_with_target(
    cert: &HolonomyCertificate,
    target: &TargetAlgebra,
) -> Result<(Verdict, Option<LorTriple>), HolonomyError> {
    let gen_mats = cert.generated_matrices();
    let tgt_mats = target.basis_matrices();
    if span_equal(&gen_mats, &tgt_mats)? {
        return Ok((Verdict::Equal, None));
    }
    let mut tgt_span = SpanBasis::new((cert.n + 2) * (cert.n + 2));
    for m in &tgt_mats {
        tgt_span.insert(&m.flatten());
    }
    for (t, m) in cert.generated.iter().zip(&gen_mats) {
        if !tgt_span.contains(&m.flatten()) {
            return Ok((Verdict::NotContained, Some(t.clone())));
        }
    }
    let mut gen_span = SpanBasis::new((cert.n + 2) * (cert.n + 2));
    for m in &gen_mats {
        gen_span.insert(&m.flatten());
    }
    let witness = target
        .basis
        .iter()
        .zip(&tgt_mats)
        .find(|(_, m)| !gen_span.contains(&m.flatten()))
        .map(|(t, _)| t.clone());
    Ok((Verdict::ProperSubalgebra, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::target_algebra;
    use crate::poly::Poly;

    fn so2_block(n: usize) -> LieSubalgebra {
        LieSubalgebra::new(n, vec![SkewMatrix::e(n, 1, 2)]).unwrap()
    }

    #[test]
    fn flat_metric_generates_nothing() {
        let h = LieSubalgebra::trivial(2);
        let fam = crate::pspace::select_family(&h, FamilyStrategy::FullBasis).unwrap();
        assert!(fam.is_empty());
        // trivial h forges f = (x^1)^2 + (x^2)^2, whose holonomy is the
        // pure translation algebra
        if let Ok(spec) = assemble_metric(&h, FamilyStrategy::FullBasis, 2, None, None, None) {
            let cert = generate_holonomy(&spec, 2, false).unwrap();
            assert_eq!(cert.dim(), 2);
            assert!(cert.stabilized);
            assert_eq!(classify(2, &cert.generated).unwrap().type_tag, 2);
        }
        let flat = MetricSpec {
            n: 2,
            n0: 0,
            type_tag: 2,
            m: None,
            u: vec![],
            f: Poly::zero(4),
            family: fam,
            phi_coeffs: None,
            psi_coeffs: None,
            permutation: vec![0, 1, 2, 3],
            target: target_algebra(2, &so2_block(2), None, None, None).unwrap(),
        };
        let cert = generate_holonomy(&flat, 3, false).unwrap();
        assert_eq!(cert.dim(), 0);
        assert!(cert.stabilized);
        assert_eq!(cert.dimension_trajectory, vec![0, 0, 0]);
    }

    #[test]
    fn pure_translations_classify_as_type_2() {
        let n = 3;
        let gens: Vec<LorTriple> = (0..n)
            .map(|j| {
                let mut x = vec![Scalar::zero(); n];
                x[j] = Scalar::one();
                LorTriple::new(Scalar::zero(), SkewMatrix::zero(n), x)
            })
            .collect();
        let c = classify(n, &gens).unwrap();
        assert_eq!(c.type_tag, 2);
        assert_eq!(c.h.dim(), 0);
    }

    #[test]
    fn classify_round_trips_all_types() {
        for (tag, n, m) in [(1u8, 3, None), (2, 3, None), (3, 2, None), (4, 3, Some(2))] {
            let h = so2_block(n);
            let t = target_algebra(tag, &h, None, m, None).unwrap();
            let c = classify(n, &t.basis).unwrap();
            assert_eq!(c.type_tag, tag, "type {tag} did not round-trip");
            assert!(c.h.span_equals(&h).unwrap());
            if tag == 3 {
                assert_eq!(c.phi, t.phi);
            }
            if tag == 4 {
                assert_eq!(c.m, Some(2));
                assert_eq!(c.psi, t.psi);
            }
        }
    }

    #[test]
    fn verify_type2_so2_toy() {
        let h = so2_block(2);
        let (_, cert) = verify(&h, 2, VerifyOptions::default()).unwrap();
        assert_eq!(cert.verdict, Some(Verdict::Equal));
        assert!(cert.stabilized);
        assert_eq!(cert.dim(), 3); // so(2) + 2 translations
    }

    #[test]
    fn verify_type4_so2_toy() {
        let h = so2_block(3);
        let opts = VerifyOptions {
            m: Some(2),
            ..Default::default()
        };
        let (spec, cert) = verify(&h, 4, opts).unwrap();
        assert_eq!(spec.type_tag, 4);
        assert_eq!(cert.verdict, Some(Verdict::Equal), "witness: {:?}", cert.witness);
        let c = cert.classified.unwrap();
        assert_eq!(c.type_tag, 4);
        assert_eq!(c.m, Some(2));
    }

    #[test]
    fn wrong_target_yields_proper_subalgebra() {
        // compare the type-2 toy's generated algebra against the larger
        // type-1 target: proper containment with a witness
        let h = so2_block(2);
        let (_, cert) = verify(&h, 2, VerifyOptions::default()).unwrap();
        let bigger = target_algebra(1, &h, None, None, None).unwrap();
        let (verdict, witness) = compare_with_target(&cert, &bigger).unwrap();
        assert_eq!(verdict, Verdict::ProperSubalgebra);
        assert!(witness.is_some());
    }
}
