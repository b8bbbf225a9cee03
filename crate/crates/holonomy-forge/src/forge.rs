//! Turns a family (P_alpha) plus a type choice into a concrete polynomial
//! metric: the symmetric coefficient arrays, the u-polynomials, the phi/psi
//! coefficient arrays, and the f-polynomial for the requested normal form.
//!
//! Coordinates are x^0 .. x^{n+1}; polynomial variable index i is the
//! coordinate x^i throughout.

use crate::lie::{
    fixed_subspace, target_algebra, LieError, LieSubalgebra, SkewMatrix, TargetAlgebra,
};
use crate::poly::Poly;
use crate::pspace::{FamilyStrategy, PFamily, PSpaceError};
use crate::scalar::Scalar;

#[derive(Debug, thiserror::Error)]
pub enum ForgeError {
    #[error("fixed subspace is not spanned by coordinate vectors; conjugate the input first")]
    FixedSubspaceNotAligned,
    #[error("type {0} requires {1}")]
    MissingParameter(u8, &'static str),
    #[error("type 4 split must satisfy n0 <= m < n, got n0 = {0}, m = {1}, n = {2}")]
    BadSplit(usize, usize, usize),
    #[error("phi must be nonzero")]
    ZeroPhi,
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    PSpace(#[from] PSpaceError),
}

/// Components P^k_{alpha j i} with P_alpha(e_i) e_j = sum_k P^k e_k.
/// Indexed [alpha][k][j][i], all zero-based, hat indices in 0..n0.
pub type PComponents = Vec<Vec<Vec<Vec<Scalar>>>>;

/// The symmetric coefficients a^k_{alpha j i}, indexed [alpha][k][j][i].
#[derive(Clone, Debug)]
pub struct ACoeffs(pub Vec<Vec<Vec<Vec<Scalar>>>>);

/// Component extraction in the fixed basis.
pub fn p_components(fam: &PFamily) -> PComponents {
    let n0 = fam.n0;
    (0..fam.len())
        .map(|alpha| {
            let values: Vec<SkewMatrix> = (0..n0).map(|i| fam.value(alpha, i)).collect();
            (0..n0)
                .map(|k| {
                    (0..n0)
                        .map(|j| {
                            (0..n0)
                                .map(|i| values[i].entries()[(k, j)].clone())
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// a^k_{alpha j i} = (P^k_{alpha j i} + P^k_{alpha i j}) / (3 (alpha-1)!),
/// the canonical solution of the coefficient system.
pub fn a_coeffs(fam: &PFamily) -> ACoeffs {
    let p = p_components(fam);
    let n0 = fam.n0;
    let third = Scalar::ratio(1, 3);
    let coeffs = (0..fam.len())
        .map(|alpha| {
            let scale = &third / &Scalar::factorial(alpha); // alpha is 0-based: (alpha-1)! in 1-based terms
            (0..n0)
                .map(|k| {
                    (0..n0)
                        .map(|j| {
                            (0..n0)
                                .map(|i| {
                                    (&p[alpha][k][j][i] + &p[alpha][k][i][j]) * scale.clone()
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    ACoeffs(coeffs)
}

/// u^i = a^i_{alpha j k} x^j x^k (x^{n+1})^{alpha-1}, one polynomial per
/// active coordinate (1-based coordinate index i = 1..n0).
pub fn build_u(fam: &PFamily) -> Vec<Poly> {
    let a = a_coeffs(fam);
    let n = fam.h.n();
    let n0 = fam.n0;
    let nvars = n + 2;
    (0..n0)
        .map(|i| {
            let mut u = Poly::zero(nvars);
            for alpha in 0..fam.len() {
                for j in 0..n0 {
                    for k in 0..n0 {
                        let c = &a.0[alpha][i][j][k];
                        if c.is_zero() {
                            continue;
                        }
                        let mut vars = vec![j + 1, k + 1];
                        vars.extend(std::iter::repeat(n + 1).take(alpha));
                        u.add_assign(&Poly::monomial(nvars, c.clone(), &vars));
                    }
                }
            }
            u
        })
        .collect()
}

/// phi_{alpha i} = phi(P_alpha(e_i)) / (alpha-1)!; `phi` is given by its
/// values on basis(h).
pub fn phi_coeffs(fam: &PFamily, phi: &[Scalar]) -> Result<Vec<Vec<Scalar>>, ForgeError> {
    if phi.iter().all(Scalar::is_zero) {
        return Err(ForgeError::ZeroPhi);
    }
    Ok((0..fam.len())
        .map(|alpha| {
            let inv_fact = Scalar::factorial(alpha).inv();
            (0..fam.n0)
                .map(|i| {
                    let mut acc = Scalar::zero();
                    for (t, c) in fam.members[alpha].coords[i].iter().enumerate() {
                        acc += &(c * &phi[t]);
                    }
                    acc * inv_fact.clone()
                })
                .collect()
        })
        .collect())
}

/// psi_{alpha i tt} with tt ranging over the coordinates m+1..n (stored
/// zero-based, tt in 0..n-m); `psi` is given by its values on basis(h).
pub fn psi_coeffs(
    fam: &PFamily,
    psi: &[Vec<Scalar>],
    m: usize,
) -> Result<Vec<Vec<Vec<Scalar>>>, ForgeError> {
    let n = fam.h.n();
    if !(fam.n0 <= m && m < n) {
        return Err(ForgeError::BadSplit(fam.n0, m, n));
    }
    Ok((0..fam.len())
        .map(|alpha| {
            let inv_fact = Scalar::factorial(alpha).inv();
            (0..fam.n0)
                .map(|i| {
                    (0..n - m)
                        .map(|tt| {
                            let mut acc = Scalar::zero();
                            for (t, c) in fam.members[alpha].coords[i].iter().enumerate() {
                                acc += &(c * &psi[t][tt]);
                            }
                            acc * inv_fact.clone()
                        })
                        .collect()
                })
                .collect()
        })
        .collect())
}

/// The f-polynomial of the requested normal form. All four rows produce
/// f(0) = 0 with every monomial of total degree >= 2.
pub fn build_f(
    type_tag: u8,
    fam: &PFamily,
    phi: Option<&[Vec<Scalar>]>,
    psi: Option<&[Vec<Vec<Scalar>>]>,
    m: Option<usize>,
) -> Result<Poly, ForgeError> {
    let n = fam.h.n();
    let n0 = fam.n0;
    let nvars = n + 2;
    let square_sum = |from: usize, to: usize| {
        let mut p = Poly::zero(nvars);
        for i in from..=to {
            p.add_assign(&Poly::monomial(nvars, Scalar::one(), &[i, i]));
        }
        p
    };
    match type_tag {
        1 => {
            let mut f = Poly::monomial(nvars, Scalar::one(), &[0, 0]);
            f.add_assign(&square_sum(n0 + 1, n));
            Ok(f)
        }
        2 => Ok(square_sum(n0 + 1, n)),
        3 => {
            let phi = phi.ok_or(ForgeError::MissingParameter(3, "phi coefficients"))?;
            let mut f = square_sum(n0 + 1, n);
            let two = Scalar::from_int(2);
            for (alpha, row) in phi.iter().enumerate() {
                for (i, c) in row.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut vars = vec![0, i + 1];
                    vars.extend(std::iter::repeat(n + 1).take(alpha));
                    f.add_assign(&Poly::monomial(nvars, c * &two, &vars));
                }
            }
            Ok(f)
        }
        4 => {
            let psi = psi.ok_or(ForgeError::MissingParameter(4, "psi coefficients"))?;
            let m = m.ok_or(ForgeError::MissingParameter(4, "split index m"))?;
            let mut f = square_sum(n0 + 1, m);
            let two = Scalar::from_int(2);
            for (alpha, per_i) in psi.iter().enumerate() {
                for (i, row) in per_i.iter().enumerate() {
                    for (tt, c) in row.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut vars = vec![i + 1, m + 1 + tt];
                        vars.extend(std::iter::repeat(n + 1).take(alpha));
                        f.add_assign(&Poly::monomial(nvars, c * &two, &vars));
                    }
                }
            }
            Ok(f)
        }
        t => Err(ForgeError::MissingParameter(t, "type must be 1..=4")),
    }
}

/// Inverse of `build_u`: recovers the family (P_alpha) from the stored
/// u-polynomials via P^k_{alpha j i} = (alpha-1)! (a^k_{j i} - a^j_{k i}).
pub fn recover_family(h: &LieSubalgebra, u: &[Poly]) -> Result<PFamily, ForgeError> {
    let n = h.n();
    let n0 = u.len();
    let len = u
        .iter()
        .map(|p| p.degree_in(n + 1) as usize + 1)
        .max()
        .unwrap_or(0);
    // a[alpha][i][j][k] from the coefficient of x^j x^k (x^{n+1})^alpha in u^i
    let mut a = vec![vec![vec![vec![Scalar::zero(); n0]; n0]; n0]; len];
    for (i, ui) in u.iter().enumerate() {
        for (mono, c) in ui.terms() {
            let alpha = mono.0[n + 1] as usize;
            let spatial: Vec<usize> = (1..=n0)
                .flat_map(|v| std::iter::repeat(v - 1).take(mono.0[v] as usize))
                .collect();
            let [j, k] = spatial[..] else {
                return Err(ForgeError::MissingParameter(0, "u is not in forge shape"));
            };
            if j == k {
                a[alpha][i][j][k] = c.clone();
            } else {
                let half = c * &Scalar::ratio(1, 2);
                a[alpha][i][j][k] = half.clone();
                a[alpha][i][k][j] = half;
            }
        }
    }
    let mut tensors = Vec::with_capacity(len);
    for (alpha, a_alpha) in a.iter().enumerate() {
        let fact = Scalar::factorial(alpha);
        let mut values = Vec::with_capacity(n);
        for i in 0..n {
            let mut m = crate::matrix::Matrix::zero(n, n);
            if i < n0 {
                for k in 0..n0 {
                    for j in 0..n0 {
                        m[(k, j)] = (&a_alpha[k][j][i] - &a_alpha[j][k][i]) * fact.clone();
                    }
                }
            }
            values.push(SkewMatrix::new(m).map_err(ForgeError::Lie)?);
        }
        tensors.push(crate::pspace::tensor_from_values(h, &values)?);
    }
    crate::pspace::select_family(h, FamilyStrategy::UserList(tensors)).map_err(ForgeError::PSpace)
}

/// A fully assembled metric: g = 2 dx^0 dx^{n+1} + sum (dx^i)^2
/// + 2 sum u^i dx^i dx^{n+1} + f (dx^{n+1})^2.
#[derive(Clone, Debug)]
pub struct MetricSpec {
    pub n: usize,
    pub n0: usize,
    pub type_tag: u8,
    pub m: Option<usize>,
    /// u^1 .. u^{n0}.
    pub u: Vec<Poly>,
    pub f: Poly,
    pub family: PFamily,
    pub phi_coeffs: Option<Vec<Vec<Scalar>>>,
    pub psi_coeffs: Option<Vec<Vec<Vec<Scalar>>>>,
    /// Coordinate permutation applied to the input (old index of each new
    /// coordinate); identity when the input was already aligned.
    pub permutation: Vec<usize>,
    pub target: TargetAlgebra,
}

impl MetricSpec {
    pub fn nvars(&self) -> usize {
        self.n + 2
    }

    /// LaTeX rendering of the metric, one u per line.
    pub fn to_latex(&self) -> String {
        let n = self.n;
        let mut out = format!(
            "g = 2\\,dx^0 dx^{{{}}} + \\sum_{{i=1}}^{{{n}}} (dx^i)^2",
            n + 1
        );
        out.push_str(&format!(
            " + 2\\sum_{{i=1}}^{{{}}} u^i\\, dx^i dx^{{{}}}",
            self.n0,
            n + 1
        ));
        if !self.f.is_zero() {
            out.push_str(&format!(" + f\\,(dx^{{{}}})^2", n + 1));
        }
        out.push('\n');
        for (i, u) in self.u.iter().enumerate() {
            out.push_str(&format!("u^{{{}}} = {}\n", i + 1, u.to_latex()));
        }
        out.push_str(&format!("f = {}\n", self.f.to_latex()));
        out
    }
}

/// Conjugates the input so the annihilated directions occupy the trailing
/// coordinates, then computes everything the metric needs.
///
/// `phi` / `psi` are values on basis(h); when absent for types 3/4 the
/// trace-pairing defaults are used.
pub fn assemble_metric(
    h: &LieSubalgebra,
    strategy: FamilyStrategy,
    type_tag: u8,
    phi: Option<Vec<Scalar>>,
    m: Option<usize>,
    psi: Option<Vec<Vec<Scalar>>>,
) -> Result<MetricSpec, ForgeError> {
    let (h, strategy, permutation) = align_fixed_subspace(h, strategy)?;
    let fam = crate::pspace::select_family(&h, strategy)?;
    let n = h.n();
    let u = build_u(&fam);

    let phi_values = match (type_tag, phi) {
        (3, Some(p)) => Some(p),
        (3, None) => Some(crate::lie::default_phi(&h)?),
        _ => None,
    };
    let psi_values = match (type_tag, psi) {
        (4, Some(p)) => Some(p),
        (4, None) => {
            let m = m.ok_or(ForgeError::MissingParameter(4, "split index m"))?;
            Some(crate::lie::default_psi(&h, n, m)?)
        }
        _ => None,
    };

    let phi_c = match &phi_values {
        Some(p) => Some(phi_coeffs(&fam, p)?),
        None => None,
    };
    let psi_c = match &psi_values {
        Some(p) => Some(psi_coeffs(&fam, p, m.unwrap())?),
        None => None,
    };
    let f = build_f(type_tag, &fam, phi_c.as_deref(), psi_c.as_deref(), m)?;
    let target = target_algebra(type_tag, &h, phi_values, m, psi_values)?;
    Ok(MetricSpec {
        n,
        n0: fam.n0,
        type_tag,
        m,
        u,
        f,
        family: fam,
        phi_coeffs: phi_c,
        psi_coeffs: psi_c,
        permutation,
        target,
    })
}

/// Returns (conjugated h, conjugated strategy, permutation): new coordinate
/// i reads old coordinate permutation[i]. Active directions come first.
fn align_fixed_subspace(
    h: &LieSubalgebra,
    strategy: FamilyStrategy,
) -> Result<(LieSubalgebra, FamilyStrategy, Vec<usize>), ForgeError> {
    let n = h.n();
    let fixed = fixed_subspace(h);
    // each coordinate must be either fixed or active outright
    let mut is_fixed = vec![false; n];
    {
        let mut span = crate::matrix::SpanBasis::new(n);
        for v in &fixed {
            span.insert(v);
        }
        let mut count = 0;
        for (i, flag) in is_fixed.iter_mut().enumerate() {
            let mut e = vec![Scalar::zero(); n];
            e[i] = Scalar::one();
            if span.contains(&e) {
                *flag = true;
                count += 1;
            }
        }
        if count != fixed.len() {
            return Err(ForgeError::FixedSubspaceNotAligned);
        }
    }
    let perm: Vec<usize> = (0..n)
        .filter(|&i| !is_fixed[i])
        .chain((0..n).filter(|&i| is_fixed[i]))
        .collect();
    if perm.iter().enumerate().all(|(i, &p)| i == p) {
        return Ok((h.clone(), strategy, perm));
    }
    let conj_matrix = |m: &SkewMatrix| {
        SkewMatrix::new(crate::matrix::Matrix::from_fn(n, n, |r, c| {
            m.entries()[(perm[r], perm[c])].clone()
        }))
        .expect("permutation conjugation preserves skewness")
    };
    let new_h = LieSubalgebra::new(n, h.basis().iter().map(conj_matrix).collect())?;
    // re-express family members: new P(e'_i) = conj(P(e_{perm[i]})), in the
    // new basis coordinates
    let conj_strategy = match strategy {
        FamilyStrategy::UserList(list) => {
            let mut new_list = Vec::with_capacity(list.len());
            for p in &list {
                let values: Vec<SkewMatrix> = (0..n)
                    .map(|i| conj_matrix(&p.value(h, perm[i])))
                    .collect();
                new_list.push(crate::pspace::tensor_from_values(&new_h, &values)?);
            }
            FamilyStrategy::UserList(new_list)
        }
        s => s,
    };
    Ok((new_h, conj_strategy, perm))
}

/// Built-in catalog entry.
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub provenance: &'static str,
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "ikemakhen-so3",
        description: "rho(so(3)) in so(5), type 2 on R^7; the reconstructed polynomial version",
        provenance: "three generators with sqrt(3) entries; P sends e3, e4, e5 to them; \
                     the published A3 carries spurious (3,5)/(5,3) entries that break the \
                     bracket closure and are dropped here",
    },
    CatalogEntry {
        name: "g2",
        description: "g2 in so(7), type 2 on R^9",
        provenance: "the 14 standard basis matrices; single-tensor family",
    },
    CatalogEntry {
        name: "spin7",
        description: "spin(7) in so(8), type 2 on R^10",
        provenance: "the 21 standard basis matrices; the published P lists P(e7) twice and \
                     the second assignment is read as P(e8)",
    },
];

fn combine(basis: &[SkewMatrix], terms: &[(i64, usize)]) -> SkewMatrix {
    let mut acc = SkewMatrix::zero(basis[0].n());
    for &(c, idx) in terms {
        acc = acc.add(&basis[idx - 1].scale(&Scalar::from_int(c)));
    }
    acc
}

/// The 14 basis matrices of g2 in so(7).
pub fn g2_basis() -> Vec<SkewMatrix> {
    let e = |i, j| SkewMatrix::e(7, i, j);
    vec![
        e(1, 2).sub(&e(3, 4)),
        e(1, 2).sub(&e(5, 6)),
        e(1, 3).add(&e(2, 4)),
        e(1, 3).sub(&e(6, 7)),
        e(1, 4).sub(&e(2, 3)),
        e(1, 4).sub(&e(5, 7)),
        e(1, 5).add(&e(2, 6)),
        e(1, 5).add(&e(4, 7)),
        e(1, 6).sub(&e(2, 5)),
        e(1, 6).add(&e(3, 7)),
        e(1, 7).sub(&e(3, 6)),
        e(1, 7).sub(&e(4, 5)),
        e(2, 7).sub(&e(3, 5)),
        e(2, 7).add(&e(4, 6)),
    ]
}

/// The 21 basis matrices of spin(7) in so(8).
pub fn spin7_basis() -> Vec<SkewMatrix> {
    let e = |i, j| SkewMatrix::e(8, i, j);
    let neg = |m: SkewMatrix| m.scale(&Scalar::from_int(-1));
    vec![
        e(1, 2).add(&e(3, 4)),
        e(1, 3).sub(&e(2, 4)),
        e(1, 4).add(&e(2, 3)),
        e(5, 6).add(&e(7, 8)),
        neg(e(5, 7)).add(&e(6, 8)),
        e(5, 8).add(&e(6, 7)),
        neg(e(1, 5)).add(&e(2, 6)),
        e(1, 2).add(&e(5, 6)),
        e(1, 6).add(&e(2, 5)),
        e(3, 7).sub(&e(4, 8)),
        e(3, 8).add(&e(4, 7)),
        e(1, 7).add(&e(2, 8)),
        e(1, 8).sub(&e(2, 7)),
        e(3, 5).add(&e(4, 6)),
        e(3, 6).sub(&e(4, 5)),
        e(1, 8).add(&e(3, 6)),
        e(1, 7).add(&e(3, 5)),
        e(2, 6).sub(&e(4, 8)),
        e(2, 5).add(&e(3, 8)),
        e(2, 3).add(&e(6, 7)),
        e(2, 4).add(&e(5, 7)),
    ]
}

/// The image rho(so(3)) in so(5): the highest irreducible component of the
/// doubled standard representation; entries live in Q(sqrt 3).
pub fn so3_rho_basis() -> Vec<SkewMatrix> {
    let z = Scalar::zero;
    let i = Scalar::from_int;
    let s = |k: i64| Scalar::sqrt3_ratio(k, 1);
    let rows = |r: Vec<Vec<Scalar>>| {
        SkewMatrix::new(crate::matrix::Matrix::from_rows(r)).expect("catalog matrix is skew")
    };
    let a1 = rows(vec![
        vec![z(), z(), i(-1), z(), z()],
        vec![z(), z(), s(1), z(), z()],
        vec![i(1), s(-1), z(), z(), z()],
        vec![z(), z(), z(), z(), i(-1)],
        vec![z(), z(), z(), i(1), z()],
    ]);
    let a2 = rows(vec![
        vec![z(), z(), z(), i(-4), z()],
        vec![z(), z(), z(), z(), z()],
        vec![z(), z(), z(), z(), i(-2)],
        vec![i(4), z(), z(), z(), z()],
        vec![z(), z(), i(2), z(), z()],
    ]);
    let a3 = rows(vec![
        vec![z(), z(), z(), z(), i(-1)],
        vec![z(), z(), z(), z(), s(-1)],
        vec![z(), z(), z(), i(-1), z()],
        vec![z(), z(), i(1), z(), z()],
        vec![i(1), s(1), z(), z(), z()],
    ]);
    vec![a1, a2, a3]
}

///// Materializes a catalog entry: the algebra, its family, and the forged
/// type-2 metric.
pub fn builtin(name: &str) -> Result<(LieSubalgebra, PFamily, MetricSpec), ForgeError> {
    let (basis, values): (Vec<SkewMatrix>, Vec<SkewMatrix>) = match name {
        "g2" => {
            let b = g2_basis();
            let v = vec![
                combine(&b, &[(1, 6)]),
                combine(&b, &[(1, 4), (1, 5)]),
                combine(&b, &[(1, 1), (1, 7)]),
                combine(&b, &[(1, 1)]),
                combine(&b, &[(1, 4)]),
                combine(&b, &[(-1, 5), (1, 6)]),
                combine(&b, &[(1, 7)]),
            ];
            (b, v)
        }
        "spin7" => {
            let b = spin7_basis();
            let v = vec![
                SkewMatrix::zero(8),
                combine(&b, &[(-1, 14)]),
                SkewMatrix::zero(8),
                combine(&b, &[(1, 21)]),
                combine(&b, &[(1, 20)]),
                combine(&b, &[(1, 21), (-1, 18)]),
                combine(&b, &[(1, 15), (-1, 16)]),
                // published as a second P(e7); read as P(e8)
                combine(&b, &[(1, 14), (-1, 17)]),
            ];
            (b, v)
        }
        "ikemakhen-so3" => {
            let b = so3_rho_basis();
            let v = vec![
                SkewMatrix::zero(5),
                SkewMatrix::zero(5),
                b[0].clone(),
                b[1].clone(),
                b[2].clone(),
            ];
            (b, v)
        }
        _ => {
            return Err(ForgeError::MissingParameter(
                0,
                "unknown builtin name; see `catalog`",
            ))
        }
    };
    let n = basis[0].n();
    let h = LieSubalgebra::new(n, basis)?;
    let tensor = crate::pspace::tensor_from_values(&h, &values)?;
    let spec = assemble_metric(
        &h,
        FamilyStrategy::UserList(vec![tensor]),
        2,
        None,
        None,
        None,
    )?;
    let fam = spec.family.clone();
    Ok((h, fam, spec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::SkewMatrix;
    use crate::pspace::select_family;

    fn toy_family() -> PFamily {
        // h = span{E12} in so(3), greedy family (single tensor)
        let h = LieSubalgebra::new(3, vec![SkewMatrix::e(3, 1, 2)]).unwrap();
        select_family(&h, FamilyStrategy::GreedyMinimal).unwrap()
    }

    #[test]
    fn p_components_skewness() {
        let fam = toy_family();
        let p = p_components(&fam);
        for alpha in 0..fam.len() {
            for k in 0..fam.n0 {
                for j in 0..fam.n0 {
                    for i in 0..fam.n0 {
                        let s = &p[alpha][k][j][i] + &p[alpha][j][k][i];
                        assert!(s.is_zero(), "skewness fails at {alpha},{k},{j},{i}");
                    }
                }
            }
        }
    }

    #[test]
    fn a_coeffs_invariants() {
        let fam = toy_family();
        let p = p_components(&fam);
        let a = a_coeffs(&fam);
        let n0 = fam.n0;
        for alpha in 0..fam.len() {
            let fact = Scalar::factorial(alpha);
            for k in 0..n0 {
                for j in 0..n0 {
                    for i in 0..n0 {
                        // symmetry in the lower pair
                        assert_eq!(a.0[alpha][k][j][i], a.0[alpha][k][i][j]);
                        // cyclic identity
                        let cyc = &a.0[alpha][k][j][i]
                            + &(&a.0[alpha][i][k][j] + &a.0[alpha][j][i][k]);
                        assert!(cyc.is_zero());
                        // recovery of the P components
                        let rec =
                            (&a.0[alpha][k][j][i] - &a.0[alpha][j][k][i]) * fact.clone();
                        assert_eq!(rec, p[alpha][k][j][i]);
                    }
                }
            }
        }
    }

    #[test]
    fn build_u_zero_family() {
        let h = LieSubalgebra::trivial(3);
        let fam = select_family(&h, FamilyStrategy::FullBasis).unwrap();
        assert!(build_u(&fam).is_empty()); // n0 = 0: no active coordinates
    }

    #[test]
    fn u_support_and_degree() {
        let (_, fam, spec) = builtin("g2").unwrap();
        let n = 7;
        for u in &spec.u {
            for v in u.support() {
                assert!((1..=fam.n0).contains(&v) || v == n + 1);
            }
            assert!(u.degree_in(n + 1) as usize <= fam.len().saturating_sub(1));
        }
    }

    #[test]
    fn f_table_shapes() {
        let fam = toy_family(); // n = 3, n0 = 2
        // type 2 with trailing squares
        let f2 = build_f(2, &fam, None, None, None).unwrap();
        assert_eq!(f2, Poly::monomial(5, Scalar::one(), &[3, 3]));
        // type 1 adds (x^0)^2
        let f1 = build_f(1, &fam, None, None, None).unwrap();
        assert_eq!(
            f1,
            Poly::monomial(5, Scalar::one(), &[0, 0]).add(&f2)
        );
        assert!(f1.eval_origin().is_zero());
    }

    #[test]
    fn f_vanishes_to_second_order() {
        let fam = toy_family();
        let phi = phi_coeffs(&fam, &[Scalar::one()]).unwrap();
        let f = build_f(3, &fam, Some(&phi), None, None).unwrap();
        assert!(f.eval_origin().is_zero());
        for v in 0..5 {
            assert!(f.partial(v).eval_origin().is_zero());
        }
    }

    #[test]
    fn phi_coeffs_direct_substitution() {
        // abelian h = span{E12} in so(2): P1(e1) = E12, P1(e2) = 0 is a
        // valid weak-curvature tensor (no triples exist for n = 2)
        let h = LieSubalgebra::new(2, vec![SkewMatrix::e(2, 1, 2)]).unwrap();
        let t = crate::pspace::tensor_from_values(
            &h,
            &[SkewMatrix::e(2, 1, 2), SkewMatrix::zero(2)],
        )
        .unwrap();
        let fam = select_family(&h, FamilyStrategy::UserList(vec![t])).unwrap();
        let phi = phi_coeffs(&fam, &[Scalar::one()]).unwrap();
        assert_eq!(phi[0][0], Scalar::one());
        assert_eq!(phi[0][1], Scalar::zero());
        assert!(phi_coeffs(&fam, &[Scalar::zero()]).is_err());
    }

    #[test]
    fn catalog_g2_u_polynomials() {
        let (_, _, spec) = builtin("g2").unwrap();
        let nv = 9;
        let r = |p: i64, q: i64| Scalar::ratio(p, q);
        // u^4 = (2/3)(-(x^1)^2 - x^1 x^2 + (x^3)^2 + x^3 x^4)
        let mut u4 = Poly::zero(nv);
        u4.add_assign(&Poly::monomial(nv, r(-2, 3), &[1, 1]));
        u4.add_assign(&Poly::monomial(nv, r(-2, 3), &[1, 2]));
        u4.add_assign(&Poly::monomial(nv, r(2, 3), &[3, 3]));
        u4.add_assign(&Poly::monomial(nv, r(2, 3), &[3, 4]));
        assert_eq!(spec.u[3], u4);
        // u^3 = (2/3)(-x^1 x^2 + (x^2)^2 - x^3 x^4 - (x^4)^2 - x^1 x^5 - x^2 x^6)
        let mut u3 = Poly::zero(nv);
        for (c, vars) in [
            (r(-2, 3), [1, 2]),
            (r(2, 3), [2, 2]),
            (r(-2, 3), [3, 4]),
            (r(-2, 3), [4, 4]),
            (r(-2, 3), [1, 5]),
            (r(-2, 3), [2, 6]),
        ] {
            u3.add_assign(&Poly::monomial(nv, c, &vars));
        }
        assert_eq!(spec.u[2], u3);
    }

    #[test]
    fn catalog_ikemakhen_u4() {
        let (_, _, spec) = builtin("ikemakhen-so3").unwrap();
        // u^4 = (8/3) x^1 x^4
        assert_eq!(
            spec.u[3],
            Poly::monomial(7, Scalar::ratio(8, 3), &[1, 4])
        );
    }

    #[test]
    fn catalog_spin7_u_polynomials() {
        let (_, _, spec) = builtin("spin7").unwrap();
        let nv = 10;
        // u^1 = -(4/3) x^7 x^8
        assert_eq!(
            spec.u[0],
            Poly::monomial(nv, Scalar::ratio(-4, 3), &[7, 8])
        );
        // u^8 = (2/3)(-x^4 x^6 + x^1 x^7)
        let mut u8 = Poly::monomial(nv, Scalar::ratio(-2, 3), &[4, 6]);
        u8.add_assign(&Poly::monomial(nv, Scalar::ratio(2, 3), &[1, 7]));
        assert_eq!(spec.u[7], u8);
    }
}
