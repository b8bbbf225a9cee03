//! so(n) and the parabolic subalgebra of so(1, n+1) preserving an isotropic
//! line: standard skew basis, brackets, subalgebra closure, derived algebra,
//! center, fixed subspace, the triple model (a, A, X), and assembly of the
//! four target normal forms.
//!
//! Coordinate convention, fixed once for the whole crate: basis order
//! p, e_1, ..., e_n, q, so the Gram matrix of the ambient Lorentzian product
//! has 1s in the (p, q) corners and the identity in the middle block.

use crate::matrix::{span_contains, span_equal, Matrix, SpanBasis};
use crate::scalar::Scalar;

#[derive(Debug, thiserror::Error)]
pub enum LieError {
    #[error("dimension mismatch: n = {0} vs n = {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("type {0} target: {1}")]
    TargetConstraint(u8, String),
    #[error(transparent)]
    Matrix(#[from] crate::matrix::MatrixError),
}

/// A skew-symmetric n x n matrix, an element of so(n).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewMatrix {
    n: usize,
    entries: Matrix,
}

impl SkewMatrix {
    pub fn new(entries: Matrix) -> Result<Self, LieError> {
        let n = entries.rows();
        if entries.cols() != n {
            return Err(LieError::DimensionMismatch(n, entries.cols()));
        }
        if entries.add(&entries.transpose()).is_zero() {
            Ok(SkewMatrix { n, entries })
        } else {
            Err(LieError::NotSkew)
        }
    }

    pub fn zero(n: usize) -> Self {
        SkewMatrix {
            n,
            entries: Matrix::zero(n, n),
        }
    }

    /// E_{ij} with (i, j) one-based, i < j: entry (i, j) = 1, (j, i) = -1.
    pub fn e(n: usize, i: usize, j: usize) -> Self {
        assert!(1 <= i && i < j && j <= n, "need 1 <= i < j <= n");
        let mut m = Matrix::zero(n, n);
        m[(i - 1, j - 1)] = Scalar::one();
        m[(j - 1, i - 1)] = Scalar::from_int(-1);
        SkewMatrix { n, entries: m }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_zero()
    }

    pub fn add(&self, rhs: &SkewMatrix) -> SkewMatrix {
        SkewMatrix {
            n: self.n,
            entries: self.entries.add(&rhs.entries),
        }
    }

    pub fn sub(&self, rhs: &SkewMatrix) -> SkewMatrix {
        SkewMatrix {
            n: self.n,
            entries: self.entries.sub(&rhs.entries),
        }
    }

    pub fn scale(&self, s: &Scalar) -> SkewMatrix {
        SkewMatrix {
            n: self.n,
            entries: self.entries.scale(s),
        }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.entries.apply(v)
    }

    /// Linear combination of skew matrices.
    pub fn combine(basis: &[SkewMatrix], coeffs: &[Scalar]) -> SkewMatrix {
        assert_eq!(basis.len(), coeffs.len());
        let n = basis.first().map_or(0, |b| b.n);
        let mut acc = SkewMatrix::zero(n);
        for (b, c) in basis.iter().zip(coeffs) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }

    pub fn trace_pairing(&self, rhs: &SkewMatrix) -> Scalar {
        // -tr(A B); positive definite on so(n)
        let prod = self.entries.mul(&rhs.entries);
        let mut acc = Scalar::zero();
        for i in 0..self.n {
            acc -= &prod[(i, i)];
        }
        acc
    }
}

/// [A, B] = AB - BA.
pub fn bracket(a: &SkewMatrix, b: &SkewMatrix) -> Result<SkewMatrix, LieError> {
    if a.n != b.n {
        return Err(LieError::DimensionMismatch(a.n, b.n));
    }
    let m = a.entries.mul(&b.entries).sub(&b.entries.mul(&a.entries));
    Ok(SkewMatrix { n: a.n, entries: m })
}

/// The n(n-1)/2 matrices E_{ij}, i < j, in lexicographic (i, j) order.
pub fn standard_skew_basis(n: usize) -> Vec<SkewMatrix> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 1..=n {
        for j in (i + 1)..=n {
            out.push(SkewMatrix::e(n, i, j));
        }
    }
    out
}

/// A Lie subalgebra of so(n): a linearly independent, bracket-closed basis.
#[derive(Clone, Debug)]
pub struct LieSubalgebra {
    n: usize,
    basis: Vec<SkewMatrix>,
}

impl LieSubalgebra {
    /// Trivial subalgebra {0} of so(n).
    pub fn trivial(n: usize) -> Self {
        LieSubalgebra {
            n,
            basis: Vec::new(),
        }
    }

    /// Builds a subalgebra from a spanning set, verifying bracket closure.
    /// Dependent elements are dropped; closure failure is an error.
    pub fn new(n: usize, spanning: Vec<SkewMatrix>) -> Result<Self, LieError> {
        let h = Self::from_spanning(n, spanning)?;
        let mats: Vec<Matrix> = h.basis.iter().map(|b| b.entries.clone()).collect();
        for (i, a) in h.basis.iter().enumerate() {
            for b in &h.basis[i + 1..] {
                let br = bracket(a, b)?;
                if !span_contains(&mats, br.entries())? {
                    return Err(LieError::TargetConstraint(
                        0,
                        "basis is not closed under the bracket".into(),
                    ));
                }
            }
        }
        Ok(h)
    }

    fn from_spanning(n: usize, spanning: Vec<SkewMatrix>) -> Result<Self, LieError> {
        let mut span = SpanBasis::new(n * n);
        let mut basis = Vec::new();
        for m in spanning {
            if m.n != n {
                return Err(LieError::DimensionMismatch(n, m.n));
            }
            if span.insert(&m.entries.flatten()) {
                basis.push(m);
            }
        }
        Ok(LieSubalgebra { n, basis })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SkewMatrix] {
        &self.basis
    }

    pub fn basis_matrices(&self) -> Vec<Matrix> {
        self.basis.iter().map(|b| b.entries.clone()).collect()
    }

    pub fn contains(&self, m: &SkewMatrix) -> Result<bool, LieError> {
        Ok(span_contains(&self.basis_matrices(), m.entries())?)
    }

    pub fn span_equals(&self, other: &LieSubalgebra) -> Result<bool, LieError> {
        Ok(span_equal(
            &self.basis_matrices(),
            &other.basis_matrices(),
        )?)
    }

    /// Coordinates of `m` in this basis, if `m` lies in the span.
    pub fn coordinates(&self, m: &SkewMatrix) -> Option<Vec<Scalar>> {
        // columns: basis elements; rhs: m
        let dim = self.n * self.n;
        let k = self.basis.len();
        let sys = Matrix::from_fn(dim, k + 1, |r, c| {
            if c < k {
                self.basis[c].entries.flatten()[r].clone()
            } else {
                m.entries.flatten()[r].clone()
            }
        });
        let (red, pivots) = sys.rref();
        if pivots.contains(&k) {
            return None; // inconsistent: m outside the span
        }
        let mut coords = vec![Scalar::zero(); k];
        for (row, &col) in pivots.iter().enumerate() {
            coords[col] = red[(row, k)].clone();
        }
        Some(coords)
    }
}

/// Smallest bracket-closed subspace containing `gens`: breadth-first span
/// growth with a rank-stagnation stop; dimension is bounded by n(n-1)/2.
pub fn lie_closure(gens: &[SkewMatrix]) -> Result<LieSubalgebra, LieError> {
    let n = gens.first().map_or(0, |g| g.n);
    for g in gens {
        if g.n != n {
            return Err(LieError::DimensionMismatch(n, g.n));
        }
    }
    let mut span = SpanBasis::new(n * n);
    let mut basis: Vec<SkewMatrix> = Vec::new();
    for g in gens {
        if span.insert(&g.entries.flatten()) {
            basis.push(g.clone());
        }
    }
    let mut frontier_start = 0;
    loop {
        let len = basis.len();
        let mut grew = false;
        for i in 0..len {
            let j0 = i.max(frontier_start);
            for j in j0..len {
                if i == j {
                    continue;
                }
                let br = bracket(&basis[i], &basis[j])?;
                if span.insert(&br.entries.flatten()) {
                    basis.push(br);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
        frontier_start = len;
    }
    Ok(LieSubalgebra { n, basis })
}

/// Span of all brackets of basis pairs.
pub fn derived_subalgebra(h: &LieSubalgebra) -> Result<LieSubalgebra, LieError> {
    let mut gens = Vec::new();
    for (i, a) in h.basis.iter().enumerate() {
        for b in &h.basis[i + 1..] {
            gens.push(bracket(a, b)?);
        }
    }
    lie_closure(&gens)
}

/// {Z in h : [Z, A] = 0 for all A in basis(h)}, via the nullspace of the
/// stacked adjoint system.
pub fn center(h: &LieSubalgebra) -> Result<LieSubalgebra, LieError> {
    let k = h.dim();
    if k == 0 {
        return Ok(LieSubalgebra::trivial(h.n));
    }
    // rows: (basis index t, matrix entry); cols: coefficients c_s
    let mut brackets = Vec::with_capacity(k * k);
    for s in 0..k {
        for t in 0..k {
            brackets.push(bracket(&h.basis[s], &h.basis[t])?);
        }
    }
    let sys = Matrix::from_fn(k * h.n * h.n, k, |r, s| {
        let t = r / (h.n * h.n);
        let e = r % (h.n * h.n);
        brackets[s * k + t].entries.flatten()[e].clone()
    });
    let basis = sys
        .nullspace()
        .into_iter()
        .map(|coords| SkewMatrix::combine(&h.basis, &coords))
        .collect();
    Ok(LieSubalgebra { n: h.n, basis })
}

/// Basis of {v : A v = 0 for all A in h}; its codimension is n_0, the
/// dimension of the subspace the algebra actually acts on.
pub fn fixed_subspace(h: &LieSubalgebra) -> Vec<Vec<Scalar>> {
    if h.basis.is_empty() {
        return Matrix::zero(1, h.n).nullspace();
    }
    let stacked = Matrix::from_fn(h.basis.len() * h.n, h.n, |r, c| {
        h.basis[r / h.n].entries[(r % h.n, c)].clone()
    });
    stacked.nullspace()
}

/// An element of the parabolic algebra, as the triple (a, A, X).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LorTriple {
    pub a: Scalar,
    pub rot: SkewMatrix,
    pub x: Vec<Scalar>,
}

impl LorTriple {
    pub fn new(a: Scalar, rot: SkewMatrix, x: Vec<Scalar>) -> Self {
        assert_eq!(rot.n(), x.len());
        LorTriple { a, rot, x }
    }

    pub fn zero(n: usize) -> Self {
        LorTriple {
            a: Scalar::zero(),
            rot: SkewMatrix::zero(n),
            x: vec![Scalar::zero(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.rot.n()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.rot.is_zero() && self.x.iter().all(Scalar::is_zero)
    }
}

/// The (n+2)x(n+2) matrix of a triple in the basis p, e_1..e_n, q:
/// rows (a, X, 0 / 0, A, -X^t / 0, 0, -a).
pub fn triple_embed(t: &LorTriple) -> Matrix {
    let n = t.n();
    let mut m = Matrix::zero(n + 2, n + 2);
    m[(0, 0)] = t.a.clone();
    m[(n + 1, n + 1)] = -&t.a;
    for j in 0..n {
        m[(0, j + 1)] = t.x[j].clone();
        m[(j + 1, n + 1)] = -&t.x[j];
        for i in 0..n {
            m[(i + 1, j + 1)] = t.rot.entries()[(i, j)].clone();
        }
    }
    m
}

/// Inverse of `triple_embed`: `None` when the matrix does not match the
/// block form exactly (skew middle block, matching -X^t column, matching -a
/// corner, zeros elsewhere).
pub fn triple_project(m: &Matrix) -> Option<LorTriple> {
    let size = m.rows();
    if m.cols() != size || size < 2 {
        return None;
    }
    let n = size - 2;
    let rot = SkewMatrix::new(Matrix::from_fn(n, n, |i, j| m[(i + 1, j + 1)].clone())).ok()?;
    let a = m[(0, 0)].clone();
    if m[(n + 1, n + 1)] != -&a {
        return None;
    }
    let x: Vec<Scalar> = (0..n).map(|j| m[(0, j + 1)].clone()).collect();
    for j in 0..n {
        if m[(j + 1, n + 1)] != -&x[j] {
            return None;
        }
    }
    // everything below the block diagonal must vanish
    for i in 1..size {
        if !m[(i, 0)].is_zero() {
            return None;
        }
    }
    for j in 1..=n {
        if !m[(n + 1, j)].is_zero() {
            return None;
        }
    }
    if !m[(0, n + 1)].is_zero() {
        return None;
    }
    Some(LorTriple { a, rot, x })
}

/// Gram matrix of the ambient product in the basis p, e_1..e_n, q.
pub fn gram_matrix(n: usize) -> Matrix {
    let mut g = Matrix::zero(n + 2, n + 2);
    g[(0, n + 1)] = Scalar::one();
    g[(n + 1, 0)] = Scalar::one();
    for i in 1..=n {
        g[(i, i)] = Scalar::one();
    }
    g
}

/// One of the four normal forms of a weakly-irreducible subalgebra
/// preserving an isotropic line, with its materialized triple basis.
#[derive(Clone, Debug)]
pub struct TargetAlgebra {
    pub type_tag: u8,
    pub h: LieSubalgebra,
    /// Values of phi on basis(h) (type 3 only).
    pub phi: Option<Vec<Scalar>>,
    /// Split index (type 4 only).
    pub m: Option<usize>,
    /// Values of psi on basis(h), each in R^{n-m} (type 4 only).
    pub psi: Option<Vec<Vec<Scalar>>>,
    pub basis: Vec<LorTriple>,
}

impl TargetAlgebra {
    pub fn n(&self) -> usize {
        self.h.n()
    }

    pub fn basis_matrices(&self) -> Vec<Matrix> {
        self.basis.iter().map(triple_embed).collect()
    }
}

fn unit_vector(n: usize, j: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[j] = Scalar::one();
    v
}

/// Default phi for type 3: phi(A) = -tr(A Z) with Z the first center basis
/// vector; vanishing on the derived algebra is verified, not assumed.
pub fn default_phi(h: &LieSubalgebra) -> Result<Vec<Scalar>, LieError> {
    let z = center(h)?;
    let z0 = z.basis().first().ok_or_else(|| {
        LieError::TargetConstraint(3, "center is trivial, no phi exists".into())
    })?;
    let phi: Vec<Scalar> = h.basis().iter().map(|a| a.trace_pairing(z0)).collect();
    if phi.iter().all(Scalar::is_zero) {
        return Err(LieError::TargetConstraint(
            3,
            "trace pairing with the center degenerates".into(),
        ));
    }
    Ok(phi)
}

/// Default psi for type 4: pair with the first n-m center basis vectors by
/// the trace form; surjectivity is checked by rank.
pub fn default_psi(h: &LieSubalgebra, n: usize, m: usize) -> Result<Vec<Vec<Scalar>>, LieError> {
    let z = center(h)?;
    if z.dim() < n - m {
        return Err(LieError::TargetConstraint(
            4,
            format!("dim z(h) = {} < n - m = {}", z.dim(), n - m),
        ));
    }
    let psi: Vec<Vec<Scalar>> = h
        .basis()
        .iter()
        .map(|a| {
            (0..n - m)
                .map(|j| a.trace_pairing(&z.basis()[j]))
                .collect()
        })
        .collect();
    let rank = Matrix::from_fn(h.dim(), n - m, |r, c| psi[r][c].clone()).rank();
    if rank < n - m {
        return Err(LieError::TargetConstraint(
            4,
            "trace pairing with the center is not surjective".into(),
        ));
    }
    Ok(psi)
}

/// Materializes the normal form of the given type over h in so(n).
///
/// `phi` and `psi` are given by their values on basis(h). Preconditions per
/// type are checked and reported with the failed constraint.
pub fn target_algebra(
    type_tag: u8,
    h: &LieSubalgebra,
    phi: Option<Vec<Scalar>>,
    m: Option<usize>,
    psi: Option<Vec<Vec<Scalar>>>,
) -> Result<TargetAlgebra, LieError> {
    let n = h.n();
    let mut basis = Vec::new();
    match type_tag {
        1 | 2 => {
            if type_tag == 1 {
                basis.push(LorTriple::new(
                    Scalar::one(),
                    SkewMatrix::zero(n),
                    vec![Scalar::zero(); n],
                ));
            }
            for a in h.basis() {
                basis.push(LorTriple::new(
                    Scalar::zero(),
                    a.clone(),
                    vec![Scalar::zero(); n],
                ));
            }
            for j in 0..n {
                basis.push(LorTriple::new(
                    Scalar::zero(),
                    SkewMatrix::zero(n),
                    unit_vector(n, j),
                ));
            }
            Ok(TargetAlgebra {
                type_tag,
                h: h.clone(),
                phi: None,
                m: None,
                psi: None,
                basis,
            })
        }
        3 => {
            let phi = match phi {
                Some(p) => p,
                None => default_phi(h)?,
            };
            if phi.len() != h.dim() {
                return Err(LieError::TargetConstraint(3, "phi has wrong length".into()));
            }
            if phi.iter().all(Scalar::is_zero) {
                return Err(LieError::TargetConstraint(3, "phi must be nonzero".into()));
            }
            if center(h)?.dim() == 0 {
                return Err(LieError::TargetConstraint(
                    3,
                    "center of h is trivial".into(),
                ));
            }
            check_vanishes_on_derived(h, |t| vec![phi[t].clone()], 3)?;
            for (t, a) in h.basis().iter().enumerate() {
                basis.push(LorTriple::new(
                    phi[t].clone(),
                    a.clone(),
                    vec![Scalar::zero(); n],
                ));
            }
            for j in 0..n {
                basis.push(LorTriple::new(
                    Scalar::zero(),
                    SkewMatrix::zero(n),
                    unit_vector(n, j),
                ));
            }
            Ok(TargetAlgebra {
                type_tag,
                h: h.clone(),
                phi: Some(phi),
                m: None,
                psi: None,
                basis,
            })
        }
        4 => {
            let m = m.ok_or_else(|| LieError::TargetConstraint(4, "m is required".into()))?;
            if !(0 < m && m < n) {
                return Err(LieError::TargetConstraint(
                    4,
                    format!("need 0 < m < n, got m = {m}, n = {n}"),
                ));
            }
            let z = center(h)?;
            if z.dim() < n - m {
                return Err(LieError::TargetConstraint(
                    4,
                    format!("dim z(h) = {} < n - m = {}", z.dim(), n - m),
                ));
            }
            let psi = match psi {
                Some(p) => p,
                None => default_psi(h, n, m)?,
            };
            if psi.len() != h.dim() || psi.iter().any(|v| v.len() != n - m) {
                return Err(LieError::TargetConstraint(4, "psi has wrong shape".into()));
            }
            let rank = Matrix::from_fn(h.dim(), n - m, |r, c| psi[r][c].clone()).rank();
            if rank < n - m {
                return Err(LieError::TargetConstraint(
                    4,
                    "psi is not surjective".into(),
                ));
            }
            check_vanishes_on_derived(h, |t| psi[t].clone(), 4)?;
            for (t, a) in h.basis().iter().enumerate() {
                let mut x = vec![Scalar::zero(); n];
                for (j, val) in psi[t].iter().enumerate() {
                    x[m + j] = val.clone();
                }
                basis.push(LorTriple::new(Scalar::zero(), a.clone(), x));
            }
            for j in 0..m {
                basis.push(LorTriple::new(
                    Scalar::zero(),
                    SkewMatrix::zero(n),
                    unit_vector(n, j),
                ));
            }
            Ok(TargetAlgebra {
                type_tag,
                h: h.clone(),
                phi: None,
                m: Some(m),
                psi: Some(psi),
                basis,
            })
        }
        t => Err(LieError::TargetConstraint(t, "type must be 1..=4".into())),
    }
}

/// Verifies a linear map given on basis(h) vanishes on the derived algebra.
fn check_vanishes_on_derived(
    h: &LieSubalgebra,
    value: impl Fn(usize) -> Vec<Scalar>,
    tag: u8,
) -> Result<(), LieError> {
    let derived = derived_subalgebra(h)?;
    for d in derived.basis() {
        let coords = h.coordinates(d).ok_or_else(|| {
            LieError::TargetConstraint(tag, "derived algebra escapes h".into())
        })?;
        let width = value(0).len();
        let mut acc = vec![Scalar::zero(); width];
        for (t, c) in coords.iter().enumerate() {
            for (slot, v) in value(t).iter().enumerate() {
                acc[slot] += &(c * v);
            }
        }
        if acc.iter().any(|s| !s.is_zero()) {
            return Err(LieError::TargetConstraint(
                tag,
                "map does not vanish on the derived algebra".into(),
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_basis_counts() {
        assert!(standard_skew_basis(1).is_empty());
        let b2 = standard_skew_basis(2);
        assert_eq!(b2.len(), 1);
        assert_eq!(b2[0], SkewMatrix::e(2, 1, 2));
        assert_eq!(b2[0].entries()[(0, 1)], Scalar::one());
        assert_eq!(b2[0].entries()[(1, 0)], Scalar::from_int(-1));
        assert_eq!(standard_skew_basis(4).len(), 6);
    }

    #[test]
    fn bracket_basics() {
        let e12 = SkewMatrix::e(3, 1, 2);
        let e13 = SkewMatrix::e(3, 1, 3);
        let e23 = SkewMatrix::e(3, 2, 3);
        assert!(bracket(&e12, &e12).unwrap().is_zero());
        // [E12, E13] = -E23, by direct matrix multiplication
        assert_eq!(
            bracket(&e12, &e13).unwrap(),
            e23.scale(&Scalar::from_int(-1))
        );
        assert!(bracket(&e12, &SkewMatrix::e(4, 1, 2)).is_err());
    }

    #[test]
    fn closure_of_single_generator() {
        let h = lie_closure(&[SkewMatrix::e(4, 1, 2)]).unwrap();
        assert_eq!(h.dim(), 1);
    }

    #[test]
    fn closure_of_so3_standard() {
        let gens = [SkewMatrix::e(3, 1, 2), SkewMatrix::e(3, 1, 3)];
        let h = lie_closure(&gens).unwrap();
        assert_eq!(h.dim(), 3);
    }

    #[test]
    fn derived_and_center_abelian() {
        let h = LieSubalgebra::new(4, vec![SkewMatrix::e(4, 1, 2), SkewMatrix::e(4, 3, 4)])
            .unwrap();
        assert_eq!(derived_subalgebra(&h).unwrap().dim(), 0);
        assert_eq!(center(&h).unwrap().dim(), 2);
    }

    #[test]
    fn derived_and_center_so3() {
        let h = lie_closure(&[SkewMatrix::e(3, 1, 2), SkewMatrix::e(3, 1, 3)]).unwrap();
        // so(3) is simple: derived = itself, center = 0
        assert!(derived_subalgebra(&h).unwrap().span_equals(&h).unwrap());
        assert_eq!(center(&h).unwrap().dim(), 0);
    }

    #[test]
    fn fixed_subspace_cases() {
        let trivial = LieSubalgebra::trivial(3);
        assert_eq!(fixed_subspace(&trivial).len(), 3);
        let h = LieSubalgebra::new(3, vec![SkewMatrix::e(3, 1, 2)]).unwrap();
        let fs = fixed_subspace(&h);
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0], unit_vector(3, 2));
    }

    #[test]
    fn triple_embed_shapes() {
        let n = 3;
        let t = LorTriple::new(
            Scalar::one(),
            SkewMatrix::zero(n),
            vec![Scalar::zero(); n],
        );
        let m = triple_embed(&t);
        assert_eq!(m[(0, 0)], Scalar::one());
        assert_eq!(m[(n + 1, n + 1)], Scalar::from_int(-1));

        let t2 = LorTriple::new(Scalar::zero(), SkewMatrix::zero(n), unit_vector(n, 0));
        let m2 = triple_embed(&t2);
        assert_eq!(m2[(0, 1)], Scalar::one());
        assert_eq!(m2[(1, n + 1)], Scalar::from_int(-1));

        let t3 = LorTriple::new(
            Scalar::zero(),
            SkewMatrix::e(n, 1, 2),
            vec![Scalar::zero(); n],
        );
        let m3 = triple_embed(&t3);
        assert_eq!(m3[(1, 2)], Scalar::one());
        assert_eq!(m3[(2, 1)], Scalar::from_int(-1));
    }

    #[test]
    fn triple_project_roundtrip_and_rejection() {
        let t = LorTriple::new(
            Scalar::ratio(5, 3),
            SkewMatrix::e(3, 2, 3),
            vec![Scalar::from_int(1), Scalar::from_int(-2), Scalar::zero()],
        );
        assert_eq!(triple_project(&triple_embed(&t)), Some(t));
        assert_eq!(
            triple_project(&Matrix::zero(5, 5)),
            Some(LorTriple::zero(3))
        );
        let mut bad = Matrix::zero(5, 5);
        bad[(4, 0)] = Scalar::one();
        assert_eq!(triple_project(&bad), None);
    }

    #[test]
    fn embed_image_is_eta_skew() {
        let n = 4;
        let t = LorTriple::new(
            Scalar::ratio(2, 7),
            SkewMatrix::e(n, 1, 3),
            vec![
                Scalar::one(),
                Scalar::ratio(-1, 2),
                Scalar::zero(),
                Scalar::from_int(3),
            ],
        );
        let m = triple_embed(&t);
        let g = gram_matrix(n);
        assert!(m.transpose().mul(&g).add(&g.mul(&m)).is_zero());
    }

    #[test]
    fn target_type_counts() {
        // type 1 over h = {0}, n = 1: the two-dimensional algebra {(a, 0, X)}
        let t1 = target_algebra(1, &LieSubalgebra::trivial(1), None, None, None).unwrap();
        assert_eq!(t1.basis.len(), 2);

        let h = LieSubalgebra::new(3, vec![SkewMatrix::e(3, 1, 2)]).unwrap();
        let t4 = target_algebra(4, &h, None, Some(2), None).unwrap();
        assert_eq!(t4.basis.len(), 3);
        // dim z(h) < n - m must be rejected
        assert!(target_algebra(4, &h, None, Some(1), None).is_err());
    }

    #[test]
    fn target_basis_is_bracket_closed() {
        let h = LieSubalgebra::new(3, vec![SkewMatrix::e(3, 1, 2)]).unwrap();
        for tag in [1u8, 2, 3] {
            let t = target_algebra(tag, &h, None, None, None).unwrap();
            let mats = t.basis_matrices();
            for (i, a) in mats.iter().enumerate() {
                for b in &mats[i..] {
                    let br = a.mul(b).sub(&b.mul(a));
                    assert!(
                        span_contains(&mats, &br).unwrap(),
                        "type {tag} bracket escapes the span"
                    );
                }
            }
        }
    }
}
