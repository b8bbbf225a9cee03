//! Dense matrices over the exact scalar field, with the rank / span /
//! nullspace primitives every other module reduces to.
//!
//! Dimensions in scope stay small (at most a few hundred columns), so a
//! dense row-major layout keeps everything simple.

use crate::scalar::Scalar;
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("shape mismatch: {0}x{1} vs {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>, // row-major, len = rows * cols
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Integer literal rows, mostly for tests and the builtin catalog.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| &self[(r, c)] + &rhs[(r, c)])
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| &self[(r, c)] - &rhs[(r, c)])
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| &self[(r, c)] * s)
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = Scalar::zero();
            for k in 0..self.cols {
                if !self[(r, k)].is_zero() && !rhs[(k, c)].is_zero() {
                    acc += &(&self[(r, k)] * &rhs[(k, c)]);
                }
            }
            acc
        })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for c in 0..self.cols {
                    if !self[(r, c)].is_zero() && !v[c].is_zero() {
                        acc += &(&self[(r, c)] * &v[c]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Flatten to a single row vector (row-major).
    pub fn flatten(&self) -> Vec<Scalar> {
        self.entries.clone()
    }

    /// Reduced row echelon form. Returns `(reduced, pivot_cols)`; the rank is
    /// `pivot_cols.len()`.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..m.cols {
            if lead >= m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(lead, pr);
            let inv = m[(lead, col)].inv();
            for c in col..m.cols {
                let v = &m[(lead, c)] * &inv;
                m[(lead, c)] = v;
            }
            for r in 0..m.rows {
                if r != lead && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for c in col..m.cols {
                        let v = &m[(r, c)] - &(&factor * &m[(lead, c)]);
                        m[(r, c)] = v;
                    }
                }
            }
            pivots.push(col);
            lead += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical kernel basis via the free-variable construction: one vector
    /// per free column, with a 1 in the free slot and the negated reduced
    /// entries in the pivot slots. Ordered by free column index.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (red, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![Scalar::zero(); self.cols];
            vec[free] = Scalar::one();
            for (col, slot) in pivot_set.iter().enumerate() {
                if let Some(row) = slot {
                    vec[col] = -&red[(*row, free)];
                }
            }
            basis.push(vec);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(
                f,
                "  [{}]",
                self.row(r)
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )?;
        }
        write!(f, "]")
    }
}

/// Row-reduced span of a set of equal-length vectors, for incremental
/// span growth with exact rank queries.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    dim: usize,
    rows: Vec<Vec<Scalar>>, // kept in reduced echelon form
    pivots: Vec<usize>,
}

impl SpanBasis {
    pub fn new(dim: usize) -> Self {
        SpanBasis {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Reduce `v` against the current basis; returns the residual.
    fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for c in 0..self.dim {
                    if !row[c].is_zero() {
                        let delta = &factor * &row[c];
                        v[c] -= &delta;
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim);
        self.reduce(v.to_vec()).iter().all(Scalar::is_zero)
    }

    /// Insert `v` into the span; returns `true` if the rank grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut res = self.reduce(v.to_vec());
        let Some(p) = res.iter().position(|s| !s.is_zero()) else {
            return false;
        };
        let inv = res[p].inv();
        for c in 0..self.dim {
            if !res[c].is_zero() {
                res[c] = &res[c] * &inv;
            }
        }
        // back-substitute into existing rows to stay fully reduced
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let factor = row[p].clone();
                for c in 0..self.dim {
                    if !res[c].is_zero() {
                        let delta = &factor * &res[c];
                        row[c] -= &delta;
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, res);
        self.pivots.insert(at, p);
        true
    }
}

/// True iff `v` lies in the span of `spanning`. All matrices must share a
/// shape.
pub fn span_contains(spanning: &[Matrix], v: &Matrix) -> Result<bool, MatrixError> {
    let mut basis = SpanBasis::new(v.rows() * v.cols());
    for m in spanning {
        if (m.rows(), m.cols()) != (v.rows(), v.cols()) {
            return Err(MatrixError::ShapeMismatch(
                m.rows(),
                m.cols(),
                v.rows(),
                v.cols(),
            ));
        }
        basis.insert(&m.flatten());
    }
    Ok(basis.contains(&v.flatten()))
}

/// True iff two finite lists of equal-shape matrices span the same subspace.
pub fn span_equal(a: &[Matrix], b: &[Matrix]) -> Result<bool, MatrixError> {
    match (a.first(), b.first()) {
        (None, None) => return Ok(true),
        (Some(m), _) | (None, Some(m)) => {
            let shape = (m.rows(), m.cols());
            for x in a.iter().chain(b) {
                if (x.rows(), x.cols()) != shape {
                    return Err(MatrixError::ShapeMismatch(
                        x.rows(),
                        x.cols(),
                        shape.0,
                        shape.1,
                    ));
                }
            }
        }
    }
    let dim = a
        .first()
        .or(b.first())
        .map(|m| m.rows() * m.cols())
        .unwrap_or(0);
    let mut sa = SpanBasis::new(dim);
    let mut sb = SpanBasis::new(dim);
    for m in a {
        sa.insert(&m.flatten());
    }
    for m in b {
        sb.insert(&m.flatten());
    }
    if sa.rank() != sb.rank() {
        return Ok(false);
    }
    Ok(a.iter().all(|m| sb.contains(&m.flatten())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_proportional_rows() {
        let m = Matrix::from_int_rows(&[&[2, 4], &[1, 2]]);
        let (red, pivots) = m.rref();
        assert_eq!(red, Matrix::from_int_rows(&[&[1, 2], &[0, 0]]));
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn rref_identity_fixed() {
        let id = Matrix::identity(3);
        let (red, pivots) = id.rref();
        assert_eq!(red, id);
        assert_eq!(pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_rank_two() {
        // hand row-reduction: rows 1,2,3 of the classic singular matrix
        let m = Matrix::from_int_rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rref_idempotent() {
        let m = Matrix::from_int_rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let (red, _) = m.rref();
        let (red2, _) = red.rref();
        assert_eq!(red, red2);
    }

    #[test]
    fn nullspace_single_equation() {
        let m = Matrix::from_int_rows(&[&[1, 2]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![Scalar::from_int(-2), Scalar::from_int(1)]);
    }

    #[test]
    fn nullspace_trivial_kernel() {
        assert!(Matrix::identity(2).nullspace().is_empty());
    }

    #[test]
    fn nullspace_by_substitution() {
        let m = Matrix::from_int_rows(&[&[1, 1, 1], &[0, 1, 1]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(
            ns[0],
            vec![Scalar::zero(), Scalar::from_int(-1), Scalar::from_int(1)]
        );
        // direct substitution: m * v = 0
        assert!(m.apply(&ns[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn rank_nullity() {
        let m = Matrix::from_int_rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(m.rank() + m.nullspace().len(), m.cols());
    }

    #[test]
    fn span_contains_cases() {
        let e1 = Matrix::from_int_rows(&[&[1, 0]]);
        let e2 = Matrix::from_int_rows(&[&[0, 1]]);
        let v = Matrix::from_int_rows(&[&[2, 0]]);
        assert!(span_contains(std::slice::from_ref(&e1), &v).unwrap());
        assert!(!span_contains(std::slice::from_ref(&e1), &e2).unwrap());
        // solve the 2x2 system: (3,5) in span{(1,1),(1,-1)}
        let a = Matrix::from_int_rows(&[&[1, 1]]);
        let b = Matrix::from_int_rows(&[&[1, -1]]);
        let w = Matrix::from_int_rows(&[&[3, 5]]);
        assert!(span_contains(&[a, b], &w).unwrap());
    }

    #[test]
    fn span_equal_cases() {
        let e = Matrix::from_int_rows(&[&[1, 0], &[0, 1]]);
        let e2 = e.scale(&Scalar::from_int(2));
        assert!(span_equal(std::slice::from_ref(&e), &[e2]).unwrap());
        assert!(span_equal(&[], &[Matrix::zero(2, 2)]).unwrap());
        let a = vec![
            Matrix::from_int_rows(&[&[1, 0]]),
            Matrix::from_int_rows(&[&[0, 1]]),
        ];
        let b = vec![
            Matrix::from_int_rows(&[&[1, 1]]),
            Matrix::from_int_rows(&[&[1, -1]]),
        ];
        assert!(span_equal(&a, &b).unwrap());
    }

    #[test]
    fn span_shape_mismatch_is_error() {
        let a = Matrix::zero(1, 2);
        let b = Matrix::zero(2, 2);
        assert!(span_contains(std::slice::from_ref(&a), &b).is_err());
        assert!(span_equal(std::slice::from_ref(&a), std::slice::from_ref(&b)).is_err());
    }
}
