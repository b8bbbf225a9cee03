//! The space P(h) of weak-curvature tensors: linear maps R^n -> h whose
//! values satisfy the cyclic identity
//! <P(u)v, w> + <P(v)w, u> + <P(w)u, v> = 0.
//! Its image span L(P(h)) decides the weak-Berger property, and a selected
//! family (P_alpha) drives the metric construction.

use crate::lie::{lie_closure, LieError, LieSubalgebra, SkewMatrix};
use crate::matrix::{Matrix, SpanBasis};
use crate::scalar::Scalar;

#[derive(Debug, thiserror::Error)]
pub enum PSpaceError {
    #[error("h is not weak-Berger: L(P(h)) is a proper subspace, no family can generate h")]
    NotWeakBerger,
    #[error("user family member {0} violates the cyclic identity")]
    NotWeakCurvature(usize),
    #[error("user family is linearly dependent")]
    DependentFamily,
    #[error("user family images do not generate h")]
    DoesNotGenerate,
    #[error("family member {0} maps outside h")]
    OutsideAlgebra(usize),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// A weak-curvature tensor, stored as the coordinates of P(e_1)..P(e_n) in
/// basis(h).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeakCurvTensor {
    /// coords[i][t]: coefficient of basis(h)[t] in P(e_{i+1}).
    pub coords: Vec<Vec<Scalar>>,
}

impl WeakCurvTensor {
    pub fn value(&self, h: &LieSubalgebra, i: usize) -> SkewMatrix {
        SkewMatrix::combine(h.basis(), &self.coords[i])
    }

    pub fn values(&self, h: &LieSubalgebra) -> Vec<SkewMatrix> {
        (0..self.coords.len()).map(|i| self.value(h, i)).collect()
    }

    fn flatten(&self) -> Vec<Scalar> {
        self.coords.iter().flatten().cloned().collect()
    }

    /// Checks the cyclic identity on all i < j < k triples. Triples with a
    /// repeated index vanish identically for skew values.
    pub fn satisfies_cyclic_identity(&self, h: &LieSubalgebra) -> bool {
        let n = h.n();
        let values = self.values(h);
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    // <P(e_i) e_j, e_k> + <P(e_j) e_k, e_i> + <P(e_k) e_i, e_j>
                    let s = &values[i].entries()[(k, j)]
                        + &(&values[j].entries()[(i, k)] + &values[k].entries()[(j, i)]);
                    if !s.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Canonical basis of P(h).
///
/// Unknowns are the n * dim(h) coordinates of the values P(e_i), ordered
/// (i, basis index) lexicographically; one scalar equation per unordered
/// triple i < j < k. The basis comes out of the canonical nullspace
/// construction, so it is reproducible across runs.
pub fn pspace_basis(h: &LieSubalgebra) -> Vec<WeakCurvTensor> {
    let n = h.n();
    let dh = h.dim();
    if dh == 0 {
        return Vec::new();
    }
    let ncols = n * dh;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let mut row = vec![Scalar::zero(); ncols];
                for (t, b) in h.basis().iter().enumerate() {
                    let e = b.entries();
                    row[i * dh + t] = e[(k, j)].clone();
                    row[j * dh + t] = e[(i, k)].clone();
                    row[k * dh + t] = e[(j, i)].clone();
                }
                rows.push(row);
            }
        }
    }
    let sys = if rows.is_empty() {
        Matrix::zero(1, ncols)
    } else {
        Matrix::from_rows(rows)
    };
    sys.nullspace()
        .into_iter()
        .map(|v| WeakCurvTensor {
            coords: v.chunks(dh).map(|c| c.to_vec()).collect(),
        })
        .collect()
}

/// Span of all values P(e_i) across the list, as a subspace of h.
pub fn image_span(h: &LieSubalgebra, ps: &[WeakCurvTensor]) -> Vec<SkewMatrix> {
    let mut span = SpanBasis::new(h.n() * h.n());
    let mut out = Vec::new();
    for p in ps {
        for v in p.values(h) {
            if span.insert(&v.entries().flatten()) {
                out.push(v);
            }
        }
    }
    out
}

/// True iff L(P(h)) = h.
pub fn is_weak_berger(h: &LieSubalgebra) -> Result<bool, PSpaceError> {
    let img = image_span(h, &pspace_basis(h));
    let img_mats: Vec<Matrix> = img.iter().map(|m| m.entries().clone()).collect();
    Ok(crate::matrix::span_equal(&img_mats, &h.basis_matrices())
        .map_err(LieError::from)?)
}

/// How to pick the family (P_alpha).
#[derive(Clone, Debug)]
pub enum FamilyStrategy {
    /// The full canonical basis of P(h).
    FullBasis,
    /// Shortest prefix of the canonical basis whose images already
    /// generate h; ties break by canonical order.
    GreedyMinimal,
    /// A user-supplied list, validated against the invariants.
    UserList(Vec<WeakCurvTensor>),
}

/// An ordered family (P_1 .. P_N) with the active dimension n_0.
#[derive(Clone, Debug)]
pub struct PFamily {
    pub h: LieSubalgebra,
    pub members: Vec<WeakCurvTensor>,
    /// Codimension of the fixed subspace of h.
    pub n0: usize,
}

impl PFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// P_alpha(e_i), with alpha and i zero-based here.
    pub fn value(&self, alpha: usize, i: usize) -> SkewMatrix {
        self.members[alpha].value(&self.h, i)
    }
}

pub fn select_family(h: &LieSubalgebra, strategy: FamilyStrategy) -> Result<PFamily, PSpaceError> {
    if !is_weak_berger(h)? {
        return Err(PSpaceError::NotWeakBerger);
    }
    let n0 = h.n() - crate::lie::fixed_subspace(h).len();
    let members = match strategy {
        FamilyStrategy::FullBasis => pspace_basis(h),
        FamilyStrategy::GreedyMinimal => {
            let basis = pspace_basis(h);
            let mut chosen = Vec::new();
            for p in basis {
                chosen.push(p);
                let gens: Vec<SkewMatrix> = chosen
                    .iter()
                    .flat_map(|q| q.values(h))
                    .filter(|v| !v.is_zero())
                    .collect();
                if lie_closure(&gens)?.span_equals(h)? {
                    break;
                }
            }
            chosen
        }
        FamilyStrategy::UserList(list) => {
            let mut span = SpanBasis::new(h.n() * h.dim());
            for (idx, p) in list.iter().enumerate() {
                if p.coords.len() != h.n() || p.coords.iter().any(|c| c.len() != h.dim()) {
                    return Err(PSpaceError::OutsideAlgebra(idx));
                }
                if !p.satisfies_cyclic_identity(h) {
                    return Err(PSpaceError::NotWeakCurvature(idx));
                }
                if !span.insert(&p.flatten()) {
                    return Err(PSpaceError::DependentFamily);
                }
            }
            let gens: Vec<SkewMatrix> = list
                .iter()
                .flat_map(|q| q.values(h))
                .filter(|v| !v.is_zero())
                .collect();
            if h.dim() > 0 && !lie_closure(&gens)?.span_equals(h)? {
                return Err(PSpaceError::DoesNotGenerate);
            }
            list
        }
    };
    Ok(PFamily {
        h: h.clone(),
        members,
        n0,
    })
}

/// Builds a WeakCurvTensor from explicit values P(e_i) in h.
pub fn tensor_from_values(
    h: &LieSubalgebra,
    values: &[SkewMatrix],
) -> Result<WeakCurvTensor, PSpaceError> {
    let coords = values
        .iter()
        .enumerate()
        .map(|(i, v)| h.coordinates(v).ok_or(PSpaceError::OutsideAlgebra(i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WeakCurvTensor { coords })
}
