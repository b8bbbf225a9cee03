//! Exact construction and certification of the Lorentzian metrics realizing
//! the weakly-irreducible not irreducible holonomy algebras.
//!
//! Given a Riemannian holonomy algebra h in so(n) as a basis of skew
//! matrices, the crate forges polynomial metrics whose holonomy at the
//! origin is one of the four normal forms over h, then certifies the
//! construction independently by computing curvature, covariant
//! derivatives, and the generated holonomy algebra, all in exact
//! arithmetic.
//!
//! See the `examples/` directory for one runnable example per capability,
//! and the thin `holonomy-forge` binary for the pipeline commands.

pub mod curvature;
pub mod forge;
pub mod holonomy;
pub mod jsonio;
pub mod lie;
pub mod matrix;
pub mod poly;
pub mod pspace;
pub mod scalar;

pub use forge::{assemble_metric, builtin, MetricSpec};
pub use holonomy::{generate_holonomy, verify, HolonomyCertificate, Verdict};
pub use lie::{lie_closure, standard_skew_basis, LieSubalgebra, LorTriple, SkewMatrix};
pub use matrix::Matrix;
pub use poly::Poly;
pub use pspace::{is_weak_berger, pspace_basis, select_family, FamilyStrategy, PFamily};
pub use scalar::Scalar;
