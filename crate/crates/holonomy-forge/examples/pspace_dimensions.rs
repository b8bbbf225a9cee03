//! Dimensions of the weak-curvature spaces P(h) for the catalog algebras.

use holonomy_forge::forge::{g2_basis, so3_rho_basis, spin7_basis};
use holonomy_forge::lie::LieSubalgebra;
use holonomy_forge::pspace::pspace_basis;

fn main() {
    for (name, n, basis) in [
        ("g2 in so(7)", 7, g2_basis()),
        ("spin(7) in so(8)", 8, spin7_basis()),
        ("rho(so(3)) in so(5)", 5, so3_rho_basis()),
    ] {
        let h = LieSubalgebra::new(n, basis).expect("catalog basis closes");
        let p = pspace_basis(&h);
        println!("dim P({name}) = {} (dim h = {})", p.len(), h.dim());
    }
}
