//! Christoffel symbols and curvature components of a small type-4 metric,
//! printed exactly.

use holonomy_forge::curvature::{christoffel, covariant_derivative, metric_matrix, riemann};
use holonomy_forge::forge::assemble_metric;
use holonomy_forge::lie::{LieSubalgebra, SkewMatrix};
use holonomy_forge::pspace::FamilyStrategy;

fn main() {
    // h = span{E12} in so(4), type 4 with m = 3
    let h = LieSubalgebra::new(4, vec![SkewMatrix::e(4, 1, 2)]).expect("so(2) block");
    let spec =
        assemble_metric(&h, FamilyStrategy::GreedyMinimal, 4, None, Some(3), None).expect("forge");
    let mm = metric_matrix(&spec).expect("invertible");
    let ct = christoffel(&mm);
    let nv = spec.n + 2;
    println!("non-zero Christoffel symbols:");
    for b in 0..nv {
        for c in 0..nv {
            for d in c..nv {
                if !ct.gamma[b][c][d].is_zero() {
                    println!("  Gamma^{b}_{{{c},{d}}} = {}", ct.gamma[b][c][d]);
                }
            }
        }
    }
    let r0 = riemann(&ct);
    println!("non-zero curvature components (order 0):");
    let mut keys: Vec<_> = r0.components.keys().cloned().collect();
    keys.sort();
    for k in keys {
        // antisymmetry makes the d > f half redundant
        if k[2] < k[3] {
            println!(
                "  R^{}_{{{},{},{}}} = {}",
                k[0],
                k[1],
                k[2],
                k[3],
                r0.component(&k)
            );
        }
    }
    let r1 = covariant_derivative(&r0, &ct);
    println!("order-1 table has {} non-zero components", r1.components.len());
}
