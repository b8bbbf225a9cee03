//! Forges one metric per normal-form type over the so(2) block inside
//! so(3) and prints each in LaTeX shape.

use holonomy_forge::forge::assemble_metric;
use holonomy_forge::lie::{LieSubalgebra, SkewMatrix};
use holonomy_forge::pspace::FamilyStrategy;

fn main() {
    let h = LieSubalgebra::new(3, vec![SkewMatrix::e(3, 1, 2)]).expect("so(2) block");
    for (tag, m) in [(1u8, None), (2, None), (3, None), (4, Some(2))] {
        let spec = assemble_metric(&h, FamilyStrategy::GreedyMinimal, tag, None, m, None)
            .expect("forge succeeds");
        println!("--- type {tag} (n = {}, n0 = {}) ---", spec.n, spec.n0);
        print!("{}", spec.to_latex());
    }
}
