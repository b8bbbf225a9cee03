//! Materializes the four normal forms over an so(2) block and recovers
//! their structure with the classifier.

use holonomy_forge::holonomy::classify;
use holonomy_forge::lie::{target_algebra, LieSubalgebra, SkewMatrix};

fn main() {
    for (tag, n, m) in [(1u8, 3, None), (2, 3, None), (3, 2, None), (4, 3, Some(2))] {
        let h = LieSubalgebra::new(n, vec![SkewMatrix::e(n, 1, 2)]).expect("so(2) block");
        let target = target_algebra(tag, &h, None, m, None).expect("normal form exists");
        let c = classify(n, &target.basis).expect("inside the parabolic model");
        println!(
            "type {tag}: dim = {}, classified as type {} with dim h = {}{}",
            target.basis.len(),
            c.type_tag,
            c.h.dim(),
            match c.m {
                Some(m) => format!(", m = {m}"),
                None => String::new(),
            }
        );
    }
}
