//! End-to-end certification of a catalog entry: forge the type-2 metric,
//! generate the holonomy at the origin, and compare with the target.
//!
//! Usage: cargo run --release --example verify_catalog [g2|spin7|ikemakhen-so3]

use holonomy_forge::forge::builtin;
use holonomy_forge::holonomy::{verify_spec, VerifyOptions};

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "g2".into());
    let (h, fam, spec) = builtin(&name).expect("catalog name");
    println!(
        "{name}: h in so({}), dim h = {}, family length N = {}",
        h.n(),
        h.dim(),
        fam.len()
    );
    let cert = verify_spec(&spec, &VerifyOptions::default()).expect("pipeline");
    println!(
        "generated dim = {}, trajectory = {:?}, stabilized = {}",
        cert.dim(),
        cert.dimension_trajectory,
        cert.stabilized
    );
    let class = cert.classified.as_ref().unwrap();
    println!(
        "classified: type {} with dim h = {}",
        class.type_tag,
        class.h.dim()
    );
    println!("verdict: {}", cert.verdict.unwrap());
}
