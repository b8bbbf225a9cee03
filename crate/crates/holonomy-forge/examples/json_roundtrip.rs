//! Serializes an algebra, a forged metric, and a holonomy certificate to
//! their JSON documents and parses them back.

use holonomy_forge::forge::builtin;
use holonomy_forge::holonomy::{verify_spec, VerifyOptions};
use holonomy_forge::jsonio;

fn main() {
    let (h, _, spec) = builtin("ikemakhen-so3").expect("catalog");
    let algebra = jsonio::algebra_to_string(&h, Some("rho(so(3))"));
    let (h2, name) = jsonio::algebra_from_str(&algebra).expect("parses");
    println!(
        "algebra: {} bytes, round-trip dim {} as {:?}",
        algebra.len(),
        h2.dim(),
        name.unwrap()
    );

    let metric = jsonio::metric_to_string(&spec);
    let spec2 = jsonio::metric_from_str(&metric).expect("parses");
    println!(
        "metric: {} bytes, round-trip reproduces u: {}",
        metric.len(),
        spec2.u == spec.u
    );

    let cert = verify_spec(&spec, &VerifyOptions::default()).expect("pipeline");
    let text = jsonio::certificate_to_string(&cert);
    let cert2 = jsonio::certificate_from_str(&text).expect("parses");
    println!(
        "certificate: {} bytes, verdict {}, round-trip dim {}",
        text.len(),
        cert.verdict.unwrap(),
        cert2.dim()
    );
}
