//! Randomized invariant checks. Case counts are kept modest: each case
//! forges a metric and runs the symbolic curvature engine.

use holonomy_forge::curvature::{christoffel, metric_matrix, riemann};
use holonomy_forge::forge::{a_coeffs, assemble_metric, p_components, recover_family};
use holonomy_forge::lie::lie_closure;
use holonomy_forge::pspace::{select_family, tensor_from_values, FamilyStrategy};
use holonomy_forge::{jsonio, LieSubalgebra, Scalar, SkewMatrix};

use proptest::prelude::*;

/// Coefficients of an N = 2 family over the so(2) block in so(3):
/// P_alpha(e_1) = c_alpha E_12, P_alpha(e_2) = d_alpha E_12, P(e_3) = 0
/// (forced by the cyclic identity), with the two members independent.
fn family_coeffs() -> impl Strategy<Value = (i64, i64, i64, i64)> {
    (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3)
        .prop_filter("members must be independent and generating", |(c1, c2, d1, d2)| {
            c1 * d2 - c2 * d1 != 0
        })
}

fn block_family(c1: i64, c2: i64, d1: i64, d2: i64) -> holonomy_forge::PFamily {
    let h = LieSubalgebra::new(3, vec![SkewMatrix::e(3, 1, 2)]).unwrap();
    let e = SkewMatrix::e(3, 1, 2);
    let mk = |a: i64, b: i64| {
        tensor_from_values(
            &h,
            &[
                e.scale(&Scalar::from_int(a)),
                e.scale(&Scalar::from_int(b)),
                SkewMatrix::zero(3),
            ],
        )
        .unwrap()
    };
    select_family(&h, FamilyStrategy::UserList(vec![mk(c1, c2), mk(d1, d2)])).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// a^k_{alpha j i} is symmetric in (j, i), and the components of
    /// P_alpha come back via P^k_{ji} = (alpha - 1)! (a^k_{ji} - a^j_{ki}).
    #[test]
    fn a_coeff_identities((c1, c2, d1, d2) in family_coeffs()) {
        let fam = block_family(c1, c2, d1, d2);
        let a = a_coeffs(&fam);
        let p = p_components(&fam);
        for alpha in 0..fam.len() {
            let fact = Scalar::factorial(alpha);
            for k in 0..fam.n0 {
                for j in 0..fam.n0 {
                    for i in 0..fam.n0 {
                        prop_assert_eq!(&a.0[alpha][k][j][i], &a.0[alpha][k][i][j]);
                        prop_assert_eq!(
                            (&a.0[alpha][k][j][i] - &a.0[alpha][j][k][i]) * fact.clone(),
                            p[alpha][k][j][i].clone()
                        );
                    }
                }
            }
        }
    }

    /// The family comes back from the forged u-polynomials alone.
    #[test]
    fn family_recovery_round_trip((c1, c2, d1, d2) in family_coeffs()) {
        let h = LieSubalgebra::new(3, vec![SkewMatrix::e(3, 1, 2)]).unwrap();
        let fam = block_family(c1, c2, d1, d2);
        let spec =
            assemble_metric(&h, FamilyStrategy::UserList(fam.members.clone()), 2, None, None, None)
                .unwrap();
        let back = recover_family(&h, &spec.u).unwrap();
        for alpha in 0..fam.len() {
            for i in 0..fam.n0 {
                prop_assert_eq!(fam.value(alpha, i), back.value(alpha, i));
            }
        }
    }

    /// First-kind antisymmetry in the last pair and the first Bianchi
    /// identity for the curvature of a forged metric of each type.
    #[test]
    fn curvature_symmetries((c1, c2, d1, d2) in family_coeffs(), tag in 1u8..=4) {
        let h = LieSubalgebra::new(3, vec![SkewMatrix::e(3, 1, 2)]).unwrap();
        let fam = block_family(c1, c2, d1, d2);
        let m = if tag == 4 { Some(2) } else { None };
        let spec =
            assemble_metric(&h, FamilyStrategy::UserList(fam.members), tag, None, m, None)
                .unwrap();
        let nv = spec.n + 2;
        let r0 = riemann(&christoffel(&metric_matrix(&spec).unwrap()));
        for b in 0..nv {
            for c in 0..nv {
                for d in 0..nv {
                    for f in 0..nv {
                        prop_assert_eq!(
                            r0.component(&[b, c, d, f]).clone(),
                            r0.component(&[b, c, f, d]).neg()
                        );
                        let mut cyc = r0.component(&[b, c, d, f]).clone();
                        cyc.add_assign(r0.component(&[b, d, f, c]));
                        cyc.add_assign(r0.component(&[b, f, c, d]));
                        prop_assert!(cyc.is_zero());
                    }
                }
            }
        }
    }

    /// Closing a span under brackets is idempotent and monotone.
    #[test]
    fn lie_closure_idempotent(pairs in proptest::collection::vec((1usize..=4, 1usize..=4), 1..4)) {
        let gens: Vec<SkewMatrix> = pairs
            .iter()
            .filter(|(i, j)| i != j)
            .map(|&(i, j)| SkewMatrix::e(4, i.min(j), i.max(j)))
            .collect();
        prop_assume!(!gens.is_empty());
        let once = lie_closure(&gens).unwrap();
        let twice = lie_closure(once.basis()).unwrap();
        prop_assert!(once.span_equals(&twice).unwrap());
        prop_assert_eq!(once.dim(), twice.dim());
        for g in &gens {
            prop_assert!(once.coordinates(g).is_some());
        }
    }

    /// Algebra and metric JSON serialization is lossless, and the
    /// serialized form is canonical (a second pass reproduces it).
    #[test]
    fn json_round_trips((c1, c2, d1, d2) in family_coeffs(), tag in 1u8..=4) {
        let h = LieSubalgebra::new(3, vec![SkewMatrix::e(3, 1, 2)]).unwrap();
        let s = jsonio::algebra_to_string(&h, None);
        let (h2, _) = jsonio::algebra_from_str(&s).unwrap();
        prop_assert_eq!(h.basis(), h2.basis());

        let fam = block_family(c1, c2, d1, d2);
        let m = if tag == 4 { Some(2) } else { None };
        let spec =
            assemble_metric(&h, FamilyStrategy::UserList(fam.members), tag, None, m, None)
                .unwrap();
        let s = jsonio::metric_to_string(&spec);
        let spec2 = jsonio::metric_from_str(&s).unwrap();
        prop_assert_eq!(&spec.u, &spec2.u);
        prop_assert_eq!(&spec.f, &spec2.f);
        prop_assert_eq!(spec.type_tag, spec2.type_tag);
        prop_assert_eq!(jsonio::metric_to_string(&spec2), s);
    }
}
