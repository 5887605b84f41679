mod common;

use chernkit::chernalg::VirtualBundle;
use chernkit::classifier::{act, count_types, enumerate_types, realizable, SigmaAction, Zmod3};
use chernkit::exactpoly::{parse_expr, Poly, Ring, VarTable};
use chernkit::schwarz::{derived_s5_check, s_k_check, ChernTuple};
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn shared_suites() {
    for (name, suite) in common::suites() {
        if let Err(e) = suite() {
            panic!("{name}: {e}");
        }
    }
}

fn triple() -> impl Strategy<Value = (BigInt, BigInt, BigInt)> {
    (-500i64..500, -500i64..500, -500i64..500).prop_map(|(a, b, c)| (a.into(), b.into(), c.into()))
}

fn sigma() -> impl Strategy<Value = SigmaAction> {
    (0i64..3).prop_map(|k| SigmaAction(Zmod3::new(k)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn whitney_sum_is_commutative_and_associative(
        a in prop::collection::vec(-9i64..9, 0..4),
        b in prop::collection::vec(-9i64..9, 0..4),
        c in prop::collection::vec(-9i64..9, 0..4),
    ) {
        let (x, y, z) = (
            VirtualBundle::line_bundle_sum_total(&a, 5),
            VirtualBundle::line_bundle_sum_total(&b, 5),
            VirtualBundle::line_bundle_sum_total(&c, 5),
        );
        prop_assert_eq!(x.sum(&y).unwrap(), y.sum(&x).unwrap());
        prop_assert_eq!(x.sum(&y).unwrap().sum(&z).unwrap(), x.sum(&y.sum(&z).unwrap()).unwrap());
        prop_assert_eq!(x.dual().dual(), x.clone());
        let neg: Vec<i64> = a.iter().map(|d| -d).collect();
        prop_assert_eq!(x.dual(), VirtualBundle::line_bundle_sum_total(&neg, 5));
    }

    #[test]
    fn line_bundle_chern_classes_are_elementary_symmetric(a in prop::collection::vec(-30i64..30, 0..6)) {
        let v = VirtualBundle::line_bundle_sum_total(&a, 5);
        let c = v.chern_numbers().unwrap();
        for k in 1..=5usize {
            let mut e = BigInt::from(0);
            for mask in 0u32..(1 << a.len()) {
                if mask.count_ones() as usize == k {
                    e += (0..a.len()).filter(|i| mask >> i & 1 == 1).map(|i| BigInt::from(a[i])).product::<BigInt>();
                }
            }
            prop_assert_eq!(&c[k - 1], &e);
        }
    }

    #[test]
    fn counts_follow_residues((a1, a2, a3) in triple()) {
        let n = count_types(&a1, &a2, &a3);
        prop_assert_eq!(n > 0, realizable(&a1, &a2, &a3));
        prop_assert_eq!(enumerate_types(&a1, &a2, &a3).len(), n as usize);
        if n > 0 {
            let three = BigInt::from(3);
            let div = (&a1 % &three == BigInt::from(0)) && (&a2 % &three == BigInt::from(0));
            prop_assert_eq!(n, if div { 3 } else { 1 });
        }
    }

    #[test]
    fn derived_congruences_match_s5((a1, a2, a3) in triple()) {
        let s5 = s_k_check(&ChernTuple::padded_rank3(&a1, &a2, &a3)).pass;
        prop_assert_eq!(derived_s5_check(&a1, &a2, &a3).pass, s5);
    }

    #[test]
    fn torsor_action((a1, a2, a3) in triple(), g in sigma(), h in sigma()) {
        let identity = SigmaAction(Zmod3::new(0));
        for t in enumerate_types(&a1, &a2, &a3) {
            prop_assert_eq!(act(identity, &t), t.clone());
            prop_assert_eq!(act(g, &act(h, &t)), act(g.compose(h), &t));
            match t.rho() {
                // free on the three-element orbits
                Some(_) => prop_assert_eq!(act(g, &t) == t, g == identity),
                None => prop_assert_eq!(act(g, &t), t.clone()),
            }
        }
    }

    #[test]
    fn display_round_trips(p in common::any_poly(Ring::Integers, 4, 4)) {
        let again = Poly::parse(&p.to_string(), &VarTable::chern(4), &Ring::Integers).unwrap();
        prop_assert_eq!(again, p);
    }

    #[test]
    fn parser_never_panics(s in "[c0-9t+*^() u-]{0,24}") {
        let _ = parse_expr(&s);
    }
}
