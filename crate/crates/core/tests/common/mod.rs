//! Strategies and property bodies shared by the property tests and the
//! acceptance runner.

#![allow(dead_code)]

use chernkit::chernalg::{Base, VirtualBundle};
use chernkit::exactpoly::{Poly, Ring, VarTable};
use chernkit::schwarz::{power_sums, ChernTuple};
use chernkit::steenrod::{adem_P2, steenrod_p};
use chernkit::symroots::RootContext;
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRng, TestRunner};

/// Exponent vectors of total degree `d` for variables of the given degrees.
pub fn monomials_of_degree(degrees: &[u32], d: u32) -> Vec<Vec<u32>> {
    fn go(degrees: &[u32], d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        match degrees.split_first() {
            None => {
                if d == 0 {
                    out.push(prefix.clone());
                }
            }
            Some((&w, rest)) => {
                for e in 0..=d / w {
                    prefix.push(e);
                    go(rest, d - e * w, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(degrees, d, &mut Vec::new(), &mut out);
    out
}

/// Homogeneous polynomial of degree `d` from `(index, coefficient)` picks.
pub fn build(table: &VarTable, ring: &Ring, d: u32, picks: &[(usize, i64)]) -> Poly {
    let mons = monomials_of_degree(table.degrees(), d);
    picks.iter().fold(Poly::zero(table, ring), |acc, &(i, c)| {
        acc + Poly::monomial(table, ring, &mons[i % mons.len()], c)
    })
}

/// A homogeneous polynomial in `c1..c_rank` of degree `2 * half`.
pub fn homogeneous(
    ring: Ring,
    ranks: std::ops::RangeInclusive<usize>,
    max_half: u32,
) -> impl Strategy<Value = (usize, Poly)> {
    (ranks, 1..=max_half).prop_flat_map(move |(rank, half)| {
        let ring = ring.clone();
        prop::collection::vec((0usize..10_000, -4i64..=4), 1..5).prop_map(move |picks| {
            let table = VarTable::chern(rank);
            (rank, build(&table, &ring, 2 * half, &picks))
        })
    })
}

/// Any polynomial in `c1..c_rank` with degree at most `2 * max_half`.
pub fn any_poly(ring: Ring, rank: usize, max_half: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((0..=max_half, 0usize..10_000, -6i64..=6), 0..6).prop_map(move |terms| {
        let table = VarTable::chern(rank);
        terms.iter().fold(Poly::zero(&table, &ring), |acc, &(h, i, c)| {
            acc + build(&table, &ring, 2 * h, &[(i, c)])
        })
    })
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

#[allow(clippy::eq_op)]
pub fn ring_axioms((a, b, c): (Poly, Poly, Poly)) -> Result<(), TestCaseError> {
    let one = Poly::one(a.table(), a.ring());
    check(&a + &b == &b + &a, || "a + b != b + a".into())?;
    check(&a * &b == &b * &a, || "ab != ba".into())?;
    check((&a + &b) + c.clone() == &a + &(&b + &c), || {
        "+ not associative".into()
    })?;
    check((&a * &b) * c.clone() == &a * &(&b * &c), || {
        "* not associative".into()
    })?;
    check(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || {
        "not distributive".into()
    })?;
    check((&a - &a).is_zero(), || "a - a != 0".into())?;
    check(&a * &one == a, || "a * 1 != a".into())
}

pub fn leibniz((f, g): (Poly, Poly)) -> Result<(), TestCaseError> {
    let p1 = |x: &Poly| steenrod_p(x, 1, 3, 3).map_err(|e| TestCaseError::fail(e.to_string()));
    let lhs = p1(&(&f * &g))?;
    let ring = lhs.ring().clone();
    let (f3, g3) = (f.to_ring(&ring).unwrap(), g.to_ring(&ring).unwrap());
    let rhs = &p1(&f)? * &g3 + &f3 * &p1(&g)?;
    check(lhs == rhs, || format!("P1({f} * {g}): {lhs} vs {rhs}"))
}

pub fn adem((rank, p): (usize, Poly)) -> Result<(), TestCaseError> {
    adem_P2(&p, rank, 3)
        .map(|_| ())
        .map_err(|e| TestCaseError::fail(e.to_string()))
}

pub fn symmetrization_round_trip((rank, p): (usize, Poly)) -> Result<(), TestCaseError> {
    let ctx = RootContext::new(rank, p.ring()).unwrap();
    let back = ctx
        .to_elementary(&ctx.lift_to_roots(&p).unwrap())
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    check(back == p, || format!("{p} came back as {back}"))
}

/// Power sums from Chern numbers against powers of integer roots.
pub fn newton_vs_roots(roots: Vec<i64>) -> Result<(), TestCaseError> {
    const K: usize = 8;
    // e_k of the roots, padded with zeros up to K
    let mut e = vec![BigInt::from(1)];
    for &r in &roots {
        let mut next = e.clone();
        next.push(BigInt::from(0));
        for k in 1..next.len() {
            next[k] += &e[k - 1] * r;
        }
        e = next;
    }
    e.resize(K + 1, BigInt::from(0));
    let s = power_sums(&ChernTuple::new(e[1..].to_vec()).unwrap());
    for k in 1..=K {
        let direct: BigInt = roots.iter().map(|&r| BigInt::from(r).pow(k as u32)).sum();
        check(s[k - 1] == direct, || {
            format!("s{k} of {roots:?}: {} vs {direct}", s[k - 1])
        })?;
    }
    Ok(())
}

/// `c(V) c(-V) = 1` for a random total class on a formal base.
pub fn inverse_cancels((total, truncation): (Poly, u32)) -> Result<(), TestCaseError> {
    let base = Base::formal(total.table(), truncation);
    let v = VirtualBundle::new(2, &base, total).unwrap();
    let prod = v.sum(&v.negative()).unwrap();
    check(prod.total_class().is_one(), || {
        format!("c(V)c(-V) = {}", prod.total_class())
    })?;
    check(v.negative().negative() == v, || "-(-V) != V".into())
}

pub fn random_bundle() -> impl Strategy<Value = (Poly, u32)> {
    (any_poly(Ring::Integers, 3, 5), 2u32..=12).prop_map(|(p, n)| {
        let one = Poly::one(p.table(), p.ring());
        // drop the constant term so the class starts with 1
        let c0 = p.homogeneous_component(0);
        (one + p - c0, n)
    })
}

pub fn line_bundle_inverse(degrees: Vec<i64>) -> Result<(), TestCaseError> {
    let v = VirtualBundle::line_bundle_sum_total(&degrees, 5);
    check(v.sum(&v.negative()).unwrap().total_class().is_one(), || {
        format!("{degrees:?}")
    })
}

/// Runs `test` on `cases` deterministic inputs; `Err` carries the minimal failure.
pub fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::deterministic_rng(config.rng_algorithm);
    let mut runner = TestRunner::new_with_rng(config, rng);
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

pub type Suite = Box<dyn Fn() -> Result<(), String>>;

/// Named property suites with their case counts.
pub fn suites() -> Vec<(&'static str, Suite)> {
    let z = Ring::Integers;
    let f7 = Ring::modular(7).unwrap();
    vec![
        (
            "ring axioms over Z",
            Box::new(move || {
                run(
                    100,
                    (
                        any_poly(z.clone(), 3, 3),
                        any_poly(z.clone(), 3, 3),
                        any_poly(z.clone(), 3, 3),
                    ),
                    ring_axioms,
                )
            }),
        ),
        (
            "ring axioms over Z/7",
            Box::new(move || {
                run(
                    100,
                    (
                        any_poly(f7.clone(), 2, 3),
                        any_poly(f7.clone(), 2, 3),
                        any_poly(f7.clone(), 2, 3),
                    ),
                    ring_axioms,
                )
            }),
        ),
        (
            "Cartan/Leibniz for P1 on 200 pairs",
            Box::new(|| {
                let f3 = Ring::modular(3).unwrap();
                let one = || homogeneous(f3.clone(), 3..=3, 4).prop_map(|(_, p)| p);
                run(200, (one(), one()), leibniz)
            }),
        ),
        (
            "Adem P1P1 = 2P2, degree <= 16, rank <= 5",
            Box::new(|| run(64, homogeneous(Ring::modular(3).unwrap(), 1..=5, 8), adem)),
        ),
        (
            "symmetrization round trip, n <= 5",
            Box::new(|| {
                let s =
                    (1usize..=5).prop_flat_map(|n| any_poly(Ring::Integers, n, 5).prop_map(move |p| (n, p)));
                run(100, s, symmetrization_round_trip)
            }),
        ),
        (
            "Newton identities vs integer roots, n <= 6, k <= 8",
            Box::new(|| run(100, prop::collection::vec(-9i64..=9, 1..=6), newton_vs_roots)),
        ),
        (
            "c(V) c(-V) = 1 on 100 virtual bundles",
            Box::new(|| run(100, random_bundle(), inverse_cancels)),
        ),
        (
            "c(V) c(-V) = 1 for line bundle sums on CP^5",
            Box::new(|| {
                run(
                    100,
                    prop::collection::vec(-20i64..=20, 0..=6),
                    line_bundle_inverse,
                )
            }),
        ),
    ]
}
