//! Acceptance criteria 1-8. Prints one line per criterion and exits nonzero
//! if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use chernkit::chernalg::VirtualBundle;
use chernkit::classifier::{act, count_types, enumerate_types, realizable, SigmaAction, Zmod3};
use chernkit::exactpoly::{Poly, Ring, Substitution, VarTable};
use chernkit::schwarz::{equivalence_scan, f_polynomial, symbolic_power_sums};
use chernkit::steenrod::{steenrod_p, thom_multiplier, P1Algebra};
use chernkit::verify::{check_d11_chain, check_thom_module_lists, CheckReport};
use num_bigint::BigInt;

type Outcome = Result<String, String>;

fn f3() -> Ring {
    Ring::modular(3).unwrap()
}

fn expect(failures: &mut Vec<String>, name: &str, got: &Poly, want: &Poly) {
    if got != want {
        failures.push(format!("{name}: got {got}, want {want}"));
    }
}

fn finish(failures: Vec<String>, ok: String) -> Outcome {
    if failures.is_empty() {
        Ok(ok)
    } else {
        Err(failures.join("; "))
    }
}

fn steenrod_formulas() -> Outcome {
    let mut bad = Vec::new();
    let c3 = VarTable::chern(3);
    let c4 = VarTable::chern(4);
    let p = |s: &str, t: &VarTable| Poly::parse(s, t, &f3()).unwrap();
    let p1 = |s: &str, t: &VarTable, rank| steenrod_p(&p(s, t), 1, rank, 3).unwrap();
    expect(
        &mut bad,
        "P1 c2 rank 3",
        &p1("c2", &c3, 3),
        &p("c1^2*c2 + c2^2 - c1*c3", &c3),
    );
    expect(
        &mut bad,
        "P1 c2 rank 4",
        &p1("c2", &c4, 4),
        &p("c1^2*c2 + c2^2 - c1*c3 + c4", &c4),
    );
    expect(&mut bad, "P1 c3", &p1("c3", &c3, 3), &p("c3*(c1^2 + c2)", &c3));
    expect(&mut bad, "P1 c1^2", &p1("c1^2", &c4, 4), &p("-c1^4", &c4));

    let g4 = VirtualBundle::universal(4, 8, &Ring::Integers);
    let factor = |v: &VirtualBundle| thom_multiplier(v, 3).unwrap().homogeneous_component(4);
    let base = P1Algebra::chern(4, 3).unwrap();
    let pos = base.with_thom_class("u", &factor(&g4)).unwrap();
    let neg = base.with_thom_class("u", &factor(&g4.negative())).unwrap();
    let tu = pos.table().clone();
    let u = p("u", &tu);
    expect(
        &mut bad,
        "P1 u(gamma4)",
        &pos.p1(&u).unwrap(),
        &p("(c1^2 + c2)*u", &tu),
    );
    expect(
        &mut bad,
        "P1 u(-gamma4)",
        &neg.p1(&u).unwrap(),
        &p("-(c1^2 + c2)*u", &tu),
    );
    expect(
        &mut bad,
        "P1P1 u(-gamma4)",
        &neg.p1p1(&u).unwrap(),
        &p("-(c1^4 - c1^2*c2 - c1*c3 + c4)*u", &tu),
    );

    // c1 = 0: rank 4 for u~, rank 3 for u
    for rank in [4usize, 3] {
        let alg = P1Algebra::chern_c1_zero(rank, 3).unwrap();
        let gn = VirtualBundle::universal(rank, 8, &Ring::Integers).negative();
        let kill = Substitution::identity(alg.table(), &f3())
            .with("c1", Poly::zero(alg.table(), &f3()))
            .unwrap();
        let m1 = factor(&gn).substitute(&kill).unwrap();
        let thom = alg.with_thom_class("u", &m1).unwrap();
        let t = thom.table().clone();
        let want = if rank == 4 {
            p("-c4*u", &t)
        } else {
            Poly::zero(&t, &f3())
        };
        expect(
            &mut bad,
            &format!("P1P1 u, rank {rank}, c1 = 0"),
            &thom.p1p1(&p("u", &t)).unwrap(),
            &want,
        );
    }
    finish(bad, "8 identities".to_string())
}

fn series_inversion() -> Outcome {
    let mut bad = Vec::new();
    let t = VarTable::chern(4);
    let z = |s: &str| Poly::parse(s, &t, &Ring::Integers).unwrap();
    let neg = VirtualBundle::universal(4, 8, &Ring::Integers).negative();
    let line = z("1 - c1 + (c1^2 - c2) + (-c1^3 + 2*c1*c2 - c3) + (c1^4 - 3*c1^2*c2 + c2^2 + 2*c3*c1 - c4)");
    for k in 1..=4u32 {
        expect(
            &mut bad,
            &format!("c{k}(-gamma4)"),
            &neg.chern_class(k),
            &line.homogeneous_component(2 * k),
        );
    }
    let display = Poly::parse("c1^4 + c2^2 - c3*c1 - c4", &t, &f3()).unwrap();
    expect(
        &mut bad,
        "c4 mod 3",
        &neg.chern_class(4).reduce_mod(3).unwrap(),
        &display,
    );
    finish(bad, "c1..c4 over Z, c4 mod 3".to_string())
}

fn schwarzenberger_scan() -> Outcome {
    let r = equivalence_scan(120);
    let summary = format!(
        "{} triples, {} explicit disagreements, {} derived disagreements, {} f5 failures",
        r.triples, r.explicit_mismatches, r.derived_mismatches, r.f5_mod5_failures
    );
    if r.pass() {
        Ok(summary)
    } else {
        let ex: Vec<String> = r
            .explicit_examples
            .iter()
            .take(3)
            .map(|m| format!("{:?} system={} S5={}", m.a, m.system, m.s5))
            .collect();
        Err(format!("{summary}; e.g. {}", ex.join(", ")))
    }
}

fn tables() -> Outcome {
    let mut bad = Vec::new();
    let t = VarTable::new([("a1", 2), ("a2", 4), ("a3", 6)]).unwrap();
    let want = [
        "a1",
        "a1^2 - 2*a2",
        "a1^3 - 3*a1*a2 + 3*a3",
        "a1^4 - 4*a1^2*a2 + 4*a1*a3 + 2*a2^2",
        "a1^5 - 5*a1^3*a2 + 5*a1^2*a3 + 5*a1*a2^2 - 5*a2*a3",
    ];
    for (k, (s, w)) in symbolic_power_sums(3, 5).iter().zip(want).enumerate() {
        let w = Poly::parse(w, &t, &Ring::Integers).unwrap();
        match s.retable(&t) {
            Ok(s) => expect(&mut bad, &format!("s{}", k + 1), &s, &w),
            Err(e) => bad.push(format!("s{}: {e}", k + 1)),
        }
    }
    // coefficients of s_1..s_n; f2 = s2 - s1
    let fs: [&[i64]; 4] = [&[-1, 1], &[2, -3, 1], &[-6, 11, -6, 1], &[24, -50, 35, -10, 1]];
    for (n, w) in (2..).zip(fs) {
        let got = f_polynomial(n);
        let w: Vec<BigInt> = w.iter().map(|&x| x.into()).collect();
        if got != w {
            bad.push(format!("f{n}: got {got:?}, want {w:?}"));
        }
    }
    finish(bad, "s1..s5 and f2..f5".to_string())
}

fn report(r: CheckReport) -> Outcome {
    let s = r.summary();
    if r.pass() {
        Ok(format!("{} checks", s.passed))
    } else {
        let names: Vec<String> = r.failures().map(|i| i.name.clone()).collect();
        Err(format!("failed: {}", names.join(", ")))
    }
}

fn classification() -> Outcome {
    let mut bad = Vec::new();
    let mut counts = [0u64; 4];
    for x in 0..30i64 {
        for y in 0..30i64 {
            for z in 0..30i64 {
                let (a1, a2, a3) = (BigInt::from(x), BigInt::from(y), BigInt::from(z));
                let n = count_types(&a1, &a2, &a3);
                counts[n as usize] += 1;
                let want = match (realizable(&a1, &a2, &a3), x % 3 == 0 && y % 3 == 0) {
                    (false, _) => 0,
                    (true, true) => 3,
                    (true, false) => 1,
                };
                if n != want && bad.len() < 5 {
                    bad.push(format!("({x}, {y}, {z}): {n} vs {want}"));
                }
            }
        }
    }
    // torsor: identity, compatibility, free on rho-orbits, trivial otherwise
    let sigmas: Vec<SigmaAction> = Zmod3::ALL.iter().map(|&z| SigmaAction(z)).collect();
    let e = sigmas[0];
    for a in [[0i64, 0, 0], [3, 0, 0], [1, 0, 0], [0, 3, 6], [6, 9, 3]] {
        let [a1, a2, a3] = a.map(BigInt::from);
        for t in enumerate_types(&a1, &a2, &a3) {
            if act(e, &t) != t {
                bad.push(format!("identity moves {t}"));
            }
            for &g in &sigmas {
                for &h in &sigmas {
                    if act(g, &act(h, &t)) != act(g.compose(h), &t) {
                        bad.push(format!("action not compatible at {t}"));
                    }
                }
                let fixed = act(g, &t) == t;
                let expected_fixed = t.rho().is_none() || g == e;
                if fixed != expected_fixed {
                    bad.push(format!("freeness/triviality fails at {t}"));
                }
            }
        }
    }
    finish(
        bad,
        format!(
            "[0,30)^3: {} with 3 types, {} with 1, {} unrealizable",
            counts[3], counts[1], counts[0]
        ),
    )
}

fn properties() -> Outcome {
    let mut bad = Vec::new();
    let suites = common::suites();
    let n = suites.len();
    for (name, suite) in suites {
        if let Err(e) = suite() {
            bad.push(format!("{name}: {e}"));
        }
    }
    finish(bad, format!("{n} suites"))
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, fn() -> Outcome, Option<Duration>);
    let criteria: [Criterion; 8] = [
        (
            1,
            "Steenrod formula suite",
            steenrod_formulas,
            Some(Duration::from_secs(1)),
        ),
        (
            2,
            "series inversion",
            series_inversion,
            Some(Duration::from_secs(1)),
        ),
        (
            3,
            "Schwarzenberger equivalence on [0,120)^3",
            schwarzenberger_scan,
            None,
        ),
        (
            4,
            "power sum and f_n tables",
            tables,
            Some(Duration::from_secs(1)),
        ),
        (
            5,
            "d11 chain",
            || report(check_d11_chain().unwrap()),
            Some(Duration::from_secs(1)),
        ),
        (
            6,
            "Thom module lists",
            || report(check_thom_module_lists().unwrap()),
            Some(Duration::from_secs(1)),
        ),
        (7, "classification", classification, Some(Duration::from_secs(10))),
        (8, "property suites", properties, Some(Duration::from_secs(30))),
    ];
    let mut failed = 0;
    for (n, title, run, limit) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let took = start.elapsed();
        if let (Ok(msg), Some(limit)) = (&outcome, limit) {
            if took > limit {
                outcome = Err(format!("{msg}, but took longer than {limit:?}"));
            }
        }
        let (tag, detail) = match &outcome {
            Ok(m) => ("PASS", m),
            Err(m) => ("FAIL", m),
        };
        println!(
            "[{tag}] criterion {n}: {title} ({:.2}s): {detail}",
            took.as_secs_f64()
        );
        failed += outcome.is_err() as u32;
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
