//! Schwarzenberger integrality conditions for Chern data on `CP^k`.
//!
//! Integers `c1..ck` satisfy `S_k` when `f_n(s_1, .., s_n)` is divisible by
//! `n!` for every `n <= k`, where the `s_i` are Newton power sums of the `c_i`
//! and `f_n` is the linear form with
//! `f_n(s_1..s_n) = f_(n-1)(s_2..s_n) - (n-1) f_(n-1)(s_1..s_(n-1))`.
//!
//! For rank-3 data `(a1, a2, a3, 0, 0)` on `CP^5` two congruence systems are
//! provided: [`explicit_s5_check`], which evaluates the usual four-congruence
//! form, and [`derived_s5_check`], which is equivalent to `S_5`. They
//! differ; [`equivalence_scan`] measures by how much.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactpoly::{Poly, Ring, Substitution, VarTable};
use crate::symroots::RootContext;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchwarzError {
    #[error("a Chern tuple needs at least one entry")]
    Empty,
}

/// Integers `c1..ck`, `k >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ChernTuple(#[serde(with = "crate::bigstr::vec")] Vec<BigInt>);

impl ChernTuple {
    pub fn new(entries: Vec<BigInt>) -> Result<ChernTuple, SchwarzError> {
        if entries.is_empty() {
            return Err(SchwarzError::Empty);
        }
        Ok(ChernTuple(entries))
    }

    pub fn from_i64(entries: &[i64]) -> Result<ChernTuple, SchwarzError> {
        ChernTuple::new(entries.iter().map(|&a| BigInt::from(a)).collect())
    }

    /// `(a1, a2, a3, 0, 0)`.
    pub fn padded_rank3(a1: &BigInt, a2: &BigInt, a3: &BigInt) -> ChernTuple {
        ChernTuple(vec![
            a1.clone(),
            a2.clone(),
            a3.clone(),
            BigInt::zero(),
            BigInt::zero(),
        ])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }
}

/// Power sums `s_1..s_k` by the Newton identities, with `c_j = 0` for `j > k`.
pub fn power_sums(c: &ChernTuple) -> Vec<BigInt> {
    let k = c.len();
    let e = |i: usize| -> BigInt {
        if i <= k {
            c.0[i - 1].clone()
        } else {
            BigInt::zero()
        }
    };
    let mut s: Vec<BigInt> = Vec::with_capacity(k);
    for m in 1..=k {
        let mut acc = e(m) * BigInt::from(m);
        if m % 2 == 0 {
            acc = -acc;
        }
        for i in 1..m {
            let term = e(i) * &s[m - i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        s.push(acc);
    }
    s
}

/// Power sums `s_1..s_k` as polynomials in `a1..a_vars` (`deg ai = 2i`), with
/// `c_j = 0` for `j > vars`.
pub fn symbolic_power_sums(vars: usize, k: usize) -> Vec<Poly> {
    let z = Ring::Integers;
    let ctx = RootContext::new(k.max(vars), &z).expect("positive rank");
    let table = VarTable::new((1..=vars).map(|i| (format!("a{i}"), 2 * i as u32))).expect("distinct names");
    let mut s = Substitution::new(&table, &z);
    for j in 1..=ctx.rank() {
        let image = if j <= vars {
            Poly::var_index(&table, &z, j - 1)
        } else {
            Poly::zero(&table, &z)
        };
        s.set(&format!("c{j}"), image).expect("same table");
    }
    (1..=k)
        .map(|m| {
            ctx.newton_power_sum(m)
                .substitute(&s)
                .expect("all classes assigned")
        })
        .collect()
}

/// Coefficients of `f_n` on `s_1..s_n`.
pub fn f_polynomial(n: usize) -> Vec<BigInt> {
    assert!(n >= 1, "f_n is defined for n >= 1");
    let mut f = vec![BigInt::one()];
    for m in 2..=n {
        let mut next = vec![BigInt::zero(); m];
        for (i, a) in f.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * BigInt::from(m - 1);
        }
        f = next;
    }
    f
}

/// `f_n(s_1..s_n)` for given power sums.
pub fn f_value(n: usize, s: &[BigInt]) -> BigInt {
    f_polynomial(n).iter().zip(s).map(|(a, b)| a * b).sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchwarzEntry {
    pub n: usize,
    #[serde(with = "crate::bigstr")]
    pub value: BigInt,
    #[serde(with = "crate::bigstr")]
    pub modulus: BigInt,
    #[serde(with = "crate::bigstr")]
    pub residue: BigInt,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchwarzReport {
    pub tuple: ChernTuple,
    pub entries: Vec<SchwarzEntry>,
    pub pass: bool,
}

impl SchwarzReport {
    /// First `n` with `f_n` not divisible by `n!`.
    pub fn first_failure(&self) -> Option<usize> {
        self.entries.iter().find(|e| !e.pass).map(|e| e.n)
    }
}

/// Evaluates `f_n` on the power sums and tests divisibility by `n!` for `n <= k`.
pub fn s_k_check(c: &ChernTuple) -> SchwarzReport {
    let s = power_sums(c);
    let mut factorial = BigInt::one();
    let mut entries = Vec::with_capacity(c.len());
    for n in 1..=c.len() {
        factorial *= n;
        let value = f_value(n, &s[..n]);
        let residue = value.mod_floor(&factorial);
        entries.push(SchwarzEntry {
            n,
            pass: residue.is_zero(),
            value,
            modulus: factorial.clone(),
            residue,
        });
    }
    SchwarzReport {
        tuple: c.clone(),
        pass: entries.iter().all(|e| e.pass),
        entries,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Congruence {
    pub label: &'static str,
    pub expression: &'static str,
    pub modulus: u32,
    #[serde(with = "crate::bigstr")]
    pub residue: BigInt,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub congruences: Vec<Congruence>,
    pub pass: bool,
}

struct Rule {
    label: &'static str,
    expression: &'static str,
    modulus: u32,
    eval: fn(&BigInt, &BigInt, &BigInt) -> BigInt,
}

fn run_rules(rules: &[Rule], a1: &BigInt, a2: &BigInt, a3: &BigInt) -> CongruenceReport {
    let congruences: Vec<Congruence> = rules
        .iter()
        .map(|r| {
            let residue = (r.eval)(a1, a2, a3).mod_floor(&BigInt::from(r.modulus));
            Congruence {
                label: r.label,
                expression: r.expression,
                modulus: r.modulus,
                pass: residue.is_zero(),
                residue,
            }
        })
        .collect();
    CongruenceReport {
        pass: congruences.iter().all(|c| c.pass),
        congruences,
    }
}

const EXPLICIT_RULES: [Rule; 4] = [
    Rule {
        label: "f3 mod 2",
        expression: "a3 + a1*a2",
        modulus: 2,
        eval: |a1, a2, a3| a3 + a1 * a2,
    },
    Rule {
        label: "f4 mod 3",
        expression: "-a1^2*a2 + a1*a3 - a2^2 + a2",
        modulus: 3,
        eval: |a1, a2, a3| -(a1 * a1 * a2) + a1 * a3 - a2 * a2 + a2,
    },
    Rule {
        label: "f5 mod 3",
        expression: "a1*a2 - a1^2*a3 - a1*a2^2 + a2*a3 + a1^2*a2 - a1*a3 + a2^2",
        modulus: 3,
        eval: |a1, a2, a3| a1 * a2 - a1 * a1 * a3 - a1 * a2 * a2 + a2 * a3 + a1 * a1 * a2 - a1 * a3 + a2 * a2,
    },
    Rule {
        label: "f5 mod 4",
        expression: "-a1^3*a2 + a1^2*a3 + a1*a2^2 - a2*a3 - a1*a2 + a3",
        modulus: 4,
        eval: |a1, a2, a3| -(a1 * a1 * a1 * a2) + a1 * a1 * a3 + a1 * a2 * a2 - a2 * a3 - a1 * a2 + a3,
    },
];

const DERIVED_RULES: [Rule; 5] = [
    Rule {
        label: "f3 mod 2",
        expression: "a3 + a1*a2",
        modulus: 2,
        eval: |a1, a2, a3| a3 + a1 * a2,
    },
    Rule {
        label: "f4 mod 3",
        expression: "-a1^2*a2 + a1*a3 - a2^2 - a2",
        modulus: 3,
        eval: |a1, a2, a3| -(a1 * a1 * a2) + a1 * a3 - a2 * a2 - a2,
    },
    Rule {
        label: "f5 mod 3",
        expression: "a1*a2 - a1^2*a3 - a1*a2^2 + a2*a3 + a1^2*a2 - a1*a3 + a2^2 + a2",
        modulus: 3,
        eval: |a1, a2, a3| {
            a1 * a2 - a1 * a1 * a3 - a1 * a2 * a2 + a2 * a3 + a1 * a1 * a2 - a1 * a3 + a2 * a2 + a2
        },
    },
    Rule {
        label: "f4/2 mod 4",
        expression: "2*a1^2*a2 + 2*a1*a3 + a2^2 + a1*a2 - a3 + a2",
        modulus: 4,
        eval: |a1, a2, a3| {
            BigInt::from(2) * a1 * a1 * a2 + BigInt::from(2) * a1 * a3 + a2 * a2 + a1 * a2 - a3 + a2
        },
    },
    Rule {
        label: "f5 mod 8",
        expression: "5*(-a1^3*a2 + a1^2*a3 + a1*a2^2 - a2*a3) - a1*a2 + a3",
        modulus: 8,
        eval: |a1, a2, a3| {
            let x = -(a1 * a1 * a1 * a2) + a1 * a1 * a3 + a1 * a2 * a2 - a2 * a3;
            BigInt::from(5) * x - a1 * a2 + a3
        },
    },
];

/// The four-congruence form of `S_5` on `(a1, a2, a3, 0, 0)`, evaluated
/// term by term. It is not equivalent to `S_5`.
pub fn explicit_s5_check(a1: &BigInt, a2: &BigInt, a3: &BigInt) -> CongruenceReport {
    run_rules(&EXPLICIT_RULES, a1, a2, a3)
}

/// A congruence system equivalent to `S_5` on `(a1, a2, a3, 0, 0)`.
///
/// Against [`explicit_s5_check`]: the `f4 mod 3` condition has `-a2` in place
/// of `+a2`, the `f5 mod 3` condition gains `+a2`, the 2-primary part of
/// `f4 mod 24` is kept (it is not implied by `f3 mod 2`), and `f5` is tested
/// mod 8 rather than mod 4.
pub fn derived_s5_check(a1: &BigInt, a2: &BigInt, a3: &BigInt) -> CongruenceReport {
    run_rules(&DERIVED_RULES, a1, a2, a3)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub a: [i64; 3],
    pub system: bool,
    pub s5: bool,
}

/// Outcome of comparing both congruence systems with `S_5` on `[0, bound)^3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub bound: u32,
    pub triples: u64,
    pub realizable: u64,
    pub explicit_mismatches: u64,
    pub explicit_examples: Vec<Mismatch>,
    pub derived_mismatches: u64,
    pub derived_examples: Vec<Mismatch>,
    pub f5_mod5_failures: u64,
    pub f5_mod5_examples: Vec<[i64; 3]>,
}

impl ScanReport {
    /// The equivalence claim: no explicit mismatch and `5 | f5` throughout.
    pub fn pass(&self) -> bool {
        self.explicit_mismatches == 0 && self.f5_mod5_failures == 0
    }
}

/// How many examples of each kind a [`ScanReport`] keeps.
pub const SCAN_EXAMPLES: usize = 20;

/// Compares [`explicit_s5_check`], [`derived_s5_check`] and [`s_k_check`] on
/// every triple in `[0, bound)^3`, and checks `f5 = 0 mod 5`.
///
/// Each condition is periodic mod 120 in every coordinate, so `bound = 120`
/// covers all integer triples. Examples are the lexicographically smallest.
pub fn equivalence_scan(bound: u32) -> ScanReport {
    #[derive(Default)]
    struct Partial {
        realizable: u64,
        explicit: Vec<Mismatch>,
        explicit_count: u64,
        derived: Vec<Mismatch>,
        derived_count: u64,
        f5: Vec<[i64; 3]>,
        f5_count: u64,
    }
    let b = bound as i64;
    let five = BigInt::from(5);
    let parts: Vec<Partial> = (0..b)
        .into_par_iter()
        .map(|x| {
            let mut p = Partial::default();
            let a1 = BigInt::from(x);
            for y in 0..b {
                let a2 = BigInt::from(y);
                for z in 0..b {
                    let a3 = BigInt::from(z);
                    let report = s_k_check(&ChernTuple::padded_rank3(&a1, &a2, &a3));
                    let s5 = report.pass;
                    p.realizable += s5 as u64;
                    let ex = explicit_s5_check(&a1, &a2, &a3).pass;
                    if ex != s5 {
                        p.explicit_count += 1;
                        if p.explicit.len() < SCAN_EXAMPLES {
                            p.explicit.push(Mismatch {
                                a: [x, y, z],
                                system: ex,
                                s5,
                            });
                        }
                    }
                    let de = derived_s5_check(&a1, &a2, &a3).pass;
                    if de != s5 {
                        p.derived_count += 1;
                        if p.derived.len() < SCAN_EXAMPLES {
                            p.derived.push(Mismatch {
                                a: [x, y, z],
                                system: de,
                                s5,
                            });
                        }
                    }
                    if !report.entries[4].value.mod_floor(&five).is_zero() {
                        p.f5_count += 1;
                        if p.f5.len() < SCAN_EXAMPLES {
                            p.f5.push([x, y, z]);
                        }
                    }
                }
            }
            p
        })
        .collect();
    // parts are in a1 order, so concatenation keeps lexicographic order
    let mut out = ScanReport {
        bound,
        triples: (b as u64).pow(3),
        realizable: 0,
        explicit_mismatches: 0,
        explicit_examples: Vec::new(),
        derived_mismatches: 0,
        derived_examples: Vec::new(),
        f5_mod5_failures: 0,
        f5_mod5_examples: Vec::new(),
    };
    for p in parts {
        out.realizable += p.realizable;
        out.explicit_mismatches += p.explicit_count;
        out.derived_mismatches += p.derived_count;
        out.f5_mod5_failures += p.f5_count;
        out.explicit_examples.extend(p.explicit);
        out.derived_examples.extend(p.derived);
        out.f5_mod5_examples.extend(p.f5);
    }
    out.explicit_examples.truncate(SCAN_EXAMPLES);
    out.derived_examples.truncate(SCAN_EXAMPLES);
    out.f5_mod5_examples.truncate(SCAN_EXAMPLES);
    out
}
