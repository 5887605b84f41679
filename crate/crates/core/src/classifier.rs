//! Rank-3 topological bundles on `CP^5`: which Chern data occur, how many
//! bundle types share them, and the `Z/3` action that permutes those types.
//!
//! Data `(a1, a2, a3)` is realizable iff `(a1, a2, a3, 0, 0)` satisfies `S_5`.
//! A realizable triple carries three types when `a1 = a2 = 0 mod 3` and one
//! type otherwise. In the first case the types are told apart by a `Z/3`
//! label `rho`, and `sigma` in `Z/3` acts by `rho -> rho + sigma`.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::ops::Add;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::schwarz::{s_k_check, ChernTuple};

#[derive(Debug, Error)]
pub enum ClassifierError {
    #[error("rho is only defined here for degrees divisible by 3; got {0}")]
    NotDivisibleBy3(BigInt),
    #[error("census box is invalid: min {min:?} exceeds max {max:?}")]
    InvalidBox { min: [i64; 3], max: [i64; 3] },
    #[error("census I/O failed: {0}")]
    Io(#[from] io::Error),
}

/// Element of `Z/3`, stored as its residue in `{0, 1, 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Zmod3(u8);

impl Zmod3 {
    pub const ALL: [Zmod3; 3] = [Zmod3(0), Zmod3(1), Zmod3(2)];

    pub fn new(x: i64) -> Zmod3 {
        Zmod3(x.rem_euclid(3) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl Add for Zmod3 {
    type Output = Zmod3;
    fn add(self, rhs: Zmod3) -> Zmod3 {
        Zmod3((self.0 + rhs.0) % 3)
    }
}

impl fmt::Display for Zmod3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element `sigma` of the group `Z/3` acting on bundle types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SigmaAction(pub Zmod3);

impl SigmaAction {
    pub fn compose(self, other: SigmaAction) -> SigmaAction {
        SigmaAction(self.0 + other.0)
    }

    /// The label shift `t(sigma)`; the identity of `Z/3`.
    pub fn shift(self) -> Zmod3 {
        self.0
    }
}

/// A topological type of rank-3 bundle with given Chern data.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BundleType {
    chern: ChernTuple,
    rho: Option<Zmod3>,
}

impl BundleType {
    pub fn chern(&self) -> &ChernTuple {
        &self.chern
    }

    /// Present exactly when `c1 = c2 = 0 mod 3`.
    pub fn rho(&self) -> Option<Zmod3> {
        self.rho
    }
}

impl fmt::Display for BundleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.chern.entries().iter().map(|a| a.to_string()).collect();
        write!(f, "c = ({})", c.join(", "))?;
        if let Some(r) = self.rho {
            write!(f, ", rho = {r}")?;
        }
        Ok(())
    }
}

pub fn realizable(a1: &BigInt, a2: &BigInt, a3: &BigInt) -> bool {
    s_k_check(&ChernTuple::padded_rank3(a1, a2, a3)).pass
}

fn divisible_by_3(a: &BigInt) -> bool {
    a.mod_floor(&BigInt::from(3)).is_zero()
}

/// 0 when not realizable, otherwise 3 if `a1 = a2 = 0 mod 3` and 1 if not.
pub fn count_types(a1: &BigInt, a2: &BigInt, a3: &BigInt) -> u8 {
    if !realizable(a1, a2, a3) {
        0
    } else if divisible_by_3(a1) && divisible_by_3(a2) {
        3
    } else {
        1
    }
}

/// Whether the lifting obstruction `-(y a1 - x a1^2 + x a2)` is nonzero for
/// some `x, y` in `Z/3`. When it is, the top lift is unique; when it
/// vanishes identically there are three lifts.
pub fn obstruction_image_nonzero(a1: &BigInt, a2: &BigInt) -> bool {
    let three = BigInt::from(3);
    let a1 = a1.mod_floor(&three);
    let a2 = a2.mod_floor(&three);
    (0..3).any(|x| {
        (0..3).any(|y| {
            let v = BigInt::from(y) * &a1 - BigInt::from(x) * &a1 * &a1 + BigInt::from(x) * &a2;
            !divisible_by_3(&v)
        })
    })
}

/// Every type with Chern data `(a1, a2, a3)`, ordered by `rho`.
pub fn enumerate_types(a1: &BigInt, a2: &BigInt, a3: &BigInt) -> Vec<BundleType> {
    let chern = ChernTuple::new(vec![a1.clone(), a2.clone(), a3.clone()]).expect("three entries");
    match count_types(a1, a2, a3) {
        0 => Vec::new(),
        1 => vec![BundleType { chern, rho: None }],
        _ => Zmod3::ALL
            .iter()
            .map(|&r| BundleType {
                chern: chern.clone(),
                rho: Some(r),
            })
            .collect(),
    }
}

/// `sigma . T`: shifts `rho` by `sigma`, and fixes types without `rho`.
pub fn act(sigma: SigmaAction, t: &BundleType) -> BundleType {
    BundleType {
        chern: t.chern.clone(),
        rho: t.rho.map(|r| r + sigma.shift()),
    }
}

/// Formal `Z/3`-linear combination of symbols `rho(O(a))`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RhoExpression {
    terms: BTreeMap<BigInt, Zmod3>,
}

impl RhoExpression {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(degree, coefficient)` pairs, ascending by degree.
    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, Zmod3)> {
        self.terms.iter().map(|(a, &c)| (a, c))
    }
}

impl fmt::Display for RhoExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, c)| match c.value() {
                1 => format!("rho(O({a}))"),
                k => format!("{k}*rho(O({a}))"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `rho(O(a1) + ... + O(ar)) = sum_i rho(O(ai))`, with like terms collected
/// mod 3. Each `ai` must be divisible by 3.
pub fn rho_line_bundle_sum(degrees: &[BigInt]) -> Result<RhoExpression, ClassifierError> {
    let mut out = RhoExpression::default();
    for a in degrees {
        if !divisible_by_3(a) {
            return Err(ClassifierError::NotDivisibleBy3(a.clone()));
        }
        let c = out.terms.get(a).copied().unwrap_or(Zmod3(0)) + Zmod3(1);
        if c.value() == 0 {
            out.terms.remove(a);
        } else {
            out.terms.insert(a.clone(), c);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub a: [i64; 3],
    pub realizable: bool,
    pub count: u8,
}

/// Rows for the half-open box `[min, max)`, in lexicographic order.
pub fn census_rows(min: [i64; 3], max: [i64; 3]) -> Result<Vec<CensusRow>, ClassifierError> {
    if (0..3).any(|i| min[i] > max[i]) {
        return Err(ClassifierError::InvalidBox { min, max });
    }
    let rows: Vec<Vec<CensusRow>> = (min[0]..max[0])
        .into_par_iter()
        .map(|x| {
            let mut out = Vec::new();
            let a1 = BigInt::from(x);
            for y in min[1]..max[1] {
                let a2 = BigInt::from(y);
                for z in min[2]..max[2] {
                    let count = count_types(&a1, &a2, &BigInt::from(z));
                    out.push(CensusRow {
                        a: [x, y, z],
                        realizable: count > 0,
                        count,
                    });
                }
            }
            out
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

pub const CENSUS_HEADER: &str = "a1,a2,a3,realizable,count";

pub fn write_census<W: Write>(rows: &[CensusRow], mut w: W) -> io::Result<()> {
    writeln!(w, "{CENSUS_HEADER}")?;
    for r in rows {
        writeln!(w, "{},{},{},{},{}", r.a[0], r.a[1], r.a[2], r.realizable, r.count)?;
    }
    w.flush()
}

/// Writes the census CSV for `[min, max)` to `path`. On failure any partial
/// file is removed. Returns the number of records.
pub fn census(min: [i64; 3], max: [i64; 3], path: &Path) -> Result<usize, ClassifierError> {
    let rows = census_rows(min, max)?;
    let result = File::create(path).and_then(|f| write_census(&rows, BufWriter::new(f)));
    if let Err(e) = result {
        let _ = fs::remove_file(path);
        return Err(e.into());
    }
    Ok(rows.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(a: i64) -> BigInt {
        BigInt::from(a)
    }

    fn count(a: i64, c: i64, d: i64) -> u8 {
        count_types(&b(a), &b(c), &b(d))
    }

    #[test]
    fn realizability_and_counts() {
        assert!(realizable(&b(0), &b(0), &b(0)));
        assert!(!realizable(&b(3), &b(3), &b(3)));
        assert!(realizable(&b(3), &b(3), &b(1)));
        assert_eq!(count(0, 0, 0), 3);
        assert_eq!(count(1, 0, 0), 1);
        assert_eq!(count(3, 3, 3), 0);
        assert_eq!(count(2, 5, 7), 0);
        assert_eq!(count(3, 3, 1), 3);
    }

    #[test]
    fn obstruction_matches_count_rule() {
        for x in -4..5 {
            for y in -4..5 {
                let expected = !(x % 3 == 0 && y % 3 == 0);
                assert_eq!(obstruction_image_nonzero(&b(x), &b(y)), expected, "({x}, {y})");
            }
        }
    }

    #[test]
    fn enumeration() {
        let t = enumerate_types(&b(0), &b(0), &b(0));
        let rhos: Vec<Option<Zmod3>> = t.iter().map(BundleType::rho).collect();
        assert_eq!(rhos, vec![Some(Zmod3(0)), Some(Zmod3(1)), Some(Zmod3(2))]);
        let one = enumerate_types(&b(1), &b(0), &b(0));
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].rho(), None);
        assert!(enumerate_types(&b(3), &b(3), &b(3)).is_empty());
        assert_eq!(t[2].to_string(), "c = (0, 0, 0), rho = 2");
    }

    #[test]
    fn action() {
        let t = enumerate_types(&b(0), &b(0), &b(0));
        let one = SigmaAction(Zmod3::new(1));
        assert_eq!(act(one, &t[2]).rho(), Some(Zmod3(0)));
        assert_eq!(act(SigmaAction(Zmod3::new(0)), &t[1]), t[1]);
        let single = &enumerate_types(&b(1), &b(0), &b(0))[0];
        assert_eq!(&act(one, single), single);
    }

    #[test]
    fn rho_sums() {
        let r = |v: &[i64]| rho_line_bundle_sum(&v.iter().map(|&a| b(a)).collect::<Vec<_>>());
        assert!(r(&[6, 6, 6]).unwrap().is_zero());
        assert_eq!(r(&[0, 0, 0]).unwrap().to_string(), "0");
        assert_eq!(r(&[3, 6, 6]).unwrap().to_string(), "rho(O(3)) + 2*rho(O(6))");
        assert_eq!(r(&[-3, 3]).unwrap().to_string(), "rho(O(-3)) + rho(O(3))");
        assert!(matches!(r(&[3, 4, 6]), Err(ClassifierError::NotDivisibleBy3(_))));
    }

    #[test]
    fn census_rows_in_order() {
        let rows = census_rows([0, 0, 0], [3, 3, 3]).unwrap();
        assert_eq!(rows.len(), 27);
        assert_eq!(
            rows[0],
            CensusRow {
                a: [0, 0, 0],
                realizable: true,
                count: 3
            }
        );
        assert_eq!(rows[1].a, [0, 0, 1]);
        assert!(census_rows([0, 0, 0], [0, 5, 5]).unwrap().is_empty());
        assert!(census_rows([1, 0, 0], [0, 5, 5]).is_err());
        let mut buf = Vec::new();
        write_census(&rows[..1], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "a1,a2,a3,realizable,count\n0,0,0,true,3\n"
        );
    }
}
