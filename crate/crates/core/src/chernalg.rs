//! Chern calculus for virtual bundles.
//!
//! A [`VirtualBundle`] stores its virtual rank and a truncated total Chern
//! class. Nothing is ever stored as roots, so formal differences such as
//! `-gamma_4` are handled the same way as honest bundles.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactpoly::{Poly, PolyError, Ring, VarTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChernError {
    #[error("bundles live over different bases ({0} vs {1})")]
    BaseMismatch(String, String),
    #[error("total Chern class must have constant term 1, got {0}")]
    ConstantTerm(BigInt),
    #[error("total Chern class uses variables outside the base")]
    WrongTable,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Where a bundle lives: a formal base with free classes, or `CP^n` with
/// generator `t` and `t^(n+1) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Base {
    Formal { table: VarTable, truncation: u32 },
    ProjectiveSpace { n: u32 },
}

impl Base {
    pub fn formal(table: &VarTable, truncation: u32) -> Base {
        Base::Formal {
            table: table.clone(),
            truncation,
        }
    }

    pub fn cp(n: u32) -> Base {
        Base::ProjectiveSpace { n }
    }

    pub fn table(&self) -> VarTable {
        match self {
            Base::Formal { table, .. } => table.clone(),
            Base::ProjectiveSpace { .. } => hyperplane_table(),
        }
    }

    /// Top degree kept in total classes.
    pub fn truncation(&self) -> u32 {
        match self {
            Base::Formal { truncation, .. } => *truncation,
            Base::ProjectiveSpace { n } => 2 * n,
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Formal { table, truncation } => {
                write!(f, "formal[{}; deg <= {truncation}]", table.names().join(","))
            }
            Base::ProjectiveSpace { n } => write!(f, "CP^{n}"),
        }
    }
}

fn hyperplane_table() -> VarTable {
    VarTable::new([("t", 2)]).expect("single variable")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualBundle {
    rank: i64,
    base: Base,
    total: Poly,
}

impl VirtualBundle {
    /// Validates the total class and truncates it to the base.
    pub fn new(rank: i64, base: &Base, total: Poly) -> Result<VirtualBundle, ChernError> {
        if total.table() != &base.table() {
            return Err(ChernError::WrongTable);
        }
        let total = total.truncate_above(base.truncation());
        let c0 = total.constant_term();
        if c0 != BigInt::from(1) || total.min_degree() != Some(0) || !total.homogeneous_component(0).is_one()
        {
            return Err(ChernError::ConstantTerm(c0));
        }
        Ok(VirtualBundle {
            rank,
            base: base.clone(),
            total,
        })
    }

    pub fn trivial(rank: i64, base: &Base, ring: &Ring) -> VirtualBundle {
        VirtualBundle {
            rank,
            base: base.clone(),
            total: Poly::one(&base.table(), ring),
        }
    }

    /// `gamma_n` on the formal base `c1..cn`, total class `1 + c1 + ... + cn`.
    pub fn universal(n: usize, truncation: u32, ring: &Ring) -> VirtualBundle {
        let table = VarTable::chern(n);
        let total = (0..n).fold(Poly::one(&table, ring), |acc, i| {
            acc + Poly::var_index(&table, ring, i)
        });
        VirtualBundle::new(n as i64, &Base::formal(&table, truncation), total).expect("constant term is 1")
    }

    /// `O(a)` on `CP^n`.
    pub fn line_bundle(a: i64, n: u32) -> VirtualBundle {
        VirtualBundle::line_bundle_sum_total(&[a], n)
    }

    /// `O(a_1) + ... + O(a_r)` on `CP^n`: total class `prod (1 + a_i t)`.
    pub fn line_bundle_sum_total(degrees: &[i64], n: u32) -> VirtualBundle {
        let base = Base::cp(n);
        let table = base.table();
        let z = Ring::Integers;
        let t = Poly::var_index(&table, &z, 0);
        let mut total = Poly::one(&table, &z);
        for &a in degrees {
            let factor = Poly::one(&table, &z) + t.scale(a);
            total = total
                .mul_truncated(&factor, base.truncation())
                .expect("same table");
        }
        VirtualBundle {
            rank: degrees.len() as i64,
            base,
            total,
        }
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn total_class(&self) -> &Poly {
        &self.total
    }

    pub fn truncation(&self) -> u32 {
        self.base.truncation()
    }

    pub fn ring(&self) -> &Ring {
        self.total.ring()
    }

    /// `c_i`, the degree-`2i` component of the total class.
    pub fn chern_class(&self, i: u32) -> Poly {
        self.total.homogeneous_component(2 * i)
    }

    /// On `CP^n`, the integers `c_1..c_n` with `c_i = a_i t^i`.
    pub fn chern_numbers(&self) -> Option<Vec<BigInt>> {
        match self.base {
            Base::ProjectiveSpace { n } => Some((1..=n).map(|i| self.total.coeff_of(&[i])).collect()),
            Base::Formal { .. } => None,
        }
    }

    /// Whitney sum: ranks add and total classes multiply.
    pub fn sum(&self, other: &VirtualBundle) -> Result<VirtualBundle, ChernError> {
        self.same_base(other)?;
        Ok(VirtualBundle {
            rank: self.rank + other.rank,
            base: self.base.clone(),
            total: self.total.mul_truncated(&other.total, self.truncation())?,
        })
    }

    /// `-V`: negated rank, inverse total class.
    pub fn negative(&self) -> VirtualBundle {
        VirtualBundle {
            rank: -self.rank,
            base: self.base.clone(),
            total: self
                .total
                .series_inverse(self.truncation())
                .expect("constant term 1 is a unit"),
        }
    }

    /// `V*`: `c_i -> (-1)^i c_i`.
    pub fn dual(&self) -> VirtualBundle {
        let mut total = Poly::zero(self.total.table(), self.total.ring());
        for d in self.total.degrees() {
            let comp = self.total.homogeneous_component(d);
            total = total + if (d / 2) % 2 == 1 { -comp } else { comp };
        }
        VirtualBundle {
            rank: self.rank,
            base: self.base.clone(),
            total,
        }
    }

    /// Reduces the total class modulo `m`.
    pub fn reduce_mod(&self, m: u32) -> Result<VirtualBundle, ChernError> {
        Ok(VirtualBundle {
            rank: self.rank,
            base: self.base.clone(),
            total: self.total.reduce_mod(m)?,
        })
    }

    fn same_base(&self, other: &VirtualBundle) -> Result<(), ChernError> {
        if self.base != other.base {
            return Err(ChernError::BaseMismatch(
                self.base.to_string(),
                other.base.to_string(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for VirtualBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {} on {}: c = {}", self.rank, self.base, self.total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steenrod::thom_multiplier;

    fn on_cp5(text: &str) -> Poly {
        Poly::parse(text, &Base::cp(5).table(), &Ring::Integers).unwrap()
    }

    #[test]
    fn sums_of_line_bundles() {
        let o = VirtualBundle::line_bundle_sum_total(&[1, -1], 5);
        assert_eq!(o.total_class(), &on_cp5("1 - t^2"));
        let five = VirtualBundle::line_bundle_sum_total(&[1; 5], 5);
        assert_eq!(
            five.total_class(),
            &on_cp5("1 + 5*t + 10*t^2 + 10*t^3 + 5*t^4 + t^5")
        );
        let zero = VirtualBundle::line_bundle_sum_total(&[0, 0, 0], 5);
        assert!(zero.total_class().is_one());
        assert_eq!(zero.rank(), 3);
        let threes = VirtualBundle::line_bundle_sum_total(&[3, 3, 3], 5);
        assert_eq!(threes.total_class(), &on_cp5("1 + 9*t + 27*t^2 + 27*t^3"));
        assert_eq!(
            threes.chern_numbers().unwrap(),
            [9, 27, 27, 0, 0].map(BigInt::from).to_vec()
        );
        let six = VirtualBundle::line_bundle_sum_total(&[6; 6], 5);
        assert_eq!(six.chern_numbers().unwrap()[4], BigInt::from(6 * 7776));
    }

    #[test]
    fn whitney_sum_with_trivial() {
        let o = VirtualBundle::line_bundle(4, 5);
        let triv = VirtualBundle::trivial(1, &Base::cp(5), &Ring::Integers);
        let s = o.sum(&triv).unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(s.total_class(), o.total_class());
        let other = VirtualBundle::line_bundle(1, 4);
        assert!(matches!(o.sum(&other), Err(ChernError::BaseMismatch(_, _))));
    }

    #[test]
    fn negative_of_universal_bundle() {
        let g = VirtualBundle::universal(4, 8, &Ring::Integers);
        let neg = g.negative();
        let c = |s: &str| Poly::parse(s, &VarTable::chern(4), &Ring::Integers).unwrap();
        assert_eq!(neg.rank(), -4);
        assert_eq!(neg.chern_class(1), c("-c1"));
        assert_eq!(neg.chern_class(2), c("c1^2 - c2"));
        assert_eq!(neg.chern_class(3), c("-c1^3 + 2*c1*c2 - c3"));
        assert_eq!(neg.chern_class(4), c("c1^4 - 3*c1^2*c2 + c2^2 + 2*c1*c3 - c4"));
        assert!(g.sum(&neg).unwrap().total_class().is_one());
        assert_eq!(neg.negative(), g);
        let triv = VirtualBundle::trivial(0, &Base::cp(3), &Ring::Integers);
        assert_eq!(triv.negative(), triv);
    }

    #[test]
    fn duals() {
        assert_eq!(
            VirtualBundle::line_bundle(3, 5).dual(),
            VirtualBundle::line_bundle(-3, 5)
        );
        let g = VirtualBundle::universal(2, 4, &Ring::Integers);
        let d = g.dual();
        assert_eq!(d.chern_class(1).to_string(), "-c1");
        assert_eq!(d.chern_class(2).to_string(), "c2");
        assert_eq!(d.dual(), g);
    }

    #[test]
    fn constructor_validation() {
        let base = Base::cp(5);
        assert_eq!(
            VirtualBundle::new(1, &base, on_cp5("2 + t")),
            Err(ChernError::ConstantTerm(2.into()))
        );
        assert!(VirtualBundle::new(1, &base, on_cp5("1 + t + t^7")).is_ok());
        let wrong = Poly::one(&VarTable::chern(2), &Ring::Integers);
        assert_eq!(VirtualBundle::new(0, &base, wrong), Err(ChernError::WrongTable));
    }

    #[test]
    fn multipliers_of_bundles() {
        let f3 = Ring::modular(3).unwrap();
        let c = |s: &str| Poly::parse(s, &VarTable::chern(4), &f3).unwrap();
        let g = VirtualBundle::universal(4, 8, &Ring::Integers);
        assert_eq!(
            thom_multiplier(&g, 3).unwrap().homogeneous_component(4),
            c("c1^2 + c2")
        );
        assert_eq!(
            thom_multiplier(&g.negative(), 3)
                .unwrap()
                .homogeneous_component(4),
            c("-c1^2 - c2")
        );
        let zero = VirtualBundle::trivial(0, &Base::cp(5), &Ring::Integers);
        assert!(thom_multiplier(&zero, 3).unwrap().is_one());
    }
}
