//! Exact multivariate polynomials over `Z` or `Z/m` with cohomologically
//! graded variables.
//!
//! Every value in the crate is ultimately a [`Poly`]. A polynomial lives over a
//! [`VarTable`] (ordered, named variables with even degrees) and a [`Ring`].
//! Terms are kept in canonical form:
//!
//! - no zero coefficient is ever stored;
//! - over `Z/m` every coefficient is the canonical residue in `[0, m)`;
//! - monomials are ordered by total degree, then by exponent vector compared
//!   from the last declared variable towards the first.

mod parse;

pub use parse::{parse_expr, Expr, ParseError};

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use thiserror::Error;

/// Largest exponent accepted from parsed text or `pow`.
pub const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable tables differ")]
    TableMismatch,
    #[error("coefficient rings differ ({0} vs {1})")]
    RingMismatch(Ring, Ring),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("variable `{0}` has odd degree {1}")]
    OddDegree(String, u32),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no substitution given for variable `{0}`")]
    MissingAssignment(String),
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(BigInt),
    #[error("cannot reduce a polynomial over {from} to {to}")]
    IncompatibleReduction { from: Ring, to: Ring },
    #[error("exponent {0} exceeds the limit {MAX_EXPONENT}")]
    ExponentOverflow(u64),
    #[error("series is not invertible: {0}")]
    NotInvertible(String),
    #[error("function `{0}` is not allowed in a polynomial expression")]
    UnexpectedCall(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Coefficient ring: the integers or the residues modulo `m >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Modular(BigInt),
}

impl Ring {
    pub fn modular(m: impl Into<BigInt>) -> Result<Ring, PolyError> {
        let m = m.into();
        if m < BigInt::from(2) {
            return Err(PolyError::InvalidModulus(m));
        }
        Ok(Ring::Modular(m))
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        match self {
            Ring::Integers => None,
            Ring::Modular(m) => Some(m),
        }
    }

    /// Canonical representative of `c` in this ring.
    pub fn normalize(&self, c: BigInt) -> BigInt {
        match self {
            Ring::Integers => c,
            Ring::Modular(m) => c.mod_floor(m),
        }
    }

    /// Multiplicative inverse of `c`, if it exists.
    pub fn inverse(&self, c: &BigInt) -> Option<BigInt> {
        match self {
            Ring::Integers => {
                if c.is_one() || (-c).is_one() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            Ring::Modular(m) => {
                let e = c.mod_floor(m).extended_gcd(m);
                e.gcd.is_one().then(|| e.x.mod_floor(m))
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Modular(m) => write!(f, "Z/{m}"),
        }
    }
}

struct TableInner {
    names: Vec<String>,
    degrees: Vec<u32>,
    index: HashMap<String, usize>,
}

/// Ordered list of named variables with their cohomological degrees.
///
/// The order is fixed at construction. Two tables are equal when they list the
/// same names with the same degrees in the same order.
#[derive(Clone)]
pub struct VarTable(Arc<TableInner>);

impl VarTable {
    pub fn new<I, S>(vars: I) -> Result<VarTable, PolyError>
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        let mut index = HashMap::new();
        for (name, degree) in vars {
            let name = name.into();
            if degree % 2 != 0 {
                return Err(PolyError::OddDegree(name, degree));
            }
            if index.insert(name.clone(), names.len()).is_some() {
                return Err(PolyError::DuplicateVariable(name));
            }
            names.push(name);
            degrees.push(degree);
        }
        Ok(VarTable(Arc::new(TableInner {
            names,
            degrees,
            index,
        })))
    }

    /// `c1, ..., cn` with `deg ci = 2i`.
    pub fn chern(n: usize) -> VarTable {
        VarTable::new((1..=n).map(|i| (format!("c{i}"), 2 * i as u32))).expect("chern names are distinct")
    }

    /// `x1, ..., xn`, all of degree 2.
    pub fn roots(n: usize) -> VarTable {
        VarTable::new((1..=n).map(|i| (format!("x{i}"), 2))).expect("root names are distinct")
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.names[i]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.0.degrees[i]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.0.degrees
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.index.get(name).copied()
    }
}

impl PartialEq for VarTable {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.names == other.0.names && self.0.degrees == other.0.degrees)
    }
}

impl Eq for VarTable {}

impl fmt::Debug for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.0.names.iter().zip(&self.0.degrees))
            .finish()
    }
}

type Exponents = SmallVec<[u32; 8]>;

/// Exponent vector over a [`VarTable`] together with its total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Exponents,
}

impl Monomial {
    pub fn new(table: &VarTable, exps: &[u32]) -> Monomial {
        assert_eq!(exps.len(), table.len(), "exponent vector length");
        let degree = exps.iter().zip(table.degrees()).map(|(e, d)| e * d).sum();
        Monomial {
            degree,
            exps: exps.iter().copied().collect(),
        }
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            degree: 0,
            exps: smallvec::smallvec![0; nvars],
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.iter().rev().cmp(other.exps.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in canonical form.
#[derive(Clone, Debug)]
pub struct Poly {
    table: VarTable,
    ring: Ring,
    terms: BTreeMap<Monomial, BigInt>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(table: &VarTable, ring: &Ring) -> Poly {
        Poly {
            table: table.clone(),
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: &VarTable, ring: &Ring) -> Poly {
        Poly::constant(table, ring, 1)
    }

    pub fn constant(table: &VarTable, ring: &Ring, c: impl Into<BigInt>) -> Poly {
        let mut p = Poly::zero(table, ring);
        p.add_term(Monomial::one(table.len()), c.into());
        p
    }

    pub fn var(table: &VarTable, ring: &Ring, name: &str) -> Result<Poly, PolyError> {
        let i = table
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Poly::var_index(table, ring, i))
    }

    pub fn var_index(table: &VarTable, ring: &Ring, i: usize) -> Poly {
        let mut exps = vec![0; table.len()];
        exps[i] = 1;
        Poly::monomial(table, ring, &exps, 1)
    }

    pub fn monomial(table: &VarTable, ring: &Ring, exps: &[u32], c: impl Into<BigInt>) -> Poly {
        let mut p = Poly::zero(table, ring);
        p.add_term(Monomial::new(table, exps), c.into());
        p
    }

    pub fn from_terms<I, C>(table: &VarTable, ring: &Ring, terms: I) -> Poly
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
        C: Into<BigInt>,
    {
        let mut p = Poly::zero(table, ring);
        for (exps, c) in terms {
            p.add_term(Monomial::new(table, &exps), c.into());
        }
        p
    }

    /// Parses the text grammar of [`parse_expr`] over the given table.
    pub fn parse(text: &str, table: &VarTable, ring: &Ring) -> Result<Poly, PolyError> {
        parse_expr(text)?.to_poly(table, ring)
    }

    pub fn table(&self) -> &VarTable {
        &self.table
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn coeff_of(&self, exps: &[u32]) -> BigInt {
        self.coeff(&Monomial::new(&self.table, exps))
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Monomial::one(self.table.len()))
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    /// True for the zero polynomial and for polynomials with a single degree.
    pub fn is_homogeneous(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    /// Names of the variables that occur with a positive exponent.
    pub fn support(&self) -> Vec<&str> {
        (0..self.table.len())
            .filter(|&i| self.terms.keys().any(|m| m.exps[i] > 0))
            .map(|i| self.table.name(i))
            .collect()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        let c = self.ring.normalize(c);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = self.ring.normalize(o.get() + c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Poly) -> Result<(), PolyError> {
        if self.table != other.table {
            return Err(PolyError::TableMismatch);
        }
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch(self.ring.clone(), other.ring.clone()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_compatible(other)?;
        Ok(self.mul_bounded(other, None))
    }

    /// Product, dropping every monomial of degree above `max_degree`.
    pub fn mul_truncated(&self, other: &Poly, max_degree: u32) -> Result<Poly, PolyError> {
        self.check_compatible(other)?;
        Ok(self.mul_bounded(other, Some(max_degree)))
    }

    fn mul_bounded(&self, other: &Poly, max_degree: Option<u32>) -> Poly {
        let mut out = Poly::zero(&self.table, &self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(n) = max_degree {
                    if ma.degree + mb.degree > n {
                        // terms are sorted by degree
                        break;
                    }
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Poly {
        let c = c.into();
        let mut out = Poly::zero(&self.table, &self.ring);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * &c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        self.pow_bounded(e, None)
    }

    pub fn pow_truncated(&self, e: u32, max_degree: u32) -> Poly {
        self.pow_bounded(e, Some(max_degree))
    }

    fn pow_bounded(&self, mut e: u32, max_degree: Option<u32>) -> Poly {
        let mut result = Poly::one(&self.table, &self.ring);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_bounded(&base, max_degree);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_bounded(&base, max_degree);
            }
        }
        match max_degree {
            Some(n) => result.truncate_above(n),
            None => result,
        }
    }

    /// Drops every monomial of degree greater than `n`.
    pub fn truncate_above(&self, n: u32) -> Poly {
        Poly {
            table: self.table.clone(),
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree <= n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sum of the monomials of degree exactly `d`.
    pub fn homogeneous_component(&self, d: u32) -> Poly {
        Poly {
            table: self.table.clone(),
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Distinct degrees occurring in the polynomial, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.terms.keys().map(Monomial::degree).collect();
        out.dedup();
        out
    }

    /// Reduces coefficients modulo `m`.
    ///
    /// Allowed from `Z`, or from `Z/k` when `m` divides `k`.
    pub fn reduce_mod(&self, m: impl Into<BigInt>) -> Result<Poly, PolyError> {
        let target = Ring::modular(m)?;
        self.to_ring(&target)
    }

    /// Moves the polynomial to `target`, if that is a quotient of the current ring.
    pub fn to_ring(&self, target: &Ring) -> Result<Poly, PolyError> {
        let ok = match (&self.ring, target) {
            (_, Ring::Integers) => self.ring == Ring::Integers,
            (Ring::Integers, Ring::Modular(_)) => true,
            (Ring::Modular(k), Ring::Modular(m)) => (k % m).is_zero(),
        };
        if !ok {
            return Err(PolyError::IncompatibleReduction {
                from: self.ring.clone(),
                to: target.clone(),
            });
        }
        let mut out = Poly::zero(&self.table, target);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Reinterprets coefficients (canonical residues) as integers.
    pub fn lift_to_integers(&self) -> Poly {
        Poly {
            table: self.table.clone(),
            ring: Ring::Integers,
            terms: self.terms.clone(),
        }
    }

    /// Re-expresses the polynomial over another table, matching variables by name.
    pub fn retable(&self, target: &VarTable) -> Result<Poly, PolyError> {
        let mut map = Vec::with_capacity(self.table.len());
        for i in 0..self.table.len() {
            let name = self.table.name(i);
            let used = self.terms.keys().any(|m| m.exps[i] > 0);
            match target.index_of(name) {
                Some(j) if target.degree(j) == self.table.degree(i) => map.push(Some(j)),
                Some(_) | None if used => return Err(PolyError::UnknownVariable(name.to_string())),
                _ => map.push(None),
            }
        }
        let mut out = Poly::zero(target, &self.ring);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    exps[map[i].expect("used variables are mapped")] = e;
                }
            }
            out.add_term(Monomial::new(target, &exps), c.clone());
        }
        Ok(out)
    }

    /// Ring-homomorphic image under `var -> poly`.
    pub fn substitute(&self, s: &Substitution) -> Result<Poly, PolyError> {
        self.substitute_bounded(s, None)
    }

    /// Like [`Poly::substitute`], but drops everything above `max_degree`
    /// in the target table while expanding.
    pub fn substitute_truncated(&self, s: &Substitution, max_degree: u32) -> Result<Poly, PolyError> {
        self.substitute_bounded(s, Some(max_degree))
    }

    fn substitute_bounded(&self, s: &Substitution, max_degree: Option<u32>) -> Result<Poly, PolyError> {
        let n = self.table.len();
        let mut images: Vec<Option<&Poly>> = Vec::with_capacity(n);
        for i in 0..n {
            let used = self.terms.keys().any(|m| m.exps[i] > 0);
            match s.map.get(self.table.name(i)) {
                Some(p) => images.push(Some(p)),
                None if used => return Err(PolyError::MissingAssignment(self.table.name(i).to_string())),
                None => images.push(None),
            }
        }
        // powers[i][e] = image_i^e, filled lazily
        let mut powers: Vec<Vec<Poly>> = vec![Vec::new(); n];
        let one = Poly::one(&s.table, &s.ring);
        let mut out = Poly::zero(&s.table, &s.ring);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(&s.table, &s.ring, c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = images[i].expect("checked above");
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(one.clone());
                }
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul_bounded(img, max_degree);
                    cache.push(next);
                }
                term = term.mul_bounded(&cache[e as usize], max_degree);
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(match max_degree {
            Some(d) => out.truncate_above(d),
            None => out,
        })
    }

    /// Evaluates at integer values given in table order.
    pub fn evaluate(&self, values: &[BigInt]) -> BigInt {
        assert_eq!(values.len(), self.table.len(), "one value per variable");
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in values.iter().zip(m.exps.iter()) {
                if e > 0 {
                    t *= num_traits::pow(v.clone(), e as usize);
                }
            }
            acc += t;
        }
        self.ring.normalize(acc)
    }

    /// Multiplicative inverse as a power series, truncated above `max_degree`.
    ///
    /// The constant term must be a unit and every other monomial must have
    /// positive degree.
    pub fn series_inverse(&self, max_degree: u32) -> Result<Poly, PolyError> {
        let c0 = self.constant_term();
        let inv0 = self
            .ring
            .inverse(&c0)
            .ok_or_else(|| PolyError::NotInvertible(format!("constant term {c0} is not a unit")))?;
        if let Some((m, _)) = self.terms.iter().find(|(m, _)| m.degree == 0 && !m.is_one()) {
            return Err(PolyError::NotInvertible(format!(
                "degree-0 monomial {} is not constant",
                render_monomial(&self.table, m)
            )));
        }
        let components: BTreeMap<u32, Poly> = self
            .degrees()
            .into_iter()
            .filter(|&d| d > 0 && d <= max_degree)
            .map(|d| (d, self.homogeneous_component(d)))
            .collect();
        let mut result: Vec<(u32, Poly)> = vec![(0, Poly::constant(&self.table, &self.ring, inv0.clone()))];
        for d in 1..=max_degree {
            let mut acc = Poly::zero(&self.table, &self.ring);
            for (j, comp) in &components {
                if *j > d {
                    break;
                }
                if let Some((_, r)) = result.iter().find(|(e, _)| *e == d - j) {
                    acc = &acc + &(comp * r);
                }
            }
            if !acc.is_zero() {
                result.push((d, acc.scale(-inv0.clone())));
            }
        }
        Ok(result
            .into_iter()
            .fold(Poly::zero(&self.table, &self.ring), |a, (_, p)| &a + &p))
    }
}

/// Variable-to-polynomial assignment used by [`Poly::substitute`].
#[derive(Debug, Clone)]
pub struct Substitution {
    table: VarTable,
    ring: Ring,
    map: HashMap<String, Poly>,
}

impl Substitution {
    /// Empty assignment whose images live over `table` and `ring`.
    pub fn new(table: &VarTable, ring: &Ring) -> Substitution {
        Substitution {
            table: table.clone(),
            ring: ring.clone(),
            map: HashMap::new(),
        }
    }

    pub fn set(&mut self, name: &str, image: Poly) -> Result<&mut Self, PolyError> {
        if image.table != self.table {
            return Err(PolyError::TableMismatch);
        }
        if image.ring != self.ring {
            return Err(PolyError::RingMismatch(self.ring.clone(), image.ring));
        }
        self.map.insert(name.to_string(), image);
        Ok(self)
    }

    pub fn with(mut self, name: &str, image: Poly) -> Result<Self, PolyError> {
        self.set(name, image)?;
        Ok(self)
    }

    /// Identity on every variable of `table`.
    pub fn identity(table: &VarTable, ring: &Ring) -> Substitution {
        let mut s = Substitution::new(table, ring);
        for i in 0..table.len() {
            s.map
                .insert(table.name(i).to_string(), Poly::var_index(table, ring, i));
        }
        s
    }
}

fn render_monomial(table: &VarTable, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(table.name(i).to_string()),
            _ => parts.push(format!("{}^{}", table.name(i), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    /// `c1^2*c2 + c2^2 + 2*c1*c3`; negative integer coefficients are rendered
    /// with ` - `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = render_monomial(&self.table, m);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            /// Panics when tables or rings differ; use the `try_` form to recover.
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, try_add);
impl_binop!(Sub, sub, try_sub);
impl_binop!(Mul, mul, try_mul);
