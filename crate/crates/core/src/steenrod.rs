//! Mod-p Steenrod powers on Chern classes, Thom classes and presented algebras.
//!
//! On Chern classes everything goes through the splitting principle: lift to
//! roots, apply the total power `x -> x + x^p` to each root, keep one degree
//! and rewrite symmetrically. [`P1Algebra`] covers the other case, where `P^1`
//! is only known on a set of generators and is extended as a derivation.

use std::collections::HashMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::chernalg::VirtualBundle;
use crate::exactpoly::{Poly, PolyError, Ring, Substitution, VarTable};
use crate::symroots::{RootContext, SymError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteenrodError {
    #[error("input is not homogeneous (degrees {0:?})")]
    NotHomogeneous(Vec<u32>),
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("P^1({name}) must have degree {expected}, got {got:?}")]
    DegreeMismatch {
        name: String,
        expected: u32,
        got: Vec<u32>,
    },
    #[error("P^1({name}) must equal {name}^{prime} for a degree-2 class")]
    Unstable { name: String, prime: u32 },
    #[error("no value of P^1 assigned to generator `{0}`")]
    Unassigned(String),
    #[error("Adem relation failed on {input}: P2 = {p2}, 2*P1P1 = {p1p1}")]
    AdemMismatch { input: String, p2: String, p1p1: String },
    #[error("only odd primes are supported, got {0}")]
    EvenPrime(u32),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Only odd primes are supported.
fn check_prime(p: u32) -> Result<(), SteenrodError> {
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
        return Err(SteenrodError::NotPrime(p));
    }
    if p == 2 {
        return Err(SteenrodError::EvenPrime(p));
    }
    Ok(())
}

/// Image of a polynomial in roots under `x_j -> x_j + x_j^p`, over `Z/p`.
/// Every variable of the table is treated as a degree-2 root.
pub fn total_power(f: &Poly, prime: u32) -> Result<Poly, SteenrodError> {
    check_prime(prime)?;
    let ring = Ring::modular(prime)?;
    let f = reduce(f, &ring)?;
    let mut s = Substitution::new(f.table(), &ring);
    for j in 0..f.table().len() {
        let x = Poly::var_index(f.table(), &ring, j);
        s.set(f.table().name(j), &x + &x.pow(prime))?;
    }
    Ok(f.substitute(&s)?)
}

/// `P^i` of a homogeneous polynomial in `c1..c_rank`, over `Z/prime`.
///
/// The input may be over `Z` or `Z/prime` and may use any subset of the
/// Chern classes. The result lives over `c1..c_rank`.
pub fn steenrod_p(p: &Poly, i: u32, rank: usize, prime: u32) -> Result<Poly, SteenrodError> {
    check_prime(prime)?;
    if !p.is_homogeneous() {
        return Err(SteenrodError::NotHomogeneous(p.degrees()));
    }
    let ring = Ring::modular(prime)?;
    let ctx = RootContext::new(rank, &ring)?;
    if p.is_zero() {
        return Ok(Poly::zero(ctx.chern(), &ring));
    }
    let d = p.min_degree().unwrap_or(0);
    let target = d + 2 * i * (prime - 1);
    let lifted = ctx.lift_to_roots(&reduce(p, &ring)?)?;
    let mut s = Substitution::new(ctx.roots(), &ring);
    for j in 0..rank {
        let x = Poly::var_index(ctx.roots(), &ring, j);
        s.set(ctx.roots().name(j), &x + &x.pow(prime))?;
    }
    let total = lifted.substitute_truncated(&s, target)?;
    Ok(ctx.to_elementary(&total.homogeneous_component(target))?)
}

/// `sum_i P^i(p)` on Chern classes, truncated above `max_degree`. Works
/// componentwise, so the input need not be homogeneous.
pub fn steenrod_total(p: &Poly, rank: usize, prime: u32, max_degree: u32) -> Result<Poly, SteenrodError> {
    check_prime(prime)?;
    let ring = Ring::modular(prime)?;
    let mut out = Poly::zero(&VarTable::chern(rank), &ring);
    for d in p.degrees() {
        let comp = p.homogeneous_component(d);
        let mut i = 0;
        while d + 2 * i * (prime - 1) <= max_degree {
            out = out + steenrod_p(&comp, i, rank, prime)?;
            i += 1;
        }
    }
    Ok(out)
}

/// `P^2` computed by splitting, checked against the Adem relation `P1P1 = 2P2`.
#[allow(non_snake_case)]
pub fn adem_P2(p: &Poly, rank: usize, prime: u32) -> Result<Poly, SteenrodError> {
    let p2 = steenrod_p(p, 2, rank, prime)?;
    let p1p1 = steenrod_p(&steenrod_p(p, 1, rank, prime)?, 1, rank, prime)?;
    if p2.scale(2) != p1p1 {
        return Err(SteenrodError::AdemMismatch {
            input: p.to_string(),
            p2: p2.to_string(),
            p1p1: p1p1.to_string(),
        });
    }
    Ok(p2)
}

fn reduce(p: &Poly, ring: &Ring) -> Result<Poly, PolyError> {
    if p.ring() == ring {
        Ok(p.clone())
    } else {
        p.to_ring(ring)
    }
}

/// Total Thom multiplier `M` with `P(u_V) = M * u_V`.
///
/// For an honest bundle `M = prod_j (1 + x_j^(p-1))`. The universal expression
/// of each `e_k(x^(p-1))` in Chern classes is evaluated on `c(V)`, so virtual
/// bundles need no special treatment.
pub fn thom_multiplier(v: &VirtualBundle, prime: u32) -> Result<Poly, SteenrodError> {
    thom_multiplier_of_total(v.total_class(), prime, v.truncation())
}

/// [`thom_multiplier`] on a bare total class `1 + c1(V) + c2(V) + ...` over
/// any table, with `ci(V)` its degree-`2i` component. The degree-`2i(p-1)` part of
/// the result is the factor `m` in `P^i(u) = m * u`.
pub fn thom_multiplier_of_total(
    total_class: &Poly,
    prime: u32,
    max_degree: u32,
) -> Result<Poly, SteenrodError> {
    check_prime(prime)?;
    let ring = Ring::modular(prime)?;
    let total = reduce(total_class, &ring)?;
    let table = total.table().clone();
    let step = 2 * (prime - 1);
    let mut out = Poly::one(&table, &ring);
    let mut k = 1;
    while k * step <= max_degree {
        let q = universal_multiplier(k, prime)?;
        let mut s = Substitution::new(&table, &ring);
        for (idx, name) in q.table().names().iter().enumerate() {
            s.set(name, total.homogeneous_component(2 * (idx as u32 + 1)))?;
        }
        out = out + q.substitute_truncated(&s, max_degree)?;
        k += 1;
    }
    Ok(out.truncate_above(max_degree))
}

/// `e_k(x1^(p-1), ..)` in terms of `c1..c_R`, with enough roots to be stable.
fn universal_multiplier(k: u32, prime: u32) -> Result<Poly, SteenrodError> {
    let ring = Ring::modular(prime)?;
    let r = (k * (prime - 1)) as usize;
    let ctx = RootContext::new(r, &ring)?;
    let mut s = Substitution::new(ctx.roots(), &ring);
    for j in 0..r {
        s.set(
            ctx.roots().name(j),
            Poly::var_index(ctx.roots(), &ring, j).pow(prime - 1),
        )?;
    }
    let ek = ctx.elementary(k as usize).substitute(&s)?;
    Ok(ctx.to_elementary(&ek)?)
}

/// Graded polynomial algebra over `Z/p` with `P^1` given on generators and
/// extended by the Leibniz rule.
#[derive(Debug, Clone)]
pub struct P1Algebra {
    table: VarTable,
    ring: Ring,
    prime: u32,
    values: HashMap<String, Poly>,
}

impl P1Algebra {
    pub fn new(table: &VarTable, prime: u32) -> Result<P1Algebra, SteenrodError> {
        check_prime(prime)?;
        Ok(P1Algebra {
            table: table.clone(),
            ring: Ring::modular(prime)?,
            prime,
            values: HashMap::new(),
        })
    }

    pub fn table(&self) -> &VarTable {
        &self.table
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    /// Parses `text` in this algebra.
    pub fn parse(&self, text: &str) -> Result<Poly, PolyError> {
        Poly::parse(text, &self.table, &self.ring)
    }

    /// Sets `P^1(name) = value`. Degree-2 generators must satisfy
    /// `P^1 x = x^p`.
    pub fn assign(&mut self, name: &str, value: Poly) -> Result<&mut Self, SteenrodError> {
        self.assign_inner(name, value, true)
    }

    /// Like [`P1Algebra::assign`] but skips the instability rule.
    pub fn assign_exempt(&mut self, name: &str, value: Poly) -> Result<&mut Self, SteenrodError> {
        self.assign_inner(name, value, false)
    }

    pub fn assign_text(&mut self, name: &str, value: &str) -> Result<&mut Self, SteenrodError> {
        let v = self.parse(value)?;
        self.assign(name, v)
    }

    fn assign_inner(&mut self, name: &str, value: Poly, unstable: bool) -> Result<&mut Self, SteenrodError> {
        let i = self
            .table
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        let value = reduce(&value.retable(&self.table)?, &self.ring)?;
        let expected = self.table.degree(i) + 2 * (self.prime - 1);
        if !value.is_zero() && value.degrees() != [expected] {
            return Err(SteenrodError::DegreeMismatch {
                name: name.to_string(),
                expected,
                got: value.degrees(),
            });
        }
        if unstable && self.table.degree(i) == 2 {
            let x = Poly::var_index(&self.table, &self.ring, i);
            if value != x.pow(self.prime) {
                return Err(SteenrodError::Unstable {
                    name: name.to_string(),
                    prime: self.prime,
                });
            }
        }
        self.values.insert(name.to_string(), value);
        Ok(self)
    }

    /// Value assigned to a generator, if any.
    pub fn value(&self, name: &str) -> Option<&Poly> {
        self.values.get(name)
    }

    /// `P^1` as a derivation.
    pub fn p1(&self, f: &Poly) -> Result<Poly, SteenrodError> {
        let f = reduce(&f.retable(&self.table)?, &self.ring)?;
        let n = self.table.len();
        let mut out = Poly::zero(&self.table, &self.ring);
        for (m, c) in f.terms() {
            let e = m.exponents();
            for i in 0..n {
                if e[i] == 0 {
                    continue;
                }
                let name = self.table.name(i);
                let v = self
                    .values
                    .get(name)
                    .ok_or_else(|| SteenrodError::Unassigned(name.to_string()))?;
                let mut rest = e.to_vec();
                rest[i] -= 1;
                let coeff = c * BigInt::from(e[i]);
                out = out + Poly::monomial(&self.table, &self.ring, &rest, coeff) * v;
            }
        }
        Ok(out)
    }

    pub fn p1p1(&self, f: &Poly) -> Result<Poly, SteenrodError> {
        self.p1(&self.p1(f)?)
    }

    /// `P^2` from the Adem relation `P1P1 = 2P2`.
    pub fn p2(&self, f: &Poly) -> Result<Poly, SteenrodError> {
        let half = self
            .ring
            .inverse(&BigInt::from(2))
            .expect("2 is a unit mod an odd prime");
        Ok(self.p1p1(f)?.scale(half))
    }

    /// Chern classes `c1..c_rank` with `P^1` computed by splitting.
    pub fn chern(rank: usize, prime: u32) -> Result<P1Algebra, SteenrodError> {
        let table = VarTable::chern(rank);
        let mut alg = P1Algebra::new(&table, prime)?;
        for k in 1..=rank {
            let ck = Poly::var_index(&table, &alg.ring, k - 1);
            let v = steenrod_p(&ck, 1, rank, prime)?;
            alg.assign(&format!("c{k}"), v)?;
        }
        Ok(alg)
    }

    /// Chern classes `c2..c_rank` of a bundle with `c1 = 0`.
    pub fn chern_c1_zero(rank: usize, prime: u32) -> Result<P1Algebra, SteenrodError> {
        let table = VarTable::new((2..=rank).map(|i| (format!("c{i}"), 2 * i as u32)))?;
        let ring = Ring::modular(prime)?;
        let full = VarTable::chern(rank);
        let mut kill = Substitution::new(&table, &ring).with("c1", Poly::zero(&table, &ring))?;
        for k in 2..=rank {
            kill.set(&format!("c{k}"), Poly::var(&table, &ring, &format!("c{k}"))?)?;
        }
        let mut alg = P1Algebra::new(&table, prime)?;
        for k in 2..=rank {
            let ck = Poly::var_index(&full, &ring, k - 1);
            let v = steenrod_p(&ck, 1, rank, prime)?.substitute(&kill)?;
            alg.assign(&format!("c{k}"), v)?;
        }
        Ok(alg)
    }

    /// Adds a degree-0 Thom class `name` with `P^1(name) = m1 * name`.
    pub fn with_thom_class(&self, name: &str, m1: &Poly) -> Result<P1Algebra, SteenrodError> {
        let mut vars: Vec<(String, u32)> = self
            .table
            .names()
            .iter()
            .cloned()
            .zip(self.table.degrees().iter().copied())
            .collect();
        vars.push((name.to_string(), 0));
        let table = VarTable::new(vars)?;
        let mut alg = P1Algebra::new(&table, self.prime)?;
        for (k, v) in &self.values {
            alg.values
                .insert(k.clone(), reduce(&v.retable(&table)?, &alg.ring)?);
        }
        let u = Poly::var(&table, &alg.ring, name)?;
        let value = reduce(&m1.retable(&table)?, &alg.ring)? * &u;
        alg.assign(name, value)?;
        Ok(alg)
    }

    /// `<t, c2, c3, u>` over `F_3`: `P1 t = t^3`, `P1 c2 = c2^2`,
    /// `P1 c3 = c2 c3`, `P1 u = -c2 u`.
    pub fn bu_thom_module() -> P1Algebra {
        let table = VarTable::new([("t", 2), ("c2", 4), ("c3", 6), ("u", 0)]).expect("distinct");
        let mut alg = P1Algebra::new(&table, 3).expect("3 is prime");
        for (g, v) in [("t", "t^3"), ("c2", "c2^2"), ("c3", "c2*c3"), ("u", "-c2*u")] {
            alg.assign_text(g, v).expect("consistent degrees");
        }
        alg
    }

    /// `<i2, i4, i6, Y8, W10>` over `F_3` with `P1 i2 = i2^3`, `P1 i4 = Y8`,
    /// `P1 i6 = W10`, `P1 Y8 = -i4^3`. `W10` is left unassigned.
    pub fn eilenberg_maclane() -> P1Algebra {
        let table =
            VarTable::new([("i2", 2), ("i4", 4), ("i6", 6), ("Y8", 8), ("W10", 10)]).expect("distinct");
        let mut alg = P1Algebra::new(&table, 3).expect("3 is prime");
        for (g, v) in [("i2", "i2^3"), ("i4", "Y8"), ("i6", "W10"), ("Y8", "-i4^3")] {
            alg.assign_text(g, v).expect("consistent degrees");
        }
        alg
    }
}
