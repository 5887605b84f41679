//! Splitting principle: Chern classes as elementary symmetric functions of
//! formal roots.
//!
//! A [`RootContext`] of rank `n` carries two tables, the roots `x1..xn` (degree
//! 2 each) and the Chern classes `c1..cn` (`deg ci = 2i`). Lifting sends
//! `ck -> e_k(x)`; [`RootContext::to_elementary`] goes back.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::exactpoly::{Monomial, Poly, PolyError, Ring, Substitution, VarTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("polynomial is not symmetric: swapping {0} and {1} changes it")]
    NotSymmetric(String, String),
    #[error("rank must be positive")]
    ZeroRank,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone)]
pub struct RootContext {
    rank: usize,
    ring: Ring,
    roots: VarTable,
    chern: VarTable,
}

impl RootContext {
    pub fn new(rank: usize, ring: &Ring) -> Result<RootContext, SymError> {
        if rank == 0 {
            return Err(SymError::ZeroRank);
        }
        Ok(RootContext {
            rank,
            ring: ring.clone(),
            roots: VarTable::roots(rank),
            chern: VarTable::chern(rank),
        })
    }

    /// Context whose roots carry the given names, e.g. `w, x, y, z`.
    pub fn with_root_names(names: &[&str], ring: &Ring) -> Result<RootContext, SymError> {
        if names.is_empty() {
            return Err(SymError::ZeroRank);
        }
        Ok(RootContext {
            rank: names.len(),
            ring: ring.clone(),
            roots: VarTable::new(names.iter().map(|n| (*n, 2)))?,
            chern: VarTable::chern(names.len()),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn roots(&self) -> &VarTable {
        &self.roots
    }

    pub fn chern(&self) -> &VarTable {
        &self.chern
    }

    /// `e_k(x1..xn)`; zero for `k > n`, one for `k = 0`.
    pub fn elementary(&self, k: usize) -> Poly {
        let n = self.rank;
        if k > n {
            return Poly::zero(&self.roots, &self.ring);
        }
        let mut out = Poly::zero(&self.roots, &self.ring);
        let mut exps = vec![0u32; n];
        subsets(n, k, 0, &mut exps, &mut |e| {
            out = &out + &Poly::monomial(&self.roots, &self.ring, e, 1);
        });
        out
    }

    /// `sum_j x_j^k`.
    pub fn power_sum_roots(&self, k: u32) -> Poly {
        (0..self.rank).fold(Poly::zero(&self.roots, &self.ring), |acc, j| {
            acc + Poly::var_index(&self.roots, &self.ring, j).pow(k)
        })
    }

    /// `p_k` as a polynomial in `c1..cn` via the Newton identities
    /// `p_k = sum_{i<k} (-1)^(i-1) c_i p_(k-i) + (-1)^(k-1) k c_k`.
    pub fn newton_power_sum(&self, k: usize) -> Poly {
        let c = |i: usize| -> Poly {
            if i == 0 || i > self.rank {
                Poly::zero(&self.chern, &self.ring)
            } else {
                Poly::var_index(&self.chern, &self.ring, i - 1)
            }
        };
        let mut p: Vec<Poly> = vec![Poly::constant(&self.chern, &self.ring, self.rank as i64)];
        for m in 1..=k {
            let mut acc = c(m).scale(sign(m - 1) * m as i64);
            for i in 1..m {
                acc = acc + (c(i) * &p[m - i]).scale(sign(i - 1));
            }
            p.push(acc);
        }
        p.swap_remove(k)
    }

    /// Substitutes `ck -> e_k(x)`. The input may use any subset of `c1..cn`.
    pub fn lift_to_roots(&self, p: &Poly) -> Result<Poly, SymError> {
        let p = p.retable(&self.chern)?;
        let p = if p.ring() == &self.ring {
            p
        } else {
            p.to_ring(&self.ring)?
        };
        let mut s = Substitution::new(&self.roots, &self.ring);
        for k in 1..=self.rank {
            s.set(&format!("c{k}"), self.elementary(k))?;
        }
        Ok(p.substitute(&s)?)
    }

    /// Writes a symmetric polynomial in the roots as a polynomial in `c1..cn`.
    pub fn to_elementary(&self, q: &Poly) -> Result<Poly, SymError> {
        if q.table() != &self.roots {
            return Err(PolyError::TableMismatch.into());
        }
        self.check_symmetric(q)?;
        let mut rest = q.clone();
        let mut out = Poly::zero(&self.chern, &self.ring);
        while let Some((lead, coeff)) = lex_leading(&rest) {
            // lead exponents are non-increasing for a symmetric polynomial
            let e = lead.exponents();
            let mut c_exps = vec![0u32; self.rank];
            for k in 0..self.rank {
                let next = if k + 1 < self.rank { e[k + 1] } else { 0 };
                c_exps[k] = e[k] - next;
            }
            let mut prod = Poly::constant(&self.roots, &self.ring, coeff.clone());
            for (k, &a) in c_exps.iter().enumerate() {
                if a > 0 {
                    prod = prod * self.elementary(k + 1).pow(a);
                }
            }
            rest = rest - prod;
            out = out + Poly::monomial(&self.chern, &self.ring, &c_exps, coeff);
        }
        Ok(out)
    }

    fn check_symmetric(&self, q: &Poly) -> Result<(), SymError> {
        for i in 0..self.rank.saturating_sub(1) {
            for (m, c) in q.terms() {
                let mut swapped = m.exponents().to_vec();
                swapped.swap(i, i + 1);
                if &q.coeff(&Monomial::new(&self.roots, &swapped)) != c {
                    return Err(SymError::NotSymmetric(
                        self.roots.name(i).to_string(),
                        self.roots.name(i + 1).to_string(),
                    ));
                }
            }
        }
        Ok(())
    }
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn lex_leading(p: &Poly) -> Option<(Monomial, BigInt)> {
    p.terms()
        .filter(|(_, c)| !c.is_zero())
        .max_by(|(a, _), (b, _)| a.exponents().cmp(b.exponents()))
        .map(|(m, c)| (m.clone(), c.clone()))
}

fn subsets(n: usize, k: usize, start: usize, exps: &mut [u32], f: &mut impl FnMut(&[u32])) {
    if k == 0 {
        f(exps);
        return;
    }
    for i in start..=n - k {
        exps[i] = 1;
        subsets(n, k - 1, i + 1, exps, f);
        exps[i] = 0;
    }
}
