//! Exact polynomials in q and the three catalytic variables t32, t13, t21.
//!
//! Exponent tuples are (e_q, e_32, e_13, e_21). The same type doubles as a
//! generic exact 4-variable polynomial when cross-checking truncated series
//! arithmetic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::unipoly::UniPoly;

/// One of the three catalytic variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatVar {
    T32,
    T13,
    T21,
}

impl CatVar {
    pub fn index(self) -> usize {
        match self {
            CatVar::T32 => 1,
            CatVar::T13 => 2,
            CatVar::T21 => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CatalyticPoly {
    terms: BTreeMap<[u32; 4], BigInt>,
}

impl CatalyticPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut p = Self::zero();
        p.add_term([0; 4], BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 4], &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exps: [u32; 4], c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn add_assign(&mut self, other: &CatalyticPoly) {
        for (&e, c) in &other.terms {
            self.add_term(e, c.clone());
        }
    }

    pub fn mul(&self, other: &CatalyticPoly) -> CatalyticPoly {
        let mut out = CatalyticPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// The substitution t_v -> q * t_v: on exponent tuples, e_q += e_v.
    pub fn sigma(&self, v: CatVar) -> CatalyticPoly {
        let i = v.index();
        let mut out = CatalyticPoly::zero();
        for (&e, c) in &self.terms {
            let mut e2 = e;
            e2[0] += e[i];
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Multiply by t_v^a.
    pub fn mul_t_pow(&self, v: CatVar, a: u32) -> CatalyticPoly {
        let i = v.index();
        CatalyticPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| {
                    let mut e2 = e;
                    e2[i] += a;
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Plug in t32 = t13 = t21 = 1, leaving a polynomial in q.
    pub fn specialize_t_one(&self) -> UniPoly {
        let mut out = UniPoly::zero();
        for (&e, c) in &self.terms {
            out.add_term(e[0] as u64, c.clone());
        }
        out
    }
}
