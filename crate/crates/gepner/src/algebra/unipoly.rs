//! Univariate polynomials in q with arbitrary-precision integer
//! coefficients, plus the q-factorial and Gaussian multinomial built on
//! them.
//!
//! Representation is a sparse exponent -> coefficient map in canonical form
//! (no stored zeros). Gepner polynomials of the first kind are genuinely
//! sparse, so the map form pays off.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::numbers::binomial;
use crate::stats::Composition;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: BTreeMap<u64, BigInt>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(0, c);
        p
    }

    /// Monomial c * q^e.
    pub fn monomial(c: BigInt, e: u64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms(terms: &[(i64, u64)]) -> Self {
        let mut p = Self::zero();
        for &(c, e) in terms {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, e: u64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add_term(&mut self, e: u64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn add_assign(&mut self, other: &UniPoly) {
        for (&e, c) in &other.coeffs {
            self.add_term(e, c.clone());
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        let mut out = UniPoly::zero();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &other.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Multiply by q^k.
    pub fn shift(&self, k: u64) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Exact division; panics on a nonzero remainder. Division inside the
    /// Gaussian multinomial is exact by MacMahon's theorem, so a remainder
    /// is an internal consistency failure, not a recoverable condition.
    pub fn div_exact(&self, divisor: &UniPoly) -> UniPoly {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = UniPoly::zero();
        let d_deg = divisor.degree().unwrap();
        let d_lead = divisor.coeff(d_deg);
        while let Some(r_deg) = rem.degree() {
            assert!(r_deg >= d_deg, "inexact polynomial division (degree)");
            let r_lead = rem.coeff(r_deg);
            let (q, r) = num_integer::Integer::div_rem(&r_lead, &d_lead);
            assert!(r.is_zero(), "inexact polynomial division (coefficient)");
            let e = r_deg - d_deg;
            for (de, dc) in divisor.terms() {
                rem.add_term(de + e, -(dc * &q));
            }
            quot.add_term(e, q);
        }
        quot
    }

    /// Evaluate at q = 1, i.e. the coefficient sum.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        // Horner over the sparse terms, descending
        let mut acc = BigInt::zero();
        let mut last_e: Option<u64> = None;
        for (&e, c) in self.coeffs.iter().rev() {
            if let Some(prev) = last_e {
                for _ in 0..(prev - e) {
                    acc *= x;
                }
            }
            acc += c;
            last_e = Some(e);
        }
        if let Some(e) = last_e {
            for _ in 0..e {
                acc *= x;
            }
        }
        acc
    }

    /// Coefficients of p^0..p^r in the expansion at q = 1+p:
    /// c_j = sum_e coeff(e) * C(e, j).
    pub fn taylor_at_one(&self, r: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); r + 1];
        for (&e, c) in &self.coeffs {
            for (j, slot) in out.iter_mut().enumerate() {
                if (j as u64) > e {
                    break;
                }
                *slot += c * binomial(e, j as u64);
            }
        }
        out
    }

    /// Coefficient symmetry about top/2 for the exponent range [0, top].
    pub fn is_palindromic(&self, top: u64) -> bool {
        if let Some(d) = self.degree() {
            if d > top {
                return false;
            }
        }
        (0..=top).all(|e| self.coeff(e) == self.coeff(top - e))
    }
}

/// Canonical text form: `c*q^e` terms joined by ` + `, descending exponent,
/// with `c*q` at e = 1 and a bare `c` at e = 0. Matches the displays the
/// polynomials are diffed against.
impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*q")?,
                _ => write!(f, "{c}*q^{e}")?,
            }
        }
        Ok(())
    }
}

/// [m]! = prod_{j=1..m} (1 + q + ... + q^{j-1}). Degree C(m,2); value m!
/// at q = 1.
pub fn qfactorial(m: u64) -> UniPoly {
    let mut acc = UniPoly::one();
    for j in 2..=m {
        let mut factor = UniPoly::zero();
        for e in 0..j {
            factor.add_term(e, BigInt::one());
        }
        acc = acc.mul(&factor);
    }
    acc
}

/// The Gaussian multinomial [a_1+...+a_k]! / ([a_1]! ... [a_k]!), computed
/// by iterated exact division. Equals the inv and maj generating function
/// of the multiset words W(a).
pub fn gaussian_multinomial(a: &Composition) -> UniPoly {
    let mut acc = qfactorial(a.total());
    for &ai in &a.0 {
        acc = acc.div_exact(&qfactorial(ai));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qfactorial_values() {
        assert_eq!(qfactorial(0), UniPoly::one());
        // [3]! = (1+q)(1+q+q^2) = 1+2q+2q^2+q^3
        assert_eq!(qfactorial(3), UniPoly::from_terms(&[(1, 0), (2, 1), (2, 2), (1, 3)]));
        assert_eq!(qfactorial(4).eval_one(), BigInt::from(24));
        assert_eq!(qfactorial(5).degree(), Some(10));
    }

    #[test]
    fn gaussian_multinomial_values() {
        let gm = |a: &[u64]| gaussian_multinomial(&Composition(a.to_vec()));
        assert_eq!(gm(&[1, 1]), UniPoly::from_terms(&[(1, 0), (1, 1)]));
        assert_eq!(gm(&[1, 1, 1]), qfactorial(3));
        assert_eq!(gm(&[7, 0, 0]), UniPoly::one());
    }

    #[test]
    fn gaussian_multinomial_palindromic() {
        for a in [[2u64, 2, 2], [3, 1, 2], [4, 0, 3]] {
            let comp = Composition(a.to_vec());
            let top: u64 = (0..3).flat_map(|i| (i + 1..3).map(move |j| a[i] * a[j])).sum();
            assert!(gaussian_multinomial(&comp).is_palindromic(top));
        }
    }

    #[test]
    fn taylor_at_one_small() {
        // (1+q)^2 = 1+2q+q^2 at q=1+p: 4 + 4p + p^2... as binomial sums:
        // c_0 = 4, c_1 = 0*1+2*1+1*2 = 4, c_2 = 1
        let p = UniPoly::from_terms(&[(1, 0), (2, 1), (1, 2)]);
        assert_eq!(
            p.taylor_at_one(2),
            vec![BigInt::from(4), BigInt::from(4), BigInt::from(1)]
        );
    }

    #[test]
    fn display_format() {
        let p = UniPoly::from_terms(&[(4, 4), (16, 2), (4, 0)]);
        assert_eq!(p.to_string(), "4*q^4 + 16*q^2 + 4");
        assert_eq!(UniPoly::from_terms(&[(3, 1), (3, 0)]).to_string(), "3*q + 3");
        assert_eq!(UniPoly::zero().to_string(), "0");
    }

    #[test]
    #[should_panic(expected = "inexact")]
    fn div_exact_rejects_remainder() {
        let a = UniPoly::from_terms(&[(1, 2), (1, 0)]);
        let b = UniPoly::from_terms(&[(1, 1), (1, 0)]);
        a.div_exact(&b);
    }
}
