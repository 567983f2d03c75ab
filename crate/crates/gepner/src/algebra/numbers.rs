//! Exact integer and rational helpers: binomials, factorials, Stirling
//! numbers of the second kind, Bernoulli numbers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::stats::Composition;

/// Exact rational with arbitrary-precision numerator and denominator.
/// `num_rational` keeps it reduced with a positive denominator.
pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).map(BigInt::from).product()
}

/// (a_1 + ... + a_k)! / (a_1! ... a_k!)
pub fn multinomial(a: &Composition) -> BigInt {
    let mut acc = factorial(a.total());
    for &ai in &a.0 {
        acc /= factorial(ai);
    }
    acc
}

/// Stirling number of the second kind S(r, j); zero for j > r.
pub fn stirling2(r: u64, j: u64) -> BigInt {
    if j > r {
        return BigInt::zero();
    }
    if r == 0 {
        return BigInt::one(); // S(0,0)
    }
    if j == 0 {
        return BigInt::zero();
    }
    // S(r,j) = j*S(r-1,j) + S(r-1,j-1)
    let mut row = vec![BigInt::zero(); j as usize + 1];
    row[0] = BigInt::one(); // row for r = 0
    for _ in 1..=r {
        for col in (1..row.len()).rev() {
            row[col] = BigInt::from(col) * &row[col] + &row[col - 1];
        }
        row[0] = BigInt::zero();
    }
    row[j as usize].clone()
}

/// Bernoulli number B_r for even r >= 2, via the recurrence
/// sum_{k=0}^{r} C(r+1, k) B_k = 0.
///
/// Only even indices are exposed; the B_1 sign convention is thereby
/// irrelevant (odd Bernoulli numbers beyond B_1 vanish, and the logistic
/// odd moments are zero anyway).
pub fn bernoulli(r: u64) -> Result<Rat> {
    if r == 0 || r % 2 != 0 {
        return Err(Error::Domain {
            what: "bernoulli",
            needed: "an even index >= 2",
            got: r.to_string(),
        });
    }
    let mut b: Vec<Rat> = Vec::with_capacity(r as usize + 1);
    b.push(Rat::one());
    b.push(Rat::new(BigInt::from(-1), BigInt::from(2)));
    for m in 2..=r {
        let mut sum = Rat::zero();
        for (k, bk) in b.iter().enumerate() {
            sum += Rat::from_integer(binomial(m + 1, k as u64)) * bk;
        }
        b.push(-sum / Rat::from_integer(BigInt::from(m + 1)));
    }
    Ok(b[r as usize].clone())
}
