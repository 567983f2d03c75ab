//! Reference moment sequences (standard normal, standardized logistic) and
//! exact moment-matching verdicts.
//!
//! Comparison is exact rational equality throughout; matching the first k
//! moments is reported as MATCHES-ALL-TESTED, never as a proven limit.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::numbers::{bernoulli, Rat};
use crate::error::{Error, Result};

/// Moments of the unit-variance logistic distribution:
/// (2^r - 2) * |B_r| * 3^(r/2) for even r, zero for odd r.
pub fn logistic_moment(r: u64) -> Rat {
    if r == 0 {
        return Rat::one();
    }
    if r % 2 == 1 {
        return Rat::zero();
    }
    let two_term = BigInt::from(2).pow(r as u32) - 2;
    let three_pow = BigInt::from(3).pow(r as u32 / 2);
    Rat::from_integer(two_term * three_pow) * bernoulli(r).expect("even r >= 2").abs()
}

/// Moments of the standard normal: (r-1)!! for even r, zero for odd r.
pub fn normal_moment(r: u64) -> BigInt {
    if r % 2 == 1 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    let mut k = 1u64;
    while k < r {
        acc *= BigInt::from(k);
        k += 2;
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Candidate {
    Normal,
    Logistic,
}

impl Candidate {
    pub fn name(self) -> &'static str {
        match self {
            Candidate::Normal => "NORMAL",
            Candidate::Logistic => "LOGISTIC",
        }
    }

    pub fn moment(self, r: u64) -> Rat {
        match self {
            Candidate::Normal => Rat::from_integer(normal_moment(r)),
            Candidate::Logistic => logistic_moment(r),
        }
    }
}

/// One exact per-order comparison.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub order: u64,
    pub expected: Rat,
    pub actual: Rat,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Every supplied order agrees. Not a claim about the limit.
    MatchesAllTested,
    RejectedAtOrder(u64),
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub candidate: Candidate,
    pub verdict: Verdict,
    pub comparisons: Vec<Comparison>,
}

/// Compare a map of standardized limiting moments against each candidate.
/// Deterministic and independent of the input map's construction order.
pub fn classify(kappas: &BTreeMap<u64, Rat>) -> Result<Vec<Classification>> {
    if !kappas.keys().any(|&r| r >= 4 && r % 2 == 0) {
        return Err(Error::NoEvenOrders);
    }
    Ok([Candidate::Normal, Candidate::Logistic]
        .into_iter()
        .map(|candidate| {
            let comparisons: Vec<Comparison> = kappas
                .iter()
                .map(|(&order, actual)| {
                    let expected = candidate.moment(order);
                    let matches = &expected == actual;
                    Comparison { order, expected, actual: actual.clone(), matches }
                })
                .collect();
            let verdict = comparisons
                .iter()
                .find(|c| !c.matches)
                .map_or(Verdict::MatchesAllTested, |c| Verdict::RejectedAtOrder(c.order));
            Classification { candidate, verdict, comparisons }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn logistic_values() {
        assert_eq!(logistic_moment(0), Rat::one());
        assert_eq!(logistic_moment(2), Rat::one()); // unit variance
        assert_eq!(logistic_moment(4), rat(21, 5));
        assert_eq!(logistic_moment(5), Rat::zero());
        assert_eq!(logistic_moment(12), rat(343717911, 455));
    }

    #[test]
    fn normal_values() {
        assert_eq!(normal_moment(2), BigInt::one());
        assert_eq!(normal_moment(4), BigInt::from(3));
        assert_eq!(normal_moment(8), BigInt::from(105));
        assert_eq!(normal_moment(7), BigInt::zero());
    }

    #[test]
    fn logistic_is_leptokurtic() {
        for r in (4..=20u64).step_by(2) {
            assert!(logistic_moment(r) > Rat::from_integer(normal_moment(r)));
        }
    }

    #[test]
    fn classify_words_kappas() {
        let kappas: BTreeMap<u64, Rat> = [
            (4, rat(21, 5)),
            (6, rat(279, 7)),
            (8, rat(3429, 5)),
            (10, rat(206955, 11)),
            (12, rat(343717911, 455)),
        ]
        .into_iter()
        .collect();
        let out = classify(&kappas).unwrap();
        let logistic = out.iter().find(|c| c.candidate == Candidate::Logistic).unwrap();
        assert_eq!(logistic.verdict, Verdict::MatchesAllTested);
        let normal = out.iter().find(|c| c.candidate == Candidate::Normal).unwrap();
        assert_eq!(normal.verdict, Verdict::RejectedAtOrder(4));
    }

    #[test]
    fn classify_perms_kappa() {
        let kappas: BTreeMap<u64, Rat> = [(4, rat(87, 25))].into_iter().collect();
        let out = classify(&kappas).unwrap();
        for c in out {
            assert_eq!(c.verdict, Verdict::RejectedAtOrder(4));
        }
    }

    #[test]
    fn classify_exact_normal() {
        let kappas: BTreeMap<u64, Rat> = [(4, rat(3, 1))].into_iter().collect();
        let out = classify(&kappas).unwrap();
        let normal = out.iter().find(|c| c.candidate == Candidate::Normal).unwrap();
        assert_eq!(normal.verdict, Verdict::MatchesAllTested);
    }

    #[test]
    fn classify_needs_even_orders() {
        let kappas: BTreeMap<u64, Rat> = BTreeMap::new();
        assert!(matches!(classify(&kappas), Err(Error::NoEvenOrders)));
    }
}
