//! Exact moments from generating-polynomial data, polynomial fits in n,
//! and exact limits of standardized moments.
//!
//! The input coefficients c_0..c_r are binomial-coefficient sums
//! c_j = sum_w C(stat(w), j), i.e. the Taylor coefficients of the
//! generating polynomial at q = 1+p; j! c_j is the j-th falling-factorial
//! moment sum. Raw moments follow by Stirling conversion, central moments
//! by binomial expansion about the mean.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::numbers::{binomial, factorial, stirling2, Rat};
use crate::algebra::{NewtonInterpolator, RatPoly, UniPoly};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::recurrence;
use crate::stats::Composition;

/// Which population a moment table describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// S_n, population n!.
    Perms,
    /// W(n,n,n), population (3n)!/(n!)^3.
    Words,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Perms => "perms",
            Family::Words => "words",
        }
    }
}

/// Exact raw/central moments of one distribution, indexed by order.
#[derive(Debug, Clone)]
pub struct MomentTable {
    pub family: Family,
    pub n: u64,
    pub population: BigInt,
    raw: Vec<Rat>,
    central: Vec<Rat>,
}

impl MomentTable {
    pub fn max_order(&self) -> usize {
        self.raw.len() - 1
    }

    pub fn mean(&self) -> &Rat {
        &self.raw[1]
    }

    pub fn raw(&self, r: usize) -> &Rat {
        &self.raw[r]
    }

    pub fn central(&self, r: usize) -> &Rat {
        &self.central[r]
    }

    pub fn variance(&self) -> &Rat {
        &self.central[2]
    }

    /// central[r] / central[2]^(r/2). Defined for even r with positive
    /// variance; odd central moments vanish, so odd orders report zero.
    pub fn standardized(&self, r: usize) -> Result<Rat> {
        if r % 2 == 1 {
            return if self.central[r].is_zero() {
                Ok(Rat::zero())
            } else {
                Err(Error::Domain {
                    what: "standardized moment",
                    needed: "an even order (odd central moments vanish)",
                    got: r.to_string(),
                })
            };
        }
        if self.central[2].is_zero() {
            return Err(Error::ZeroVariance);
        }
        let mut denom = Rat::one();
        for _ in 0..r / 2 {
            denom *= &self.central[2];
        }
        Ok(&self.central[r] / denom)
    }
}

/// Build a moment table from the coefficients c_0..c_r described above;
/// c_0 is the population size and must be positive.
pub fn moments_from_coeffs(family: Family, n: u64, coeffs: &[BigInt]) -> Result<MomentTable> {
    if coeffs.is_empty() || !coeffs[0].is_positive() {
        return Err(Error::Domain {
            what: "moment coefficients",
            needed: "c_0 = population > 0",
            got: format!("{:?}", coeffs.first()),
        });
    }
    let r_max = coeffs.len() - 1;
    let population = coeffs[0].clone();
    let pop_rat = Rat::from_integer(population.clone());

    // raw[s] = (1/N) * sum_j S(s,j) * j! * c_j
    let mut raw = Vec::with_capacity(r_max + 1);
    for s in 0..=r_max {
        let mut sum = BigInt::zero();
        for (j, c) in coeffs.iter().enumerate().take(s + 1) {
            sum += stirling2(s as u64, j as u64) * factorial(j as u64) * c;
        }
        raw.push(Rat::from_integer(sum) / &pop_rat);
    }

    // central[r] = sum_k C(r,k) raw[k] (-mean)^(r-k)
    let mean = raw[1].clone();
    let mut central = Vec::with_capacity(r_max + 1);
    for r in 0..=r_max {
        let mut sum = Rat::zero();
        let mut neg_mean_pow = Rat::one();
        for k in (0..=r).rev() {
            sum += Rat::from_integer(binomial(r as u64, k as u64)) * &raw[k] * &neg_mean_pow;
            neg_mean_pow *= -&mean;
        }
        central.push(sum);
    }

    Ok(MomentTable { family, n, population, raw, central })
}

/// Moments of the distribution whose generating polynomial is `g`.
pub fn moments_from_poly(family: Family, n: u64, g: &UniPoly, r: usize) -> Result<MomentTable> {
    moments_from_coeffs(family, n, &g.taylor_at_one(r))
}

/// Moment tables for W(m,m,m), m = 1..=n_max, from one truncated-recurrence
/// sweep at order r.
pub fn words_moment_tables(
    n_max: u64,
    r: u64,
    checkpoint_dir: Option<&Path>,
) -> Result<Vec<MomentTable>> {
    let diags = recurrence::h_truncated(n_max, r, checkpoint_dir)?;
    diags
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(n, coeffs)| moments_from_coeffs(Family::Words, n as u64, &coeffs))
        .collect()
}

/// Moment table for S_n from the brute-force Gepner polynomial.
pub fn perms_moment_table(n: u64, r: u64, allow_unsafe: bool) -> Result<MomentTable> {
    let g = enumerate::gepner_poly_perm(n, allow_unsafe)?;
    moments_from_poly(Family::Perms, n, &g, r as usize)
}

/// Moment table for W(n,n,n) by brute-force enumeration (cross-check path).
pub fn words_moment_table_brute(n: u64, r: u64, allow_unsafe: bool) -> Result<MomentTable> {
    let g = enumerate::stat_poly_words(
        &Composition(vec![n, n, n]),
        enumerate::StatKind::Gep,
        allow_unsafe,
    )?;
    moments_from_poly(Family::Words, n, &g, r as usize)
}

/// Fit the unique polynomial of degree <= `degree_bound` through the data,
/// holding back the last `guards` points to falsify the degree assumption.
///
/// The fit interpolates the leading points in Newton form; each guard point
/// must already lie on the interpolant, otherwise the degree assumption is
/// violated and the first offending n is reported.
pub fn fit_polynomial(points: &[(i64, Rat)], degree_bound: usize, guards: usize) -> Result<RatPoly> {
    let needed = degree_bound + 1 + guards;
    if points.len() < needed {
        return Err(Error::InsufficientPoints {
            degree: degree_bound,
            guards,
            needed,
            got: points.len(),
        });
    }
    let split = points.len() - guards;
    let mut interp = NewtonInterpolator::new();
    for (n, v) in &points[..split] {
        interp.add_point(Rat::from_integer(BigInt::from(*n)), v.clone())?;
    }
    let poly = interp.to_ratpoly();
    let degree = poly.degree().unwrap_or(0);
    for (n, v) in &points[split..] {
        if !interp.is_consistent(&Rat::from_integer(BigInt::from(*n)), v) {
            return Err(Error::GuardFailure { n: *n, degree });
        }
    }
    Ok(poly)
}

/// What to fit as a function of n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentKind {
    Mean,
    Central(u64),
}

impl MomentKind {
    /// Observed degree bound of the polynomial expression in n: 3 for the
    /// mean, 2r for the r-th central moment.
    pub fn degree_bound(self) -> usize {
        match self {
            MomentKind::Mean => 3,
            MomentKind::Central(r) => 2 * r as usize,
        }
    }

    pub fn extract(self, table: &MomentTable) -> Rat {
        match self {
            MomentKind::Mean => table.mean().clone(),
            MomentKind::Central(r) => table.central(r as usize).clone(),
        }
    }
}

/// Fit a moment polynomial in n over tables for consecutive sizes.
pub fn fit_moment_polynomial(
    tables: &[MomentTable],
    kind: MomentKind,
    guards: usize,
) -> Result<RatPoly> {
    let points: Vec<(i64, Rat)> = tables
        .iter()
        .map(|t| (t.n as i64, kind.extract(t)))
        .collect();
    fit_polynomial(&points, kind.degree_bound(), guards)
}

/// Exact n -> infinity limit of m_r(n) / m_2(n)^(r/2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Limit {
    Finite(Rat),
    Divergent,
}

pub fn limit_standardized(m_r: &RatPoly, m_2: &RatPoly, r: u64) -> Result<Limit> {
    if r % 2 == 1 {
        // odd central moments vanish identically
        return Ok(Limit::Finite(Rat::zero()));
    }
    let d2 = m_2.degree().ok_or(Error::ZeroVariance)?;
    let target = d2 * (r as usize / 2);
    let dr = match m_r.degree() {
        None => return Ok(Limit::Finite(Rat::zero())),
        Some(d) => d,
    };
    if dr < target {
        return Ok(Limit::Finite(Rat::zero()));
    }
    if dr > target {
        return Ok(Limit::Divergent);
    }
    let mut denom = Rat::one();
    for _ in 0..r / 2 {
        denom *= m_2.leading().unwrap();
    }
    Ok(Limit::Finite(m_r.leading().unwrap() / denom))
}
