//! Exact arithmetic substrate: big-integer polynomials, truncated
//! multivariate series, rationals, and interpolation.

pub mod catalytic;
pub mod numbers;
pub mod ratpoly;
pub mod trunc;
pub mod unipoly;

pub use catalytic::{CatVar, CatalyticPoly};
pub use numbers::{bernoulli, binomial, factorial, multinomial, stirling2, Rat};
pub use ratpoly::{interpolate, NewtonInterpolator, RatPoly};
pub use trunc::{ShiftVar, TruncSeries};
pub use unipoly::{gaussian_multinomial, qfactorial, UniPoly};
