//! Exact-arithmetic engines for the Gepner statistic `gep` on permutations
//! and on words over {1,2,3}, alongside the classical `inv` and `maj`.
//!
//! The crate computes distribution polynomials by brute force and by the
//! catalytic functional recurrence, extracts exact moments through
//! truncated series, fits moment polynomials in n over the rationals, and
//! compares exact limiting standardized moments against the normal and
//! logistic reference sequences.
//!
//! Everything is exact: big integers, big rationals, and equality checks.
//! There is not a single floating-point number in the pipeline.

pub mod algebra;
pub mod distributions;
pub mod enumerate;
pub mod envelope;
pub mod error;
pub mod moments;
pub mod parse;
pub mod recurrence;
pub mod stats;

pub use error::{Error, Result};
