//! The machine-readable output envelope shared by every CLI command.
//!
//! Serialization is canonical: struct fields are declared in lexicographic
//! order and nested maps are sorted, so parsing an envelope and
//! re-serializing it is byte-identical. All arbitrary-precision integers
//! and rationals cross this boundary as decimal strings ("num/den" for
//! rationals), never as floating point.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::numbers::Rat;
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub schema_version: String,
    pub timing_ms: u64,
}

impl Envelope {
    pub fn new(command: &str, inputs: Value, result: Value, timing_ms: u64) -> Self {
        Envelope {
            command: command.to_string(),
            inputs,
            result,
            schema_version: SCHEMA_VERSION.to_string(),
            timing_ms,
        }
    }

    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("envelope serializes")
    }

    pub fn from_json(input: &str) -> Result<Envelope> {
        serde_json::from_str(input).map_err(|e| Error::Parse(format!("envelope: {e}")))
    }
}

/// Exact rational as "num/den", or just the integer when the denominator
/// is 1.
pub fn rat_string(r: &Rat) -> String {
    use num_traits::One;
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
