//! Numerical tolerances shared by every module.

use serde::{Deserialize, Serialize};

/// The tolerance set used for validation, clamping, and verification.
///
/// `structural` guards invariants of constructed objects (normalization,
/// Hermiticity, clamps of bounded quantities). `derived` applies to
/// identities between computed measures. `theorem` is the slack allowed on
/// the trade-off inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub structural: f64,
    pub derived: f64,
    pub theorem: f64,
}

pub const STRUCTURAL: f64 = 1e-12;
pub const DERIVED: f64 = 1e-10;
pub const THEOREM: f64 = 1e-9;

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            structural: STRUCTURAL,
            derived: DERIVED,
            theorem: THEOREM,
        }
    }
}

impl std::fmt::Display for Tolerances {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "structural={:e} derived={:e} theorem={:e}",
            self.structural, self.derived, self.theorem
        )
    }
}

/// Clamp `value` into `[lo, hi]` when it lies outside by at most
/// [`STRUCTURAL`]; anything further out is reported as an error.
pub(crate) fn clamp_bounded(
    quantity: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
) -> crate::Result<f64> {
    if value < lo - STRUCTURAL || value > hi + STRUCTURAL || value.is_nan() {
        return Err(crate::Error::OutOfBounds {
            quantity,
            value,
            lo,
            hi,
        });
    }
    Ok(value.clamp(lo, hi))
}
