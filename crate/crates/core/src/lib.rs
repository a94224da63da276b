//! Resource measures and trade-off relations for three-qubit pure states.
//!
//! The crate evaluates five measures on a state `|ψ⟩ ∈ (C²)^⊗3`:
//!
//! - generalized geometric measure (GGM) `G`,
//! - genuinely multipartite concurrence (GMC) `C`,
//! - concurrence fill `F`,
//! - first-order coherence `D`,
//! - maximal three-setting linear steering value `S`,
//!
//! and checks the exact relations that tie them together:
//!
//! | relation | statement |
//! |---|---|
//! | T1 | `(2G − 1)² + C² = 1` |
//! | T2 | `C² + D² ≤ 1`, `C² + 3D² ≥ 1` |
//! | T3 | `F + D² ≤ 1`, `F⁴ + (3D² − 1)²(3D⁴ − 2D² − 1) ≥ 0` for `D ≤ 1/√3` |
//! | T4 | `48F⁴ + (S − 3)²(S + 1)(S − 7) ≤ 0` |
//! | T5 | `S − 6D² ≤ 1` for `D < 1/√3`, `S + 3D² ≤ 4` for `D ≥ 1/√3` |
//!
//! Amplitudes are indexed `4a + 2b + c`: qubit A is the most significant bit.
//!
//! ```
//! use tripartite::{measures, states};
//!
//! let w = states::psi_m(1.0)?;
//! let p = measures::profile(&w)?;
//! assert!((p.steering_max - 3.0).abs() < 1e-12);
//! assert!((p.coherence - 1.0 / 3f64.sqrt()).abs() < 1e-12);
//! # Ok::<(), tripartite::Error>(())
//! ```

pub mod closed_form;
pub mod commands;
mod error;
pub mod figure;
pub mod io;
pub mod linalg;
pub mod measures;
pub mod relations;
pub mod states;
pub mod svg;
pub mod tolerance;

pub use error::{Error, Result};
pub use measures::{profile, ResourceProfile};
pub use relations::{verify_ensemble, RelationId, TheoremReport};
pub use states::{haar_sample, make_state, psi_alpha, psi_m, psi_theta, PureState3, SamplerConfig};
pub use tolerance::Tolerances;

/// Seed used by the command-line tool and the acceptance suite when none
/// is given.
pub const DEFAULT_SEED: u64 = 20_230_415;

/// Ensemble size matching the published figures.
pub const DEFAULT_SAMPLES: usize = 100_000;
