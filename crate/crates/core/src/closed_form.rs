//! Analytic measure values along the three boundary families.
//!
//! Nothing here calls into [`crate::measures`]; these formulas are the
//! reference the numerical path is checked against, and they generate the
//! boundary curves drawn on figures.

use serde::{Deserialize, Serialize};

use crate::states::Family;
use crate::{Error, Result};

/// Measures that can appear on a figure axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Ggm,
    Gmc,
    Fill,
    Coherence,
    Steering,
}

impl Quantity {
    pub fn label(self) -> &'static str {
        match self {
            Quantity::Ggm => "GGM",
            Quantity::Gmc => "GMC",
            Quantity::Fill => "concurrence fill",
            Quantity::Coherence => "first-order coherence",
            Quantity::Steering => "max steering violation",
        }
    }
}

/// The subset of measures known in closed form for a family member.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PartialProfile {
    pub gmc: Option<f64>,
    pub coherence: Option<f64>,
    pub fill: Option<f64>,
    pub steering_max: Option<f64>,
}

impl PartialProfile {
    pub fn get(&self, q: Quantity) -> Option<f64> {
        match q {
            Quantity::Ggm => None,
            Quantity::Gmc => self.gmc,
            Quantity::Fill => self.fill,
            Quantity::Coherence => self.coherence,
            Quantity::Steering => self.steering_max,
        }
    }
}

pub fn alpha_closed(alpha: f64) -> PartialProfile {
    let (s, c) = alpha.sin_cos();
    let radicand = (2.0 * (1.0 - c.powi(4) - s.powi(4))).max(0.0);
    PartialProfile {
        gmc: Some(radicand.sqrt()),
        coherence: Some((2.0 * alpha).cos().abs()),
        fill: Some((2.0 * alpha).sin().powi(2)),
        steering_max: None,
    }
}

pub fn m_closed(m: f64) -> Result<PartialProfile> {
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::ParameterRange {
            name: "m",
            value: m,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let m2 = m * m;
    let m4 = m2 * m2;
    let den = 1.0 + m2;
    let fill = (1.0 - m2) * ((1.0 + 6.0 * m2 + m4) * (3.0 + 2.0 * m2 + 3.0 * m4)).powf(0.25)
        / (3f64.powf(0.25) * den * den);
    Ok(PartialProfile {
        gmc: Some((1.0 - m2) / den),
        coherence: Some(2.0 * m / (3f64.sqrt() * den)),
        fill: Some(fill),
        steering_max: Some((1.0 + 10.0 * m2 + m4) / (den * den)),
    })
}

/// The family is biseparable, so GMC and fill vanish identically.
pub fn theta_closed(theta: f64) -> PartialProfile {
    let c4 = (4.0 * theta).cos();
    PartialProfile {
        gmc: Some(0.0),
        coherence: Some(((2.0 + c4) / 3.0).sqrt()),
        fill: Some(0.0),
        steering_max: Some(2.0 - c4),
    }
}

pub fn family_closed(family: Family, value: f64) -> Result<PartialProfile> {
    match family {
        Family::Alpha => Ok(alpha_closed(value)),
        Family::M => m_closed(value),
        Family::Theta => Ok(theta_closed(value)),
    }
}

/// One family drawn in a measure plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCurve {
    pub family: Family,
    pub x_quantity: Quantity,
    pub y_quantity: Quantity,
    /// `(parameter, x, y)` with strictly increasing parameter.
    pub samples: Vec<(f64, f64, f64)>,
}

impl BoundaryCurve {
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.samples.iter().map(|&(_, x, y)| (x, y))
    }
}

/// Evenly spaced parameter grid over the family's domain, endpoints included.
pub fn parameter_grid(family: Family, n_points: usize) -> Result<Vec<f64>> {
    if n_points < 2 {
        return Err(Error::TooFewPoints(n_points));
    }
    let (lo, hi) = family.domain();
    let step = (hi - lo) / (n_points - 1) as f64;
    Ok((0..n_points)
        .map(|k| {
            if k + 1 == n_points {
                hi
            } else {
                lo + step * k as f64
            }
        })
        .collect())
}

pub fn boundary_curve(
    family: Family,
    x_quantity: Quantity,
    y_quantity: Quantity,
    n_points: usize,
) -> Result<BoundaryCurve> {
    let probe = family_closed(family, family.domain().0)?;
    for quantity in [x_quantity, y_quantity] {
        if probe.get(quantity).is_none() {
            return Err(Error::UnsupportedQuantity { family, quantity });
        }
    }
    let samples = parameter_grid(family, n_points)?
        .into_iter()
        .map(|t| {
            let v = family_closed(family, t)?;
            // availability checked above
            Ok((t, v.get(x_quantity).unwrap(), v.get(y_quantity).unwrap()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundaryCurve {
        family,
        x_quantity,
        y_quantity,
        samples,
    })
}
