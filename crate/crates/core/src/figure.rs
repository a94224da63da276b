//! Reproduction of the five measure-plane scatter figures.
//!
//! Each figure pairs a Haar scatter with the analytic boundaries that
//! enclose it. The CSV always holds every sample; the SVG is decimated to
//! [`SVG_POINT_LIMIT`] points.

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::closed_form::{boundary_curve, Quantity};
use crate::io::{fmt_f64, RunMetadata};
use crate::measures::ResourceProfile;
use crate::relations::CRITICAL_COHERENCE;
use crate::states::Family;
use crate::svg::{Axis, Curve, CurveRole, ScatterPlot};
use crate::Result;

pub const SVG_POINT_LIMIT: usize = 20_000;
const CURVE_POINTS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureId {
    /// GGM against GMC.
    F1GgmGmc,
    /// Coherence against GMC.
    F2DGmc,
    /// Coherence against concurrence fill.
    F3DFill,
    /// Steering against concurrence fill.
    F4SFill,
    /// Steering against coherence.
    F5SD,
}

impl FigureId {
    pub const ALL: [FigureId; 5] = [
        FigureId::F1GgmGmc,
        FigureId::F2DGmc,
        FigureId::F3DFill,
        FigureId::F4SFill,
        FigureId::F5SD,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            FigureId::F1GgmGmc => "F1",
            FigureId::F2DGmc => "F2",
            FigureId::F3DFill => "F3",
            FigureId::F4SFill => "F4",
            FigureId::F5SD => "F5",
        }
    }

    /// `(x, y)` axis quantities.
    pub fn axes(self) -> (Quantity, Quantity) {
        match self {
            FigureId::F1GgmGmc => (Quantity::Gmc, Quantity::Ggm),
            FigureId::F2DGmc => (Quantity::Gmc, Quantity::Coherence),
            FigureId::F3DFill => (Quantity::Fill, Quantity::Coherence),
            FigureId::F4SFill => (Quantity::Fill, Quantity::Steering),
            FigureId::F5SD => (Quantity::Coherence, Quantity::Steering),
        }
    }

    fn axis_range(q: Quantity) -> (f64, f64) {
        match q {
            Quantity::Ggm => (0.0, 0.5),
            Quantity::Steering => (1.0, 3.0),
            _ => (0.0, 1.0),
        }
    }

    /// Signed slacks of every bound enclosing this figure's region at
    /// `(x, y)`; nonnegative means inside. Bounds that do not apply at this
    /// point are omitted.
    pub fn region_slacks(self, x: f64, y: f64) -> Vec<(&'static str, f64)> {
        match self {
            FigureId::F1GgmGmc => {
                let r = (2.0 * y - 1.0).powi(2) + x * x - 1.0;
                vec![("ellipse", -r.abs())]
            }
            FigureId::F2DGmc => vec![
                ("C^2 + D^2 <= 1", 1.0 - x * x - y * y),
                ("C^2 + 3D^2 >= 1", x * x + 3.0 * y * y - 1.0),
            ],
            FigureId::F3DFill => {
                let d2 = y * y;
                let mut v = vec![("F + D^2 <= 1", 1.0 - x - d2)];
                if y <= CRITICAL_COHERENCE {
                    v.push((
                        "quartic lower bound",
                        x.powi(4) + (3.0 * d2 - 1.0).powi(2) * (3.0 * d2 * d2 - 2.0 * d2 - 1.0),
                    ));
                }
                v
            }
            FigureId::F4SFill => vec![(
                "48F^4 + (S-3)^2(S+1)(S-7) <= 0",
                -(48.0 * x.powi(4) + (y - 3.0).powi(2) * (y + 1.0) * (y - 7.0)),
            )],
            FigureId::F5SD => {
                let d2 = x * x;
                if x < CRITICAL_COHERENCE {
                    vec![("S - 6D^2 <= 1", 1.0 + 6.0 * d2 - y)]
                } else {
                    vec![("S + 3D^2 <= 4", 4.0 - 3.0 * d2 - y)]
                }
            }
        }
    }

    /// Whether `(x, y)` lies in the region within `tol`.
    pub fn contains(self, x: f64, y: f64, tol: f64) -> bool {
        self.region_slacks(x, y).iter().all(|&(_, s)| s >= -tol)
    }

    /// Analytic curves drawn over the scatter.
    pub fn overlays(self) -> Result<Vec<Curve>> {
        let (xq, yq) = self.axes();
        let family = |family: Family, role: CurveRole, label: &str| -> Result<Curve> {
            Ok(Curve {
                label: label.to_string(),
                role,
                points: boundary_curve(family, xq, yq, CURVE_POINTS)?
                    .points()
                    .collect(),
            })
        };
        Ok(match self {
            FigureId::F1GgmGmc => vec![Curve {
                label: "(2G-1)^2 + C^2 = 1".into(),
                role: CurveRole::Upper,
                points: (0..CURVE_POINTS)
                    .map(|k| {
                        let c = k as f64 / (CURVE_POINTS - 1) as f64;
                        (c, 0.5 * (1.0 - (1.0 - c * c).max(0.0).sqrt()))
                    })
                    .collect(),
            }],
            FigureId::F2DGmc => vec![
                family(Family::Alpha, CurveRole::Upper, "psi_alpha: C^2 + D^2 = 1")?,
                family(Family::M, CurveRole::Lower, "psi_m: C^2 + 3D^2 = 1")?,
                family(Family::Theta, CurveRole::Axis, "psi_theta")?,
            ],
            FigureId::F3DFill => vec![
                family(Family::Alpha, CurveRole::Upper, "psi_alpha: F + D^2 = 1")?,
                family(Family::M, CurveRole::Lower, "psi_m: quartic")?,
                family(Family::Theta, CurveRole::Axis, "psi_theta")?,
            ],
            FigureId::F4SFill => vec![
                family(Family::M, CurveRole::Upper, "psi_m: 48F^4 + ... = 0")?,
                family(Family::Theta, CurveRole::Axis, "psi_theta")?,
            ],
            FigureId::F5SD => vec![
                family(Family::M, CurveRole::Upper, "psi_m: S = 6D^2 + 1")?,
                family(Family::Theta, CurveRole::Axis, "psi_theta: S = 4 - 3D^2")?,
            ],
        })
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownFigure(pub String);

impl fmt::Display for UnknownFigure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown figure {:?}, expected one of F1..F5", self.0)
    }
}

impl std::error::Error for UnknownFigure {}

impl FromStr for FigureId {
    type Err = UnknownFigure;

    fn from_str(s: &str) -> std::result::Result<Self, UnknownFigure> {
        let key = s.trim().to_ascii_uppercase();
        let key = key.split('_').next().unwrap_or_default();
        FigureId::ALL
            .into_iter()
            .find(|f| f.short_name() == key)
            .ok_or_else(|| UnknownFigure(s.to_string()))
    }
}

pub fn quantity_of(p: &ResourceProfile, q: Quantity) -> f64 {
    match q {
        Quantity::Ggm => p.ggm,
        Quantity::Gmc => p.gmc,
        Quantity::Fill => p.fill,
        Quantity::Coherence => p.coherence,
        Quantity::Steering => p.steering_max,
    }
}

/// `(x, y)` of each profile in this figure's plane.
pub fn scatter(figure: FigureId, profiles: &[ResourceProfile]) -> Vec<(f64, f64)> {
    let (xq, yq) = figure.axes();
    profiles
        .iter()
        .map(|p| (quantity_of(p, xq), quantity_of(p, yq)))
        .collect()
}

/// Uniform subsample of at most `limit` points, order preserved and
/// derived from `seed`.
pub fn decimate(points: &[(f64, f64)], limit: usize, seed: u64) -> Vec<(f64, f64)> {
    if points.len() <= limit {
        return points.to_vec();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5356_4744_4543_494d);
    let mut picked = index::sample(&mut rng, points.len(), limit).into_vec();
    picked.sort_unstable();
    picked.into_iter().map(|i| points[i]).collect()
}

pub fn figure_csv(figure: FigureId, points: &[(f64, f64)], meta: &RunMetadata) -> String {
    let (xq, yq) = figure.axes();
    let mut out = String::new();
    for line in meta.lines() {
        out.push_str(&format!("# {line}\n"));
    }
    out.push_str(&format!(
        "# figure: {figure}\n# x: {}\n# y: {}\n",
        xq.label(),
        yq.label()
    ));
    out.push_str("index,x,y\n");
    for (i, &(x, y)) in points.iter().enumerate() {
        out.push_str(&format!("{i},{},{}\n", fmt_f64(x), fmt_f64(y)));
    }
    out
}

pub fn figure_svg(figure: FigureId, points: &[(f64, f64)], meta: &RunMetadata) -> Result<String> {
    let (xq, yq) = figure.axes();
    let axis = |q: Quantity| {
        let (min, max) = FigureId::axis_range(q);
        Axis {
            label: q.label().to_string(),
            min,
            max,
        }
    };
    let mut description = meta.lines();
    description.push(format!("figure: {figure}"));
    description.push(format!(
        "points drawn: {} of {}",
        points.len().min(SVG_POINT_LIMIT),
        points.len()
    ));
    let plot = ScatterPlot {
        title: format!("{figure}: {} vs {}", yq.label(), xq.label()),
        x: axis(xq),
        y: axis(yq),
        points: decimate(points, SVG_POINT_LIMIT, meta.seed),
        curves: figure.overlays()?,
        description,
    };
    Ok(plot.render())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::profile;
    use crate::states::{psi_alpha, psi_m, psi_theta};

    #[test]
    fn parses_ids() {
        assert_eq!("F1".parse::<FigureId>().unwrap(), FigureId::F1GgmGmc);
        assert_eq!("f5".parse::<FigureId>().unwrap(), FigureId::F5SD);
        assert_eq!("F3_d_fill".parse::<FigureId>().unwrap(), FigureId::F3DFill);
        assert!("F6".parse::<FigureId>().is_err());
    }

    #[test]
    fn axes_follow_figures() {
        assert_eq!(FigureId::F1GgmGmc.axes(), (Quantity::Gmc, Quantity::Ggm));
        assert_eq!(
            FigureId::F2DGmc.axes(),
            (Quantity::Gmc, Quantity::Coherence)
        );
        assert_eq!(
            FigureId::F3DFill.axes(),
            (Quantity::Fill, Quantity::Coherence)
        );
        assert_eq!(
            FigureId::F4SFill.axes(),
            (Quantity::Fill, Quantity::Steering)
        );
        assert_eq!(
            FigureId::F5SD.axes(),
            (Quantity::Coherence, Quantity::Steering)
        );
    }

    #[test]
    fn boundary_states_lie_in_every_region() {
        let mut states = Vec::new();
        for k in 0..=40 {
            let t = k as f64 / 40.0;
            states.push(psi_alpha(t * std::f64::consts::FRAC_PI_2));
            states.push(psi_theta(t * std::f64::consts::FRAC_PI_2));
            states.push(psi_m(t).unwrap());
        }
        let profiles: Vec<_> = states.iter().map(|s| profile(s).unwrap()).collect();
        for f in FigureId::ALL {
            for (x, y) in scatter(f, &profiles) {
                assert!(
                    f.contains(x, y, 1e-9),
                    "{f} ({x}, {y}) {:?}",
                    f.region_slacks(x, y)
                );
            }
        }
    }

    #[test]
    fn points_outside_are_rejected() {
        assert!(!FigureId::F1GgmGmc.contains(0.5, 0.5, 1e-9));
        assert!(!FigureId::F2DGmc.contains(1.0, 1.0, 1e-9));
        assert!(!FigureId::F5SD.contains(0.5, 3.5, 1e-9));
        assert!(!FigureId::F4SFill.contains(1.0, 3.0, 1e-9));
    }

    #[test]
    fn overlays_exist_for_every_figure() {
        for f in FigureId::ALL {
            let curves = f.overlays().unwrap();
            assert!(!curves.is_empty());
            for c in curves {
                for (x, y) in c.points {
                    assert!(x.is_finite() && y.is_finite());
                    assert!(
                        f.contains(x, y, 1e-9),
                        "{f} curve {} at ({x}, {y})",
                        c.label
                    );
                }
            }
        }
    }

    #[test]
    fn decimation_is_seeded_and_ordered() {
        let pts: Vec<_> = (0..100).map(|i| (i as f64, 0.0)).collect();
        let a = decimate(&pts, 10, 4);
        assert_eq!(a.len(), 10);
        assert_eq!(a, decimate(&pts, 10, 4));
        assert!(a.windows(2).all(|w| w[0].0 < w[1].0));
        assert_eq!(decimate(&pts, 200, 4), pts);
    }
}
