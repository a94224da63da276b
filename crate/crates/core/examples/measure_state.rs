//! Evaluates every measure on a few named states and one user-built state.

use std::f64::consts::FRAC_PI_4;

use tripartite::linalg::C64;
use tripartite::{make_state, profile, psi_alpha, psi_m, psi_theta, PureState3};

fn show(name: &str, state: &PureState3) -> tripartite::Result<()> {
    let p = profile(state)?;
    println!(
        "{name:>12}  GGM={:.6} GMC={:.6} F={:.6} D={:.6} S={:.6}",
        p.ggm, p.gmc, p.fill, p.coherence, p.steering_max
    );
    Ok(())
}

fn main() -> tripartite::Result<()> {
    show("GHZ", &psi_alpha(FRAC_PI_4))?;
    show("W", &psi_m(1.0)?)?;
    show("Bell x |0>", &psi_theta(FRAC_PI_4))?;
    show("|000>", &psi_alpha(0.0))?;

    let raw = [
        C64::new(1.0, 0.0),
        C64::new(0.0, 0.5),
        C64::new(0.0, 0.0),
        C64::new(-0.3, 0.0),
        C64::new(0.2, 0.2),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.8, -0.1),
    ];
    let normalized = make_state(raw)?;
    println!("normalization factor applied: {:.6}", normalized.factor);
    show("custom", &normalized.state)
}
