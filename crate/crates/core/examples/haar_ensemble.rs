//! Draws a seeded Haar ensemble and summarizes the measure distributions.
//!
//! Usage: `cargo run --release --example haar_ensemble [N] [SEED]`

use tripartite::io::ensemble_profiles;
use tripartite::{ResourceProfile, SamplerConfig, DEFAULT_SEED};

type Column = (&'static str, fn(&ResourceProfile) -> f64);

fn main() -> tripartite::Result<()> {
    let mut args = std::env::args().skip(1);
    let n = args.next().and_then(|s| s.parse().ok()).unwrap_or(10_000);
    let seed = args
        .next()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED);
    let profiles = ensemble_profiles(SamplerConfig::new(seed, n)?)?;

    let columns: [Column; 6] = [
        ("GGM", |p| p.ggm),
        ("GMC", |p| p.gmc),
        ("fill", |p| p.fill),
        ("coherence", |p| p.coherence),
        ("steering", |p| p.steering_max),
        ("purity A", |p| p.marginal_purities.a),
    ];
    println!("{n} Haar states, seed {seed}");
    println!(
        "{:>10} {:>10} {:>10} {:>10}",
        "measure", "mean", "min", "max"
    );
    for (name, f) in columns {
        let values: Vec<f64> = profiles.iter().map(f).collect();
        let mean = values.iter().sum::<f64>() / n as f64;
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        println!("{name:>10} {mean:>10.5} {min:>10.5} {max:>10.5}");
    }
    println!(
        "expected mean single-qubit purity for Haar states: {:.5}",
        2.0 / 3.0
    );
    Ok(())
}
