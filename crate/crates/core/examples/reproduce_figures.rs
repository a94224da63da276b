//! Writes the scatter CSV and SVG of all five figures into a directory and
//! checks every scatter point against its analytic region.
//!
//! Usage: `cargo run --release --example reproduce_figures [DIR] [N]`

use std::path::PathBuf;

use tripartite::figure::{figure_csv, figure_svg, scatter, FigureId};
use tripartite::io::{ensemble_profiles, RunMetadata};
use tripartite::{SamplerConfig, Tolerances, DEFAULT_SEED};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| "figures".into()));
    let n = args.next().and_then(|s| s.parse().ok()).unwrap_or(100_000);
    std::fs::create_dir_all(&dir)?;

    let config = SamplerConfig::new(DEFAULT_SEED, n)?;
    let profiles = ensemble_profiles(config)?;
    let meta = RunMetadata::new(DEFAULT_SEED, n as u64, Tolerances::default());
    for figure in FigureId::ALL {
        let points = scatter(figure, &profiles);
        let outside = points
            .iter()
            .filter(|&&(x, y)| !figure.contains(x, y, 1e-9))
            .count();
        let name = figure.short_name();
        std::fs::write(
            dir.join(format!("{name}.csv")),
            figure_csv(figure, &points, &meta),
        )?;
        std::fs::write(
            dir.join(format!("{name}.svg")),
            figure_svg(figure, &points, &meta)?,
        )?;
        println!(
            "{figure}: {} points, {outside} outside the region",
            points.len()
        );
    }
    println!("written to {}", dir.display());
    Ok(())
}
