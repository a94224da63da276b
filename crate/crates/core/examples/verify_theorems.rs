//! Checks every relation on a Haar ensemble and prints the per-relation
//! statistics, then shows a deliberately corrupted profile being caught.

use tripartite::measures::profile;
use tripartite::relations::{verify_ensemble, verify_profiles, RelationId, RelationKind};
use tripartite::tolerance::THEOREM;
use tripartite::{psi_m, SamplerConfig, DEFAULT_SEED};

fn main() -> tripartite::Result<()> {
    let report = verify_ensemble(SamplerConfig::new(DEFAULT_SEED, 20_000)?, THEOREM)?;
    println!(
        "{} samples, seed {}, tol {:e}",
        report.n_samples, report.seed, report.tol
    );
    for id in RelationId::ALL {
        let r = report.get(id);
        let label = match id.kind() {
            RelationKind::Equality => "max residual",
            RelationKind::Inequality => "min slack",
        };
        println!(
            "{:<22} {:<13} {:>12.3e}  applicable={:<6} {}",
            id.name(),
            label,
            r.statistic.unwrap_or(f64::NAN),
            r.n_applicable,
            if r.pass { "pass" } else { "FAIL" }
        );
    }
    println!("all relations pass: {}", report.pass());

    let state = psi_m(0.5)?;
    let mut corrupted = profile(&state)?;
    corrupted.half_perimeter += 0.1;
    let bad = verify_profiles([(&state, &corrupted)], THEOREM)?;
    println!(
        "corrupted half-perimeter detected: {}",
        !bad.get(RelationId::IdDVsQ).pass
    );
    Ok(())
}
