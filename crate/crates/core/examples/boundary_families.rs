//! Walks the three boundary families and compares the numerically evaluated
//! measures with their closed forms, printing which relations each family
//! saturates.

use tripartite::closed_form::{family_closed, parameter_grid, Quantity};
use tripartite::figure::quantity_of;
use tripartite::profile;
use tripartite::relations::{saturated_relations, saturation_residuals};
use tripartite::states::{BoundaryParam, Family};

fn main() -> tripartite::Result<()> {
    let quantities = [
        Quantity::Gmc,
        Quantity::Fill,
        Quantity::Coherence,
        Quantity::Steering,
    ];
    for family in [Family::Alpha, Family::M, Family::Theta] {
        println!("{family:?} family on {:?}", family.domain());
        for t in parameter_grid(family, 5)? {
            let measured = profile(&BoundaryParam::new(family, t)?.state())?;
            let closed = family_closed(family, t)?;
            let cells: Vec<String> = quantities
                .iter()
                .filter_map(|&q| {
                    closed.get(q).map(|c| {
                        format!(
                            "{}={:.6} (|Δ|={:.1e})",
                            q.label(),
                            c,
                            (quantity_of(&measured, q) - c).abs()
                        )
                    })
                })
                .collect();
            println!("  t={t:.4}  {}", cells.join("  "));
        }
        let names: Vec<_> = saturated_relations(family)
            .iter()
            .map(|r| r.name())
            .collect();
        println!("  saturates: {}", names.join(", "));
        for (id, r) in saturation_residuals(family, 1000)? {
            println!("  {id}: max |slack| over 1000 points = {r:.2e}");
        }
    }
    Ok(())
}
