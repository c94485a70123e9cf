//! Brute-force checks: the best point of a regular grid, and the best point
//! the move set can reach at all from the elite corner.

use rmga::{grid_oracle, reachability_oracle, rm_optimize, ObjectiveId, RmConfig};

fn main() -> rmga::Result<()> {
    let config = RmConfig::default();
    for (id, resolution) in [(ObjectiveId::Quad, 0.05), (ObjectiveId::F1, 0.32), (ObjectiveId::F2, 0.05), (ObjectiveId::Beale, 0.05)] {
        let spec = id.spec();
        let run = rm_optimize(&spec, &config, false)?;
        let (gp, gv) = grid_oracle(&spec, resolution)?;
        let reach = reachability_oracle(&spec, &config, 5_000_000)?;
        println!("{id}");
        println!("  optimizer     {} = {}", run.best_point, run.best_value);
        println!("  grid {resolution:<8} {gp} = {gv}");
        println!(
            "  reachable     {} = {} ({} points{}, optimum reachable: {})",
            reach.best_point,
            reach.best_value,
            reach.visited,
            if reach.partial { ", budget hit" } else { "" },
            reach.optimum_reachable
        );
    }
    Ok(())
}
