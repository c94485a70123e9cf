//! Generations needed by differential evolution versus moves needed here,
//! with the published figures alongside.

use rmga::harness::baselines;
use rmga::{run_suite, ObjectiveId, RmConfig};

fn main() -> rmga::Result<()> {
    let specs: Vec<_> = baselines::FUNCTIONS.into_iter().map(ObjectiveId::spec).collect();
    let report = run_suite(&specs, &RmConfig::default(), 10, 0)?;
    let png = report.png.expect("F1..F5 are all present");
    println!("{:<4} {:>8} {:>10} {:>10} {:>10} {:>10}", "fn", "DE gens", "TRM", "ratio", "pub TRM", "pub ratio");
    for e in &png.entries {
        let ratio = e.ratio.map_or_else(|| "undefined".to_string(), |r| format!("{r:.3}"));
        println!(
            "{:<4} {:>8} {:>10.1} {:>10} {:>10} {:>10.3}",
            e.function.as_str(),
            e.de_generations,
            e.measured_trm,
            ratio,
            e.published_trm,
            e.published_ratio
        );
    }
    Ok(())
}
