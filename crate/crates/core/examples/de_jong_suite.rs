//! Runs every registered function with several seeds and prints the summary
//! table with BP statistics and TRM ranges.
//!
//! `cargo run --release --example de_jong_suite -- 10`

use rmga::{registry, run_suite, RmConfig};

fn main() -> rmga::Result<()> {
    let replicates = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let report = run_suite(&registry(), &RmConfig::default(), replicates, 0)?;
    println!("{:<6} {:>12} {:>10} {:>9} {:>12}  best point", "fn", "mean BP", "sd BP", "mean TRM", "TRM range");
    for f in &report.functions {
        println!(
            "{:<6} {:>12.6} {:>10.4} {:>9.1} {:>12}  {}",
            f.function.as_str(),
            f.mean_bp,
            f.sd_bp,
            f.mean_trm,
            format!("{}..{}", f.min_trm, f.max_trm),
            f.best_run().best_point
        );
    }
    Ok(())
}
