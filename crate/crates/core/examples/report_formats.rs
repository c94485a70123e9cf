//! The same suite report rendered as text, CSV and JSON, plus a trace in both
//! line formats. Output is byte-identical for identical inputs.

use rmga::harness::render_trace;
use rmga::{render, rmga_run, run_suite, Format, ObjectiveId, RmConfig, SuiteReport};

fn main() -> rmga::Result<()> {
    let specs = [ObjectiveId::F1.spec(), ObjectiveId::Quad.spec()];
    let report = run_suite(&specs, &RmConfig::default(), 2, 0)?;
    for format in [Format::Text, Format::Csv, Format::Json] {
        println!("===== {format:?}");
        print!("{}", render(&report, format));
    }

    let json = render(&report, Format::Json);
    let back: SuiteReport = serde_json::from_str(&json).expect("reports round-trip");
    assert_eq!(back, report);

    let run = rmga_run(&ObjectiveId::Quad.spec(), &RmConfig::default())?;
    let trace = run.trace.expect("traced");
    println!("===== trace csv");
    print!("{}", render_trace(&trace, Format::Csv));
    println!("===== trace json (first 2 lines)");
    for line in render_trace(&trace, Format::Json).lines().take(2) {
        println!("{line}");
    }
    Ok(())
}
