//! Rendered reports compared byte-for-byte with checked-in files.
//!
//! Regenerate with `UPDATE_GOLDEN=1 cargo test -p rmga --test golden`.

use std::path::PathBuf;

use rmga::harness::render_trace;
use rmga::{render, rmga_run, run_suite, Format, ObjectiveId, RmConfig, SuiteReport};

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn check(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("missing golden file {}: {e}", path.display()));
    assert_eq!(actual, expected, "{name} differs from its golden file");
}

fn small_suite() -> SuiteReport {
    let specs: Vec<_> = [ObjectiveId::F1, ObjectiveId::F2, ObjectiveId::F3, ObjectiveId::Quad]
        .into_iter()
        .map(ObjectiveId::spec)
        .collect();
    run_suite(&specs, &RmConfig::default(), 2, 0).unwrap()
}

#[test]
fn suite_csv() {
    check("suite.csv", &render(&small_suite(), Format::Csv));
}

#[test]
fn suite_json() {
    check("suite.json", &render(&small_suite(), Format::Json));
}

#[test]
fn suite_text() {
    check("suite.txt", &render(&small_suite(), Format::Text));
}

#[test]
fn quad_trace_csv() {
    let r = rmga_run(&ObjectiveId::Quad.spec(), &RmConfig::default()).unwrap();
    check("quad_trace.csv", &render_trace(r.trace.as_ref().unwrap(), Format::Csv));
}

#[test]
fn rendering_is_pure() {
    let report = small_suite();
    for f in [Format::Csv, Format::Json, Format::Text] {
        assert_eq!(render(&report, f), render(&report, f));
    }
    let again = small_suite();
    assert_eq!(render(&report, Format::Json), render(&again, Format::Json));
}

#[test]
fn json_round_trips() {
    let report = small_suite();
    let text = render(&report, Format::Json);
    let back: SuiteReport = serde_json::from_str(&text).unwrap();
    assert_eq!(render(&back, Format::Json), text);
}
