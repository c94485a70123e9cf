use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use super::{baselines, SuiteReport};
use crate::error::{Error, Result};
use crate::objectives::ObjectiveId;
use crate::optimizer::Trace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Usage(format!("unknown output format `{other}`"))),
        }
    }
}

const SIGNIFICANT_DIGITS: i32 = 12;

/// Formats `v` with 12 significant digits, trailing zeros removed. Plain
/// decimal notation below 1e6, scientific above.
pub fn format_number(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    if v.abs() >= 1e6 {
        let s = format!("{:.*e}", (SIGNIFICANT_DIGITS - 1) as usize, v);
        let (mantissa, exp) = s.split_once('e').expect("scientific format has an exponent");
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (SIGNIFICANT_DIGITS - 1 - magnitude).max(0) as usize;
    let s = trim_zeros(&format!("{v:.decimals$}")).to_string();
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn point_csv(coords: &[f64]) -> String {
    coords.iter().map(|&c| format_number(c)).collect::<Vec<_>>().join(";")
}

fn point_text(coords: &[f64]) -> String {
    format!(
        "({})",
        coords.iter().map(|&c| format_number(c)).collect::<Vec<_>>().join(",")
    )
}

/// Renders a suite report. Output is a pure function of the report.
pub fn render(report: &SuiteReport, format: Format) -> String {
    match format {
        Format::Csv => render_csv(report),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => render_text(report),
    }
}

fn render_csv(report: &SuiteReport) -> String {
    let mut out = String::from("function,rms,trm,best_point,bp,sd,seed,terminated_by\n");
    for f in &report.functions {
        for r in &f.runs {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.function,
                format_number(r.rms),
                r.trm,
                point_csv(r.best_point.coords()),
                format_number(r.bp),
                format_number(f.sd_bp),
                r.seed,
                r.terminated_by
            );
        }
    }
    out
}

fn table(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, cell)| format!("{cell:<w$}", w = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn render_text(report: &SuiteReport) -> String {
    let mut rows = vec![["Algorithm", "Function", "RMS", "TRM", "Best Point", "BP", "SD"]
        .map(String::from)
        .to_vec()];
    let mut noisy = false;
    for f in &report.functions {
        let best = f.best_run();
        let trm = if f.min_trm == f.max_trm {
            f.min_trm.to_string()
        } else {
            format!("{} [{}..{}]", format_number(f.mean_trm), f.min_trm, f.max_trm)
        };
        let mut bp = format_number(f.mean_bp);
        if f.function == ObjectiveId::F4 {
            bp.push('*');
            noisy = true;
        }
        rows.push(vec![
            "RMGA".into(),
            f.function.to_string(),
            format_number(best.rms),
            trm,
            point_text(best.best_point.coords()),
            bp,
            format_number(f.sd_bp),
        ]);
    }
    let mut out = table(&rows);
    if noisy {
        out.push_str("* noise-free score of the returned point; the noisy value depends on the draws\n");
    }
    let _ = writeln!(
        out,
        "replicates: {}, base seed: {}",
        report.metadata.replicates, report.metadata.base_seed
    );

    if let Some(png) = &report.png {
        out.push('\n');
        let mut header = vec!["Generations".to_string()];
        header.extend(png.entries.iter().map(|e| e.function.to_string().to_uppercase()));
        let mut rows = vec![header];
        let mut push = |label: &str, cell: &dyn Fn(&super::PngEntry) -> String| {
            let mut row = vec![label.to_string()];
            row.extend(png.entries.iter().map(cell));
            rows.push(row);
        };
        push("DE (published)", &|e| format_number(e.de_generations));
        push("RMGA TRM (published)", &|e| format_number(e.published_trm));
        push("RMGA TRM (measured)", &|e| format_number(e.measured_trm));
        push("PNG", &|e| e.ratio.map_or_else(|| "undefined".into(), |r| format!("{r:.3}")));
        push("PNG (published)", &|e| format!("{:.3}", e.published_ratio));
        out.push_str(&table(&rows));
        if png.entries.iter().any(|e| e.function == ObjectiveId::F2) {
            let _ = writeln!(
                out,
                "F2 ratio quoted in prose: {}",
                format_number(baselines::F2_QUOTED_RATIO)
            );
        }
    }
    out
}

#[derive(Serialize)]
struct TraceLine<'a> {
    generation: u64,
    kind: &'a str,
    point: &'a [f64],
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    direction: Option<&'a [i8]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    step: Option<f64>,
}

/// Line-delimited trace records: one JSON object per line for
/// [`Format::Json`], otherwise `generation,kind,point,value` CSV.
pub fn render_trace(trace: &Trace, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            for e in &trace.events {
                let line = TraceLine {
                    generation: e.generation,
                    kind: e.kind.as_str(),
                    point: e.point.coords(),
                    value: e.value,
                    direction: e.direction.as_ref().map(|d| d.signs()),
                    step: e.step,
                };
                out.push_str(&serde_json::to_string(&line).expect("trace serializes"));
                out.push('\n');
            }
        }
        Format::Csv | Format::Text => {
            out.push_str("generation,kind,point,value\n");
            for e in &trace.events {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    e.generation,
                    e.kind,
                    point_csv(e.point.coords()),
                    format_number(e.value)
                );
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formatting() {
        assert_eq!(format_number(0.1), "0.1");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(-32.036), "-32.036");
        assert_eq!(format_number(0.1 + 0.2), "0.3");
        assert_eq!(format_number(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_number(169_680.832_031_25), "169680.832031");
        assert_eq!(format_number(999_999.999_999_9), "1000000");
        assert_eq!(format_number(1234567.0), "1.234567e6");
        assert_eq!(format_number(8.5e-31), "0.00000000000000000000000000000085");
        assert_eq!(format_number(465.0), "465");
    }

    #[test]
    fn format_parsing() {
        assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
        assert!("xml".parse::<Format>().is_err());
    }
}
