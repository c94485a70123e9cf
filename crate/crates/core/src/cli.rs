//! The `rmga` command line.
//!
//! ```text
//! rmga run    --function quad [--seed 0] [--rms 0.1] [--output json]
//! rmga suite  [--replicates 3] [--output csv]
//! rmga oracle --function f1 [--oracle grid --resolution 0.32 | --oracle reachability --budget N]
//! rmga trace  --function beale [--output json]
//! ```
//!
//! Settings can also come from a flat `key=value` file passed with
//! `--config`; keys are the long flag names without dashes (`max-generations`,
//! `beta`, ...). Flags win over the file.
//!
//! Exit status: 0 on success, 2 on usage errors, 1 on internal errors. Data
//! goes to stdout (or `--out-file`); diagnostics go to stderr.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::Error;
use crate::harness::{
    format_number, grid_oracle, reachability_oracle, render, render_trace, run_suite, Format,
    PngTable,
};
use crate::objectives::{registry, ObjectiveId};
use crate::optimizer::{rmga_run, RmConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "rmga", version, about = "Rotational mutation search on the De Jong benchmark suite")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimize one function and print its report.
    Run(Flags),
    /// Run all seven functions and print the suite table with the PNG row.
    Suite(Flags),
    /// Run the grid or reachability oracle on one function.
    Oracle(Flags),
    /// Dump the full trajectory of one run.
    Trace(Flags),
}

#[derive(Debug, Args, Default)]
struct Flags {
    /// f1, f2, f3, f4, f5, beale or quad.
    #[arg(long)]
    function: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Base step length.
    #[arg(long)]
    rms: Option<String>,
    /// Comma-separated rotational step lengths.
    #[arg(long)]
    beta: Option<String>,
    /// Comma-separated directed-probe multipliers.
    #[arg(long)]
    alphas: Option<String>,
    #[arg(long)]
    replicates: Option<String>,
    #[arg(long = "max-generations")]
    max_generations: Option<String>,
    /// text, csv or json.
    #[arg(long)]
    output: Option<String>,
    #[arg(long = "out-file")]
    out_file: Option<String>,
    /// Grid spacing for the grid oracle.
    #[arg(long)]
    resolution: Option<String>,
    /// grid or reachability.
    #[arg(long)]
    oracle: Option<String>,
    /// Point budget for the reachability oracle.
    #[arg(long)]
    budget: Option<String>,
    /// Flat key=value settings file.
    #[arg(long)]
    config: Option<PathBuf>,
}

const KEYS: [&str; 12] = [
    "function",
    "seed",
    "rms",
    "beta",
    "alphas",
    "replicates",
    "max-generations",
    "output",
    "out-file",
    "resolution",
    "oracle",
    "budget",
];

impl Flags {
    fn pairs(&self) -> [(&'static str, &Option<String>); 12] {
        [
            ("function", &self.function),
            ("seed", &self.seed),
            ("rms", &self.rms),
            ("beta", &self.beta),
            ("alphas", &self.alphas),
            ("replicates", &self.replicates),
            ("max-generations", &self.max_generations),
            ("output", &self.output),
            ("out-file", &self.out_file),
            ("resolution", &self.resolution),
            ("oracle", &self.oracle),
            ("budget", &self.budget),
        ]
    }
}

/// Parses a flat `key=value` settings file. Blank lines and `#` comments are
/// ignored.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, Error> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Usage(format!("config line {}: expected key=value", n + 1)))?;
        let k = k.trim();
        if !KEYS.contains(&k) {
            return Err(Error::Usage(format!("config line {}: unknown key `{k}`", n + 1)));
        }
        out.insert(k.to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn parse_value<T: FromStr>(key: &str, raw: &str) -> Result<T, Error> {
    raw.trim()
        .parse()
        .map_err(|_| Error::Usage(format!("invalid value `{raw}` for --{key}")))
}

fn parse_list<T: FromStr>(key: &str, raw: &str) -> Result<Vec<T>, Error> {
    raw.split(',').map(|s| parse_value(key, s)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OracleKind {
    Grid,
    Reachability,
}

/// Fully resolved settings for one invocation.
#[derive(Debug)]
struct Settings {
    function: Option<ObjectiveId>,
    config: RmConfig,
    replicates: usize,
    format: Format,
    out_file: Option<PathBuf>,
    resolution: f64,
    oracle: OracleKind,
    budget: usize,
}

impl Settings {
    fn resolve(flags: &Flags) -> Result<Self, Error> {
        let mut values = match &flags.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    Error::Usage(format!("cannot read config file {}: {e}", path.display()))
                })?;
                parse_config_file(&text)?
            }
            None => BTreeMap::new(),
        };
        for (k, v) in flags.pairs() {
            if let Some(v) = v {
                values.insert(k.to_string(), v.clone());
            }
        }
        let get = |k: &str| values.get(k).map(String::as_str);

        let mut config = RmConfig::default();
        if let Some(v) = get("seed") {
            config.seed = parse_value("seed", v)?;
        }
        if let Some(v) = get("rms") {
            config.rms = parse_value("rms", v)?;
        }
        if let Some(v) = get("beta") {
            config.beta_schedule = parse_list("beta", v)?;
        }
        if let Some(v) = get("alphas") {
            config.alpha_multipliers = parse_list("alphas", v)?;
        }
        if let Some(v) = get("max-generations") {
            config.max_generations = parse_value("max-generations", v)?;
        }
        config.validate().map_err(|e| Error::Usage(e.to_string()))?;

        let replicates = get("replicates").map_or(Ok(1), |v| parse_value("replicates", v))?;
        if replicates == 0 {
            return Err(Error::Usage("--replicates must be at least 1".into()));
        }
        let resolution: f64 = get("resolution").map_or(Ok(0.05), |v| parse_value("resolution", v))?;
        if !(resolution.is_finite() && resolution > 0.0) {
            return Err(Error::Usage("--resolution must be positive".into()));
        }
        let oracle = match get("oracle").unwrap_or("grid") {
            "grid" => OracleKind::Grid,
            "reachability" => OracleKind::Reachability,
            other => return Err(Error::Usage(format!("unknown oracle `{other}`"))),
        };
        let budget = get("budget").map_or(Ok(1_000_000), |v| parse_value("budget", v))?;
        if budget == 0 {
            return Err(Error::Usage("--budget must be positive".into()));
        }
        Ok(Settings {
            function: get("function").map(str::parse).transpose().map_err(|e: Error| Error::Usage(e.to_string()))?,
            config,
            replicates,
            format: get("output").map_or(Ok(Format::Text), str::parse)?,
            out_file: get("out-file").map(PathBuf::from),
            resolution,
            oracle,
            budget,
        })
    }

    fn require_function(&self) -> Result<ObjectiveId, Error> {
        self.function
            .ok_or_else(|| Error::Usage("--function is required".into()))
    }
}

#[derive(Serialize)]
struct OracleOutput {
    function: ObjectiveId,
    oracle: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    resolution: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    visited: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    partial: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    optimum_reachable: Option<bool>,
    best_point: Vec<f64>,
    value: f64,
}

fn render_oracle(o: &OracleOutput, format: Format) -> String {
    let point: Vec<String> = o.best_point.iter().map(|&c| format_number(c)).collect();
    let extra = |b: Option<bool>| b.map_or_else(String::new, |b| b.to_string());
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(o).expect("oracle output serializes");
            s.push('\n');
            s
        }
        Format::Csv => format!(
            "function,oracle,resolution,visited,partial,optimum_reachable,best_point,value\n{},{},{},{},{},{},{},{}\n",
            o.function,
            o.oracle,
            o.resolution.map_or_else(String::new, format_number),
            o.visited.map_or_else(String::new, |v| v.to_string()),
            extra(o.partial),
            extra(o.optimum_reachable),
            point.join(";"),
            format_number(o.value)
        ),
        Format::Text => {
            let mut s = format!("function: {}\noracle: {}\n", o.function, o.oracle);
            if let Some(r) = o.resolution {
                s.push_str(&format!("resolution: {}\n", format_number(r)));
            }
            if let Some(v) = o.visited {
                s.push_str(&format!(
                    "visited: {v}\npartial: {}\noptimum reachable: {}\n",
                    extra(o.partial),
                    extra(o.optimum_reachable)
                ));
            }
            s.push_str(&format!("best point: ({})\nvalue: {}\n", point.join(","), format_number(o.value)));
            s
        }
    }
}

fn execute(command: &Command, err: &mut dyn Write) -> Result<(String, Option<PathBuf>), Error> {
    let flags = match command {
        Command::Run(f) | Command::Suite(f) | Command::Oracle(f) | Command::Trace(f) => f,
    };
    let settings = Settings::resolve(flags)?;
    let start = Instant::now();
    let data = match command {
        Command::Run(_) => {
            let id = settings.require_function()?;
            let mut report = run_suite(
                &[id.spec()],
                &settings.config,
                settings.replicates,
                settings.config.seed,
            )?;
            report.png = None;
            render(&report, settings.format)
        }
        Command::Suite(_) => {
            if settings.function.is_some() {
                return Err(Error::Usage("suite runs every function; drop --function".into()));
            }
            let report = run_suite(
                &registry(),
                &settings.config,
                settings.replicates,
                settings.config.seed,
            )?;
            debug_assert_eq!(report.png, PngTable::from_summaries(&report.functions));
            render(&report, settings.format)
        }
        Command::Oracle(_) => {
            let id = settings.require_function()?;
            let spec = id.spec();
            let out = match settings.oracle {
                OracleKind::Grid => {
                    let (p, v) = grid_oracle(&spec, settings.resolution)?;
                    OracleOutput {
                        function: id,
                        oracle: "grid",
                        resolution: Some(settings.resolution),
                        visited: None,
                        partial: None,
                        optimum_reachable: None,
                        best_point: p.into_vec(),
                        value: v,
                    }
                }
                OracleKind::Reachability => {
                    let r = reachability_oracle(&spec, &settings.config, settings.budget)?;
                    OracleOutput {
                        function: id,
                        oracle: "reachability",
                        resolution: None,
                        visited: Some(r.visited),
                        partial: Some(r.partial),
                        optimum_reachable: Some(r.optimum_reachable),
                        best_point: r.best_point.into_vec(),
                        value: r.best_value,
                    }
                }
            };
            render_oracle(&out, settings.format)
        }
        Command::Trace(_) => {
            let id = settings.require_function()?;
            let result = rmga_run(&id.spec(), &settings.config)?;
            let trace = result.trace.unwrap_or_default();
            render_trace(&trace, settings.format)
        }
    };
    let _ = writeln!(err, "finished in {:.3}s", start.elapsed().as_secs_f64());
    Ok((data, settings.out_file))
}

/// Runs the command line with explicit streams and returns the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(&cli.command, err) {
        Ok((data, None)) => match out.write_all(data.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: cannot write output: {e}");
                EXIT_INTERNAL
            }
        },
        Ok((data, Some(path))) => match std::fs::write(&path, data) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                EXIT_INTERNAL
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Usage(_) | Error::UnknownObjective(_) | Error::Config(_) => EXIT_USAGE,
                _ => EXIT_INTERNAL,
            }
        }
    }
}
