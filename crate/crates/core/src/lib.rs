//! Rotational mutation search for box-constrained continuous optimization.
//!
//! The search starts at the best corner of the box and improves it with
//! fixed-length moves along sign-vector directions (`{-1, +1}^n`). When the
//! current direction stops paying off it rotates to whichever direction and
//! step length from a small schedule improves first. Framed as a genetic
//! algorithm, each accepted move is one generation of an elitist population
//! of one.
//!
//! The crate ships the De Jong suite (F1-F5) plus Beale and a shifted
//! quadratic, two brute-force oracles, a replicate harness with CSV/JSON/text
//! reports, and the `rmga` command line.
//!
//! ```
//! use rmga::{rm_optimize, ObjectiveId, RmConfig};
//!
//! let result = rm_optimize(&ObjectiveId::Quad.spec(), &RmConfig::default(), false).unwrap();
//! assert_eq!(result.best_point.coords(), &[0.0, 0.4]);
//! assert_eq!(result.best_value, 0.0);
//! ```
//!
//! See `examples/` for one runnable program per capability.

pub mod cli;
pub mod domain;
pub mod error;
pub mod harness;
pub mod objectives;
pub mod optimizer;

pub use domain::{all_sign_vectors, vertices, BoxDomain, Fitness, Point, Sense, SignVector};
pub use error::{Error, Result};
pub use harness::{
    aggregate, grid_oracle, reachability_oracle, render, run_replicates, run_suite, Format,
    FunctionSummary, PngTable, Reachability, RunReport, SuiteReport,
};
pub use objectives::{
    eval, eval_noise_free, registry, BenchmarkObjective, NoiseSource, Objective, ObjectiveId,
    ObjectiveSpec,
};
pub use optimizer::{
    directed_probe, optimize, rm_optimize, rmga_run, rotational_search, select_elite, step_along,
    EventKind, Move, RmConfig, RunResult, Termination, Trace, TraceEvent,
};
