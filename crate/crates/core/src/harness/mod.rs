//! Replicated benchmark runs and their statistics.

mod oracle;
mod render;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use oracle::{grid_oracle, reachability_oracle, Reachability, GRID_POINT_LIMIT};
pub use render::{format_number, render, render_trace, Format};

use crate::domain::Point;
use crate::error::{Error, Result};
use crate::objectives::{ObjectiveId, ObjectiveSpec};
use crate::optimizer::{rmga_run, RmConfig, Termination};

/// Published reference numbers for the De Jong suite, F1..F5 order.
pub mod baselines {
    /// Average generations of differential evolution with random F.
    pub const DE: [f64; 5] = [260.0, 670.0, 125.0, 2300.0, 1200.0];
    pub const PGA_LAMBDA_4: [f64; 5] = [1170.0, 1235.0, 3481.0, 3194.0, 1256.0];
    pub const PGA_LAMBDA_8: [f64; 5] = [1526.0, 1671.0, 3634.0, 5243.0, 2076.0];
    pub const GREFENSTETTE: [f64; 5] = [2210.0, 14229.0, 2259.0, 3070.0, 4334.0];
    pub const ESHELMAN: [f64; 5] = [1538.0, 9477.0, 1740.0, 4137.0, 3004.0];
    /// Published rotational-mutation generation counts (TRM).
    pub const RMGA_TRM: [f64; 5] = [78.0, 16.0, 7.0, 195.0, 340.0];
    /// Published DE / RMGA generation ratios.
    pub const PNG: [f64; 5] = [3.333, 41.875, 17.857, 11.794, 3.529];
    /// Ratio quoted for F2 in running text; disagrees with `PNG[1]`.
    pub const F2_QUOTED_RATIO: f64 = 64.0;

    pub const FUNCTIONS: [super::ObjectiveId; 5] = [
        super::ObjectiveId::F1,
        super::ObjectiveId::F2,
        super::ObjectiveId::F3,
        super::ObjectiveId::F4,
        super::ObjectiveId::F5,
    ];

    pub fn index_of(id: super::ObjectiveId) -> Option<usize> {
        FUNCTIONS.iter().position(|f| *f == id)
    }
}

/// One run, in benchmark-table terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub function: ObjectiveId,
    pub rms: f64,
    pub trm: u64,
    pub best_point: Point,
    /// Best performance: noise-free value at `best_point`.
    pub bp: f64,
    pub seed: u64,
    /// Elapsed seconds. Not serialized, so reports stay reproducible.
    #[serde(skip)]
    pub wall_time: f64,
    pub terminated_by: Termination,
}

/// Replicates of one function with their aggregates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionSummary {
    pub function: ObjectiveId,
    pub runs: Vec<RunReport>,
    pub mean_bp: f64,
    /// Population standard deviation of BP.
    pub sd_bp: f64,
    pub mean_trm: f64,
    pub min_trm: u64,
    pub max_trm: u64,
}

impl FunctionSummary {
    /// The run with the lowest BP, earliest seed first on ties.
    pub fn best_run(&self) -> &RunReport {
        self.runs
            .iter()
            .reduce(|a, b| if b.bp < a.bp { b } else { a })
            .expect("summaries are never empty")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteMetadata {
    pub base_seed: u64,
    pub replicates: usize,
    pub config: RmConfig,
    /// Unix seconds; left unset by default so output is reproducible.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timestamp: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PngEntry {
    pub function: ObjectiveId,
    pub de_generations: f64,
    pub measured_trm: f64,
    /// `None` when the measured TRM is zero.
    pub ratio: Option<f64>,
    pub published_trm: f64,
    pub published_ratio: f64,
}

/// Published DE generations divided by measured TRM.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PngTable {
    pub entries: Vec<PngEntry>,
}

impl PngTable {
    /// Builds entries for whichever of F1..F5 appear in `summaries`, in F1..F5
    /// order. Returns `None` if none do.
    pub fn from_summaries(summaries: &[FunctionSummary]) -> Option<Self> {
        let entries: Vec<PngEntry> = baselines::FUNCTIONS
            .iter()
            .enumerate()
            .filter_map(|(i, id)| {
                let s = summaries.iter().find(|s| s.function == *id)?;
                let de = baselines::DE[i];
                Some(PngEntry {
                    function: *id,
                    de_generations: de,
                    measured_trm: s.mean_trm,
                    ratio: (s.mean_trm > 0.0).then(|| de / s.mean_trm),
                    published_trm: baselines::RMGA_TRM[i],
                    published_ratio: baselines::PNG[i],
                })
            })
            .collect();
        (!entries.is_empty()).then_some(PngTable { entries })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub functions: Vec<FunctionSummary>,
    pub metadata: SuiteMetadata,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub png: Option<PngTable>,
}

/// Runs `replicates` seeds starting at `base_seed`, in parallel. Reports come
/// back in seed order.
pub fn run_replicates(
    spec: &ObjectiveSpec,
    config: &RmConfig,
    replicates: usize,
    base_seed: u64,
) -> Result<Vec<RunReport>> {
    if replicates == 0 {
        return Err(Error::Usage("replicates must be at least 1".into()));
    }
    config.validate()?;
    (0..replicates as u64)
        .into_par_iter()
        .map(|k| {
            let seed = base_seed.wrapping_add(k);
            let cfg = config.clone().with_seed(seed);
            let start = Instant::now();
            let r = rmga_run(spec, &cfg)?;
            Ok(RunReport {
                function: spec.id,
                rms: cfg.rms,
                trm: r.trm,
                best_point: r.best_point,
                bp: r.best_value,
                seed,
                wall_time: start.elapsed().as_secs_f64(),
                terminated_by: r.terminated_by,
            })
        })
        .collect()
}

/// Mean and population standard deviation of BP, plus TRM statistics.
pub fn aggregate(reports: Vec<RunReport>) -> Result<FunctionSummary> {
    let first = reports
        .first()
        .ok_or_else(|| Error::Usage("cannot aggregate zero reports".into()))?;
    let function = first.function;
    if reports.iter().any(|r| r.function != function) {
        return Err(Error::Usage("reports mix different functions".into()));
    }
    let n = reports.len() as f64;
    let mean_bp = reports.iter().map(|r| r.bp).sum::<f64>() / n;
    let var = reports.iter().map(|r| (r.bp - mean_bp).powi(2)).sum::<f64>() / n;
    let all_equal = reports.iter().all(|r| r.bp == first.bp);
    let sd_bp = if all_equal { 0.0 } else { var.sqrt() };
    let mean_trm = reports.iter().map(|r| r.trm as f64).sum::<f64>() / n;
    let min_trm = reports.iter().map(|r| r.trm).min().unwrap_or(0);
    let max_trm = reports.iter().map(|r| r.trm).max().unwrap_or(0);
    Ok(FunctionSummary {
        function,
        mean_bp: if all_equal { first.bp } else { mean_bp },
        sd_bp,
        mean_trm,
        min_trm,
        max_trm,
        runs: reports,
    })
}

/// Replicates every spec and assembles the report, with the PNG table when
/// any of F1..F5 is included.
pub fn run_suite(
    specs: &[ObjectiveSpec],
    config: &RmConfig,
    replicates: usize,
    base_seed: u64,
) -> Result<SuiteReport> {
    let functions = specs
        .iter()
        .map(|spec| aggregate(run_replicates(spec, config, replicates, base_seed)?))
        .collect::<Result<Vec<_>>>()?;
    let png = PngTable::from_summaries(&functions);
    Ok(SuiteReport {
        functions,
        metadata: SuiteMetadata {
            base_seed,
            replicates,
            config: config.clone(),
            timestamp: None,
        },
        png,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::ObjectiveId;

    fn report(bp: f64, trm: u64) -> RunReport {
        RunReport {
            function: ObjectiveId::F1,
            rms: 0.1,
            trm,
            best_point: Point::new(vec![0.0; 3]).unwrap(),
            bp,
            seed: 0,
            wall_time: 0.0,
            terminated_by: Termination::Stalled,
        }
    }

    #[test]
    fn aggregate_examples() {
        let s = aggregate(vec![report(0.0, 1), report(0.0, 2), report(0.0, 3)]).unwrap();
        assert_eq!(s.sd_bp, 0.0);
        assert_eq!(s.mean_trm, 2.0);
        assert_eq!((s.min_trm, s.max_trm), (1, 3));

        let s = aggregate(vec![report(1.0, 4), report(3.0, 4)]).unwrap();
        assert_eq!(s.mean_bp, 2.0);
        assert_eq!(s.sd_bp, 1.0);

        let s = aggregate(vec![report(5.0, 0)]).unwrap();
        assert_eq!((s.mean_bp, s.sd_bp), (5.0, 0.0));

        assert!(matches!(aggregate(vec![]), Err(Error::Usage(_))));
    }

    #[test]
    fn identical_bp_gives_exact_zero_sd() {
        let v = 0.1 + 0.2;
        let s = aggregate(vec![report(v, 0); 7]).unwrap();
        assert_eq!(s.sd_bp, 0.0);
        assert_eq!(s.mean_bp, v);
    }

    #[test]
    fn replicates_in_seed_order() {
        let spec = ObjectiveId::F1.spec();
        let rs = run_replicates(&spec, &RmConfig::default(), 3, 10).unwrap();
        let seeds: Vec<u64> = rs.iter().map(|r| r.seed).collect();
        assert_eq!(seeds, vec![10, 11, 12]);
        assert!(rs.iter().all(|r| r.bp == rs[0].bp && r.best_point == rs[0].best_point));
        assert_eq!(run_replicates(&spec, &RmConfig::default(), 1, 0).unwrap().len(), 1);
        assert!(run_replicates(&spec, &RmConfig::default(), 0, 0).is_err());
    }

    #[test]
    fn png_ratio_and_undefined_division() {
        let mut f1 = aggregate(vec![report(0.0, 52)]).unwrap();
        let mut f3 = aggregate(vec![report(0.0, 0)]).unwrap();
        f3.function = ObjectiveId::F3;
        f1.function = ObjectiveId::F1;
        let t = PngTable::from_summaries(&[f3, f1]).unwrap();
        assert_eq!(t.entries[0].function, ObjectiveId::F1);
        assert_eq!(t.entries[0].ratio, Some(5.0));
        assert_eq!(t.entries[1].ratio, None);
        assert!(PngTable::from_summaries(&[]).is_none());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn sd_is_permutation_invariant(
                bps in prop::collection::vec(-1e3f64..1e3, 1..20),
                rot in 0usize..20,
            ) {
                let reports: Vec<RunReport> = bps.iter().map(|&b| report(b, 1)).collect();
                let mut shuffled = reports.clone();
                shuffled.reverse();
                let k = rot % shuffled.len();
                shuffled.rotate_left(k);
                let a = aggregate(reports).unwrap();
                let b = aggregate(shuffled).unwrap();
                prop_assert!((a.sd_bp - b.sd_bp).abs() <= 1e-9 * (1.0 + a.sd_bp));
                prop_assert!(a.sd_bp >= 0.0);
            }
        }
    }
}
