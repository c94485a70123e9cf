//! Rotational mutation search.
//!
//! A run starts from the best corner of the box (the elite), then repeats:
//!
//! 1. *Directed probe*: step along the current sign-vector direction with
//!    lengths `rms * n` for each multiplier `n`, accepting the first
//!    in-domain point that improves on the current one.
//! 2. *Rotational search*: if the probe fails, try every step length `beta`
//!    of the schedule (outer loop) against every sign vector (inner loop)
//!    around the current point. The first improvement is accepted and its
//!    direction becomes the new working direction.
//! 3. If neither improves, the run stops.
//!
//! In genetic-algorithm terms the corner set is the initial population, the
//! elite corner is kept by elitism, and each accepted move is one generation.
//! The total number of generations is reported as TRM.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::domain::{all_sign_vectors, snap, vertices, Point, SignVector};
use crate::error::{Error, Result};
use crate::objectives::{BenchmarkObjective, Objective, ObjectiveSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StallPolicy {
    /// Stop as soon as neither the probe nor the rotational search improves.
    #[default]
    StopOnNoImprovement,
}

/// Tunables for a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RmConfig {
    /// Base step length (RMS). Directed probes use `rms * n`.
    pub rms: f64,
    /// Multipliers `n` for the directed probe, strictly ascending.
    pub alpha_multipliers: Vec<u32>,
    /// Step lengths for the rotational search, strictly ascending.
    pub beta_schedule: Vec<f64>,
    pub max_generations: u64,
    /// Corners evaluated when picking the elite. Larger corner sets are sampled.
    pub vertex_cap: usize,
    /// Sign vectors tried per rotational search. Larger sets are sampled.
    pub direction_cap: usize,
    pub seed: u64,
    pub stall_policy: StallPolicy,
}

impl Default for RmConfig {
    fn default() -> Self {
        RmConfig {
            rms: 0.1,
            alpha_multipliers: (1..=10).collect(),
            beta_schedule: vec![0.1, 0.25, 0.5, 0.75, 1.0],
            max_generations: 100_000,
            vertex_cap: 64,
            direction_cap: 64,
            seed: 0,
            stall_policy: StallPolicy::StopOnNoImprovement,
        }
    }
}

impl RmConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rms.is_finite() && self.rms > 0.0) {
            return Err(Error::Config(format!("rms must be positive, got {}", self.rms)));
        }
        if self.alpha_multipliers.is_empty() {
            return Err(Error::Config("alpha multipliers must be non-empty".into()));
        }
        if self.alpha_multipliers[0] == 0
            || self.alpha_multipliers.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(Error::Config(
                "alpha multipliers must be strictly ascending positive integers".into(),
            ));
        }
        if self.beta_schedule.is_empty() {
            return Err(Error::Config("beta schedule must be non-empty".into()));
        }
        if self.beta_schedule.iter().any(|b| !(b.is_finite() && *b > 0.0))
            || self.beta_schedule.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(Error::Config(
                "beta schedule must be strictly ascending positive reals".into(),
            ));
        }
        if self.max_generations == 0 {
            return Err(Error::Config("max_generations must be positive".into()));
        }
        if self.vertex_cap == 0 || self.direction_cap == 0 {
            return Err(Error::Config("vertex and direction caps must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    EliteSelected,
    DirectedStep,
    RotationalStep,
    Stalled,
    BoundaryStop,
}

impl EventKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EventKind::EliteSelected => "elite_selected",
            EventKind::DirectedStep => "directed_step",
            EventKind::RotationalStep => "rotational_step",
            EventKind::Stalled => "stalled",
            EventKind::BoundaryStop => "boundary_stop",
        }
    }

    pub fn is_move(self) -> bool {
        matches!(self, EventKind::DirectedStep | EventKind::RotationalStep)
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub generation: u64,
    pub kind: EventKind,
    pub point: Point,
    /// Value as seen by the search (noisy for noisy objectives).
    pub value: f64,
    pub direction: Option<SignVector>,
    pub step: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub events: Vec<TraceEvent>,
}

impl Trace {
    pub fn moves(&self) -> impl Iterator<Item = &TraceEvent> {
        self.events.iter().filter(|e| e.kind.is_move())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Stalled,
    BoundaryStop,
    GenerationCap,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::Stalled => "stalled",
            Termination::BoundaryStop => "boundary_stop",
            Termination::GenerationCap => "generation_cap",
        }
    }
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub best_point: Point,
    /// Noise-free score of `best_point` (BP).
    pub best_value: f64,
    /// Accepted mutations (generations).
    pub trm: u64,
    pub terminated_by: Termination,
    pub trace: Option<Trace>,
    pub seed: u64,
    pub evaluations: u64,
}

/// An accepted mutation.
#[derive(Debug, Clone, PartialEq)]
pub struct Move {
    pub point: Point,
    pub value: f64,
    pub direction: SignVector,
    pub step: f64,
}

/// The candidate with the best value; ties go to the lexicographically
/// smallest coordinates.
pub fn select_elite<O: Objective + ?Sized>(
    candidates: &[Point],
    objective: &mut O,
) -> Result<(Point, f64)> {
    let sense = objective.sense();
    let mut best: Option<(&Point, f64)> = None;
    for c in candidates {
        let v = objective.evaluate(c)?;
        best = match best {
            None => Some((c, v)),
            Some((b, bv)) => {
                if sense.better(v, bv) || (v == bv && c.lex_cmp(b).is_lt()) {
                    Some((c, v))
                } else {
                    Some((b, bv))
                }
            }
        };
    }
    best.map(|(p, v)| (p.clone(), v))
        .ok_or_else(|| Error::Usage("select_elite needs at least one candidate".into()))
}

/// `s + length * direction`, snapped to the coordinate lattice. No clamping.
pub fn step_along(s: &Point, direction: &SignVector, length: f64) -> Point {
    debug_assert_eq!(s.dimension(), direction.dimension());
    Point::from_finite(
        s.coords()
            .iter()
            .zip(direction.signs())
            .map(|(x, &d)| snap(x + length * f64::from(d)))
            .collect(),
    )
}

/// Tries `candidate`; returns its value when it is inside the domain and
/// better than `s_value`. Counts in-domain candidates in `seen`.
fn try_candidate<O: Objective + ?Sized>(
    candidate: &Point,
    s_value: f64,
    objective: &mut O,
    seen: &mut u64,
) -> Result<Option<f64>> {
    if !objective.domain().contains(candidate)? {
        return Ok(None);
    }
    *seen += 1;
    let v = objective.evaluate(candidate)?;
    Ok(objective.sense().better(v, s_value).then_some(v))
}

fn probe_counted<O: Objective + ?Sized>(
    s: &Point,
    s_value: f64,
    direction: &SignVector,
    objective: &mut O,
    config: &RmConfig,
    seen: &mut u64,
) -> Result<Option<Move>> {
    for &n in &config.alpha_multipliers {
        let length = config.rms * f64::from(n);
        let p = step_along(s, direction, length);
        if let Some(value) = try_candidate(&p, s_value, objective, seen)? {
            return Ok(Some(Move {
                point: p,
                value,
                direction: direction.clone(),
                step: length,
            }));
        }
    }
    Ok(None)
}

fn rotate_counted<O: Objective + ?Sized>(
    s: &Point,
    s_value: f64,
    objective: &mut O,
    config: &RmConfig,
    directions: &[SignVector],
    seen: &mut u64,
) -> Result<Option<Move>> {
    for &beta in &config.beta_schedule {
        for e in directions {
            let p = step_along(s, e, beta);
            if let Some(value) = try_candidate(&p, s_value, objective, seen)? {
                return Ok(Some(Move {
                    point: p,
                    value,
                    direction: e.clone(),
                    step: beta,
                }));
            }
        }
    }
    Ok(None)
}

/// Steps from `s` along `direction` with lengths `rms * n`, ascending, and
/// returns the first in-domain point better than `s_value`.
pub fn directed_probe<O: Objective + ?Sized>(
    s: &Point,
    s_value: f64,
    direction: &SignVector,
    objective: &mut O,
    config: &RmConfig,
) -> Result<Option<Move>> {
    probe_counted(s, s_value, direction, objective, config, &mut 0)
}

/// Tries `s + beta * e` for each `beta` in the schedule (outer) and each
/// direction in order (inner); returns the first improvement.
pub fn rotational_search<O: Objective + ?Sized>(
    s: &Point,
    s_value: f64,
    objective: &mut O,
    config: &RmConfig,
    directions: &[SignVector],
) -> Result<Option<Move>> {
    if directions.is_empty() {
        return Err(Error::Usage("rotational_search needs at least one direction".into()));
    }
    rotate_counted(s, s_value, objective, config, directions, &mut 0)
}

/// Evaluation counter around any objective.
struct Counted<'a, O: ?Sized> {
    inner: &'a mut O,
    evaluations: u64,
}

impl<O: Objective + ?Sized> Objective for Counted<'_, O> {
    fn domain(&self) -> &crate::domain::BoxDomain {
        self.inner.domain()
    }

    fn sense(&self) -> crate::domain::Sense {
        self.inner.sense()
    }

    fn evaluate(&mut self, p: &Point) -> Result<f64> {
        self.evaluations += 1;
        self.inner.evaluate(p)
    }

    fn score(&self, p: &Point) -> Result<f64> {
        self.inner.score(p)
    }
}

/// Runs the search on any [`Objective`].
pub fn optimize<O: Objective + ?Sized>(
    objective: &mut O,
    config: &RmConfig,
    trace_enabled: bool,
) -> Result<RunResult> {
    config.validate()?;
    let mut objective = Counted {
        inner: objective,
        evaluations: 0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let domain = objective.domain().clone();

    let population = vertices(&domain, config.vertex_cap, &mut rng);
    let (mut current, mut current_value) = select_elite(&population, &mut objective)?;
    let mut direction = domain.inward_direction(&current)?;
    let directions = all_sign_vectors(domain.dimension(), config.direction_cap, &mut rng);

    let mut trace = trace_enabled.then(Trace::default);
    let mut record = |generation: u64,
                      kind: EventKind,
                      point: &Point,
                      value: f64,
                      direction: Option<&SignVector>,
                      step: Option<f64>| {
        if let Some(t) = trace.as_mut() {
            t.events.push(TraceEvent {
                generation,
                kind,
                point: point.clone(),
                value,
                direction: direction.cloned(),
                step,
            });
        }
    };
    record(0, EventKind::EliteSelected, &current, current_value, None, None);

    let mut trm = 0u64;
    let terminated_by = loop {
        if trm >= config.max_generations {
            break Termination::GenerationCap;
        }
        let mut seen = 0u64;
        if let Some(m) = probe_counted(
            &current,
            current_value,
            &direction,
            &mut objective,
            config,
            &mut seen,
        )? {
            trm += 1;
            record(trm, EventKind::DirectedStep, &m.point, m.value, Some(&m.direction), Some(m.step));
            current = m.point;
            current_value = m.value;
            continue;
        }
        if let Some(m) = rotate_counted(
            &current,
            current_value,
            &mut objective,
            config,
            &directions,
            &mut seen,
        )? {
            trm += 1;
            record(trm, EventKind::RotationalStep, &m.point, m.value, Some(&m.direction), Some(m.step));
            current = m.point;
            current_value = m.value;
            direction = m.direction;
            continue;
        }
        let (kind, why) = if seen == 0 {
            (EventKind::BoundaryStop, Termination::BoundaryStop)
        } else {
            (EventKind::Stalled, Termination::Stalled)
        };
        record(trm, kind, &current, current_value, None, None);
        break why;
    };

    let best_value = objective.score(&current)?;
    Ok(RunResult {
        best_point: current,
        best_value,
        trm,
        terminated_by,
        trace,
        seed: config.seed,
        evaluations: objective.evaluations,
    })
}

/// Runs the search on a suite function. Noise, if any, is seeded from
/// `config.seed`.
pub fn rm_optimize(spec: &ObjectiveSpec, config: &RmConfig, trace_enabled: bool) -> Result<RunResult> {
    let mut objective = BenchmarkObjective::new(spec.clone(), config.seed);
    optimize(&mut objective, config, trace_enabled)
}

/// The same run reported in GA terms: always traced, one generation per
/// accepted mutation.
pub fn rmga_run(spec: &ObjectiveSpec, config: &RmConfig) -> Result<RunResult> {
    rm_optimize(spec, config, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::BoxDomain;
    use crate::objectives::{eval_noise_free, ObjectiveId};

    fn pt(c: &[f64]) -> Point {
        Point::new(c.to_vec()).unwrap()
    }

    fn sv(s: &[i8]) -> SignVector {
        SignVector::new(s.to_vec()).unwrap()
    }

    fn quad() -> BenchmarkObjective {
        BenchmarkObjective::new(ObjectiveId::Quad.spec(), 0)
    }

    fn corners(domain: &BoxDomain) -> Vec<Point> {
        vertices(domain, 1 << 10, &mut ChaCha8Rng::seed_from_u64(0))
    }

    #[test]
    fn config_validation() {
        assert!(RmConfig::default().validate().is_ok());
        let bad = [
            RmConfig { rms: 0.0, ..Default::default() },
            RmConfig { alpha_multipliers: vec![], ..Default::default() },
            RmConfig { alpha_multipliers: vec![2, 1], ..Default::default() },
            RmConfig { alpha_multipliers: vec![0, 1], ..Default::default() },
            RmConfig { beta_schedule: vec![0.5, 0.25], ..Default::default() },
            RmConfig { beta_schedule: vec![-0.1], ..Default::default() },
            RmConfig { max_generations: 0, ..Default::default() },
            RmConfig { direction_cap: 0, ..Default::default() },
        ];
        for c in bad {
            assert!(matches!(c.validate(), Err(Error::Config(_))), "{c:?}");
        }
    }

    #[test]
    fn elite_on_quad_breaks_tie_lexicographically() {
        let mut obj = quad();
        let (p, v) = select_elite(&corners(&obj.spec().domain), &mut obj).unwrap();
        assert_eq!(p, pt(&[-2.0, 2.0]));
        // (-2, 2) and (2, 2) both give 4 + 1.6^2
        assert_eq!(v, 4.0 + 1.6 * 1.6);
    }

    #[test]
    fn elite_on_step_function_is_the_low_corner() {
        let mut obj = BenchmarkObjective::new(ObjectiveId::F3.spec(), 0);
        let (p, v) = select_elite(&corners(&obj.spec().domain), &mut obj).unwrap();
        assert_eq!(p, pt(&[-5.12; 5]));
        assert_eq!(v, 0.0);
    }

    #[test]
    fn elite_on_beale_matches_direct_corner_evaluation() {
        let spec = ObjectiveId::Beale.spec();
        let mut obj = BenchmarkObjective::new(spec.clone(), 0);
        let cs = corners(&spec.domain);
        let (p, v) = select_elite(&cs, &mut obj).unwrap();
        // frozen from an independent evaluation of the four corners
        assert_eq!(p, pt(&[-4.5, 4.5]));
        assert_eq!(v, 169_680.832_031_25);
        for c in &cs {
            assert!(eval_noise_free(&spec, c).unwrap() >= v);
        }
    }

    #[test]
    fn elite_rejects_empty_candidates() {
        assert!(matches!(select_elite(&[], &mut quad()), Err(Error::Usage(_))));
    }

    #[test]
    fn step_along_examples() {
        assert_eq!(step_along(&pt(&[0.0, 0.0]), &sv(&[1, 1]), 0.1), pt(&[0.1, 0.1]));
        assert_eq!(step_along(&pt(&[-2.0, 2.0]), &sv(&[1, -1]), 0.5), pt(&[-1.5, 1.5]));
        let out = step_along(&pt(&[4.5, 4.5]), &sv(&[1, 1]), 0.1);
        assert_eq!(out, pt(&[4.6, 4.6]));
        assert!(!ObjectiveId::Beale.spec().domain.contains(&out).unwrap());
    }

    #[test]
    fn directed_probe_on_quad() {
        let cfg = RmConfig::default();
        let m = directed_probe(&pt(&[-2.0, 2.0]), 6.56, &sv(&[1, -1]), &mut quad(), &cfg)
            .unwrap()
            .unwrap();
        assert_eq!(m.point, pt(&[-1.9, 1.9]));
        assert!((m.value - 5.86).abs() < 1e-12);
        assert_eq!(m.step, 0.1);
    }

    #[test]
    fn directed_probe_at_optimum_or_outward_is_absent() {
        let cfg = RmConfig::default();
        for d in [sv(&[1, 1]), sv(&[1, -1]), sv(&[-1, 1]), sv(&[-1, -1])] {
            assert!(directed_probe(&pt(&[0.0, 0.4]), 0.0, &d, &mut quad(), &cfg)
                .unwrap()
                .is_none());
        }
        let mut obj = quad();
        let v = obj.evaluate(&pt(&[2.0, 2.0])).unwrap();
        assert!(directed_probe(&pt(&[2.0, 2.0]), v, &sv(&[1, 1]), &mut obj, &cfg)
            .unwrap()
            .is_none());
    }

    #[test]
    fn rotational_search_on_quad_skips_out_of_box_candidates() {
        let cfg = RmConfig::default();
        let dirs = all_sign_vectors(2, 64, &mut ChaCha8Rng::seed_from_u64(0));
        let m = rotational_search(&pt(&[-2.0, 2.0]), 6.56, &mut quad(), &cfg, &dirs)
            .unwrap()
            .unwrap();
        // (+1,+1) is tried first but (-1.9, 2.1) lies outside the box
        assert_eq!(m.direction, sv(&[1, -1]));
        assert_eq!(m.point, pt(&[-1.9, 1.9]));
        assert!((m.value - 5.86).abs() < 1e-12);
        assert_eq!(m.step, 0.1);
    }

    #[test]
    fn rotational_search_absent_at_optima() {
        let cfg = RmConfig::default();
        let dirs = all_sign_vectors(2, 64, &mut ChaCha8Rng::seed_from_u64(0));
        assert!(rotational_search(&pt(&[0.0, 0.4]), 0.0, &mut quad(), &cfg, &dirs)
            .unwrap()
            .is_none());
        let mut f3 = BenchmarkObjective::new(ObjectiveId::F3.spec(), 0);
        let dirs5 = all_sign_vectors(5, 64, &mut ChaCha8Rng::seed_from_u64(0));
        assert!(rotational_search(&pt(&[-5.12; 5]), 0.0, &mut f3, &cfg, &dirs5)
            .unwrap()
            .is_none());
        assert!(rotational_search(&pt(&[0.0, 0.4]), 0.0, &mut quad(), &cfg, &[]).is_err());
    }

    #[test]
    fn quad_run_reaches_the_optimum_exactly() {
        let r = rm_optimize(&ObjectiveId::Quad.spec(), &RmConfig::default(), false).unwrap();
        assert_eq!(r.best_point, pt(&[0.0, 0.4]));
        assert_eq!(r.best_value, 0.0);
        assert_eq!(r.terminated_by, Termination::Stalled);
    }

    #[test]
    fn step_function_stalls_at_the_elite() {
        let r = rm_optimize(&ObjectiveId::F3.spec(), &RmConfig::default(), true).unwrap();
        assert_eq!(r.best_point, pt(&[-5.12; 5]));
        assert_eq!(r.best_value, 0.0);
        assert_eq!(r.trm, 0);
        assert_eq!(r.terminated_by, Termination::Stalled);
    }

    #[test]
    fn generation_cap_stops_the_run() {
        let cfg = RmConfig {
            max_generations: 5,
            ..Default::default()
        };
        let r = rm_optimize(&ObjectiveId::F5.spec(), &cfg, true).unwrap();
        assert_eq!(r.trm, 5);
        assert_eq!(r.terminated_by, Termination::GenerationCap);
        assert_eq!(r.trace.unwrap().moves().count(), 5);
    }

    #[test]
    fn boundary_stop_when_every_step_leaves_the_box() {
        struct Tiny(BoxDomain);
        impl Objective for Tiny {
            fn domain(&self) -> &BoxDomain {
                &self.0
            }
            fn evaluate(&mut self, p: &Point) -> Result<f64> {
                Ok(p[0])
            }
            fn score(&self, p: &Point) -> Result<f64> {
                Ok(p[0])
            }
        }
        let mut obj = Tiny(BoxDomain::new(vec![0.0], vec![0.05]).unwrap());
        let r = optimize(&mut obj, &RmConfig::default(), true).unwrap();
        assert_eq!(r.terminated_by, Termination::BoundaryStop);
        assert_eq!(r.best_point, pt(&[0.0]));
        let last = r.trace.unwrap().events.pop().unwrap();
        assert_eq!(last.kind, EventKind::BoundaryStop);
    }

    #[test]
    fn maximization_uses_the_sense_flag() {
        struct Peak(BoxDomain);
        impl Objective for Peak {
            fn domain(&self) -> &BoxDomain {
                &self.0
            }
            fn sense(&self) -> crate::domain::Sense {
                crate::domain::Sense::Maximize
            }
            fn evaluate(&mut self, p: &Point) -> Result<f64> {
                self.score(p)
            }
            fn score(&self, p: &Point) -> Result<f64> {
                Ok(-(p[0] - 0.5).powi(2) - (p[1] + 0.5).powi(2))
            }
        }
        let mut obj = Peak(BoxDomain::symmetric(2, 1.0).unwrap());
        let r = optimize(&mut obj, &RmConfig::default(), false).unwrap();
        assert_eq!(r.best_point, pt(&[0.5, -0.5]));
        assert_eq!(r.best_value, 0.0);
    }

    #[test]
    fn rmga_is_rm_with_trace() {
        let cfg = RmConfig::default();
        let spec = ObjectiveId::F1.spec();
        assert_eq!(rmga_run(&spec, &cfg).unwrap(), rm_optimize(&spec, &cfg, true).unwrap());
    }
}
