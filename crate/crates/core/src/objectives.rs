//! The benchmark suite: De Jong F1-F5, Beale and a shifted quadratic.
//!
//! Stable identifiers (`f1` .. `f5`, `beale`, `quad`) are used by the CLI and
//! in every report.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::domain::{BoxDomain, Point, Sense};
use crate::error::{Error, Result};

/// Stream id reserved for objective noise, so a noise source and an optimizer
/// RNG built from the same seed never share draws.
const NOISE_STREAM: u64 = 0x006e_6f69_7365;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectiveId {
    F1,
    F2,
    F3,
    F4,
    F5,
    Beale,
    Quad,
}

impl ObjectiveId {
    pub const ALL: [ObjectiveId; 7] = [
        ObjectiveId::F1,
        ObjectiveId::F2,
        ObjectiveId::F3,
        ObjectiveId::F4,
        ObjectiveId::F5,
        ObjectiveId::Beale,
        ObjectiveId::Quad,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ObjectiveId::F1 => "f1",
            ObjectiveId::F2 => "f2",
            ObjectiveId::F3 => "f3",
            ObjectiveId::F4 => "f4",
            ObjectiveId::F5 => "f5",
            ObjectiveId::Beale => "beale",
            ObjectiveId::Quad => "quad",
        }
    }

    pub fn spec(self) -> ObjectiveSpec {
        ObjectiveSpec::of(self)
    }
}

impl fmt::Display for ObjectiveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ObjectiveId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ObjectiveId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownObjective(s.to_string()))
    }
}

/// A known optimum: location and value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnownOptimum {
    pub point: Point,
    pub value: f64,
}

/// A benchmark function with its domain and optimum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveSpec {
    pub id: ObjectiveId,
    pub domain: BoxDomain,
    pub sense: Sense,
    pub known_optimum: Option<KnownOptimum>,
    pub noisy: bool,
}

impl ObjectiveSpec {
    pub fn of(id: ObjectiveId) -> Self {
        let (dimension, half_width, noisy) = match id {
            ObjectiveId::F1 => (3, 5.12, false),
            ObjectiveId::F2 => (2, 2.048, false),
            ObjectiveId::F3 => (5, 5.12, false),
            ObjectiveId::F4 => (30, 1.28, true),
            ObjectiveId::F5 => (2, 65.536, false),
            ObjectiveId::Beale => (2, 4.5, false),
            ObjectiveId::Quad => (2, 2.0, false),
        };
        let domain = BoxDomain::symmetric(dimension, half_width)
            .expect("suite domains are well-formed");
        let optimum_point = match id {
            ObjectiveId::F1 => vec![0.0; 3],
            ObjectiveId::F2 => vec![1.0, 1.0],
            ObjectiveId::F3 => vec![-5.12; 5],
            ObjectiveId::F4 => vec![0.0; 30],
            ObjectiveId::F5 => vec![-32.0, -32.0],
            ObjectiveId::Beale => vec![3.0, 0.5],
            ObjectiveId::Quad => vec![0.0, 0.4],
        };
        let point = Point::from_finite(optimum_point);
        // F5 has no closed-form optimum value; take it from the formula itself.
        let value = match id {
            ObjectiveId::F5 => foxholes(point.coords()),
            _ => 0.0,
        };
        ObjectiveSpec {
            id,
            domain,
            sense: Sense::Minimize,
            known_optimum: Some(KnownOptimum { point, value }),
            noisy,
        }
    }

    pub fn name(&self) -> &'static str {
        self.id.as_str()
    }

    pub fn dimension(&self) -> usize {
        self.domain.dimension()
    }
}

/// All seven benchmark functions, in `ObjectiveId::ALL` order.
pub fn registry() -> Vec<ObjectiveSpec> {
    ObjectiveId::ALL.into_iter().map(ObjectiveSpec::of).collect()
}

/// The Shekel foxholes location table: 25 holes on a 5x5 grid over
/// `{-32, -16, 0, 16, 32}^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoxholeTable {
    pub a: [[f64; 25]; 2],
}

const FOXHOLE_LEVELS: [f64; 5] = [-32.0, -16.0, 0.0, 16.0, 32.0];

pub const FOXHOLES: FoxholeTable = {
    let mut a = [[0.0; 25]; 2];
    let mut j = 0;
    while j < 25 {
        a[0][j] = FOXHOLE_LEVELS[j % 5];
        a[1][j] = FOXHOLE_LEVELS[j / 5];
        j += 1;
    }
    FoxholeTable { a }
};

/// Seeded standard-normal draws for the noisy quartic.
#[derive(Debug, Clone)]
pub struct NoiseSource {
    seed: u64,
    position: u64,
    rng: ChaCha8Rng,
}

impl NoiseSource {
    pub fn new(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(NOISE_STREAM);
        NoiseSource {
            seed,
            position: 0,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of samples drawn so far.
    pub fn position(&self) -> u64 {
        self.position
    }

    pub fn sample(&mut self) -> f64 {
        self.position += 1;
        StandardNormal.sample(&mut self.rng)
    }

    pub fn reset(&mut self) {
        *self = NoiseSource::new(self.seed);
    }
}

fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

fn rosenbrock(x: &[f64]) -> f64 {
    let r = x[0] * x[0] - x[1];
    100.0 * r * r + (1.0 - x[0]).powi(2)
}

fn step(x: &[f64]) -> f64 {
    30.0 + x.iter().map(|v| v.floor()).sum::<f64>()
}

fn quartic(x: &[f64], mut noise: Option<&mut NoiseSource>) -> f64 {
    x.iter()
        .enumerate()
        .map(|(i, v)| {
            let g = noise.as_deref_mut().map_or(0.0, NoiseSource::sample);
            (i + 1) as f64 * v.powi(4) + g
        })
        .sum()
}

fn foxholes(x: &[f64]) -> f64 {
    let a = &FOXHOLES.a;
    let s: f64 = (0..25)
        .map(|j| {
            let d0 = (x[0] - a[0][j]).powi(6);
            let d1 = (x[1] - a[1][j]).powi(6);
            1.0 / ((j + 1) as f64 + d0 + d1)
        })
        .sum();
    1.0 / (0.002 + s)
}

fn beale(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (1.5 - a + a * b).powi(2) + (2.25 - a + a * b * b).powi(2) + (2.625 - a + a * b * b * b).powi(2)
}

fn quad(x: &[f64]) -> f64 {
    x[0] * x[0] + (x[1] - 0.4).powi(2)
}

fn formula(id: ObjectiveId, x: &[f64], noise: Option<&mut NoiseSource>) -> f64 {
    match id {
        ObjectiveId::F1 => sphere(x),
        ObjectiveId::F2 => rosenbrock(x),
        ObjectiveId::F3 => step(x),
        ObjectiveId::F4 => quartic(x, noise),
        ObjectiveId::F5 => foxholes(x),
        ObjectiveId::Beale => beale(x),
        ObjectiveId::Quad => quad(x),
    }
}

/// Evaluates `spec` at `p`. Noisy specs require a noise source and advance it
/// by one draw per coordinate.
pub fn eval(spec: &ObjectiveSpec, p: &Point, noise: Option<&mut NoiseSource>) -> Result<f64> {
    spec.domain.require(p)?;
    if spec.noisy && noise.is_none() {
        return Err(Error::MissingNoise(spec.name().to_string()));
    }
    let noise = if spec.noisy { noise } else { None };
    Ok(formula(spec.id, p.coords(), noise))
}

/// Evaluates `spec` at `p` with every noise term set to zero.
pub fn eval_noise_free(spec: &ObjectiveSpec, p: &Point) -> Result<f64> {
    spec.domain.require(p)?;
    Ok(formula(spec.id, p.coords(), None))
}

/// Something the optimizer can minimize or maximize.
///
/// `evaluate` may be noisy and is what the search compares; `score` is the
/// noise-free value reported for a final point.
pub trait Objective {
    fn domain(&self) -> &BoxDomain;

    fn sense(&self) -> Sense {
        Sense::Minimize
    }

    fn evaluate(&mut self, p: &Point) -> Result<f64>;

    fn score(&self, p: &Point) -> Result<f64>;
}

/// A suite function bound to its own noise stream.
#[derive(Debug, Clone)]
pub struct BenchmarkObjective {
    spec: ObjectiveSpec,
    noise: Option<NoiseSource>,
}

impl BenchmarkObjective {
    /// Noise (when the spec needs it) is seeded from `seed`.
    pub fn new(spec: ObjectiveSpec, seed: u64) -> Self {
        let noise = spec.noisy.then(|| NoiseSource::new(seed));
        BenchmarkObjective { spec, noise }
    }

    pub fn spec(&self) -> &ObjectiveSpec {
        &self.spec
    }

    pub fn noise(&self) -> Option<&NoiseSource> {
        self.noise.as_ref()
    }
}

impl Objective for BenchmarkObjective {
    fn domain(&self) -> &BoxDomain {
        &self.spec.domain
    }

    fn sense(&self) -> Sense {
        self.spec.sense
    }

    fn evaluate(&mut self, p: &Point) -> Result<f64> {
        eval(&self.spec, p, self.noise.as_mut())
    }

    fn score(&self, p: &Point) -> Result<f64> {
        eval_noise_free(&self.spec, p)
    }
}
