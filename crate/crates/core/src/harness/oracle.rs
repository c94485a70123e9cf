//! Brute-force checks used to validate optimizer results.
//!
//! Both oracles work on integer lattice units (`1 / LATTICE_SCALE`) so grid
//! points and reachable points are exact decimal sums.

use std::collections::{HashSet, VecDeque};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::domain::{all_sign_vectors, vertices, Point, LATTICE_SCALE};
use crate::error::{Error, Result};
use crate::objectives::{eval_noise_free, ObjectiveSpec};
use crate::optimizer::RmConfig;

/// Largest grid `grid_oracle` will evaluate.
pub const GRID_POINT_LIMIT: u64 = 100_000_000;

fn to_units(x: f64) -> i64 {
    (x * LATTICE_SCALE).round() as i64
}

fn from_units(u: i64) -> f64 {
    u as f64 / LATTICE_SCALE
}

/// Exhaustively evaluates the grid `lower_i + k * resolution <= upper_i` with
/// noise-free scoring and returns the best grid point. Iteration is
/// lexicographic, so ties go to the lexicographically smallest point.
pub fn grid_oracle(spec: &ObjectiveSpec, resolution: f64) -> Result<(Point, f64)> {
    if !(resolution.is_finite() && resolution > 0.0) {
        return Err(Error::Usage(format!("resolution must be positive, got {resolution}")));
    }
    let step = to_units(resolution);
    if step == 0 {
        return Err(Error::Usage(format!("resolution {resolution} is below the lattice unit")));
    }
    let domain = &spec.domain;
    let lower: Vec<i64> = domain.lower().iter().map(|&x| to_units(x)).collect();
    let counts: Vec<i64> = domain
        .lower()
        .iter()
        .zip(domain.upper())
        .map(|(&lo, &hi)| (to_units(hi) - to_units(lo)) / step + 1)
        .collect();
    let total: f64 = counts.iter().map(|&c| c as f64).product();
    if total > GRID_POINT_LIMIT as f64 {
        return Err(Error::GridTooLarge {
            points: total,
            limit: GRID_POINT_LIMIT,
        });
    }

    let dim = counts.len();
    let mut index = vec![0i64; dim];
    let mut coords = vec![0.0; dim];
    let mut best: Option<(Vec<f64>, f64)> = None;
    loop {
        for i in 0..dim {
            coords[i] = from_units(lower[i] + index[i] * step);
        }
        let p = Point::new(coords.clone())?;
        let v = eval_noise_free(spec, &p)?;
        if best.as_ref().is_none_or(|(_, bv)| spec.sense.better(v, *bv)) {
            best = Some((coords.clone(), v));
        }
        // odometer, last coordinate fastest
        let mut i = dim;
        loop {
            if i == 0 {
                let (c, v) = best.expect("grid has at least one point");
                return Ok((Point::new(c)?, v));
            }
            i -= 1;
            index[i] += 1;
            if index[i] < counts[i] {
                break;
            }
            index[i] = 0;
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

const DENSE_CELL_LIMIT: i64 = 1 << 30;
type Key = [i64; 3];

/// Visited set. Every reachable point is `origin + k * unit` per coordinate,
/// so a dense bitset over that lattice is used when it fits.
enum Visited {
    Dense {
        bits: Vec<u64>,
        origin: Key,
        min: Key,
        extent: Key,
        unit: i64,
        dim: usize,
        len: usize,
    },
    Sparse(HashSet<Key>),
}

impl Visited {
    fn new(origin: &Key, lo: &Key, hi: &Key, dim: usize, unit: i64) -> Self {
        let mut min = [0i64; 3];
        let mut extent = [1i64; 3];
        let mut cells: i64 = 1;
        for i in 0..dim {
            min[i] = -((origin[i] - lo[i]) / unit);
            extent[i] = (hi[i] - origin[i]) / unit - min[i] + 1;
            cells = cells.saturating_mul(extent[i]);
        }
        if cells <= DENSE_CELL_LIMIT {
            Visited::Dense {
                bits: vec![0; (cells as usize).div_ceil(64)],
                origin: *origin,
                min,
                extent,
                unit,
                dim,
                len: 0,
            }
        } else {
            Visited::Sparse(HashSet::new())
        }
    }

    fn index(&self, k: &Key) -> Option<usize> {
        let Visited::Dense { origin, min, extent, unit, dim, .. } = self else {
            return None;
        };
        let mut idx = 0i64;
        for i in 0..*dim {
            let d = k[i] - origin[i];
            if d % unit != 0 {
                return None;
            }
            idx = idx * extent[i] + (d / unit - min[i]);
        }
        Some(idx as usize)
    }

    fn contains(&self, k: &Key) -> bool {
        match self {
            Visited::Dense { bits, .. } => self
                .index(k)
                .is_some_and(|i| bits[i / 64] & (1 << (i % 64)) != 0),
            Visited::Sparse(set) => set.contains(k),
        }
    }

    fn insert(&mut self, k: &Key) {
        let idx = self.index(k);
        match self {
            Visited::Dense { bits, len, .. } => {
                let i = idx.expect("reachable points lie on the lattice");
                if bits[i / 64] & (1 << (i % 64)) == 0 {
                    bits[i / 64] |= 1 << (i % 64);
                    *len += 1;
                }
            }
            Visited::Sparse(set) => {
                set.insert(*k);
            }
        }
    }

    fn len(&self) -> usize {
        match self {
            Visited::Dense { len, .. } => *len,
            Visited::Sparse(set) => set.len(),
        }
    }
}

/// Outcome of a reachability enumeration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reachability {
    pub start: Point,
    pub visited: usize,
    /// Set when the budget ran out before the frontier was exhausted.
    pub partial: bool,
    pub optimum_reachable: bool,
    pub best_point: Point,
    pub best_value: f64,
}

/// Breadth-first enumeration of every in-domain point reachable from the
/// elite corner by moves `L * e`, where `L` is any directed-probe length
/// `rms * n` or rotational length `beta` and `e` is any sign vector.
///
/// Stops after `budget` points. Only dimensions up to 3 are supported.
pub fn reachability_oracle(
    spec: &ObjectiveSpec,
    config: &RmConfig,
    budget: usize,
) -> Result<Reachability> {
    const MAX_DIM: usize = 3;
    let dim = spec.dimension();
    if dim > MAX_DIM {
        return Err(Error::Usage(format!(
            "reachability oracle supports at most {MAX_DIM} dimensions, got {dim}"
        )));
    }
    if budget == 0 {
        return Err(Error::Usage("budget must be positive".into()));
    }
    config.validate()?;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let corners = vertices(&spec.domain, config.vertex_cap, &mut rng);
    let mut start: Option<(Point, f64)> = None;
    for c in corners {
        let v = eval_noise_free(spec, &c)?;
        let replace = match &start {
            None => true,
            Some((b, bv)) => spec.sense.better(v, *bv) || (v == *bv && c.lex_cmp(b).is_lt()),
        };
        if replace {
            start = Some((c, v));
        }
    }
    let (start, start_value) = start.expect("a box has at least one corner");

    let mut lengths: Vec<i64> = config
        .alpha_multipliers
        .iter()
        .map(|&n| to_units(config.rms * f64::from(n)))
        .chain(config.beta_schedule.iter().map(|&b| to_units(b)))
        .collect();
    lengths.sort_unstable();
    lengths.dedup();
    let signs = all_sign_vectors(dim, 1 << dim, &mut rng);
    let moves: Vec<Key> = lengths
        .iter()
        .flat_map(|&l| {
            signs.iter().map(move |e| {
                let mut m = [0i64; MAX_DIM];
                for (i, &s) in e.signs().iter().enumerate() {
                    m[i] = l * i64::from(s);
                }
                m
            })
        })
        .collect();

    let pad = |v: &[f64]| {
        let mut k = [0i64; MAX_DIM];
        for (i, &x) in v.iter().enumerate() {
            k[i] = to_units(x);
        }
        k
    };
    let lo = pad(spec.domain.lower());
    let hi = pad(spec.domain.upper());
    let target = spec.known_optimum.as_ref().map(|o| pad(o.point.coords()));

    let origin = pad(start.coords());
    let unit = lengths.iter().copied().fold(0, gcd).max(1);
    let mut seen = Visited::new(&origin, &lo, &hi, dim, unit);
    let mut queue = VecDeque::new();
    seen.insert(&origin);
    queue.push_back(origin);
    let mut best = (origin, start_value);
    let mut partial = false;
    let mut coords = vec![0.0; dim];

    'bfs: while let Some(cur) = queue.pop_front() {
        for m in &moves {
            let mut next = cur;
            let mut inside = true;
            for i in 0..dim {
                next[i] += m[i];
                inside &= lo[i] <= next[i] && next[i] <= hi[i];
            }
            if !inside || seen.contains(&next) {
                continue;
            }
            if seen.len() >= budget {
                partial = true;
                break 'bfs;
            }
            seen.insert(&next);
            for i in 0..dim {
                coords[i] = from_units(next[i]);
            }
            let v = eval_noise_free(spec, &Point::new(coords.clone())?)?;
            if spec.sense.better(v, best.1) {
                best = (next, v);
            }
            queue.push_back(next);
        }
    }

    let unpad = |k: [i64; MAX_DIM]| Point::new(k[..dim].iter().map(|&u| from_units(u)).collect());
    Ok(Reachability {
        start,
        visited: seen.len(),
        partial,
        optimum_reachable: target.is_some_and(|t| seen.contains(&t)),
        best_point: unpad(best.0)?,
        best_value: best.1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::ObjectiveId;

    fn pt(c: &[f64]) -> Point {
        Point::new(c.to_vec()).unwrap()
    }

    #[test]
    fn grid_finds_quad_optimum_exactly() {
        let (p, v) = grid_oracle(&ObjectiveId::Quad.spec(), 0.1).unwrap();
        assert_eq!(p, pt(&[0.0, 0.4]));
        assert_eq!(v, 0.0);
    }

    #[test]
    fn grid_finds_beale_optimum() {
        let (p, v) = grid_oracle(&ObjectiveId::Beale.spec(), 0.5).unwrap();
        assert_eq!(p, pt(&[3.0, 0.5]));
        assert_eq!(v, 0.0);
    }

    #[test]
    fn grid_on_step_function_reaches_zero_below_minus_five() {
        let (p, v) = grid_oracle(&ObjectiveId::F3.spec(), 0.64).unwrap();
        assert_eq!(v, 0.0);
        assert!(p.coords().iter().all(|&x| x < -5.0));
        // lexicographic tie-break keeps the first grid point
        assert_eq!(p, pt(&[-5.12; 5]));
    }

    #[test]
    fn grid_rejects_bad_input() {
        assert!(matches!(
            grid_oracle(&ObjectiveId::F4.spec(), 0.1),
            Err(Error::GridTooLarge { .. })
        ));
        assert!(grid_oracle(&ObjectiveId::Quad.spec(), 0.0).is_err());
        assert!(grid_oracle(&ObjectiveId::Quad.spec(), f64::NAN).is_err());
    }

    #[test]
    fn quad_optimum_is_reachable() {
        let r = reachability_oracle(&ObjectiveId::Quad.spec(), &RmConfig::default(), 1_000_000)
            .unwrap();
        assert_eq!(r.start, pt(&[-2.0, 2.0]));
        assert!(r.optimum_reachable);
        assert_eq!(r.best_value, 0.0);
        assert!(!r.partial);
    }

    #[test]
    fn budget_truncates() {
        let r = reachability_oracle(&ObjectiveId::Quad.spec(), &RmConfig::default(), 10).unwrap();
        assert!(r.partial);
        assert_eq!(r.visited, 10);
        assert!(reachability_oracle(&ObjectiveId::F3.spec(), &RmConfig::default(), 10).is_err());
    }
}
