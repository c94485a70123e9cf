//! Points, box domains, sign-vector directions and fitness comparison.
//!
//! Everything here is an immutable value. The only impurity is the caller-owned
//! random source consumed by [`vertices`] and [`all_sign_vectors`] when the
//! full corner set is larger than the cap.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::ops::Index;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of lattice units per problem unit. Coordinates produced by moves are
/// rounded to the nearest multiple of `1 / LATTICE_SCALE`.
pub const LATTICE_SCALE: f64 = 1e9;

/// Rounds `x` onto the decimal lattice so that repeated steps such as
/// `-2 + 20 * 0.1` land exactly on `0.0` instead of accumulating drift.
///
/// Values too large to scale exactly are returned unchanged.
pub fn snap(x: f64) -> f64 {
    let scaled = x * LATTICE_SCALE;
    if scaled.abs() < 4_503_599_627_370_496.0 {
        let r = scaled.round() / LATTICE_SCALE;
        if r == 0.0 {
            0.0
        } else {
            r
        }
    } else {
        x
    }
}

/// A decision vector. Every coordinate is finite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if let Some(index) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Point(coords))
    }

    pub(crate) fn from_finite(coords: Vec<f64>) -> Self {
        debug_assert!(coords.iter().all(|c| c.is_finite()));
        Point(coords)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Lexicographic order over the coordinate sequence.
    pub fn lex_cmp(&self, other: &Point) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.total_cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.0.len().cmp(&other.0.len())
    }

    /// Largest absolute coordinate difference.
    pub fn linf_distance(&self, other: &Point) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Point::new(coords)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.0
    }
}

impl Index<usize> for Point {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Axis-aligned search box `lower_i <= x_i <= upper_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxDomain {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl BoxDomain {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::InvalidDomain("dimension must be positive".into()));
        }
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                actual: upper.len(),
            });
        }
        for (i, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !lo.is_finite() || !hi.is_finite() {
                return Err(Error::NonFinite { index: i });
            }
            if lo >= hi {
                return Err(Error::InvalidDomain(format!(
                    "lower bound {lo} is not below upper bound {hi} at index {i}"
                )));
            }
        }
        Ok(BoxDomain { lower, upper })
    }

    /// The cube `[-half_width, half_width]^dimension`.
    pub fn symmetric(dimension: usize, half_width: f64) -> Result<Self> {
        BoxDomain::new(vec![-half_width; dimension], vec![half_width; dimension])
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    fn check_dimension(&self, actual: usize) -> Result<()> {
        if actual == self.dimension() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dimension(),
                actual,
            })
        }
    }

    /// Closed-box membership: boundary points are inside.
    pub fn contains(&self, p: &Point) -> Result<bool> {
        self.check_dimension(p.dimension())?;
        Ok(p
            .coords()
            .iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(x, (lo, hi))| lo <= x && x <= hi))
    }

    /// Like [`contains`](Self::contains) but turns a miss into
    /// [`Error::OutOfDomain`].
    pub fn require(&self, p: &Point) -> Result<()> {
        if self.contains(p)? {
            Ok(())
        } else {
            Err(Error::OutOfDomain {
                point: p.coords().to_vec(),
            })
        }
    }

    /// The corner selected by `signs`: `lower_i` where the sign is `+1`,
    /// `upper_i` where it is `-1`.
    pub fn corner(&self, signs: &SignVector) -> Result<Point> {
        self.check_dimension(signs.dimension())?;
        Ok(Point::from_finite(
            signs
                .signs()
                .iter()
                .enumerate()
                .map(|(i, &s)| if s > 0 { self.lower[i] } else { self.upper[i] })
                .collect(),
        ))
    }

    /// Sign vector pointing from the corner `p` into the interior: `+1` where
    /// `p_i` sits on the lower bound, `-1` otherwise.
    pub fn inward_direction(&self, p: &Point) -> Result<SignVector> {
        self.check_dimension(p.dimension())?;
        Ok(SignVector(
            p.coords()
                .iter()
                .zip(&self.lower)
                .map(|(x, lo)| if x == lo { 1 } else { -1 })
                .collect(),
        ))
    }

    pub fn corner_count(&self) -> Option<u64> {
        1u64.checked_shl(self.dimension() as u32)
    }
}

/// A direction in `{-1, +1}^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::InvalidDomain("sign vector must be non-empty".into()));
        }
        if let Some(s) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidDomain(format!("sign entry {s} is not +1 or -1")));
        }
        Ok(SignVector(signs))
    }

    /// Builds a sign vector from a bit pattern: `false` is `+1`, `true` is `-1`.
    fn from_bits(bits: &[bool]) -> Self {
        SignVector(bits.iter().map(|&b| if b { -1 } else { 1 }).collect())
    }

    pub fn all_positive(dimension: usize) -> Self {
        SignVector(vec![1; dimension])
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn negated(&self) -> Self {
        SignVector(self.0.iter().map(|s| -s).collect())
    }
}

impl TryFrom<Vec<i8>> for SignVector {
    type Error = Error;

    fn try_from(signs: Vec<i8>) -> Result<Self> {
        SignVector::new(signs)
    }
}

impl From<SignVector> for Vec<i8> {
    fn from(s: SignVector) -> Self {
        s.0
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", if *s > 0 { "+1" } else { "-1" })?;
        }
        write!(f, ")")
    }
}

/// Optimization sense.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    #[default]
    Minimize,
    Maximize,
}

impl Sense {
    /// Strict comparison: is `a` better than `b`?
    pub fn better(self, a: f64, b: f64) -> bool {
        match self {
            Sense::Minimize => a < b,
            Sense::Maximize => a > b,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Sense::Minimize => Sense::Maximize,
            Sense::Maximize => Sense::Minimize,
        }
    }
}

/// An objective value tagged with the sense it is compared under.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Fitness {
    pub value: f64,
    pub sense: Sense,
}

impl Fitness {
    pub fn new(value: f64, sense: Sense) -> Self {
        Fitness { value, sense }
    }

    pub fn better_than(&self, other: &Fitness) -> bool {
        debug_assert_eq!(self.sense, other.sense);
        self.sense.better(self.value, other.value)
    }
}

/// Bit patterns in lexicographic order (most significant coordinate first),
/// or `cap` distinct patterns drawn uniformly when the full set is larger.
fn bit_patterns<R: Rng + ?Sized>(dimension: usize, cap: usize, rng: &mut R) -> Vec<Vec<bool>> {
    let cap = cap.max(1);
    let full = 1usize
        .checked_shl(dimension as u32)
        .filter(|&n| n <= cap);
    match full {
        Some(count) => (0..count)
            .map(|k| {
                (0..dimension)
                    .map(|i| (k >> (dimension - 1 - i)) & 1 == 1)
                    .collect()
            })
            .collect(),
        None => {
            let mut seen = HashSet::with_capacity(cap);
            let mut out = Vec::with_capacity(cap);
            while out.len() < cap {
                let bits: Vec<bool> = (0..dimension).map(|_| rng.random::<bool>()).collect();
                if seen.insert(bits.clone()) {
                    out.push(bits);
                }
            }
            out
        }
    }
}

/// Corners of `domain`.
///
/// With `2^n <= cap` all corners come back in lexicographic order over the
/// per-coordinate choice, lower bound before upper bound. Otherwise `cap`
/// distinct corners are sampled without replacement, in draw order.
pub fn vertices<R: Rng + ?Sized>(domain: &BoxDomain, cap: usize, rng: &mut R) -> Vec<Point> {
    bit_patterns(domain.dimension(), cap, rng)
        .iter()
        .map(|bits| {
            Point::from_finite(
                bits.iter()
                    .enumerate()
                    .map(|(i, &b)| if b { domain.upper[i] } else { domain.lower[i] })
                    .collect(),
            )
        })
        .collect()
}

/// Sign vectors of length `dimension`: all `2^n` of them in lexicographic
/// order (`+1` before `-1`, all-positive first) when they fit under `cap`,
/// otherwise `cap` distinct ones sampled without replacement.
pub fn all_sign_vectors<R: Rng + ?Sized>(
    dimension: usize,
    cap: usize,
    rng: &mut R,
) -> Vec<SignVector> {
    bit_patterns(dimension, cap, rng)
        .iter()
        .map(|bits| SignVector::from_bits(bits))
        .collect()
}
