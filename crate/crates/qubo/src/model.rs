use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{QuboError, Result};

/// A binary decision vector. Bit `i` of [`Assignment::encode`] is variable `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<u8>", try_from = "Vec<u8>")]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn zeros(n: usize) -> Self {
        Self(vec![false; n])
    }

    pub fn from_bools(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    /// Builds an assignment from 0/1 values, rejecting anything else.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        bits.iter()
            .enumerate()
            .map(|(index, &value)| match value {
                0 => Ok(false),
                1 => Ok(true),
                _ => Err(QuboError::NonBinary { index, value }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    /// Decodes the low `n` bits of `code`, variable `i` taking bit `i`.
    pub fn decode(code: u64, n: usize) -> Self {
        Self((0..n).map(|i| (code >> i) & 1 == 1).collect())
    }

    /// Binary encoding with variable `i` as bit `i`. Only meaningful for `len() <= 64`.
    pub fn encode(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.0[i] = value;
    }

    pub fn flip(&mut self, i: usize) {
        self.0[i] = !self.0[i];
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }
}

impl From<Assignment> for Vec<u8> {
    fn from(a: Assignment) -> Self {
        a.0.into_iter().map(u8::from).collect()
    }
}

impl TryFrom<Vec<u8>> for Assignment {
    type Error = QuboError;

    fn try_from(bits: Vec<u8>) -> Result<Self> {
        Assignment::from_bits(&bits)
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Binary quadratic objective with linear terms `a_i`, pair terms `b_ij` (one
/// entry per unordered pair, keyed `i < j`) and a constant offset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuboModel {
    linear: Vec<f64>,
    quadratic: BTreeMap<(usize, usize), f64>,
    offset: f64,
}

impl QuboModel {
    /// Model with `n` variables and no terms.
    pub fn empty(n: usize) -> Self {
        Self {
            linear: vec![0.0; n],
            quadratic: BTreeMap::new(),
            offset: 0.0,
        }
    }

    /// Builds a model from linear coefficients and `(i, j, b_ij)` pair terms.
    ///
    /// Pairs are canonicalized to `i < j`; listing both `(i, j)` and `(j, i)`
    /// sums the two coefficients into the one stored entry.
    pub fn from_terms(
        linear: Vec<f64>,
        quadratic: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        let n = linear.len();
        for (i, a) in linear.iter().enumerate() {
            if !a.is_finite() {
                return Err(QuboError::NonFinite {
                    what: format!("linear term {i}"),
                });
            }
        }
        let mut pairs = BTreeMap::new();
        for (i, j, b) in quadratic {
            if i == j {
                return Err(QuboError::DiagonalPair(i));
            }
            for index in [i, j] {
                if index >= n {
                    return Err(QuboError::IndexOutOfRange { index, n });
                }
            }
            if !b.is_finite() {
                return Err(QuboError::NonFinite {
                    what: format!("pair ({i}, {j})"),
                });
            }
            *pairs.entry((i.min(j), i.max(j))).or_insert(0.0) += b;
        }
        Ok(Self {
            linear,
            quadratic: pairs,
            offset: 0.0,
        })
    }

    /// Returns the same model with a constant added to the objective.
    pub fn with_offset(mut self, offset: f64) -> Result<Self> {
        if !offset.is_finite() {
            return Err(QuboError::NonFinite {
                what: "offset".into(),
            });
        }
        self.offset = offset;
        Ok(self)
    }

    /// Dense random model: every linear term and every pair drawn uniformly from `[lo, hi)`.
    pub fn random_dense(n: usize, lo: f64, hi: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let linear = (0..n).map(|_| rng.gen_range(lo..hi)).collect();
        let mut quadratic = BTreeMap::new();
        for i in 0..n {
            for j in (i + 1)..n {
                quadratic.insert((i, j), rng.gen_range(lo..hi));
            }
        }
        Self {
            linear,
            quadratic,
            offset: 0.0,
        }
    }

    pub fn n(&self) -> usize {
        self.linear.len()
    }

    pub fn linear(&self) -> &[f64] {
        &self.linear
    }

    /// Pair terms keyed `(i, j)` with `i < j`.
    pub fn quadratic(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.quadratic
    }

    pub fn pair(&self, i: usize, j: usize) -> f64 {
        self.quadratic
            .get(&(i.min(j), i.max(j)))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Objective value of `x`.
    pub fn evaluate(&self, x: &Assignment) -> Result<f64> {
        self.check_dim(x)?;
        Ok(self.evaluate_unchecked(x))
    }

    pub(crate) fn evaluate_unchecked(&self, x: &Assignment) -> f64 {
        let bits = x.bits();
        let mut value = self.offset;
        for (i, &a) in self.linear.iter().enumerate() {
            if bits[i] {
                value += a;
            }
        }
        for (&(i, j), &b) in &self.quadratic {
            if bits[i] && bits[j] {
                value += b;
            }
        }
        value
    }

    pub(crate) fn check_dim(&self, x: &Assignment) -> Result<()> {
        if x.len() != self.n() {
            return Err(QuboError::DimensionMismatch {
                expected: self.n(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Symmetric dense `n × n` pair-coefficient matrix with a zero diagonal.
    pub fn dense_couplings(&self) -> Vec<f64> {
        let n = self.n();
        let mut m = vec![0.0; n * n];
        for (&(i, j), &b) in &self.quadratic {
            m[i * n + j] = b;
            m[j * n + i] = b;
        }
        m
    }
}

/// Incremental single-flip bookkeeping shared by the local-search solvers.
///
/// `field[i] = a_i + Σ_j b_ij x_j`, so flipping `x_i` changes the objective by
/// `field[i]` when turning it on and `-field[i]` when turning it off.
#[derive(Debug, Clone)]
pub(crate) struct FlipState {
    n: usize,
    couplings: Vec<f64>,
    field: Vec<f64>,
    pub(crate) x: Assignment,
    pub(crate) value: f64,
}

impl FlipState {
    pub(crate) fn new(model: &QuboModel, x: Assignment) -> Self {
        let n = model.n();
        let couplings = model.dense_couplings();
        let mut field = model.linear.clone();
        for j in x.ones() {
            for (i, f) in field.iter_mut().enumerate() {
                *f += couplings[i * n + j];
            }
        }
        let value = model.evaluate_unchecked(&x);
        Self {
            n,
            couplings,
            field,
            x,
            value,
        }
    }

    pub(crate) fn delta(&self, i: usize) -> f64 {
        if self.x.get(i) {
            -self.field[i]
        } else {
            self.field[i]
        }
    }

    pub(crate) fn flip(&mut self, i: usize) {
        let d = self.delta(i);
        let sign = if self.x.get(i) { -1.0 } else { 1.0 };
        self.x.flip(i);
        self.value += d;
        let row = &self.couplings[i * self.n..(i + 1) * self.n];
        for (f, &c) in self.field.iter_mut().zip(row) {
            *f += sign * c;
        }
    }
}
