use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{Assignment, QuboError, QuboModel, Result};

/// Spin form of a QUBO: `E(s) = offset + Σ h_i s_i + Σ_{i<j} J_ij s_i s_j`, `s_i ∈ {-1, +1}`.
///
/// Spin `s_i = +1` corresponds to bit `x_i = 1` (`x = (1 + s) / 2`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsingModel {
    pub field: Vec<f64>,
    pub coupling: BTreeMap<(usize, usize), f64>,
    pub offset: f64,
}

impl IsingModel {
    pub fn n(&self) -> usize {
        self.field.len()
    }

    pub fn energy(&self, spins: &[i8]) -> Result<f64> {
        if spins.len() != self.n() {
            return Err(QuboError::DimensionMismatch {
                expected: self.n(),
                got: spins.len(),
            });
        }
        let s = |i: usize| f64::from(spins[i]);
        let mut e = self.offset;
        for (i, &h) in self.field.iter().enumerate() {
            e += h * s(i);
        }
        for (&(i, j), &jij) in &self.coupling {
            e += jij * s(i) * s(j);
        }
        Ok(e)
    }

    pub fn spins_of(x: &Assignment) -> Vec<i8> {
        x.bits().iter().map(|&b| if b { 1 } else { -1 }).collect()
    }
}

impl QuboModel {
    /// Exact spin form under `x_i = (1 + s_i) / 2`:
    /// `h_i = a_i/2 + Σ_j b_ij/4`, `J_ij = b_ij/4`, `offset = c + Σ a_i/2 + Σ b_ij/4`.
    pub fn to_ising(&self) -> IsingModel {
        let mut field: Vec<f64> = self.linear().iter().map(|a| a / 2.0).collect();
        let mut offset = self.offset() + self.linear().iter().sum::<f64>() / 2.0;
        let mut coupling = BTreeMap::new();
        for (&(i, j), &b) in self.quadratic() {
            field[i] += b / 4.0;
            field[j] += b / 4.0;
            offset += b / 4.0;
            coupling.insert((i, j), b / 4.0);
        }
        IsingModel {
            field,
            coupling,
            offset,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_variable_example() {
        let q = QuboModel::from_terms(vec![2.0, 0.0], [(0, 1, 4.0)]).unwrap();
        let ising = q.to_ising();
        assert_eq!(ising.offset, 2.0);
        assert_eq!(ising.field, vec![2.0, 1.0]);
        assert_eq!(ising.coupling.get(&(0, 1)), Some(&1.0));
        for code in 0..4 {
            let x = Assignment::decode(code, 2);
            let e = ising.energy(&IsingModel::spins_of(&x)).unwrap();
            assert_eq!(e, q.evaluate(&x).unwrap());
        }
    }

    #[test]
    fn single_variable() {
        let ising = QuboModel::from_terms(vec![1.0], []).unwrap().to_ising();
        assert_eq!(ising.field, vec![0.5]);
        assert_eq!(ising.offset, 0.5);
        assert!(ising.coupling.is_empty());
    }

    #[test]
    fn empty_model() {
        let ising = QuboModel::empty(0).to_ising();
        assert_eq!(ising.offset, 0.0);
        assert!(ising.field.is_empty() && ising.coupling.is_empty());
    }
}
