use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{Assignment, QuboError, QuboModel, Result};

/// The model left over after provisionally fixing some variables.
///
/// Local variable `k` of [`SubQubo::model`] is parent variable `free[k]`.
/// For every assignment `y` of the free set,
/// `model(y) + constant == parent(merge(y))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubQubo {
    pub free: Vec<usize>,
    pub model: QuboModel,
    pub constant: f64,
    fixed: BTreeMap<usize, bool>,
}

impl SubQubo {
    /// Parent-dimension assignment combining `y` on the free set with the fixed values.
    pub fn merge(&self, y: &Assignment) -> Result<Assignment> {
        self.model.check_dim(y)?;
        let n = self.free.len() + self.fixed.len();
        let mut x = Assignment::zeros(n);
        for (&i, &v) in &self.fixed {
            x.set(i, v);
        }
        for (k, &i) in self.free.iter().enumerate() {
            x.set(i, y.get(k));
        }
        Ok(x)
    }

    /// Restriction of a parent assignment to the free variables.
    pub fn restrict(&self, x: &Assignment) -> Assignment {
        Assignment::from_bools(self.free.iter().map(|&i| x.get(i)).collect())
    }

    pub fn fixed(&self) -> &BTreeMap<usize, bool> {
        &self.fixed
    }
}

impl QuboModel {
    /// Fixes the listed variables and folds their contribution into the
    /// remaining linear terms and a constant.
    ///
    /// Free variable `i` gets `c_i = a_i + Σ_{j fixed} b_ij x̂_j`; the constant is
    /// the objective restricted to the fixed variables (plus the model offset).
    pub fn fix_variables(&self, fixed: &BTreeMap<usize, u8>) -> Result<SubQubo> {
        let n = self.n();
        let mut is_fixed: Vec<Option<bool>> = vec![None; n];
        for (&index, &value) in fixed {
            if index >= n {
                return Err(QuboError::IndexOutOfRange { index, n });
            }
            is_fixed[index] = Some(match value {
                0 => false,
                1 => true,
                _ => return Err(QuboError::NonBinary { index, value }),
            });
        }

        let free: Vec<usize> = (0..n).filter(|&i| is_fixed[i].is_none()).collect();
        let mut local = vec![usize::MAX; n];
        for (k, &i) in free.iter().enumerate() {
            local[i] = k;
        }

        let mut c: Vec<f64> = free.iter().map(|&i| self.linear()[i]).collect();
        let mut constant = self.offset();
        for (i, v) in is_fixed.iter().enumerate() {
            if *v == Some(true) {
                constant += self.linear()[i];
            }
        }
        let mut pairs = Vec::new();
        for (&(i, j), &b) in self.quadratic() {
            match (is_fixed[i], is_fixed[j]) {
                (None, None) => pairs.push((local[i], local[j], b)),
                (None, Some(true)) => c[local[i]] += b,
                (Some(true), None) => c[local[j]] += b,
                (Some(true), Some(true)) => constant += b,
                _ => {}
            }
        }

        Ok(SubQubo {
            free,
            model: QuboModel::from_terms(c, pairs)?,
            constant,
            fixed: is_fixed
                .into_iter()
                .enumerate()
                .filter_map(|(i, v)| v.map(|v| (i, v)))
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_var() -> QuboModel {
        QuboModel::from_terms(vec![2.0, 0.0], [(0, 1, 4.0)]).unwrap()
    }

    #[test]
    fn fixing_nothing_is_identity() {
        let model = QuboModel::random_dense(5, -5.0, 5.0, 1);
        let sub = model.fix_variables(&BTreeMap::new()).unwrap();
        assert_eq!(sub.model, model);
        assert_eq!(sub.constant, 0.0);
        assert_eq!(sub.free, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn fix_one_of_two() {
        let sub = two_var().fix_variables(&BTreeMap::from([(1, 1)])).unwrap();
        assert_eq!(sub.free, vec![0]);
        assert_eq!(sub.model.linear(), &[6.0]);
        assert_eq!(sub.constant, 0.0);
        let y = Assignment::from_bits(&[1]).unwrap();
        assert_eq!(sub.model.evaluate(&y).unwrap() + sub.constant, 6.0);
        assert_eq!(sub.merge(&y).unwrap(), Assignment::from_bits(&[1, 1]).unwrap());
    }

    #[test]
    fn fix_everything() {
        let model = QuboModel::random_dense(4, -5.0, 5.0, 9);
        let fixed = BTreeMap::from([(0, 1), (1, 0), (2, 1), (3, 1)]);
        let sub = model.fix_variables(&fixed).unwrap();
        assert_eq!(sub.model.n(), 0);
        let x = Assignment::from_bits(&[1, 0, 1, 1]).unwrap();
        assert!((sub.constant - model.evaluate(&x).unwrap()).abs() < 1e-12);
        assert_eq!(sub.merge(&Assignment::zeros(0)).unwrap(), x);
    }

    #[test]
    fn fix_errors() {
        let model = two_var();
        assert_eq!(
            model.fix_variables(&BTreeMap::from([(2, 1)])).unwrap_err(),
            QuboError::IndexOutOfRange { index: 2, n: 2 }
        );
        assert_eq!(
            model.fix_variables(&BTreeMap::from([(0, 3)])).unwrap_err(),
            QuboError::NonBinary { index: 0, value: 3 }
        );
    }
}
