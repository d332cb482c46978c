use std::collections::BTreeSet;

use crate::{CreditError, RawCreditRecord, Result, ATTRIBUTES};

/// Row-major design matrix with named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    pub names: Vec<String>,
    /// Source attribute index of each column.
    pub groups: Vec<usize>,
    /// `rows × names.len()` values.
    pub values: Vec<Vec<f64>>,
    pub labels: Vec<u8>,
}

impl FeatureMatrix {
    pub fn rows(&self) -> usize {
        self.values.len()
    }

    pub fn cols(&self) -> usize {
        self.names.len()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.values.iter().map(|r| r[j]).collect()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| CreditError::UnknownFeature(name.into()))
    }

    /// Keeps only `cols`, in the given order.
    pub fn restrict(&self, cols: &[usize]) -> Self {
        Self {
            names: cols.iter().map(|&j| self.names[j].clone()).collect(),
            groups: cols.iter().map(|&j| self.groups[j]).collect(),
            values: self.values.iter().map(|r| cols.iter().map(|&j| r[j]).collect()).collect(),
            labels: self.labels.clone(),
        }
    }
}

/// One column per observed code of each categorical attribute (named
/// `attribute=code`, codes in sorted order) and one z-scored column per numeric
/// attribute (population standard deviation; constant columns become zeros).
pub fn one_hot_standardize(records: &[RawCreditRecord]) -> Result<FeatureMatrix> {
    if records.is_empty() {
        return Err(CreditError::Empty);
    }
    let rows = records.len();
    let mut names = Vec::new();
    let mut groups = Vec::new();
    let mut columns: Vec<Vec<f64>> = Vec::new();
    for (k, (name, numeric)) in ATTRIBUTES.iter().enumerate() {
        if *numeric {
            let raw: Vec<f64> = records.iter().map(|r| r.attributes[k].parse().unwrap_or(f64::NAN)).collect();
            if raw.iter().any(|v| !v.is_finite()) {
                return Err(CreditError::Parse { line: 0, msg: format!("{name} has a non-numeric value") });
            }
            names.push(name.to_string());
            groups.push(k);
            columns.push(standardize(&raw));
        } else {
            let codes: BTreeSet<&str> = records.iter().map(|r| r.attributes[k].as_str()).collect();
            for code in codes {
                names.push(format!("{name}={code}"));
                groups.push(k);
                columns.push(records.iter().map(|r| (r.attributes[k] == code) as u8 as f64).collect());
            }
        }
    }
    let values = (0..rows).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
    Ok(FeatureMatrix { names, groups, values, labels: records.iter().map(|r| r.label).collect() })
}

fn standardize(x: &[f64]) -> Vec<f64> {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let sd = (x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
    if sd == 0.0 {
        return vec![0.0; x.len()];
    }
    x.iter().map(|v| (v - mean) / sd).collect()
}

/// Pearson correlation between the listed columns; a constant column has zero
/// correlation with everything except itself.
pub fn pearson_correlation(m: &FeatureMatrix, cols: &[usize]) -> Vec<Vec<f64>> {
    let centred: Vec<Vec<f64>> = cols
        .iter()
        .map(|&j| {
            let c = m.column(j);
            let mean = c.iter().sum::<f64>() / c.len() as f64;
            c.into_iter().map(|v| v - mean).collect()
        })
        .collect();
    let norms: Vec<f64> = centred.iter().map(|c| c.iter().map(|v| v * v).sum::<f64>().sqrt()).collect();
    let k = cols.len();
    let mut out = vec![vec![0.0; k]; k];
    for a in 0..k {
        out[a][a] = 1.0;
        for b in a + 1..k {
            let r = if norms[a] == 0.0 || norms[b] == 0.0 {
                0.0
            } else {
                centred[a].iter().zip(&centred[b]).map(|(x, y)| x * y).sum::<f64>() / (norms[a] * norms[b])
            };
            out[a][b] = r;
            out[b][a] = r;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(checking: &str, duration: &str, label: u8) -> RawCreditRecord {
        let mut attributes: Vec<String> = ATTRIBUTES
            .iter()
            .map(|(_, numeric)| if *numeric { "1".to_string() } else { "A".to_string() })
            .collect();
        attributes[0] = checking.into();
        attributes[1] = duration.into();
        RawCreditRecord { attributes, label }
    }

    #[test]
    fn one_hot_groups_and_scaling() {
        let recs: Vec<_> = ["A11", "A12", "A13", "A14", "A12"]
            .iter()
            .zip(["6", "12", "18", "24", "30"])
            .map(|(c, d)| record(c, d, 0))
            .collect();
        let m = one_hot_standardize(&recs).unwrap();
        let checking: Vec<usize> = (0..m.cols()).filter(|&j| m.groups[j] == 0).collect();
        assert_eq!(checking.len(), 4);
        assert_eq!(m.names[checking[1]], "checking_status=A12");
        for row in &m.values {
            assert_eq!(checking.iter().map(|&j| row[j]).sum::<f64>(), 1.0);
        }
        let d = m.column(m.index_of("duration").unwrap());
        assert!(d.iter().sum::<f64>().abs() < 1e-12);
        assert!((d.iter().map(|v| v * v).sum::<f64>() / 5.0 - 1.0).abs() < 1e-12);
        // every other numeric attribute is constant
        assert!(m.column(m.index_of("age").unwrap()).iter().all(|&v| v == 0.0));
        assert!(matches!(one_hot_standardize(&[]), Err(CreditError::Empty)));
    }

    #[test]
    fn correlation_by_hand() {
        let m = FeatureMatrix {
            names: vec!["a".into(), "b".into(), "c".into(), "k".into()],
            groups: vec![0, 1, 2, 3],
            values: vec![vec![1.0, 2.0, 1.0, 5.0], vec![2.0, 4.0, 0.0, 5.0], vec![3.0, 6.0, 1.0, 5.0]],
            labels: vec![0, 1, 0],
        };
        let r = pearson_correlation(&m, &[0, 1, 2, 3]);
        assert!((r[0][1] - 1.0).abs() < 1e-12);
        assert!(r[0][2].abs() < 1e-12);
        assert_eq!(r[3][0], 0.0);
        assert_eq!(r[3][3], 1.0);
    }
}
