use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub class: u8,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: usize,
}

/// Binary classification report; undefined ratios are reported as 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub classes: Vec<ClassMetrics>,
    pub accuracy: f64,
}

impl ClassReport {
    pub fn from_predictions(truth: &[u8], predicted: &[u8]) -> Self {
        assert_eq!(truth.len(), predicted.len());
        let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        let classes = [0u8, 1]
            .iter()
            .map(|&c| {
                let tp = truth.iter().zip(predicted).filter(|(t, p)| **t == c && **p == c).count();
                let predicted_c = predicted.iter().filter(|&&p| p == c).count();
                let support = truth.iter().filter(|&&t| t == c).count();
                let (precision, recall) = (ratio(tp, predicted_c), ratio(tp, support));
                let f1 = if precision + recall > 0.0 { 2.0 * precision * recall / (precision + recall) } else { 0.0 };
                ClassMetrics { class: c, precision, recall, f1, support }
            })
            .collect();
        let correct = truth.iter().zip(predicted).filter(|(t, p)| t == p).count();
        Self { classes, accuracy: ratio(correct, truth.len()) }
    }

    pub fn class(&self, c: u8) -> &ClassMetrics {
        &self.classes[c as usize]
    }
}

impl std::fmt::Display for ClassReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "class  precision  recall  f1-score  support")?;
        for m in &self.classes {
            writeln!(f, "{:>5}  {:>9.2}  {:>6.2}  {:>8.2}  {:>7}", m.class, m.precision, m.recall, m.f1, m.support)?;
        }
        write!(f, "accuracy {:.4}", self.accuracy)
    }
}
