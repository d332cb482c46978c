use qbench_qimage::BinaryImage;
use qbench_statevec::StateVector;
use serde::{Deserialize, Serialize};

use crate::{QnnError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arch {
    /// Alternating layers: all-XX, then all-ZZ.
    Cradl,
    /// Every layer mixes XX (to the readout) and ZZ (to the colour qubit).
    Craml,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LossKind {
    Hinge,
    Mse,
}

impl LossKind {
    pub fn value(self, pred: f64, label: f64) -> f64 {
        match self {
            LossKind::Hinge => (1.0 - label * pred).max(0.0),
            LossKind::Mse => (pred - label).powi(2),
        }
    }

    /// Derivative in `pred`; the hinge takes the zero branch at its kink.
    pub fn derivative(self, pred: f64, label: f64) -> f64 {
        match self {
            LossKind::Hinge => {
                if 1.0 - label * pred > 0.0 { -label } else { 0.0 }
            }
            LossKind::Mse => 2.0 * (pred - label),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QnnConfig {
    pub image_side: usize,
    pub compressed: bool,
    pub layers: usize,
    pub arch: Arch,
    pub loss: LossKind,
    pub seed: u64,
}

impl QnnConfig {
    /// 8×8, uncompressed, 12 CRADL layers.
    pub fn qnn1() -> Self {
        Self { image_side: 8, compressed: false, layers: 12, arch: Arch::Cradl, loss: LossKind::Hinge, seed: 0 }
    }

    /// 8×8, compressed, 16 CRADL layers.
    pub fn qnn2() -> Self {
        Self { image_side: 8, compressed: true, layers: 16, arch: Arch::Cradl, loss: LossKind::Hinge, seed: 0 }
    }

    /// 16×16, compressed, 42 CRAML layers.
    pub fn qnn3() -> Self {
        Self { image_side: 16, compressed: true, layers: 42, arch: Arch::Craml, loss: LossKind::Hinge, seed: 0 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.layers == 0 {
            return Err(QnnError::InvalidConfig("at least one layer is required".into()));
        }
        let side = self.image_side;
        if side < 2 || !side.is_power_of_two() {
            return Err(QnnError::InvalidConfig(format!("image side {side} is not a power of two >= 2")));
        }
        if self.compressed && side < 4 {
            return Err(QnnError::InvalidConfig("compressed encoding needs a side of at least 4".into()));
        }
        Ok(())
    }

    pub fn pixel_qubits(&self) -> usize {
        qbench_qimage::position_qubits(self.image_side, self.compressed)
    }

    pub fn colour_qubit(&self) -> usize {
        self.pixel_qubits()
    }

    pub fn readout_qubit(&self) -> usize {
        self.pixel_qubits() + 1
    }

    pub fn total_qubits(&self) -> usize {
        self.pixel_qubits() + 2
    }

    /// Encoded image with the readout qubit appended in `|0⟩`.
    pub fn encode(&self, img: &BinaryImage) -> Result<StateVector> {
        if img.side() != self.image_side {
            return Err(QnnError::Dimension { expected: self.image_side, got: img.side() });
        }
        let state = if self.compressed {
            qbench_qimage::compressed_state(img)?
        } else {
            qbench_qimage::frqi_state(img)?
        };
        Ok(state.extended(1))
    }
}

/// Trainable angles: `layers × pixel qubits`.
pub fn count_params(config: &QnnConfig) -> usize {
    config.layers * config.pixel_qubits()
}

/// Layer-major angles: `angles[layer · width + pixel]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamVector {
    pub layers: usize,
    pub width: usize,
    pub angles: Vec<f64>,
}

impl ParamVector {
    pub fn zeros(config: &QnnConfig) -> Self {
        Self::from_angles(config, vec![0.0; count_params(config)]).unwrap()
    }

    pub fn from_angles(config: &QnnConfig, angles: Vec<f64>) -> Result<Self> {
        let expected = count_params(config);
        if angles.len() != expected {
            return Err(QnnError::AngleCount { expected, got: angles.len() });
        }
        Ok(Self { layers: config.layers, width: config.pixel_qubits(), angles })
    }

    pub fn layer(&self, index: usize) -> &[f64] {
        &self.angles[index * self.width..(index + 1) * self.width]
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_parameter_counts() {
        assert_eq!(count_params(&QnnConfig::qnn1()), 72);
        assert_eq!(count_params(&QnnConfig::qnn2()), 64);
        assert_eq!(count_params(&QnnConfig::qnn3()), 252);
        assert_eq!(QnnConfig::qnn1().total_qubits(), 8);
        assert_eq!(QnnConfig::qnn2().total_qubits(), 6);
    }

    #[test]
    fn rejects_bad_configs() {
        let mut c = QnnConfig::qnn2();
        c.layers = 0;
        assert!(c.validate().is_err());
        let mut c = QnnConfig::qnn2();
        c.image_side = 2;
        assert!(c.validate().is_err());
        c.compressed = false;
        assert!(c.validate().is_ok());
        c.image_side = 6;
        assert!(c.validate().is_err());
    }
}
