use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{LossKind, QnnError, Result};

/// Classical `d → 1 → 1` network with tanh on both units: `d + 3` parameters.
///
/// Parameter layout: input weights `0..d`, hidden bias `d`, output weight
/// `d + 1`, output bias `d + 2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpBaseline {
    pub input_dim: usize,
    pub loss: LossKind,
    pub seed: u64,
}

impl MlpBaseline {
    /// 8×8 inputs, 67 parameters.
    pub fn nn1() -> Self {
        Self { input_dim: 64, loss: LossKind::Hinge, seed: 0 }
    }

    /// 16×16 inputs, 259 parameters.
    pub fn nn2() -> Self {
        Self { input_dim: 256, loss: LossKind::Hinge, seed: 0 }
    }

    pub fn param_count(&self) -> usize {
        self.input_dim + 3
    }

    pub fn init_params(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let d = self.input_dim;
        let bound = (6.0 / (d as f64 + 1.0)).sqrt();
        let mut p: Vec<f64> = (0..d).map(|_| rng.gen_range(-bound..bound)).collect();
        p.push(0.0);
        p.push(rng.gen_range(-1.0..1.0));
        p.push(0.0);
        p
    }

    fn check(&self, params: &[f64], x: &[f64]) -> Result<()> {
        if params.len() != self.param_count() {
            return Err(QnnError::AngleCount { expected: self.param_count(), got: params.len() });
        }
        if x.len() != self.input_dim {
            return Err(QnnError::Dimension { expected: self.input_dim, got: x.len() });
        }
        Ok(())
    }

    pub fn forward(&self, params: &[f64], x: &[f64]) -> Result<f64> {
        self.check(params, x)?;
        Ok(self.forward_with_gradient(params, x).0)
    }

    /// Output and its gradient by backpropagation.
    pub fn forward_with_gradient(&self, params: &[f64], x: &[f64]) -> (f64, Vec<f64>) {
        let d = self.input_dim;
        let z: f64 = params[..d].iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + params[d];
        let h = z.tanh();
        let out = (params[d + 1] * h + params[d + 2]).tanh();
        let dout = 1.0 - out * out;
        let dz = dout * params[d + 1] * (1.0 - h * h);
        let mut grad: Vec<f64> = x.iter().map(|v| dz * v).collect();
        grad.extend([dz, dout * h, dout]);
        (out, grad)
    }
}
