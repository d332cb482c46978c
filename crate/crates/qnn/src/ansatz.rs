use std::f64::consts::FRAC_PI_2;

use qbench_statevec::{CircuitProgram, Complex64, GateOp, StateVector};
use rayon::prelude::*;

use crate::{count_params, Arch, ParamVector, QnnConfig, QnnError, Result, Sample};

#[derive(Debug, Clone, Copy)]
struct Slot {
    zz: bool,
    param: usize,
    a: usize,
    b: usize,
}

impl Slot {
    fn op(self, theta: f64) -> GateOp {
        let Slot { a, b, .. } = self;
        if self.zz { GateOp::ZZ { theta, a, b } } else { GateOp::XX { theta, a, b } }
    }
}

fn layer_slots(config: &QnnConfig, layer: usize) -> impl Iterator<Item = Slot> + '_ {
    let (colour, readout) = (config.colour_qubit(), config.readout_qubit());
    let width = config.pixel_qubits();
    (0..width).flat_map(move |p| {
        let param = layer * width + p;
        let (to_readout, to_colour) = match config.arch {
            Arch::Cradl => (layer % 2 == 1, layer % 2 == 1),
            Arch::Craml => (false, true),
        };
        [
            Slot { zz: to_readout, param, a: p, b: readout },
            Slot { zz: to_colour, param, a: p, b: colour },
        ]
    })
}

fn slots(config: &QnnConfig) -> Vec<Slot> {
    (0..config.layers).flat_map(|l| layer_slots(config, l)).collect()
}

/// Gates of one layer, one shared angle per pixel qubit.
///
/// CRADL layers couple each pixel qubit to the readout and then the colour
/// qubit with `XX` on even layers and `ZZ` on odd layers. CRAML layers use
/// `XX` to the readout followed by `ZZ` to the colour qubit.
pub fn build_layer(config: &QnnConfig, layer_index: usize, angles: &[f64]) -> Result<Vec<GateOp>> {
    let width = config.pixel_qubits();
    if angles.len() != width {
        return Err(QnnError::AngleCount { expected: width, got: angles.len() });
    }
    Ok(layer_slots(config, layer_index).map(|s| s.op(angles[s.param - layer_index * width])).collect())
}

/// The full trainable circuit as a program on `total_qubits` qubits.
pub fn ansatz_program(config: &QnnConfig, params: &ParamVector) -> Result<CircuitProgram> {
    check_params(config, params)?;
    let mut program = CircuitProgram::new(config.total_qubits());
    for l in 0..config.layers {
        for op in build_layer(config, l, params.layer(l))? {
            program.push(op)?;
        }
    }
    Ok(program)
}

fn check_params(config: &QnnConfig, params: &ParamVector) -> Result<()> {
    let expected = count_params(config);
    if params.len() != expected {
        return Err(QnnError::AngleCount { expected, got: params.len() });
    }
    Ok(())
}

fn check_input(config: &QnnConfig, params: &ParamVector, encoded: &StateVector) -> Result<()> {
    check_params(config, params)?;
    if encoded.qubits() != config.total_qubits() {
        return Err(QnnError::Dimension { expected: config.total_qubits(), got: encoded.qubits() });
    }
    Ok(())
}

/// Evolves `encoded`, optionally adding `shift` to the angle of one gate occurrence.
fn evolve(slots: &[Slot], angles: &[f64], encoded: &StateVector, shift: Option<(usize, f64)>) -> StateVector {
    let mut state = encoded.clone();
    for (k, slot) in slots.iter().enumerate() {
        let mut theta = angles[slot.param];
        if let Some((at, delta)) = shift {
            if at == k {
                theta += delta;
            }
        }
        state.apply_unchecked(&slot.op(theta));
    }
    state
}

/// `⟨Z⟩` of the readout qubit after all layers. `encoded` must already
/// include the readout qubit.
pub fn forward(config: &QnnConfig, params: &ParamVector, encoded: &StateVector) -> Result<f64> {
    check_input(config, params, encoded)?;
    let state = evolve(&slots(config), &params.angles, encoded, None);
    Ok(state.expectation_z(config.readout_qubit())?)
}

/// `∂⟨Z⟩/∂θ` by the parameter-shift rule: each gate occurrence contributes
/// `(f(θ + π/2) - f(θ - π/2)) / 2`, summed over occurrences sharing a parameter.
pub fn prediction_gradient_shift(
    config: &QnnConfig,
    params: &ParamVector,
    encoded: &StateVector,
) -> Result<Vec<f64>> {
    check_input(config, params, encoded)?;
    let slots = slots(config);
    let readout = config.readout_qubit();
    let mut grad = vec![0.0; params.len()];
    for (k, slot) in slots.iter().enumerate() {
        let plus = evolve(&slots, &params.angles, encoded, Some((k, FRAC_PI_2))).expectation_z(readout)?;
        let minus = evolve(&slots, &params.angles, encoded, Some((k, -FRAC_PI_2))).expectation_z(readout)?;
        grad[slot.param] += (plus - minus) / 2.0;
    }
    Ok(grad)
}

/// Prediction and `∂⟨Z⟩/∂θ` by reverse-mode sweep over the statevector.
///
/// With `ψ_k` the state after gate `k` and `λ_k` the pulled-back observable
/// state `U_{k+1}† … U_L† Z ψ_L`, a gate `exp(-iθ/2 · G)` contributes
/// `Im⟨λ_k|G|ψ_k⟩`. Same value as the shift rule at the cost of about three
/// forward passes.
pub fn adjoint_gradient(
    config: &QnnConfig,
    params: &ParamVector,
    encoded: &StateVector,
) -> Result<(f64, Vec<f64>)> {
    check_input(config, params, encoded)?;
    let slots = slots(config);
    let readout_bit = 1usize << config.readout_qubit();
    let mut psi = evolve(&slots, &params.angles, encoded, None);
    let pred = psi.expectation_z(config.readout_qubit())?;
    let mut lambda = StateVector::from_amplitudes(
        psi.amplitudes()
            .iter()
            .enumerate()
            .map(|(i, &a)| if i & readout_bit == 0 { a } else { -a })
            .collect(),
    )?;
    let mut grad = vec![0.0; params.len()];
    for slot in slots.iter().rev() {
        grad[slot.param] += generator_overlap(*slot, lambda.amplitudes(), psi.amplitudes()).im;
        let undo = slot.op(-params.angles[slot.param]);
        psi.apply_unchecked(&undo);
        lambda.apply_unchecked(&undo);
    }
    Ok((pred, grad))
}

/// `⟨λ|G|ψ⟩` with `G = X_a X_b` or `Z_a Z_b`.
fn generator_overlap(slot: Slot, lambda: &[Complex64], psi: &[Complex64]) -> Complex64 {
    let (ma, mb) = (1usize << slot.a, 1usize << slot.b);
    if slot.zz {
        lambda
            .iter()
            .zip(psi)
            .enumerate()
            .map(|(i, (l, p))| {
                let same = (i & ma == 0) == (i & mb == 0);
                let v = l.conj() * p;
                if same { v } else { -v }
            })
            .sum()
    } else {
        lambda.iter().enumerate().map(|(i, l)| l.conj() * psi[i ^ ma ^ mb]).sum()
    }
}

/// Mean loss of the configured kind over `batch`.
pub fn mean_loss(config: &QnnConfig, params: &ParamVector, batch: &[Sample<StateVector>]) -> Result<f64> {
    if batch.is_empty() {
        return Err(QnnError::EmptyBatch);
    }
    let mut total = 0.0;
    for s in batch {
        total += config.loss.value(forward(config, params, &s.input)?, s.label);
    }
    Ok(total / batch.len() as f64)
}

/// Gradient of the mean batch loss by the parameter-shift rule.
pub fn gradient(config: &QnnConfig, params: &ParamVector, batch: &[Sample<StateVector>]) -> Result<ParamVector> {
    if batch.is_empty() {
        return Err(QnnError::EmptyBatch);
    }
    let per_sample: Vec<Vec<f64>> = batch
        .par_iter()
        .map(|s| {
            let pred = forward(config, params, &s.input)?;
            let dloss = config.loss.derivative(pred, s.label);
            Ok(prediction_gradient_shift(config, params, &s.input)?.into_iter().map(|g| g * dloss).collect())
        })
        .collect::<Result<_>>()?;
    let mut total = vec![0.0; params.len()];
    for g in &per_sample {
        for (t, v) in total.iter_mut().zip(g) {
            *t += v / batch.len() as f64;
        }
    }
    ParamVector::from_angles(config, total)
}
