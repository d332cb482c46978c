use std::f64::consts::FRAC_PI_2;

use qbench_statevec::{CircuitProgram, Complex64, GateOp, SingleQubit, StateVector};

use crate::{AngleField, BinaryImage, ImageError, Result};

/// Position qubits used for a binary image under either encoding.
pub fn position_qubits(side: usize, compressed: bool) -> usize {
    let full = 2 * side.trailing_zeros() as usize;
    if compressed { full - 2 } else { full }
}

/// FRQI state: `2^-n Σ_q |q⟩ ⊗ (cos θ_q |0⟩ + sin θ_q |1⟩)`.
pub fn frqi_state(img: &BinaryImage) -> Result<StateVector> {
    frqi_state_from_angles(&AngleField::from_binary(img))
}

pub fn frqi_state_from_angles(field: &AngleField) -> Result<StateVector> {
    Ok(colour_state(field.angles(), 1.0 / field.side() as f64)?)
}

fn colour_state(angles: &[f64], scale: f64) -> qbench_statevec::Result<StateVector> {
    let positions = angles.len();
    let mut amps = vec![Complex64::new(0.0, 0.0); 2 * positions];
    for (q, &theta) in angles.iter().enumerate() {
        // exact for binary pixels: cos(π/2) would leave a 6e-17 residue
        let (s, c) = if theta == FRAC_PI_2 { (1.0, 0.0) } else { theta.sin_cos() };
        amps[q] = Complex64::new(c * scale, 0.0);
        amps[q + positions] = Complex64::new(s * scale, 0.0);
    }
    StateVector::from_amplitudes(amps)
}

/// Folded colour angle `(π/2)(colour + a/2 + b/4)`, where `a` and `b` are the
/// two position bits absorbed into the colour qubit (`b` least significant).
pub fn compressed_angle(colour: bool, a: bool, b: bool) -> f64 {
    FRAC_PI_2 * (colour as u8 as f64 + a as u8 as f64 / 2.0 + b as u8 as f64 / 4.0)
}

/// Colour angle per retained prefix `p = q >> 2`.
///
/// The four folded vectors `(cos θ̃, sin θ̃)` of a prefix are summed and the
/// sum is renormalized to unit length; its direction is returned.
pub fn compressed_angles(img: &BinaryImage) -> Result<Vec<f64>> {
    if img.side() < 4 {
        return Err(ImageError::TooSmall(img.side()));
    }
    let bits = img.bits();
    Ok((0..bits.len() / 4)
        .map(|p| {
            let (mut sin, mut cos) = (0.0, 0.0);
            for low in 0..4 {
                let theta = compressed_angle(bits[4 * p + low] == 1, low & 2 != 0, low & 1 != 0);
                sin += theta.sin();
                cos += theta.cos();
            }
            sin.atan2(cos)
        })
        .collect())
}

/// Compressed FRQI on `2n - 2` position qubits plus the colour qubit.
pub fn compressed_state(img: &BinaryImage) -> Result<StateVector> {
    let angles = compressed_angles(img)?;
    let scale = 1.0 / (angles.len() as f64).sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); 2 * angles.len()];
    for (p, &phi) in angles.iter().enumerate() {
        let (s, c) = phi.sin_cos();
        amps[p] = Complex64::new(c * scale, 0.0);
        amps[p + angles.len()] = Complex64::new(s * scale, 0.0);
    }
    Ok(StateVector::normalized(amps)?)
}

/// Preparation circuit: Hadamards on every position qubit, then for each
/// position with a nonzero angle θ an X-conjugated multi-controlled `RY(2θ)`
/// on the colour qubit. The X gates flip the position qubits whose bit is 0
/// so that the controls select exactly that position.
pub fn encode_circuit(img: &BinaryImage, compressed: bool) -> Result<CircuitProgram> {
    let angles = if compressed {
        compressed_angles(img)?
    } else {
        AngleField::from_binary(img).angles().to_vec()
    };
    let positions = angles.len().trailing_zeros() as usize;
    let colour = positions;
    let mut program = CircuitProgram::new(positions + 1);
    let controls: Vec<usize> = (0..positions).collect();
    for q in 0..positions {
        program.push(GateOp::H(q))?;
    }
    for (q, &theta) in angles.iter().enumerate() {
        if theta == 0.0 {
            continue;
        }
        let flips: Vec<usize> = (0..positions).filter(|k| q >> k & 1 == 0).collect();
        for &k in &flips {
            program.push(GateOp::X(k))?;
        }
        let gate = SingleQubit::RY(2.0 * theta);
        program.push(if positions == 0 {
            GateOp::RY { theta: 2.0 * theta, target: colour }
        } else {
            GateOp::MultiControlled { gate, controls: controls.clone(), target: colour }
        })?;
        for &k in &flips {
            program.push(GateOp::X(k))?;
        }
    }
    Ok(program)
}
