//! Recursive reduction of multi-controlled gates to singly-controlled ones.
//!
//! With controls `c_1 … c_n`, target `t` and `V² = U`:
//!
//! ```text
//! C^n(U) = C^{n-1}(V)[c_1..c_{n-1} → t] · C^{n-1}(X)[→ c_n] · C_{c_n}(V†)[→ t]
//!          · C^{n-1}(X)[→ c_n] · C_{c_n}(V)[→ t]
//! ```
//!
//! (rightmost applied first). Each level spends two singly-controlled gates
//! and three `(n-1)`-controlled gates, so the number of emitted gates obeys
//! `T(n) = 3·T(n-1) + 2`, `T(1) = 1`, i.e. `T(n) = 2·3^(n-1) - 1`. The figure
//! `2·3^n - 1` sometimes quoted for this construction equals `T(n+1)`: it
//! counts a gate with `n` qubits *including* the target as having `n` controls.

use crate::{GateOp, Result, SingleQubit, StateError};

/// Singly-controlled gates equivalent to `gate` on `target` controlled by all of `controls`.
pub fn decompose_multi_controlled(
    gate: SingleQubit,
    controls: &[usize],
    target: usize,
) -> Result<Vec<GateOp>> {
    if controls.is_empty() {
        return Err(StateError::NoControls);
    }
    for (k, &c) in controls.iter().enumerate() {
        if c == target || controls[..k].contains(&c) {
            return Err(StateError::QubitClash(c));
        }
    }
    let mut out = Vec::with_capacity(decomposition_gate_count(controls.len()) as usize);
    emit(gate, controls, target, &mut out);
    Ok(out)
}

fn emit(gate: SingleQubit, controls: &[usize], target: usize, out: &mut Vec<GateOp>) {
    let (&last, rest) = controls.split_last().expect("non-empty controls");
    if rest.is_empty() {
        out.push(match gate {
            SingleQubit::X => GateOp::CX { control: last, target },
            gate => GateOp::Controlled { gate, control: last, target },
        });
        return;
    }
    let v = gate.sqrt();
    out.push(GateOp::Controlled { gate: v, control: last, target });
    emit(SingleQubit::X, rest, last, out);
    out.push(GateOp::Controlled { gate: v.dagger(), control: last, target });
    emit(SingleQubit::X, rest, last, out);
    emit(v, rest, target, out);
}

/// Singly-controlled gates emitted for `num_controls` controls: `2·3^(n-1) - 1`.
pub fn decomposition_gate_count(num_controls: usize) -> u64 {
    if num_controls == 0 {
        return 0;
    }
    2 * 3u64.pow(num_controls as u32 - 1) - 1
}

/// The count `2·3^n - 1` often quoted for this recursion. It equals
/// [`decomposition_gate_count`] for `n + 1` controls.
pub fn stated_gate_count(n: usize) -> u64 {
    2 * 3u64.pow(n as u32) - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn recursion(n: usize) -> u64 {
        if n == 1 { 1 } else { 3 * recursion(n - 1) + 2 }
    }

    #[test]
    fn counts() {
        assert_eq!(decomposition_gate_count(1), 1);
        assert_eq!(decomposition_gate_count(3), 17);
        for n in 1..=8 {
            assert_eq!(decomposition_gate_count(n), recursion(n));
            let controls: Vec<usize> = (1..=n).collect();
            let ops = decompose_multi_controlled(SingleQubit::RY(0.3), &controls, 0).unwrap();
            assert_eq!(ops.len() as u64, recursion(n));
            assert!(ops
                .iter()
                .all(|op| matches!(op, GateOp::Controlled { .. } | GateOp::CX { .. })));
            assert_eq!(stated_gate_count(n), decomposition_gate_count(n + 1));
        }
    }

    #[test]
    fn rejects_clashes() {
        assert_eq!(
            decompose_multi_controlled(SingleQubit::X, &[0, 1], 1),
            Err(StateError::QubitClash(1))
        );
        assert_eq!(
            decompose_multi_controlled(SingleQubit::X, &[2, 2], 0),
            Err(StateError::QubitClash(2))
        );
        assert_eq!(
            decompose_multi_controlled(SingleQubit::X, &[], 0),
            Err(StateError::NoControls)
        );
    }
}
