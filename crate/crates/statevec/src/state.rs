use num_complex::Complex64;

use crate::{GateOp, Result, SingleQubit, StateError, Unitary2};

/// `2^m` complex amplitudes; qubit `k` is bit `k` of the basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩` on `qubits` qubits.
    pub fn zero(qubits: usize) -> Self {
        Self::basis(qubits, 0)
    }

    pub fn basis(qubits: usize, index: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Self { qubits, amps }
    }

    /// Wraps amplitudes whose squared norm is 1 within 1e-10.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let state = Self::from_raw(amps)?;
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(StateError::NotNormalized(norm));
        }
        Ok(state)
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amps: Vec<Complex64>) -> Result<Self> {
        let mut state = Self::from_raw(amps)?;
        let norm = state.norm_sqr().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(StateError::NotNormalized(norm));
        }
        for a in &mut state.amps {
            *a /= norm;
        }
        Ok(state)
    }

    fn from_raw(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if !len.is_power_of_two() {
            return Err(StateError::Length {
                expected: len.next_power_of_two(),
                got: len,
            });
        }
        Ok(Self {
            qubits: len.trailing_zeros() as usize,
            amps,
        })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Largest per-amplitude deviation; infinite when the sizes differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.amps.len() != other.amps.len() {
            return f64::INFINITY;
        }
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Appends `extra` qubits in `|0⟩` above the existing ones.
    pub fn extended(&self, extra: usize) -> Self {
        let mut amps = self.amps.clone();
        amps.resize(self.amps.len() << extra, Complex64::new(0.0, 0.0));
        Self {
            qubits: self.qubits + extra,
            amps,
        }
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.qubits {
            return Err(StateError::QubitOutOfRange {
                qubit: q,
                qubits: self.qubits,
            });
        }
        Ok(())
    }

    /// `⟨Z_q⟩ = Σ |amp|² · (+1 if bit q is 0 else -1)`.
    pub fn expectation_z(&self, qubit: usize) -> Result<f64> {
        self.check_qubit(qubit)?;
        let bit = 1usize << qubit;
        Ok(self
            .amps
            .iter()
            .enumerate()
            .map(|(i, a)| if i & bit == 0 { a.norm_sqr() } else { -a.norm_sqr() })
            .sum())
    }

    pub fn apply(&mut self, op: &GateOp) -> Result<()> {
        op.validate(self.qubits)?;
        self.apply_unchecked(op);
        Ok(())
    }

    pub fn applied(mut self, op: &GateOp) -> Result<Self> {
        self.apply(op)?;
        Ok(self)
    }

    pub fn apply_xx(&mut self, theta: f64, a: usize, b: usize) -> Result<()> {
        self.apply(&GateOp::XX { theta, a, b })
    }

    pub fn apply_zz(&mut self, theta: f64, a: usize, b: usize) -> Result<()> {
        self.apply(&GateOp::ZZ { theta, a, b })
    }

    /// Applies `gate` to `target` on the subspace where every control is 1,
    /// acting directly on the amplitudes.
    pub fn multi_controlled(
        &mut self,
        gate: SingleQubit,
        controls: &[usize],
        target: usize,
    ) -> Result<()> {
        self.apply(&GateOp::MultiControlled {
            gate,
            controls: controls.to_vec(),
            target,
        })
    }

    /// Gate application without validation. Callers must have validated `op`
    /// against this state's qubit count.
    pub fn apply_unchecked(&mut self, op: &GateOp) {
        match op {
            GateOp::H(q) => self.single(&Unitary2::h(), 0, *q),
            GateOp::X(q) => self.swap_pairs(0, *q),
            GateOp::RY { theta, target } => self.single(&Unitary2::ry(*theta), 0, *target),
            GateOp::CX { control, target } => self.swap_pairs(1 << control, *target),
            GateOp::XX { theta, a, b } => self.xx(*theta, *a, *b),
            GateOp::ZZ { theta, a, b } => self.zz(*theta, *a, *b),
            GateOp::Controlled { gate, control, target } => {
                self.controlled(gate, 1 << control, *target)
            }
            GateOp::MultiControlled { gate, controls, target } => {
                let mask = controls.iter().fold(0usize, |m, c| m | (1 << c));
                self.controlled(gate, mask, *target)
            }
        }
    }

    fn controlled(&mut self, gate: &SingleQubit, mask: usize, target: usize) {
        match gate {
            SingleQubit::X => self.swap_pairs(mask, target),
            g => self.single(&g.matrix(), mask, target),
        }
    }

    /// 2×2 update on `target` restricted to indices containing all bits of `mask`.
    fn single(&mut self, u: &Unitary2, mask: usize, target: usize) {
        let bit = 1usize << target;
        let [[m00, m01], [m10, m11]] = u.0;
        for i in 0..self.amps.len() {
            if i & bit != 0 || i & mask != mask {
                continue;
            }
            let j = i | bit;
            let (a0, a1) = (self.amps[i], self.amps[j]);
            self.amps[i] = m00 * a0 + m01 * a1;
            self.amps[j] = m10 * a0 + m11 * a1;
        }
    }

    fn swap_pairs(&mut self, mask: usize, target: usize) {
        let bit = 1usize << target;
        for i in 0..self.amps.len() {
            if i & bit == 0 && i & mask == mask {
                self.amps.swap(i, i | bit);
            }
        }
    }

    fn xx(&mut self, theta: f64, a: usize, b: usize) {
        let (s, c) = (theta / 2.0).sin_cos();
        let mis = Complex64::new(0.0, -s);
        let (ba, bb) = (1usize << a, 1usize << b);
        let flip = ba | bb;
        for i in 0..self.amps.len() {
            // Visit each {i, i ^ flip} pair once, from the member with bit a clear.
            if i & ba != 0 {
                continue;
            }
            let j = i ^ flip;
            let (x, y) = (self.amps[i], self.amps[j]);
            self.amps[i] = x * c + mis * y;
            self.amps[j] = y * c + mis * x;
        }
    }

    fn zz(&mut self, theta: f64, a: usize, b: usize) {
        let even = Complex64::from_polar(1.0, -theta / 2.0);
        let odd = even.conj();
        for (i, amp) in self.amps.iter_mut().enumerate() {
            let parity = ((i >> a) ^ (i >> b)) & 1;
            *amp *= if parity == 0 { even } else { odd };
        }
    }
}
