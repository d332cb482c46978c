use crate::{Result, StateError, Unitary2};

/// Single-qubit operation that can stand alone or sit under controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SingleQubit {
    H,
    X,
    RY(f64),
    U(Unitary2),
}

impl SingleQubit {
    pub fn matrix(&self) -> Unitary2 {
        match *self {
            Self::H => Unitary2::h(),
            Self::X => Unitary2::x(),
            Self::RY(theta) => Unitary2::ry(theta),
            Self::U(u) => u,
        }
    }

    pub fn dagger(&self) -> Self {
        match *self {
            Self::H | Self::X => *self,
            Self::RY(theta) => Self::RY(-theta),
            Self::U(u) => Self::U(u.dagger()),
        }
    }

    /// A square root of the gate, kept symbolic where possible.
    pub fn sqrt(&self) -> Self {
        match *self {
            Self::RY(theta) => Self::RY(theta / 2.0),
            other => Self::U(other.matrix().sqrt()),
        }
    }

    fn check(&self) -> Result<()> {
        let finite = match self {
            Self::RY(theta) => theta.is_finite(),
            Self::U(u) => u.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite()),
            _ => true,
        };
        if finite {
            Ok(())
        } else {
            Err(StateError::NonFiniteAngle)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GateOp {
    H(usize),
    X(usize),
    RY { theta: f64, target: usize },
    CX { control: usize, target: usize },
    /// `exp(-iθ/2 · X_a X_b)`
    XX { theta: f64, a: usize, b: usize },
    /// `exp(-iθ/2 · Z_a Z_b)`
    ZZ { theta: f64, a: usize, b: usize },
    /// Single-qubit gate applied to `target` iff `control` is 1. This is the
    /// elementary gate emitted by multi-controlled decomposition.
    Controlled { gate: SingleQubit, control: usize, target: usize },
    /// Single-qubit gate applied to `target` iff every control is 1.
    MultiControlled { gate: SingleQubit, controls: Vec<usize>, target: usize },
}

impl GateOp {
    /// Every qubit the gate touches, controls first.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Self::H(q) | Self::X(q) | Self::RY { target: q, .. } => vec![*q],
            Self::CX { control, target } | Self::Controlled { control, target, .. } => {
                vec![*control, *target]
            }
            Self::XX { a, b, .. } | Self::ZZ { a, b, .. } => vec![*a, *b],
            Self::MultiControlled { controls, target, .. } => {
                let mut q = controls.clone();
                q.push(*target);
                q
            }
        }
    }

    /// Checks index bounds, distinctness and finite parameters.
    pub fn validate(&self, qubits: usize) -> Result<()> {
        let touched = self.qubits();
        for (k, &q) in touched.iter().enumerate() {
            if q >= qubits {
                return Err(StateError::QubitOutOfRange { qubit: q, qubits });
            }
            if touched[..k].contains(&q) {
                return Err(StateError::QubitClash(q));
            }
        }
        match self {
            Self::RY { theta, .. } | Self::XX { theta, .. } | Self::ZZ { theta, .. }
                if !theta.is_finite() =>
            {
                Err(StateError::NonFiniteAngle)
            }
            Self::MultiControlled { controls, .. } if controls.is_empty() => {
                Err(StateError::NoControls)
            }
            Self::Controlled { gate, .. } | Self::MultiControlled { gate, .. } => gate.check(),
            _ => Ok(()),
        }
    }

    pub fn dagger(&self) -> Self {
        match self {
            Self::RY { theta, target } => Self::RY { theta: -theta, target: *target },
            Self::XX { theta, a, b } => Self::XX { theta: -theta, a: *a, b: *b },
            Self::ZZ { theta, a, b } => Self::ZZ { theta: -theta, a: *a, b: *b },
            Self::Controlled { gate, control, target } => Self::Controlled {
                gate: gate.dagger(),
                control: *control,
                target: *target,
            },
            Self::MultiControlled { gate, controls, target } => Self::MultiControlled {
                gate: gate.dagger(),
                controls: controls.clone(),
                target: *target,
            },
            other => other.clone(),
        }
    }
}
