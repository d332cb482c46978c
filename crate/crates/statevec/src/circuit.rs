use std::fmt::Write as _;

use num_complex::Complex64;

use crate::{decompose_multi_controlled, GateOp, Result, SingleQubit, StateError, StateVector, Unitary2};

/// Ordered gate list on a fixed number of qubits.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CircuitProgram {
    pub qubits: usize,
    pub ops: Vec<GateOp>,
}

impl CircuitProgram {
    pub fn new(qubits: usize) -> Self {
        Self { qubits, ops: Vec::new() }
    }

    pub fn push(&mut self, op: GateOp) -> Result<()> {
        op.validate(self.qubits)?;
        self.ops.push(op);
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.ops.iter().try_for_each(|op| op.validate(self.qubits))
    }

    /// Simulates the program from `|0…0⟩`.
    pub fn run(&self) -> Result<StateVector> {
        self.run_on(StateVector::zero(self.qubits))
    }

    pub fn run_on(&self, mut state: StateVector) -> Result<StateVector> {
        if state.qubits() != self.qubits {
            return Err(StateError::Dimension(format!(
                "program has {} qubits, state has {}",
                self.qubits,
                state.qubits()
            )));
        }
        self.validate()?;
        for op in &self.ops {
            state.apply_unchecked(op);
        }
        Ok(state)
    }

    /// Same program with every multi-controlled gate replaced by its
    /// singly-controlled decomposition.
    pub fn decomposed(&self) -> Result<Self> {
        let mut out = Self::new(self.qubits);
        for op in &self.ops {
            match op {
                GateOp::MultiControlled { gate, controls, target } => {
                    out.ops.extend(decompose_multi_controlled(*gate, controls, *target)?)
                }
                other => out.ops.push(other.clone()),
            }
        }
        Ok(out)
    }

    pub fn count_where(&self, pred: impl Fn(&GateOp) -> bool) -> usize {
        self.ops.iter().filter(|op| pred(op)).count()
    }

    /// Text dump, one op per line after a `qubits <m>` header.
    ///
    /// ```text
    /// qubits 3
    /// H 0
    /// CX 0 1
    /// XX 0.7853981633974483 2 0
    /// MCRY 3.141592653589793 2 0 1
    /// ```
    ///
    /// Angles print in shortest round-trip form, so parsing a dump reproduces
    /// the program bit for bit. Multi-controlled lines list the target before
    /// the controls. A singly-controlled `X` is written as `CX`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        writeln!(s, "qubits {}", self.qubits).unwrap();
        for op in &self.ops {
            let line = match op {
                GateOp::H(q) => format!("H {q}"),
                GateOp::X(q) => format!("X {q}"),
                GateOp::RY { theta, target } => format!("RY {theta} {target}"),
                GateOp::CX { control, target } => format!("CX {control} {target}"),
                GateOp::XX { theta, a, b } => format!("XX {theta} {a} {b}"),
                GateOp::ZZ { theta, a, b } => format!("ZZ {theta} {a} {b}"),
                GateOp::Controlled { gate, control, target } => {
                    format!("C{} {control} {target}", gate_token(gate))
                }
                GateOp::MultiControlled { gate, controls, target } => {
                    let cs: Vec<String> = controls.iter().map(|c| c.to_string()).collect();
                    format!("MC{} {target} {}", gate_token(gate), cs.join(" "))
                }
            };
            s.push_str(&line);
            s.push('\n');
        }
        s
    }
}

fn gate_token(gate: &SingleQubit) -> String {
    match gate {
        SingleQubit::H => "H".into(),
        SingleQubit::X => "X".into(),
        SingleQubit::RY(theta) => format!("RY {theta}"),
        SingleQubit::U(u) => {
            let parts: Vec<String> = u
                .0
                .iter()
                .flatten()
                .flat_map(|z| [z.re.to_string(), z.im.to_string()])
                .collect();
            format!("U {}", parts.join(" "))
        }
    }
}

/// Parses the format written by [`CircuitProgram::dump`].
pub fn parse_program(text: &str) -> Result<CircuitProgram> {
    let mut program: Option<CircuitProgram> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let err = |msg: String| StateError::Parse { line, msg };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut fields = content.split_whitespace();
        let head = fields.next().unwrap();
        let rest: Vec<&str> = fields.collect();
        let Some(prog) = program.as_mut() else {
            match (head, rest.as_slice()) {
                ("qubits", [m]) => {
                    let m = m.parse().map_err(|_| err(format!("bad qubit count {m:?}")))?;
                    program = Some(CircuitProgram::new(m));
                    continue;
                }
                _ => return Err(err("expected `qubits <m>` header".into())),
            }
        };
        let mut cursor = Cursor { fields: &rest, pos: 0, line };
        let op = match head {
            "H" => GateOp::H(cursor.index()?),
            "X" => GateOp::X(cursor.index()?),
            "RY" => GateOp::RY { theta: cursor.real()?, target: cursor.index()? },
            "CX" => GateOp::CX { control: cursor.index()?, target: cursor.index()? },
            "XX" => GateOp::XX { theta: cursor.real()?, a: cursor.index()?, b: cursor.index()? },
            "ZZ" => GateOp::ZZ { theta: cursor.real()?, a: cursor.index()?, b: cursor.index()? },
            _ if head.starts_with("MC") => {
                let gate = cursor.gate(&head[2..])?;
                let target = cursor.index()?;
                let mut controls = Vec::new();
                while !cursor.done() {
                    controls.push(cursor.index()?);
                }
                GateOp::MultiControlled { gate, controls, target }
            }
            _ if head.starts_with('C') => {
                let gate = cursor.gate(&head[1..])?;
                GateOp::Controlled { gate, control: cursor.index()?, target: cursor.index()? }
            }
            other => return Err(err(format!("unknown gate {other:?}"))),
        };
        if !cursor.done() {
            return Err(err("trailing fields".into()));
        }
        prog.push(op).map_err(|e| err(e.to_string()))?;
    }
    program.ok_or(StateError::Parse {
        line: 0,
        msg: "missing `qubits <m>` header".into(),
    })
}

struct Cursor<'a> {
    fields: &'a [&'a str],
    pos: usize,
    line: usize,
}

impl Cursor<'_> {
    fn next(&mut self) -> Result<&str> {
        let f = self.fields.get(self.pos).ok_or(StateError::Parse {
            line: self.line,
            msg: "missing field".into(),
        })?;
        self.pos += 1;
        Ok(f)
    }

    fn done(&self) -> bool {
        self.pos >= self.fields.len()
    }

    fn index(&mut self) -> Result<usize> {
        let line = self.line;
        let f = self.next()?;
        f.parse().map_err(|_| StateError::Parse { line, msg: format!("bad qubit {f:?}") })
    }

    fn real(&mut self) -> Result<f64> {
        let line = self.line;
        let f = self.next()?;
        f.parse().map_err(|_| StateError::Parse { line, msg: format!("bad number {f:?}") })
    }

    fn gate(&mut self, token: &str) -> Result<SingleQubit> {
        Ok(match token {
            "H" => SingleQubit::H,
            "X" => SingleQubit::X,
            "RY" => SingleQubit::RY(self.real()?),
            "U" => {
                let mut z = [Complex64::new(0.0, 0.0); 4];
                for cell in &mut z {
                    *cell = Complex64::new(self.real()?, self.real()?);
                }
                SingleQubit::U(Unitary2([[z[0], z[1]], [z[2], z[3]]]))
            }
            other => {
                return Err(StateError::Parse {
                    line: self.line,
                    msg: format!("unknown controlled gate {other:?}"),
                })
            }
        })
    }
}
