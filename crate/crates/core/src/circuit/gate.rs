use std::fmt;

use crate::error::{Error, Result};

/// Global qubit index inside a [`Circuit`](super::Circuit).
pub type Qubit = usize;

#[derive(Clone, Debug, PartialEq)]
pub enum GateKind {
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Cnot,
    Cz,
    Swap,
    /// Temporary logical AND: target starts in |0> and ends holding c1 & c2.
    AndCompute,
    /// Measurement based uncomputation of an AND target. Costs no T.
    AndUncompute,
    Toffoli,
    RotZ(f64),
    RotY(f64),
    /// Z basis measurement into the given classical bit.
    Measure(usize),
    ClassicallyControlled { inner: Box<GateKind>, bit: usize },
}

impl GateKind {
    /// (targets, controls) expected by the kind.
    pub fn arity(&self) -> (usize, usize) {
        use GateKind::*;
        match self {
            X | Y | Z | H | S | Sdg | T | Tdg | RotZ(_) | RotY(_) | Measure(_) => (1, 0),
            Cnot | Cz => (1, 1),
            Swap => (2, 0),
            AndCompute | AndUncompute | Toffoli => (1, 2),
            ClassicallyControlled { inner, .. } => inner.arity(),
        }
    }

    pub fn name(&self) -> String {
        use GateKind::*;
        match self {
            X => "x".into(),
            Y => "y".into(),
            Z => "z".into(),
            H => "h".into(),
            S => "s".into(),
            Sdg => "sdg".into(),
            T => "t".into(),
            Tdg => "tdg".into(),
            Cnot => "cnot".into(),
            Cz => "cz".into(),
            Swap => "swap".into(),
            AndCompute => "and".into(),
            AndUncompute => "unand".into(),
            Toffoli => "ccx".into(),
            // `{}` on f64 prints the shortest representation that parses back exactly.
            RotZ(a) => format!("rz({a})"),
            RotY(a) => format!("ry({a})"),
            Measure(b) => format!("measure(c{b})"),
            ClassicallyControlled { inner, bit } => format!("if(c{bit}):{}", inner.name()),
        }
    }

    pub fn is_t_like(&self) -> bool {
        match self {
            GateKind::T | GateKind::Tdg => true,
            GateKind::ClassicallyControlled { inner, .. } => inner.is_t_like(),
            _ => false,
        }
    }

    pub fn is_rotation(&self) -> bool {
        match self {
            GateKind::RotZ(_) | GateKind::RotY(_) => true,
            GateKind::ClassicallyControlled { inner, .. } => inner.is_rotation(),
            _ => false,
        }
    }

    pub fn inverse(&self) -> Result<GateKind> {
        use GateKind::*;
        Ok(match self {
            S => Sdg,
            Sdg => S,
            T => Tdg,
            Tdg => T,
            RotZ(a) => RotZ(-a),
            RotY(a) => RotY(-a),
            AndCompute => AndUncompute,
            AndUncompute => AndCompute,
            Measure(_) => return Err(Error::NotInvertible),
            ClassicallyControlled { inner, bit } => ClassicallyControlled {
                inner: Box::new(inner.inverse()?),
                bit: *bit,
            },
            k => k.clone(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Control {
    pub qubit: Qubit,
    /// `true` fires on |1>, `false` on |0>.
    pub on: bool,
}

impl Control {
    pub fn on(qubit: Qubit) -> Self {
        Control { qubit, on: true }
    }

    pub fn off(qubit: Qubit) -> Self {
        Control { qubit, on: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub targets: Vec<Qubit>,
    pub controls: Vec<Control>,
}

impl Gate {
    pub fn new(kind: GateKind, targets: Vec<Qubit>, controls: Vec<Control>) -> Self {
        Gate { kind, targets, controls }
    }

    pub fn single(kind: GateKind, q: Qubit) -> Self {
        Gate::new(kind, vec![q], vec![])
    }

    pub fn cnot(c: Control, t: Qubit) -> Self {
        Gate::new(GateKind::Cnot, vec![t], vec![c])
    }

    pub fn cz(c: Control, t: Qubit) -> Self {
        Gate::new(GateKind::Cz, vec![t], vec![c])
    }

    pub fn and(a: Control, b: Control, t: Qubit) -> Self {
        Gate::new(GateKind::AndCompute, vec![t], vec![a, b])
    }

    pub fn unand(a: Control, b: Control, t: Qubit) -> Self {
        Gate::new(GateKind::AndUncompute, vec![t], vec![a, b])
    }

    pub fn inverse(&self) -> Result<Gate> {
        Ok(Gate {
            kind: self.kind.inverse()?,
            targets: self.targets.clone(),
            controls: self.controls.clone(),
        })
    }

    /// Arity and disjointness checks against a circuit of `width` qubits.
    pub fn validate(&self, width: usize) -> Result<()> {
        let (nt, nc) = self.kind.arity();
        if self.targets.len() != nt || self.controls.len() != nc {
            return Err(Error::Arity { kind: self.kind.name(), targets: nt, controls: nc });
        }
        if let GateKind::ClassicallyControlled { inner, .. } = &self.kind {
            if matches!(**inner, GateKind::Measure(_) | GateKind::ClassicallyControlled { .. }) {
                return Err(Error::Invalid("classical control must wrap a unitary gate".into()));
            }
        }
        let mut seen: Vec<Qubit> = Vec::with_capacity(nt + nc);
        for q in self.targets.iter().copied().chain(self.controls.iter().map(|c| c.qubit)) {
            if q >= width {
                return Err(Error::QubitOutOfRange { qubit: q, width });
            }
            if seen.contains(&q) {
                return Err(Error::Overlap(q));
            }
            seen.push(q);
        }
        Ok(())
    }

    pub fn qubits(&self) -> impl Iterator<Item = Qubit> + '_ {
        self.targets.iter().copied().chain(self.controls.iter().map(|c| c.qubit))
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
