//! Gate-level circuit representation with exact cost accounting.

mod cost;
mod gate;
mod text;

pub use cost::{CostModel, RotationCost};
pub use gate::{Control, Gate, GateKind, Qubit};

use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};

/// Name of the on-demand ancilla register.
pub const ANCILLA: &str = "anc";

/// A named qubit address, stable across serialization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QubitRef {
    pub register: String,
    pub offset: usize,
}

impl QubitRef {
    pub fn new(register: &str, offset: usize) -> Self {
        QubitRef { register: register.to_string(), offset }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Register {
    pub name: String,
    pub qubits: Vec<Qubit>,
}

/// Gate tallies. `t_count` follows the AND-gadget convention: four T per
/// computed AND, nothing for the uncompute.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Ledger {
    pub and_compute: usize,
    pub and_uncompute: usize,
    pub t_gates: usize,
    pub toffoli: usize,
    pub rotations: usize,
    pub measurements: usize,
    pub clifford: usize,
}

impl Ledger {
    pub fn t_count(&self) -> usize {
        4 * self.and_compute + self.t_gates
    }

    pub fn record(&mut self, kind: &GateKind) {
        use GateKind::*;
        match kind {
            AndCompute => self.and_compute += 1,
            AndUncompute => self.and_uncompute += 1,
            T | Tdg => self.t_gates += 1,
            Toffoli => self.toffoli += 1,
            RotZ(_) | RotY(_) => self.rotations += 1,
            Measure(_) => self.measurements += 1,
            ClassicallyControlled { inner, .. } => self.record(inner),
            _ => self.clifford += 1,
        }
    }

    fn unrecord(&mut self, kind: &GateKind) {
        let mut one = Ledger::default();
        one.record(kind);
        self.and_compute -= one.and_compute;
        self.and_uncompute -= one.and_uncompute;
        self.t_gates -= one.t_gates;
        self.toffoli -= one.toffoli;
        self.rotations -= one.rotations;
        self.measurements -= one.measurements;
        self.clifford -= one.clifford;
    }

    pub fn recount<'a>(gates: impl IntoIterator<Item = &'a Gate>) -> Ledger {
        let mut l = Ledger::default();
        for g in gates {
            l.record(&g.kind);
        }
        l
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    registers: Vec<Register>,
    width: usize,
    gates: Vec<Gate>,
    ledger: Ledger,
    clbits: usize,
    free_ancilla: Vec<Qubit>,
    ancilla_in_use: usize,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Circuit {
    /// Declares registers in the given order; qubit indices follow that order.
    pub fn new(spec: &[(&str, usize)]) -> Result<Circuit> {
        if spec.is_empty() {
            return Err(Error::NoRegisters);
        }
        let mut c = Circuit::empty();
        for (name, size) in spec {
            c.add_register(name, *size)?;
        }
        Ok(c)
    }

    /// A circuit with no registers yet. Builders add what they need.
    pub fn empty() -> Circuit {
        Circuit {
            registers: Vec::new(),
            width: 0,
            gates: Vec::new(),
            ledger: Ledger::default(),
            clbits: 0,
            free_ancilla: Vec::new(),
            ancilla_in_use: 0,
        }
    }

    pub fn add_register(&mut self, name: &str, size: usize) -> Result<Vec<Qubit>> {
        if !valid_name(name) {
            return Err(Error::BadRegisterName(name.into()));
        }
        if self.registers.iter().any(|r| r.name == name) {
            return Err(Error::DuplicateRegister(name.into()));
        }
        if size == 0 {
            return Err(Error::EmptyRegister(name.into()));
        }
        let qubits: Vec<Qubit> = (self.width..self.width + size).collect();
        self.width += size;
        self.registers.push(Register { name: name.into(), qubits: qubits.clone() });
        Ok(qubits)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn ledger(&self) -> Ledger {
        self.ledger
    }

    pub fn t_count(&self) -> usize {
        self.ledger.t_count()
    }

    pub fn rotation_count(&self) -> usize {
        self.ledger.rotations
    }

    /// T count with rotations and Toffolis priced by `model`.
    pub fn total_t_count(&self, model: &CostModel, eps_synth: f64) -> Result<usize> {
        let per_rot = if self.ledger.rotations > 0 { model.t_per_rotation(eps_synth)? } else { 0 };
        Ok(self.ledger.t_count() + self.ledger.rotations * per_rot + self.ledger.toffoli * model.toffoli_t_cost)
    }

    /// Number of ancilla qubits ever needed at once.
    pub fn peak_ancilla(&self) -> usize {
        self.register(ANCILLA).map_or(0, |r| r.qubits.len())
    }

    pub fn ancilla_in_use(&self) -> usize {
        self.ancilla_in_use
    }

    pub fn clbits(&self) -> usize {
        self.clbits
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn register(&self, name: &str) -> Option<&Register> {
        self.registers.iter().find(|r| r.name == name)
    }

    pub fn reg(&self, name: &str) -> Result<Vec<Qubit>> {
        self.register(name)
            .map(|r| r.qubits.clone())
            .ok_or_else(|| Error::UnknownRegister(name.into()))
    }

    pub fn resolve(&self, r: &QubitRef) -> Result<Qubit> {
        let reg = self.register(&r.register).ok_or_else(|| Error::UnknownRegister(r.register.clone()))?;
        reg.qubits
            .get(r.offset)
            .copied()
            .ok_or(Error::QubitOutOfRange { qubit: r.offset, width: reg.qubits.len() })
    }

    pub fn name_of(&self, q: Qubit) -> Option<QubitRef> {
        self.registers.iter().find_map(|r| {
            r.qubits.iter().position(|&x| x == q).map(|offset| QubitRef { register: r.name.clone(), offset })
        })
    }

    /// Hands out a clean ancilla, reusing freed ones before growing `anc`.
    pub fn alloc_ancilla(&mut self) -> Qubit {
        self.ancilla_in_use += 1;
        if let Some(q) = self.free_ancilla.pop() {
            return q;
        }
        let q = self.width;
        self.width += 1;
        match self.registers.iter_mut().find(|r| r.name == ANCILLA) {
            Some(r) => r.qubits.push(q),
            None => self.registers.push(Register { name: ANCILLA.into(), qubits: vec![q] }),
        }
        q
    }

    /// Returns an ancilla to the pool. The caller guarantees it is back in |0>.
    pub fn free_ancilla(&mut self, q: Qubit) {
        debug_assert!(!self.free_ancilla.contains(&q), "ancilla {q} freed twice");
        self.ancilla_in_use -= 1;
        self.free_ancilla.push(q);
    }

    pub fn alloc_clbit(&mut self) -> usize {
        self.clbits += 1;
        self.clbits - 1
    }

    pub fn append(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.width)?;
        match &gate.kind {
            GateKind::Measure(b) => self.clbits = self.clbits.max(b + 1),
            GateKind::ClassicallyControlled { bit, .. } => self.clbits = self.clbits.max(bit + 1),
            _ => {}
        }
        self.ledger.record(&gate.kind);
        self.gates.push(gate);
        Ok(())
    }

    /// Internal emit path for builders: an invalid gate is a builder bug.
    pub fn push(&mut self, gate: Gate) {
        if let Err(e) = self.append(gate) {
            panic!("builder emitted an invalid gate: {e}");
        }
    }

    /// Index of the next gate, for use with [`Circuit::append_inverse_of`].
    pub fn mark(&self) -> usize {
        self.gates.len()
    }

    /// Appends the adjoint of the gates in `range`.
    pub fn append_inverse_of(&mut self, range: Range<usize>) -> Result<()> {
        let inv: Vec<Gate> = self.gates[range].iter().rev().map(Gate::inverse).collect::<Result<_>>()?;
        for g in inv {
            self.append(g)?;
        }
        Ok(())
    }

    /// Appends another copy of the gates in `range`.
    pub fn repeat(&mut self, range: Range<usize>) {
        let again: Vec<Gate> = self.gates[range].to_vec();
        for g in again {
            self.push(g);
        }
    }

    /// Drops every gate from index `len` on.
    pub fn truncate_to(&mut self, len: usize) {
        for g in &self.gates[len..] {
            self.ledger.unrecord(&g.kind);
        }
        self.gates.truncate(len);
    }

    pub fn inverse(&self) -> Result<Circuit> {
        let mut c = self.clone();
        c.gates.clear();
        c.ledger = Ledger::default();
        c.append_inverse_of_from(self)?;
        Ok(c)
    }

    fn append_inverse_of_from(&mut self, other: &Circuit) -> Result<()> {
        for g in other.gates.iter().rev() {
            self.append(g.inverse()?)?;
        }
        Ok(())
    }

    // Builder shorthands.

    pub fn x(&mut self, q: Qubit) {
        self.push(Gate::single(GateKind::X, q));
    }
    pub fn y(&mut self, q: Qubit) {
        self.push(Gate::single(GateKind::Y, q));
    }
    pub fn z(&mut self, q: Qubit) {
        self.push(Gate::single(GateKind::Z, q));
    }
    pub fn h(&mut self, q: Qubit) {
        self.push(Gate::single(GateKind::H, q));
    }
    pub fn s(&mut self, q: Qubit) {
        self.push(Gate::single(GateKind::S, q));
    }
    pub fn sdg(&mut self, q: Qubit) {
        self.push(Gate::single(GateKind::Sdg, q));
    }
    pub fn t(&mut self, q: Qubit) {
        self.push(Gate::single(GateKind::T, q));
    }
    pub fn tdg(&mut self, q: Qubit) {
        self.push(Gate::single(GateKind::Tdg, q));
    }
    pub fn rz(&mut self, angle: f64, q: Qubit) {
        self.push(Gate::single(GateKind::RotZ(angle), q));
    }
    pub fn ry(&mut self, angle: f64, q: Qubit) {
        self.push(Gate::single(GateKind::RotY(angle), q));
    }
    pub fn cx(&mut self, c: Qubit, t: Qubit) {
        self.push(Gate::cnot(Control::on(c), t));
    }
    pub fn cx_if(&mut self, c: Control, t: Qubit) {
        self.push(Gate::cnot(c, t));
    }
    pub fn cz(&mut self, c: Qubit, t: Qubit) {
        self.push(Gate::cz(Control::on(c), t));
    }
    pub fn swap(&mut self, a: Qubit, b: Qubit) {
        self.push(Gate::new(GateKind::Swap, vec![a, b], vec![]));
    }
    pub fn measure(&mut self, q: Qubit) -> usize {
        let b = self.alloc_clbit();
        self.push(Gate::single(GateKind::Measure(b), q));
        b
    }

    /// Computes `a & b` into a fresh ancilla.
    pub fn and(&mut self, a: Control, b: Control) -> Qubit {
        let t = self.alloc_ancilla();
        self.push(Gate::and(a, b, t));
        t
    }

    /// Uncomputes an AND made by [`Circuit::and`] and frees its target.
    pub fn unand(&mut self, a: Control, b: Control, t: Qubit) {
        self.push(Gate::unand(a, b, t));
        self.free_ancilla(t);
    }
}

/// `ceil(log2(n))`, with `bits_for(1) == 0`.
pub fn bits_for(n: usize) -> usize {
    assert!(n >= 1);
    (usize::BITS - (n - 1).leading_zeros()) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_circuit_rules() {
        let c = Circuit::new(&[("sel", 4), ("sys", 8)]).unwrap();
        assert_eq!(c.width(), 12);
        assert_eq!(c.t_count(), 0);
        assert_eq!(Circuit::new(&[]), Err(Error::NoRegisters));
        assert_eq!(Circuit::new(&[("a", 1), ("a", 2)]), Err(Error::DuplicateRegister("a".into())));
        assert_eq!(Circuit::new(&[("a", 0)]), Err(Error::EmptyRegister("a".into())));
    }

    #[test]
    fn ledger_per_kind() {
        let mut c = Circuit::new(&[("q", 3)]).unwrap();
        c.append(Gate::and(Control::on(0), Control::on(1), 2)).unwrap();
        assert_eq!(c.t_count(), 4);
        c.append(Gate::unand(Control::on(0), Control::on(1), 2)).unwrap();
        assert_eq!(c.t_count(), 4);
        c.append(Gate::single(GateKind::RotZ(0.3), 0)).unwrap();
        assert_eq!((c.t_count(), c.rotation_count()), (4, 1));
        c.t(1);
        c.tdg(1);
        assert_eq!(c.t_count(), 6);
    }

    #[test]
    fn append_rejects_bad_gates() {
        let mut c = Circuit::new(&[("q", 2)]).unwrap();
        assert!(matches!(c.append(Gate::single(GateKind::X, 2)), Err(Error::QubitOutOfRange { .. })));
        assert_eq!(c.append(Gate::cnot(Control::on(1), 1)), Err(Error::Overlap(1)));
        assert!(matches!(c.append(Gate::new(GateKind::AndCompute, vec![0], vec![])), Err(Error::Arity { .. })));
        assert!(c.gates().is_empty());
    }

    #[test]
    fn total_t_count_examples() {
        let mut c = Circuit::new(&[("q", 3)]).unwrap();
        let m = CostModel::default();
        assert_eq!(c.total_t_count(&m, 1e-6).unwrap(), 0);
        for _ in 0..10 {
            c.push(Gate::and(Control::on(0), Control::on(1), 2));
            c.push(Gate::unand(Control::on(0), Control::on(1), 2));
        }
        assert_eq!(c.total_t_count(&m, 1e-6).unwrap(), 40);

        let mut r = Circuit::new(&[("q", 1)]).unwrap();
        r.rz(0.1, 0);
        r.ry(0.2, 0);
        let bare = CostModel { rotation: RotationCost::Linear { slope: 1.15, offset: 0 }, ..CostModel::default() };
        assert_eq!(r.total_t_count(&bare, 1e-6).unwrap(), 46);
        assert_eq!(r.total_t_count(&m, 1e-6).unwrap(), 2 * 32);
    }

    #[test]
    fn ancilla_pool_reuses() {
        let mut c = Circuit::new(&[("q", 2)]).unwrap();
        let a = c.alloc_ancilla();
        let b = c.alloc_ancilla();
        c.free_ancilla(b);
        let d = c.alloc_ancilla();
        assert_eq!(b, d);
        c.free_ancilla(d);
        c.free_ancilla(a);
        assert_eq!(c.peak_ancilla(), 2);
        assert_eq!(c.ancilla_in_use(), 0);
        assert_eq!(c.reg(ANCILLA).unwrap(), vec![2, 3]);
    }

    #[test]
    fn inverse_swaps_kinds() {
        let mut c = Circuit::new(&[("q", 3)]).unwrap();
        c.t(0);
        c.s(1);
        c.rz(0.5, 2);
        c.push(Gate::and(Control::on(0), Control::off(1), 2));
        let inv = c.inverse().unwrap();
        let kinds: Vec<_> = inv.gates().iter().map(|g| g.kind.clone()).collect();
        assert_eq!(kinds, vec![GateKind::AndUncompute, GateKind::RotZ(-0.5), GateKind::Sdg, GateKind::Tdg]);
        c.measure(0);
        assert_eq!(c.inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn bits_for_values() {
        let v: Vec<usize> = [1, 2, 3, 4, 5, 8, 9, 11, 64, 65].iter().map(|&n| bits_for(n)).collect();
        assert_eq!(v, vec![0, 1, 2, 2, 3, 3, 4, 4, 6, 7]);
    }
}
