//! Small Clifford+T building blocks shared by the larger constructions.

use crate::circuit::{Circuit, Control, Gate, Qubit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Pauli {
    X,
    Y,
    Z,
}

/// Gates emitted by a compute step, kept so the step can be mirrored.
#[derive(Debug)]
#[must_use = "a computed scope has to be uncomputed"]
pub struct Scope {
    start: usize,
    end: usize,
    ancillas: Vec<Qubit>,
}

impl Scope {
    pub fn begin(c: &Circuit) -> Scope {
        Scope { start: c.mark(), end: c.mark(), ancillas: Vec::new() }
    }

    pub fn alloc(&mut self, c: &mut Circuit) -> Qubit {
        let q = c.alloc_ancilla();
        self.ancillas.push(q);
        q
    }

    pub fn and(&mut self, c: &mut Circuit, a: Control, b: Control) -> Qubit {
        let t = self.alloc(c);
        c.push(Gate::and(a, b, t));
        t
    }

    pub fn close(mut self, c: &Circuit) -> Scope {
        self.end = c.mark();
        self
    }

    /// Emits the adjoint of the scope's gates and frees its ancillas.
    pub fn undo(self, c: &mut Circuit) {
        c.append_inverse_of(self.start..self.end).expect("compute scopes hold no measurements");
        for &q in self.ancillas.iter().rev() {
            c.free_ancilla(q);
        }
    }
}

/// Applies a Pauli controlled on `ctrl`.
pub fn controlled_pauli(c: &mut Circuit, ctrl: Control, p: Pauli, t: Qubit) {
    match p {
        Pauli::X => c.cx_if(ctrl, t),
        Pauli::Z => c.push(Gate::cz(ctrl, t)),
        Pauli::Y => {
            c.sdg(t);
            c.cx_if(ctrl, t);
            c.s(t);
        }
    }
}

pub fn pauli(c: &mut Circuit, p: Pauli, t: Qubit) {
    match p {
        Pauli::X => c.x(t),
        Pauli::Y => c.y(t),
        Pauli::Z => c.z(t),
    }
}

/// Ry(+-pi/4) up to a global phase that cancels in [`controlled_h`].
fn ry_quarter(c: &mut Circuit, t: Qubit, positive: bool) {
    c.sdg(t);
    c.h(t);
    if positive {
        c.t(t);
    } else {
        c.tdg(t);
    }
    c.h(t);
    c.s(t);
}

/// Controlled Hadamard for 2 T: H = Ry(pi/4) Z Ry(-pi/4).
pub fn controlled_h(c: &mut Circuit, ctrl: Control, t: Qubit) {
    ry_quarter(c, t, false);
    c.push(Gate::cz(ctrl, t));
    ry_quarter(c, t, true);
}

/// Controlled Ry(angle): two rotations and two CNOTs.
pub fn controlled_ry(c: &mut Circuit, ctrl: Control, angle: f64, t: Qubit) {
    c.ry(angle / 2.0, t);
    c.cx_if(ctrl, t);
    c.ry(-angle / 2.0, t);
    c.cx_if(ctrl, t);
}

/// Controlled Rz(angle).
pub fn controlled_rz(c: &mut Circuit, ctrl: Control, angle: f64, t: Qubit) {
    c.rz(angle / 2.0, t);
    c.cx_if(ctrl, t);
    c.rz(-angle / 2.0, t);
    c.cx_if(ctrl, t);
}

/// Multiplies the whole state by -1 (Z X Z X = -I).
pub fn minus_one(c: &mut Circuit, q: Qubit) {
    c.z(q);
    c.x(q);
    c.z(q);
    c.x(q);
}

/// Flips the control qubit when its polarity is off, so it can be used as an
/// on-control. Call twice to restore.
pub fn normalize(c: &mut Circuit, ctrl: Control) {
    if !ctrl.on {
        c.x(ctrl.qubit);
    }
}

/// AND of all controls in a single qubit via a ladder of `k - 1` ANDs.
/// A single control is returned as is.
pub fn and_all(c: &mut Circuit, ctrls: &[Control]) -> (Control, Scope) {
    assert!(!ctrls.is_empty());
    let mut scope = Scope::begin(c);
    let mut acc = ctrls[0];
    for &next in &ctrls[1..] {
        acc = Control::on(scope.and(c, acc, next));
    }
    (acc, scope.close(c))
}

/// Phase -1 on the basis states where every control fires.
pub fn multi_cz(c: &mut Circuit, ctrls: &[Control]) {
    let (ind, scope) = and_all(c, ctrls);
    if ind.on {
        c.z(ind.qubit);
    } else {
        c.x(ind.qubit);
        c.z(ind.qubit);
        c.x(ind.qubit);
    }
    scope.undo(c);
}

/// Swaps `a` and `b` when `ctrl` fires, 4 T via one AND.
pub fn fredkin(c: &mut Circuit, ctrl: Control, a: Qubit, b: Qubit) {
    c.cx(b, a);
    let t = c.and(ctrl, Control::on(a));
    c.cx(t, b);
    c.unand(ctrl, Control::on(a), t);
    c.cx(b, a);
}

/// Swaps two equal-width registers when `ctrl` fires.
pub fn controlled_swap_regs(c: &mut Circuit, ctrl: Control, a: &[Qubit], b: &[Qubit]) {
    assert_eq!(a.len(), b.len());
    for (&x, &y) in a.iter().zip(b) {
        fredkin(c, ctrl, x, y);
    }
}

/// Uses an existing control, or makes a flag ancilla that is always on.
pub fn with_control<R>(c: &mut Circuit, control: Option<Qubit>, f: impl FnOnce(&mut Circuit, Qubit) -> R) -> R {
    match control {
        Some(q) => f(c, q),
        None => {
            let flag = c.alloc_ancilla();
            c.x(flag);
            let r = f(c, flag);
            c.x(flag);
            c.free_ancilla(flag);
            r
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::extract_unitary;
    use nalgebra::DMatrix;
    use num_complex::Complex64 as C64;

    fn close(a: &DMatrix<C64>, b: &DMatrix<C64>) -> bool {
        (a - b).iter().all(|z| z.norm() < 1e-12)
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn controlled_h_exact() {
        let mut circ = Circuit::new(&[("q", 2)]).unwrap();
        controlled_h(&mut circ, Control::on(0), 1);
        assert_eq!(circ.t_count(), 2);
        let u = extract_unitary(&circ, &[0, 1], &[]).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        // index = q0 + 2 q1; H acts on q1 when q0 = 1
        let mut want = DMatrix::<C64>::identity(4, 4);
        want[(1, 1)] = c(r, 0.0);
        want[(1, 3)] = c(r, 0.0);
        want[(3, 1)] = c(r, 0.0);
        want[(3, 3)] = c(-r, 0.0);
        assert!(close(&u, &want), "{u}");
    }

    #[test]
    fn controlled_y_and_rotations() {
        let mut circ = Circuit::new(&[("q", 2)]).unwrap();
        controlled_pauli(&mut circ, Control::off(0), Pauli::Y, 1);
        let u = extract_unitary(&circ, &[0, 1], &[]).unwrap();
        let mut want = DMatrix::<C64>::zeros(4, 4);
        want[(2, 0)] = c(0.0, 1.0);
        want[(0, 2)] = c(0.0, -1.0);
        want[(1, 1)] = c(1.0, 0.0);
        want[(3, 3)] = c(1.0, 0.0);
        assert!(close(&u, &want));

        let th = 0.7;
        let mut r = Circuit::new(&[("q", 2)]).unwrap();
        controlled_ry(&mut r, Control::on(0), th, 1);
        let u = extract_unitary(&r, &[0, 1], &[]).unwrap();
        let (s, co) = (th / 2.0).sin_cos();
        assert!((u[(0, 0)] - c(1.0, 0.0)).norm() < 1e-12);
        assert!((u[(3, 1)] - c(s, 0.0)).norm() < 1e-12 && (u[(1, 1)] - c(co, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn minus_one_and_multi_cz() {
        let mut circ = Circuit::new(&[("q", 1)]).unwrap();
        minus_one(&mut circ, 0);
        let u = extract_unitary(&circ, &[0], &[]).unwrap();
        assert!(close(&u, &(DMatrix::identity(2, 2) * c(-1.0, 0.0))));

        let mut m = Circuit::new(&[("q", 3)]).unwrap();
        multi_cz(&mut m, &[Control::on(0), Control::off(1), Control::on(2)]);
        assert_eq!(m.t_count(), 8);
        let u = extract_unitary(&m, &[0, 1, 2], &[]).unwrap();
        for i in 0..8 {
            let want = if i == 0b101 { -1.0 } else { 1.0 };
            assert!((u[(i, i)] - c(want, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn fredkin_swaps() {
        let mut circ = Circuit::new(&[("q", 3)]).unwrap();
        fredkin(&mut circ, Control::on(0), 1, 2);
        assert_eq!(circ.t_count(), 4);
        let u = extract_unitary(&circ, &[0, 1, 2], &[]).unwrap();
        for i in 0..8usize {
            let j = if i & 1 == 1 { (i & 1) | ((i >> 1 & 1) << 2) | ((i >> 2 & 1) << 1) } else { i };
            assert!((u[(j, i)] - c(1.0, 0.0)).norm() < 1e-12);
        }
    }
}
