//! Quantum Fourier transform, `|x> -> 2^{-n/2} sum_y e^{2 pi i x y / 2^n} |y>`
//! with qubit `k` of the register as bit `k`.

use crate::circuit::{Circuit, Control, Qubit};
use crate::error::Result;
use crate::oracles::append_adjoint;
use crate::primitives::gadgets::controlled_rz;

/// Controlled phase `diag(1, 1, 1, e^{i theta})`, up to global phase.
fn cphase(c: &mut Circuit, a: Qubit, b: Qubit, theta: f64) {
    c.rz(theta / 2.0, a);
    controlled_rz(c, Control::on(a), theta, b);
}

pub fn append_qft(c: &mut Circuit, reg: &[Qubit]) {
    let n = reg.len();
    for a in (0..n).rev() {
        c.h(reg[a]);
        for b in (0..a).rev() {
            cphase(c, reg[b], reg[a], std::f64::consts::PI / (1u64 << (a - b)) as f64);
        }
    }
    for k in 0..n / 2 {
        c.swap(reg[k], reg[n - 1 - k]);
    }
}

pub fn append_inverse_qft(c: &mut Circuit, reg: &[Qubit]) -> Result<()> {
    append_adjoint(c, |c| {
        append_qft(c, reg);
        Ok(())
    })
}

/// Hadamards and rotations of the measured, semiclassical version on `n`
/// qubits, which is what a cost model should charge.
pub fn semiclassical_qft_cost(n: usize) -> (usize, usize) {
    (n, n.saturating_sub(1))
}
