//! Gate kinds lowered to the small set of actions the simulators implement.

use num_complex::Complex64 as C64;

use crate::circuit::{Gate, GateKind};

#[derive(Clone, Copy, Debug)]
pub(crate) enum Op {
    /// General 2x2 matrix, row major.
    Mat([C64; 4]),
    /// diag(d0, d1)
    Diag(C64, C64),
    Flip,
    Swap,
}

pub(crate) fn op_of(kind: &GateKind) -> Option<Op> {
    use std::f64::consts::FRAC_1_SQRT_2 as R;
    use GateKind::*;
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    Some(match kind {
        X | Cnot | AndCompute | AndUncompute | Toffoli => Op::Flip,
        Y => Op::Mat([zero, C64::new(0.0, -1.0), C64::new(0.0, 1.0), zero]),
        Z | Cz => Op::Diag(one, -one),
        H => Op::Mat([C64::new(R, 0.0), C64::new(R, 0.0), C64::new(R, 0.0), C64::new(-R, 0.0)]),
        S => Op::Diag(one, C64::new(0.0, 1.0)),
        Sdg => Op::Diag(one, C64::new(0.0, -1.0)),
        T => Op::Diag(one, C64::new(R, R)),
        Tdg => Op::Diag(one, C64::new(R, -R)),
        RotZ(a) => Op::Diag(C64::from_polar(1.0, -a / 2.0), C64::from_polar(1.0, a / 2.0)),
        RotY(a) => {
            let (s, c) = (a / 2.0).sin_cos();
            Op::Mat([C64::new(c, 0.0), C64::new(-s, 0.0), C64::new(s, 0.0), C64::new(c, 0.0)])
        }
        Swap => Op::Swap,
        Measure(_) | ClassicallyControlled { .. } => return None,
    })
}

/// 2x2 matrix of a single-qubit kind (used by the Kronecker cross-check).
#[cfg(test)]
pub(crate) fn matrix_of(op: Op) -> [C64; 4] {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    match op {
        Op::Mat(m) => m,
        Op::Diag(a, b) => [a, zero, zero, b],
        Op::Flip => [zero, one, one, zero],
        Op::Swap => panic!("swap is two-qubit"),
    }
}

/// (mask, value) selecting basis states where every control fires.
pub(crate) fn control_mask(g: &Gate) -> (u128, u128) {
    let mut mask = 0u128;
    let mut val = 0u128;
    for c in &g.controls {
        mask |= 1 << c.qubit;
        if c.on {
            val |= 1 << c.qubit;
        }
    }
    (mask, val)
}
