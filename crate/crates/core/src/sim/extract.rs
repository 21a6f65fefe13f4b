use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::sparse::SparseState;
use crate::circuit::{Circuit, Qubit};
use crate::error::{Error, Result};

/// Values pinned on qubits outside the extracted subset. Unlisted qubits are |0>.
pub type Fixed<'a> = &'a [(Qubit, bool)];

const LEAK_TOL: f64 = 1e-10;

/// Dense operator of `c` on `subset` (qubit `subset[k]` is bit `k` of the
/// matrix index) with every other qubit pinned. Fails if any column leaks out
/// of the pinned subspace or the result is not unitary.
pub fn extract_unitary(c: &Circuit, subset: &[Qubit], fixed: Fixed) -> Result<DMatrix<C64>> {
    if subset.len() > 12 {
        return Err(Error::Invalid(format!("subset of {} qubits exceeds 12", subset.len())));
    }
    let mut rest = 0u128;
    for &(q, v) in fixed {
        if subset.contains(&q) {
            return Err(Error::Invalid(format!("qubit {q} is both extracted and fixed")));
        }
        if v {
            rest |= 1 << q;
        }
    }
    let sub_mask: u128 = subset.iter().fold(0, |m, &q| m | (1 << q));
    let dim = 1usize << subset.len();
    let mut u = DMatrix::<C64>::zeros(dim, dim);
    for col in 0..dim {
        let mut input = rest;
        for (k, &q) in subset.iter().enumerate() {
            if col >> k & 1 == 1 {
                input |= 1 << q;
            }
        }
        let mut s = SparseState::basis(input);
        s.run(c, true)?;
        for (key, a) in s.entries() {
            if key & !sub_mask != rest {
                if a.norm() > LEAK_TOL {
                    return Err(Error::Leakage { column: col });
                }
                continue;
            }
            let row = subset.iter().enumerate().fold(0usize, |r, (k, &q)| r | ((((key >> q) & 1) as usize) << k));
            u[(row, col)] = a;
        }
    }
    let dev = (u.adjoint() * &u - DMatrix::<C64>::identity(dim, dim)).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if dev > 1e-10 {
        return Err(Error::NotUnitary(dev));
    }
    Ok(u)
}

/// `<0|_rest C |0>_rest` as a dense matrix on `subset`: every qubit outside
/// the subset starts in |0> and is projected back onto |0>. No unitarity is
/// required, which makes this the block-encoding oracle.
pub fn extract_block(c: &Circuit, subset: &[Qubit]) -> Result<DMatrix<C64>> {
    if subset.len() > 12 {
        return Err(Error::Invalid(format!("subset of {} qubits exceeds 12", subset.len())));
    }
    let sub_mask: u128 = subset.iter().fold(0, |m, &q| m | (1 << q));
    let dim = 1usize << subset.len();
    let mut b = DMatrix::<C64>::zeros(dim, dim);
    for col in 0..dim {
        let input = spread(col, subset);
        let mut s = SparseState::basis(input);
        s.run(c, true)?;
        for (key, a) in s.entries() {
            if key & !sub_mask == 0 {
                b[(gather(key, subset), col)] = a;
            }
        }
    }
    Ok(b)
}

/// Basis index with bit `k` of `v` placed on qubit `qubits[k]`.
pub fn spread(v: usize, qubits: &[Qubit]) -> u128 {
    qubits.iter().enumerate().fold(0, |acc, (k, &q)| acc | ((((v >> k) & 1) as u128) << q))
}

/// Inverse of [`spread`].
pub fn gather(key: u128, qubits: &[Qubit]) -> usize {
    qubits.iter().enumerate().fold(0, |r, (k, &q)| r | ((((key >> q) & 1) as usize) << k))
}
