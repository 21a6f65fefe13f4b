//! Exact preparation of arbitrary non-negative amplitudes with a binary tree
//! of multiplexed Ry rotations. Used for small reference oracles.

use super::gadgets::{controlled_ry, with_control};
use super::unary::{unary_iterate, Dim};
use crate::circuit::{bits_for, Circuit, Control, Qubit};
use crate::error::{invalid, Result};

/// Prepares `sum_l sqrt(weights[l] / sum) |l>` on `reg`.
pub fn prepare_amplitudes(c: &mut Circuit, reg: &[Qubit], weights: &[f64]) -> Result<()> {
    let n = bits_for(weights.len()).max(1);
    if reg.len() < n {
        return invalid("register too small for the weight table");
    }
    if weights.iter().any(|&w| !(w >= 0.0)) || weights.iter().sum::<f64>() <= 0.0 {
        return invalid("weights must be non-negative with a positive sum");
    }
    let mut w = weights.to_vec();
    w.resize(1 << n, 0.0);
    for level in 0..n {
        let bit = n - 1 - level;
        let block = 1usize << (bit + 1);
        // one angle per assignment of the already prepared higher bits
        let angles: Vec<f64> = w
            .chunks(block)
            .map(|ch| {
                let (lo, hi) = ch.split_at(block / 2);
                let (w0, w1): (f64, f64) = (lo.iter().sum(), hi.iter().sum());
                2.0 * w1.sqrt().atan2(w0.sqrt())
            })
            .collect();
        if level == 0 {
            c.ry(angles[0], reg[bit]);
            continue;
        }
        let prefix = &reg[bit + 1..n];
        with_control(c, None, |c, flag| {
            unary_iterate(c, flag, &[Dim::new(prefix, angles.len())], &mut |c, v, ind| {
                if angles[v] != 0.0 {
                    controlled_ry(c, Control::on(ind), angles[v], reg[bit]);
                }
            })
        })?;
    }
    Ok(())
}
