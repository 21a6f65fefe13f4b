//! Equal superposition over `L` values with a single exact round of
//! amplitude amplification for the odd part of `L`.

use super::arith::less_than_const;
use super::gadgets::{and_all, controlled_h, controlled_ry, minus_one, multi_cz, normalize};
use crate::circuit::{bits_for, Circuit, Control, Qubit};
use crate::error::{invalid, Result};

/// `(k, odd, n)` with `L = 2^k * odd` and `n = ceil(log2 odd)`.
pub fn split(len: usize) -> (usize, usize, usize) {
    let k = len.trailing_zeros() as usize;
    let odd = len >> k;
    (k, odd, bits_for(odd))
}

/// Maps |0> on `reg` to the uniform superposition over `0..len`. With a
/// control, acts as the identity when it does not fire.
pub fn uniform(c: &mut Circuit, ctrl: Option<Control>, reg: &[Qubit], len: usize) -> Result<()> {
    uniform_flagged(c, ctrl, reg, len, None)
}

/// [`uniform`] with the rotated flag qubit supplied by the caller. The flag
/// returns to |0> only on the forward path, so inside a reflection it must be
/// a named qubit that the reflection covers rather than a recycled ancilla.
pub fn uniform_flagged(c: &mut Circuit, ctrl: Option<Control>, reg: &[Qubit], len: usize, flag: Option<Qubit>) -> Result<()> {
    if len == 0 {
        return invalid("uniform superposition over zero values");
    }
    let (k, odd, n) = split(len);
    if reg.len() < k + n {
        return invalid(format!("{} qubits cannot hold {len} values", reg.len()));
    }
    if let Some(ct) = ctrl {
        normalize(c, ct);
    }
    let cq = ctrl.map(|ct| ct.qubit);
    let had = |c: &mut Circuit, q: Qubit| match cq {
        Some(x) => controlled_h(c, Control::on(x), q),
        None => c.h(q),
    };
    for &q in &reg[..k] {
        had(c, q);
    }
    if odd > 1 {
        let high = &reg[k..k + n];
        let r = flag.unwrap_or_else(|| c.alloc_ancilla());
        // success amplitude 1/2 before the round, so one round is exact
        let theta = 2.0 * ((1u64 << n) as f64 / (4.0 * odd as f64)).sqrt().acos();
        for &q in high {
            had(c, q);
        }
        match cq {
            Some(x) => controlled_ry(c, Control::on(x), theta, r),
            None => c.ry(theta, r),
        }
        // reflect about the good subspace: index < odd and r = 0
        let lt = c.alloc_ancilla();
        let cmp = less_than_const(c, high, odd as u64, lt);
        let mut ctrls: Vec<Control> = cq.map(Control::on).into_iter().collect();
        ctrls.extend([Control::on(lt), Control::off(r)]);
        let (ind, scope) = and_all(c, &ctrls);
        c.z(ind.qubit);
        scope.undo(c);
        cmp.undo(c);
        c.free_ancilla(lt);

        c.ry(-theta, r);
        for &q in high {
            c.h(q);
        }
        let mut zero: Vec<Control> = cq.map(Control::on).into_iter().collect();
        zero.extend(high.iter().map(|&q| Control::off(q)));
        zero.push(Control::off(r));
        multi_cz(c, &zero);
        for &q in high {
            c.h(q);
        }
        c.ry(theta, r);
        // the round leaves an overall sign of -1
        match cq {
            Some(x) => c.z(x),
            None => minus_one(c, r),
        }
        if flag.is_none() {
            c.free_ancilla(r);
        }
    }
    if let Some(ct) = ctrl {
        normalize(c, ct);
    }
    Ok(())
}

/// Registers: optional `ctrl`, then `reg` of `ceil(log2 len)` qubits (at least one).
pub fn build_uniform(len: usize, controlled: bool) -> Result<Circuit> {
    if len == 0 {
        return invalid("uniform superposition over zero values");
    }
    let mut c = Circuit::empty();
    let ctrl = if controlled { Some(Control::on(c.add_register("ctrl", 1)?[0])) } else { None };
    let reg = c.add_register("reg", bits_for(len).max(1))?;
    uniform(&mut c, ctrl, &reg, len)?;
    Ok(c)
}

/// T count of [`uniform`] (rotations excluded).
pub fn uniform_t_count(len: usize, controlled: bool) -> usize {
    let (k, odd, n) = split(len);
    match (controlled, odd > 1) {
        (false, false) => 0,
        (true, false) => 2 * k,
        (false, true) => 8 * n,
        (true, true) => 2 * k + 10 * n + 8,
    }
}
