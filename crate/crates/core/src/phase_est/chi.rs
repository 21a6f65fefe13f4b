//! The optimal phase-estimation control state
//! `sqrt(2/(2^m+1)) sum_n sin(pi (n+1)/(2^m+1)) |n>`.

use crate::circuit::{Circuit, Control, Qubit};
use crate::error::{invalid, Result};
use crate::oracles::append_adjoint;
use crate::primitives::gadgets::{and_all, controlled_rz};

/// Target amplitudes on `m` qubits.
pub fn chi_amplitudes(m: u32) -> Vec<f64> {
    let k = (1u64 << m) as f64 + 1.0;
    let norm = (2.0 / k).sqrt();
    (0..1u64 << m).map(|n| norm * (std::f64::consts::PI * (n as f64 + 1.0) / k).sin()).collect()
}

/// Probability that the flag of the unamplified preparation reads 1.
pub fn chi_success_probability(m: u32) -> f64 {
    (1.0 + 2f64.powi(-(m as i32))) / 2.0
}

/// Hadamards, the `m` controlled rotations, the final rotation and the
/// Hadamard on the flag. Flag = 1 marks success.
fn append_a(c: &mut Circuit, reg: &[Qubit], flag: Qubit) {
    let k = (1u64 << reg.len()) as f64 + 1.0;
    let pi = std::f64::consts::PI;
    for &q in reg {
        c.h(q);
    }
    c.h(flag);
    for (j, &q) in reg.iter().enumerate() {
        // exp(i pi 2^j Z / (2^m + 1))
        let angle = -2.0 * pi * ((1u64 << j) as f64 / k).rem_euclid(2.0);
        controlled_rz(c, Control::on(q), angle, flag);
    }
    c.rz(-2.0 * pi / k, flag);
    c.h(flag);
}

/// Unamplified preparation followed by a measurement of the flag. Returns
/// the classical bit; the register holds the target state when it reads 1.
pub fn append_chi_measured(c: &mut Circuit, reg: &[Qubit], flag: Qubit) -> Result<usize> {
    if reg.is_empty() {
        return invalid("chi_m needs m >= 1");
    }
    append_a(c, reg, flag);
    Ok(c.measure(flag))
}

/// Deterministic preparation: one round of amplitude amplification with
/// phases chosen so the failure branch cancels exactly. Leaves `flag` in |0>.
pub fn append_chi(c: &mut Circuit, reg: &[Qubit], flag: Qubit) -> Result<()> {
    if reg.is_empty() {
        return invalid("chi_m needs m >= 1");
    }
    let p = chi_success_probability(reg.len() as u32);
    // 1 + u (1 + u p) = 0 kills the failure amplitude; |1 + u| = 1.
    let u = num_complex::Complex64::new(-1.0, (4.0 * p - 1.0).sqrt()) / (2.0 * p);
    let phi = (u + 1.0).arg();
    append_a(c, reg, flag);
    c.rz(phi, flag);
    append_adjoint(c, |c| {
        append_a(c, reg, flag);
        Ok(())
    })?;
    let mut zero: Vec<Control> = reg.iter().map(|&q| Control::off(q)).collect();
    zero.push(Control::off(flag));
    let (ind, scope) = and_all(c, &zero);
    c.rz(phi, ind.qubit);
    scope.undo(c);
    append_a(c, reg, flag);
    c.x(flag);
    Ok(())
}

/// Registers `chi` (m qubits) and `chi_flag`.
pub fn build_chi_m(m: u32, deterministic: bool) -> Result<Circuit> {
    if m == 0 {
        return invalid("chi_m needs m >= 1");
    }
    let mut c = Circuit::empty();
    let reg = c.add_register("chi", m as usize)?;
    let flag = c.add_register("chi_flag", 1)?[0];
    if deterministic {
        append_chi(&mut c, &reg, flag)?;
    } else {
        append_chi_measured(&mut c, &reg, flag)?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{simulate_branches, SimOptions, SparseState, StateVector};

    fn check_state(m: u32, s: &SparseState) {
        let want = chi_amplitudes(m);
        // global phase from the first amplitude
        let ph = s.get(0) / want[0];
        assert!((ph.norm() - 1.0).abs() < 1e-10);
        for (n, w) in want.iter().enumerate() {
            assert!((s.get(n as u128) - ph * w).norm() < 1e-10, "m={m} n={n}");
        }
        assert!((s.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn deterministic_matches_formula() {
        for m in 1..=6 {
            let c = build_chi_m(m, true).unwrap();
            let mut s = SparseState::basis(0);
            s.run(&c, true).unwrap();
            check_state(m, &s);
        }
    }

    #[test]
    fn m1_is_plus_state() {
        let a = chi_amplitudes(1);
        assert!((a[0] - a[1]).abs() < 1e-15 && (a[0] - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn measured_branch_probability() {
        for m in 1..=4 {
            let c = build_chi_m(m, false).unwrap();
            let init = StateVector::zero(c.width());
            let branches = simulate_branches(&c, &init, &SimOptions::default()).unwrap();
            let good = branches.iter().find(|b| b.outcomes[0]).unwrap();
            assert!((good.probability - chi_success_probability(m)).abs() < 1e-12);
            let want = chi_amplitudes(m);
            let flag = 1usize << m;
            let ph = good.state.amplitude(flag) / want[0];
            for (n, w) in want.iter().enumerate() {
                assert!((good.state.amplitude(flag | n) - ph * w).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn zero_bits_rejected() {
        assert!(build_chi_m(0, true).is_err());
    }
}
