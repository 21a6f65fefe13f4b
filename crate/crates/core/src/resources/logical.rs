//! Closed-form logical costs: T gates, ancillae and walk queries.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::phase_est::{pea_bits, query_bound};
use crate::scalar::Real;
use crate::state_prep::compute_mu;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogicalReport {
    pub n: usize,
    pub lambda: f64,
    #[serde(rename = "dE")]
    pub delta_e: f64,
    pub m: u32,
    pub mu: u32,
    pub t_total: f64,
    /// T count as tabulated. For Hubbard the `N^2` coefficient is rounded up
    /// to two significant figures (`1.8e4` at `u = 4t`, `dE = t/100`);
    /// otherwise equal to `t_total`.
    pub t_quoted: f64,
    pub ancilla_qubits: u32,
    pub total_logical_qubits: u32,
    /// `sqrt2 pi lambda / dE`.
    pub queries: f64,
    /// `2^m`, what a built circuit uses.
    pub queries_circuit: f64,
    /// Ancilla count from the uncollapsed sum of logs, kept for comparison.
    pub ancilla_direct: u32,
}

fn check<T: Real>(n: usize, lambda: T, delta_e: T) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("need at least one spin orbital".into()));
    }
    if !(delta_e > T::zero()) || !(lambda >= delta_e) {
        return Err(Error::Domain(format!("need 0 < dE <= lambda, got dE={delta_e}, lambda={lambda}")));
    }
    Ok(())
}

fn ceil_log2<T: Real>(x: T) -> u32 {
    x.log2().ceil().to_u32().unwrap_or(0)
}

fn base<T: Real>(n: usize, lambda: T, delta_e: T) -> Result<LogicalReport> {
    let m = pea_bits(lambda, delta_e)?;
    Ok(LogicalReport {
        n,
        lambda: lambda.as_f64(),
        delta_e: delta_e.as_f64(),
        m,
        mu: compute_mu(lambda, delta_e, T::zero())?,
        t_total: 0.0,
        t_quoted: 0.0,
        ancilla_qubits: 0,
        total_logical_qubits: 0,
        queries: query_bound(lambda, delta_e).as_f64(),
        queries_circuit: 2f64.powi(m as i32),
        ancilla_direct: 0,
    })
}

fn round_up_2sf(x: f64) -> f64 {
    let unit = 10f64.powf(x.log10().floor() - 1.0);
    (x / unit).ceil() * unit
}

/// Dual-basis electronic structure with `S = 12N`, `P = 6N`.
pub fn logical_chem<T: Real>(n: usize, lambda: T, delta_e: T) -> Result<LogicalReport> {
    check(n, lambda, delta_e)?;
    let mut r = base(n, lambda, delta_e)?;
    let nn = T::from_usize_lossy(n);
    let s2p = T::SQRT_2() * T::PI();
    r.t_total = (T::lit(24.0) * s2p * lambda * nn / delta_e).as_f64();
    r.t_quoted = r.t_total;
    let x = T::lit(4.0) * s2p * lambda.powi(3) * nn.powi(5) / delta_e.powi(3);
    r.ancilla_qubits = ceil_log2(x);
    let direct = (s2p * lambda / (T::lit(2.0) * delta_e)).log2()
        + T::lit(2.0) * (T::lit(2.0) * T::SQRT_2() * lambda / delta_e).log2()
        + T::lit(5.0) * nn.log2();
    r.ancilla_direct = direct.ceil().to_u32().unwrap_or(0);
    r.total_logical_qubits = n as u32 + r.ancilla_qubits;
    Ok(r)
}

/// Spinful planar Hubbard model, `lambda = 2Nt + Nu/2`, `S = 10N`.
///
/// Ancillae are `ceil(log2(2 sqrt2 pi lambda / (N dE))) + 3 ceil(log2 N)`,
/// which is `12 + 3 ceil(log2 N)` at `u = 4t`, `dE = t/100`.
pub fn logical_hub<T: Real>(n: usize, t: T, u: T, delta_e: T) -> Result<LogicalReport> {
    if t < T::zero() || u < T::zero() || !(t > T::zero() || u > T::zero()) {
        return Err(Error::Domain(format!("need t, u >= 0 and not both zero, got t={t}, u={u}")));
    }
    let nn = T::from_usize_lossy(n);
    let lambda = T::lit(2.0) * nn * t + nn * u / T::lit(2.0);
    check(n, lambda, delta_e)?;
    let mut r = base(n, lambda, delta_e)?;
    let s2p = T::SQRT_2() * T::PI();
    let coef = ((T::lit(20.0) * s2p * t + T::lit(5.0) * s2p * u) / delta_e).as_f64();
    r.t_total = coef * (n as f64).powi(2);
    r.t_quoted = round_up_2sf(coef) * (n as f64).powi(2);
    // lambda / 4N is t at u = 4t
    r.ancilla_qubits = ceil_log2(T::lit(2.0) * s2p * lambda / (nn * delta_e)) + 3 * ceil_log2(nn);
    r.ancilla_direct = ceil_log2(s2p * lambda * nn.powi(3) / (T::lit(2.0) * delta_e));
    r.total_logical_qubits = n as u32 + r.ancilla_qubits;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chem_row() {
        let r = logical_chem(54, 5.0, 0.0016).unwrap();
        assert!((r.t_total / 1.8e7 - 1.0).abs() < 0.05);
        assert_eq!(r.ancilla_qubits, 68);
        assert_eq!(r.total_logical_qubits, 122);
        assert!(logical_chem(54, 5.0, 0.0).is_err());
        let f = logical_chem(54, 5.0f32, 0.0016).unwrap();
        assert!((f.t_total / r.t_total - 1.0).abs() < 1e-5);
    }

    #[test]
    fn hubbard_row() {
        let r = logical_hub(72, 1.0, 4.0, 0.01).unwrap();
        assert_eq!(r.ancilla_qubits, 33);
        assert_eq!(r.total_logical_qubits, 105);
        assert!((r.lambda - 288.0).abs() < 1e-12);
        assert!(r.t_total < 1.8e4 * 72.0 * 72.0);
        assert!((r.t_quoted - 1.8e4 * 72.0 * 72.0).abs() < 1e-3);
        assert!(logical_hub(72, 1.0, 4.0, -1.0).is_err());
        assert!(logical_hub(0, 1.0, 4.0, 0.01).is_err());
    }
}
