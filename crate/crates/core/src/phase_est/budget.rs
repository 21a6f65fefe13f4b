//! Error splits and the bit count of phase estimation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::state_prep::compute_mu;

fn check_de<T: Real>(lambda: T, delta_e: T) -> Result<()> {
    if !(delta_e > T::zero()) {
        return Err(Error::Domain(format!("energy error must be positive, got {delta_e}")));
    }
    if !(lambda > T::zero()) || delta_e > lambda {
        return Err(Error::Domain(format!("need 0 < dE <= lambda, got dE={delta_e}, lambda={lambda}")));
    }
    Ok(())
}

/// `sqrt2 pi lambda / dE`, the query bound quoted in resource tables.
pub fn query_bound<T: Real>(lambda: T, delta_e: T) -> T {
    T::SQRT_2() * T::PI() * lambda / delta_e
}

/// Phase bits `m = ceil(log2(sqrt2 pi lambda / (2 dE)))`.
pub fn pea_bits<T: Real>(lambda: T, delta_e: T) -> Result<u32> {
    check_de(lambda, delta_e)?;
    let x = (query_bound(lambda, delta_e) / T::lit(2.0)).log2().ceil();
    x.to_u32().ok_or_else(|| Error::Domain(format!("bit count {x} out of range")))
}

/// Allowed systematic phase error from PREPARE.
pub fn eps_prep<T: Real>(lambda: T, delta_e: T) -> T {
    T::SQRT_2() * delta_e / (T::lit(4.0) * lambda)
}

/// Allowed rotation error in the inverse QFT.
pub fn eps_qft<T: Real>(lambda: T, delta_e: T) -> T {
    eps_prep(lambda, delta_e) / T::PI()
}

/// Largest per-coefficient deviation that keeps the phase error within
/// [`eps_prep`].
pub fn coefficient_tolerance<T: Real>(delta_e: T, lambda: T, n_terms: usize, norm_bound: T) -> Result<T> {
    check_de(lambda, delta_e)?;
    if n_terms == 0 {
        return Err(Error::Domain("no terms".into()));
    }
    if !(norm_bound < lambda) || norm_bound < T::zero() {
        return Err(Error::Domain(format!("norm bound {norm_bound} must lie in [0, lambda={lambda})")));
    }
    let l = T::from_usize_lossy(n_terms);
    let r = norm_bound / lambda;
    let damp = T::one() + delta_e * delta_e / (T::lit(8.0) * lambda * lambda);
    Ok(T::SQRT_2() * delta_e / (T::lit(4.0) * l * damp) * (T::one() - r * r))
}

/// `E = lambda cos(phi)`. Both signs of an eigenphase give the same energy.
pub fn energy_from_phase<T: Real>(phi: T, lambda: T) -> T {
    lambda * phi.cos()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorBudget {
    pub lambda: f64,
    #[serde(rename = "dE")]
    pub delta_e: f64,
    pub m: u32,
    pub mu: u32,
    pub delta: f64,
    pub eps_prep: f64,
    pub eps_qft: f64,
    pub queries_bound: f64,
    pub queries_circuit: u64,
}

impl ErrorBudget {
    pub fn new<T: Real>(lambda: T, delta_e: T, n_terms: usize, norm_bound: T) -> Result<ErrorBudget> {
        let m = pea_bits(lambda, delta_e)?;
        if m >= 63 {
            return Err(Error::Domain(format!("{m} phase bits is beyond any circuit")));
        }
        Ok(ErrorBudget {
            lambda: lambda.as_f64(),
            delta_e: delta_e.as_f64(),
            m,
            mu: compute_mu(lambda, delta_e, norm_bound)?,
            delta: coefficient_tolerance(delta_e, lambda, n_terms, norm_bound)?.as_f64(),
            eps_prep: eps_prep(lambda, delta_e).as_f64(),
            eps_qft: eps_qft(lambda, delta_e).as_f64(),
            queries_bound: query_bound(lambda, delta_e).as_f64(),
            queries_circuit: 1 << m,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("budget serializes")
    }
}
