//! The phase estimation schedule: a zero-controlled walk for the sign
//! ambiguity, then `W^{2^(j-1)}` or its inverse on control bit `j`, then an
//! inverse QFT on the control register.
//!
//! With `m + 1` control qubits the walk is applied `2^m` times in total and
//! the control register carries the phase `e^{-i phi x}`. The schedule
//! opens with PREPARE, so the system register is the only input.
//!
//! A dithered schedule adds a known phase `theta` to the control register
//! before the QFT. Averaging over `theta` across one readout step makes the
//! estimate covariant, so its error no longer depends on where `phi` sits
//! between grid points.

use num_complex::Complex64 as C64;

use super::chi::{append_chi, chi_amplitudes};
use super::qft::append_inverse_qft;
use crate::circuit::{Circuit, Qubit};
use crate::error::{invalid, Result};
use crate::oracles::WalkSpec;
use crate::sim::walk::lift_state;
use crate::sim::{gather, SparseState};

/// Largest `m` the builder accepts; the circuit holds `2^m` walks.
pub const MAX_PEA_BITS: u32 = 24;

pub struct PeaCircuit {
    pub circuit: Circuit,
    /// `m + 1` control qubits, bit `k` on `control[k]`.
    pub control: Vec<Qubit>,
    pub system: Vec<Qubit>,
    pub m: u32,
    pub select_count: usize,
    pub lambda: f64,
    /// Extra control phase, subtracted again when decoding.
    pub dither: f64,
}

pub fn build_pea_schedule(spec: &WalkSpec, m: u32) -> Result<PeaCircuit> {
    build_pea_schedule_dithered(spec, m, 0.0)
}

/// Same schedule with `e^{-i theta x}` added to the control register.
pub fn build_pea_schedule_dithered(spec: &WalkSpec, m: u32, theta: f64) -> Result<PeaCircuit> {
    if m == 0 {
        return invalid("phase estimation needs m >= 1");
    }
    if m > MAX_PEA_BITS {
        return invalid(format!("m = {m} exceeds {MAX_PEA_BITS}"));
    }
    let mut c = spec.base.clone();
    let control = c.add_register("pea", m as usize + 1)?;
    let flag = c.add_register("pea_flag", 1)?[0];
    spec.oracle.prepare(&mut c)?;
    append_chi(&mut c, &control, flag)?;
    spec.append_walk_if_zero(&mut c, control[0])?;
    let mut select_count = 1;
    for j in 1..=m as usize {
        let n = 1usize << (j - 1);
        spec.append_reversible_power(&mut c, control[j], n)?;
        select_count += n;
    }
    if theta != 0.0 {
        for (k, &q) in control.iter().enumerate() {
            c.rz(-theta * (1u64 << k) as f64, q);
        }
    }
    append_inverse_qft(&mut c, &control)?;
    Ok(PeaCircuit { circuit: c, control, system: spec.oracle.system(), m, select_count, lambda: spec.lambda(), dither: theta })
}

/// Phase estimate for outcome `y` of a `bits`-qubit register, in `(-pi, pi]`.
pub fn decode_phase(y: usize, bits: u32) -> f64 {
    let k = (1u64 << bits) as f64;
    let pi = std::f64::consts::PI;
    let mut phi = -2.0 * pi * y as f64 / k;
    while phi <= -pi {
        phi += 2.0 * pi;
    }
    phi
}

/// Output distribution over the control register.
#[derive(Clone, Debug)]
pub struct PhaseDistribution {
    pub bits: u32,
    pub probs: Vec<f64>,
    /// Subtracted from every decoded phase.
    pub shift: f64,
}

impl PhaseDistribution {
    /// Exact distribution for an eigenphase `phi`, from the control-state
    /// amplitudes and a discrete Fourier sum. Circuit-free.
    pub fn ideal(bits: u32, phi: f64) -> PhaseDistribution {
        let a = chi_amplitudes(bits);
        let k = a.len();
        let probs = (0..k)
            .map(|y| {
                let s: C64 = a
                    .iter()
                    .enumerate()
                    .map(|(x, &ax)| {
                        let t = -phi * x as f64 - 2.0 * std::f64::consts::PI * ((x * y) % k) as f64 / k as f64;
                        C64::from_polar(ax, t)
                    })
                    .sum();
                s.norm_sqr() / k as f64
            })
            .collect();
        PhaseDistribution { bits, probs, shift: 0.0 }
    }

    pub fn phases(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.probs.iter().enumerate().map(move |(y, &p)| (wrap(decode_phase(y, self.bits) - self.shift), p))
    }

    /// `|<e^{i(phi_hat - phi)}>|^{-2} - 1`.
    pub fn holevo_variance(&self, phi: f64) -> f64 {
        let s: C64 = self.phases().map(|(h, p)| C64::from_polar(p, h - phi)).sum();
        1.0 / s.norm_sqr() - 1.0
    }

    /// Mean square error of `lambda cos(phi_hat)` against `e`.
    pub fn energy_mse(&self, e: f64, lambda: f64) -> f64 {
        self.phases().map(|(h, p)| p * (lambda * h.cos() - e).powi(2)).sum()
    }

    /// Probability that `lambda cos(phi_hat)` lands within `de` of `e`.
    pub fn prob_within(&self, e: f64, lambda: f64, de: f64) -> f64 {
        self.phases().filter(|(h, _)| (lambda * h.cos() - e).abs() <= de).map(|(_, p)| p).sum()
    }

    /// Largest `|P(y) - P(-y)|`.
    pub fn asymmetry(&self) -> f64 {
        let k = self.probs.len();
        (0..k).map(|y| (self.probs[y] - self.probs[(k - y) % k]).abs()).fold(0.0, f64::max)
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }
}

/// Runs the schedule on `|0>|psi>` and returns the control-register marginal.
pub fn pea_distribution(pc: &PeaCircuit, psi: &[C64]) -> Result<PhaseDistribution> {
    if psi.len() != 1 << pc.system.len() {
        return invalid("system state has the wrong dimension");
    }
    let mut s = lift_state(&SparseState::basis(0), &pc.system, psi);
    s.run(&pc.circuit, true)?;
    let bits = pc.m + 1;
    let mut probs = vec![0.0; 1 << bits];
    for (key, a) in s.entries() {
        probs[gather(key, &pc.control)] += a.norm_sqr();
    }
    Ok(PhaseDistribution { bits, probs, shift: pc.dither })
}

fn wrap(mut phi: f64) -> f64 {
    let pi = std::f64::consts::PI;
    while phi <= -pi {
        phi += 2.0 * pi;
    }
    while phi > pi {
        phi -= 2.0 * pi;
    }
    phi
}

/// Holevo variance of the mixture of `dists` (equal weights), e.g. one
/// distribution per dither value.
pub fn averaged_holevo_variance(dists: &[PhaseDistribution], phi: f64) -> f64 {
    let n = dists.len() as f64;
    let s: C64 = dists
        .iter()
        .flat_map(|d| d.phases())
        .map(|(h, p)| C64::from_polar(p / n, h - phi))
        .sum();
    1.0 / s.norm_sqr() - 1.0
}

/// Dither values `j * 2 pi / (2^bits n)` for `j < n`. Two already average
/// the sharpness exactly; the error is periodic in the dither with one
/// readout step as period.
pub fn dither_grid(bits: u32, n: usize) -> Vec<f64> {
    let step = 2.0 * std::f64::consts::PI / (1u64 << bits) as f64;
    (0..n).map(|j| step * j as f64 / n as f64).collect()
}

/// `tan^2(pi / (2^bits + 1))`.
pub fn holevo_bound(bits: u32) -> f64 {
    (std::f64::consts::PI / ((1u64 << bits) as f64 + 1.0)).tan().powi(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ideal_distribution_is_normalized() {
        for bits in 2..=7 {
            for phi in [0.0, 0.3, 1.1, -2.5, 3.0] {
                let d = PhaseDistribution::ideal(bits, phi);
                assert!((d.total() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn phase_averaged_sharpness_meets_bound() {
        // The bound belongs to the continuous phase measurement; the QFT
        // readout reaches it once the sharpness is averaged over the phase.
        for bits in 3..=7 {
            let n = 4096;
            let mean: f64 = (0..n)
                .map(|j| {
                    let phi = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * j as f64 / n as f64;
                    let v = PhaseDistribution::ideal(bits, phi).holevo_variance(phi);
                    1.0 / (1.0 + v).sqrt()
                })
                .sum::<f64>()
                / n as f64;
            let v = 1.0 / (mean * mean) - 1.0;
            assert!(v <= holevo_bound(bits) * (1.0 + 1e-6), "bits={bits} v={v}");
        }
    }

    #[test]
    fn dithered_ideal_meets_bound_pointwise() {
        // shifting phi by theta and decoding minus theta
        for bits in 3..=7 {
            for phi in [0.0, 0.013, 0.4, 1.7, -2.9] {
                let dists: Vec<_> = dither_grid(bits, 2)
                    .into_iter()
                    .map(|t| PhaseDistribution { shift: t, ..PhaseDistribution::ideal(bits, phi + t) })
                    .collect();
                let v = averaged_holevo_variance(&dists, phi);
                assert!((v / holevo_bound(bits) - 1.0).abs() < 1e-9, "bits={bits} phi={phi} v={v}");
            }
        }
    }

    #[test]
    fn decode_range() {
        assert_eq!(decode_phase(0, 3), 0.0);
        assert!((decode_phase(4, 3) - std::f64::consts::PI).abs() < 1e-15);
        assert!((decode_phase(1, 3) + std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    }
}
