//! Plane-wave dual basis on a periodic `M^D` grid.

use serde::{Deserialize, Serialize};

use super::fermion::FermionOperator;
use super::lcu::{LcuHamiltonian, LcuTerm, PauliString};
use crate::error::{invalid, Error, Result};
use crate::primitives::Pauli;
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Nucleus<T> {
    pub position: [T; 3],
    pub charge: T,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualBasisSpec<T> {
    /// Grid points per axis.
    pub m: usize,
    /// Spatial dimension, 1 to 3.
    pub d: usize,
    /// Cell volume in Bohr^D.
    pub volume: T,
    pub nuclei: Vec<Nucleus<T>>,
}

/// Volume holding `electrons` at Wigner-Seitz radius `rs`.
pub fn wigner_seitz_volume<T: Real>(electrons: T, rs: T) -> T {
    T::lit(4.0) * T::PI() / T::lit(3.0) * electrons * rs.powi(3)
}

impl<T: Real> DualBasisSpec<T> {
    pub fn new(m: usize, d: usize, volume: T, nuclei: Vec<Nucleus<T>>) -> Result<Self> {
        let s = DualBasisSpec { m, d, volume, nuclei };
        s.validate()?;
        Ok(s)
    }

    /// Uniform electron gas at half filling (`N/2` electrons).
    pub fn jellium(m: usize, d: usize, rs: T) -> Result<Self> {
        if !(rs > T::zero()) {
            return Err(Error::Domain(format!("r_s must be positive, got {rs}")));
        }
        let sites = m.checked_pow(d as u32).unwrap_or(0);
        DualBasisSpec::new(m, d, wigner_seitz_volume(T::from_usize_lossy(sites), rs), Vec::new())
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return invalid("grid needs at least one point per axis");
        }
        if !(1..=3).contains(&self.d) {
            return invalid(format!("dimension must be 1, 2 or 3, got {}", self.d));
        }
        if !(self.volume > T::zero()) || !self.volume.is_finite() {
            return Err(Error::Domain(format!("cell volume must be positive, got {}", self.volume)));
        }
        if self.nuclei.iter().any(|n| !(n.charge > T::zero())) {
            return invalid("nuclear charges must be positive");
        }
        Ok(())
    }

    pub fn sites(&self) -> usize {
        self.m.pow(self.d as u32)
    }

    pub fn spin_orbitals(&self) -> usize {
        2 * self.sites()
    }
}

/// Qubit of spin orbital `(p, sigma)`: `sigma M^D + sum_j p_j M^j`, with
/// `sigma = 1` for spin down.
pub fn spin_orbital_index(p: &[usize], sigma: usize, m: usize, d: usize) -> Result<usize> {
    if p.len() != d {
        return invalid(format!("site has {} components, expected {d}", p.len()));
    }
    if sigma > 1 {
        return invalid(format!("spin label {sigma} is not 0 or 1"));
    }
    if let Some(&bad) = p.iter().find(|&&x| x >= m) {
        return invalid(format!("site component {bad} outside 0..{m}"));
    }
    let site = p.iter().rev().fold(0, |acc, &x| acc * m + x);
    Ok(sigma * m.pow(d as u32) + site)
}

/// Components of a flat site index, lowest axis first.
pub fn site_components(site: usize, m: usize, d: usize) -> Vec<usize> {
    let mut v = site;
    (0..d)
        .map(|_| {
            let x = v % m;
            v /= m;
            x
        })
        .collect()
}

/// Flat index of `p - q` with periodic wrap in every axis.
pub fn site_difference(p: usize, q: usize, m: usize, d: usize) -> usize {
    let (a, b) = (site_components(p, m, d), site_components(q, m, d));
    a.iter().zip(&b).rev().fold(0, |acc, (&x, &y)| acc * m + (x + m - y) % m)
}

/// Per-axis momentum labels `-(M/2) .. M - M/2 - 1`.
pub fn mode_labels(m: usize) -> Vec<i64> {
    let lo = -((m / 2) as i64);
    (0..m as i64).map(|i| lo + i).collect()
}

/// Coefficient tables indexed by flat site index (or site difference).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualBasisCoefficients<T> {
    pub m: usize,
    pub d: usize,
    pub kinetic: Vec<T>,
    pub external: Vec<T>,
    pub coulomb: Vec<T>,
}

impl<T: Real> DualBasisCoefficients<T> {
    pub fn sites(&self) -> usize {
        self.kinetic.len()
    }

    pub fn spin_orbitals(&self) -> usize {
        2 * self.sites()
    }

    /// Sum of `V` over every other spin orbital, seen from site `p`.
    pub fn coulomb_field(&self, p: usize) -> T {
        let n = self.sites();
        let mut acc = self.coulomb[0];
        for q in (0..n).filter(|&q| q != p) {
            acc = acc + T::lit(2.0) * self.coulomb[site_difference(p, q, self.m, self.d)];
        }
        acc
    }

    /// Coefficient of `Z_{p,sigma}` after the Jordan-Wigner transform.
    pub fn z_coefficient(&self, p: usize) -> T {
        -(self.kinetic[0] + self.external[p] + self.coulomb_field(p)) / T::lit(2.0)
    }
}

/// `T(p) = sum_nu k^2 cos(k.r_p) / (2 M^D)`,
/// `U(p) = -(4 pi / Omega) sum_j zeta_j sum_{nu != 0} cos(k.R_j - k.r_p) / k^2`,
/// `V(p) = (2 pi / Omega) sum_{nu != 0} cos(k.r_p) / k^2`,
/// with `k = 2 pi nu / Omega^(1/D)` and `r_p = p Omega^(1/D) / M`.
pub fn dual_basis_coefficients<T: Real>(spec: &DualBasisSpec<T>) -> Result<DualBasisCoefficients<T>> {
    spec.validate()?;
    let (m, d) = (spec.m, spec.d);
    let n = spec.sites();
    let two_pi = T::lit(2.0) * T::PI();
    let side = spec.volume.powf(T::one() / T::from_usize_lossy(d));
    let kunit = two_pi / side;
    let labels = mode_labels(m);
    let modes: Vec<Vec<i64>> = (0..n).map(|i| site_components(i, m, d).iter().map(|&c| labels[c]).collect()).collect();
    let mf = T::from_usize_lossy(m);
    let nf = T::from_usize_lossy(n);

    let mut kinetic = vec![T::zero(); n];
    let mut coulomb = vec![T::zero(); n];
    let mut external = vec![T::zero(); n];
    for (p, ((t, v), u)) in kinetic.iter_mut().zip(&mut coulomb).zip(&mut external).enumerate() {
        let pc = site_components(p, m, d);
        for nu in &modes {
            let dot: i64 = nu.iter().zip(&pc).map(|(&a, &b)| a * b as i64).sum();
            // k.r_p = 2 pi nu.p / M does not depend on the cell size
            let kr = two_pi * T::from_i64(dot).unwrap() / mf;
            let nu2: i64 = nu.iter().map(|a| a * a).sum();
            let k2 = kunit * kunit * T::from_i64(nu2).unwrap();
            *t = *t + k2 * kr.cos();
            if nu2 == 0 {
                continue;
            }
            *v = *v + kr.cos() / k2;
            for nuc in &spec.nuclei {
                let k_dot_r = nu.iter().enumerate().fold(T::zero(), |acc, (j, &a)| acc + kunit * T::from_i64(a).unwrap() * nuc.position[j]);
                *u = *u + nuc.charge * (k_dot_r - kr).cos() / k2;
            }
        }
        *t = *t / (T::lit(2.0) * nf);
        *v = *v * two_pi / spec.volume;
        *u = -*u * T::lit(2.0) * two_pi / spec.volume;
    }
    Ok(DualBasisCoefficients { m, d, kinetic, external, coulomb })
}

/// Term kinds of the dual-basis LCU, in the order [`jw_terms`] emits them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChemTermKind {
    /// `Z_{p,sigma}`
    Onsite { p: usize, sigma: usize },
    /// `X Z.. X` for `p < q`, `Y Z.. Y` for `p > q`
    Hop { p: usize, q: usize, sigma: usize },
    /// `Z_{p,alpha} Z_{q,beta}`, `(p, alpha) != (q, beta)`
    Density { p: usize, alpha: usize, q: usize, beta: usize },
}

/// Every term with its kind, in emission order.
pub fn chem_term_kinds(n_sites: usize) -> Vec<ChemTermKind> {
    let mut out = Vec::new();
    for sigma in 0..2 {
        for p in 0..n_sites {
            out.push(ChemTermKind::Onsite { p, sigma });
        }
    }
    for sigma in 0..2 {
        for p in 0..n_sites {
            for q in (0..n_sites).filter(|&q| q != p) {
                out.push(ChemTermKind::Hop { p, q, sigma });
            }
        }
    }
    for alpha in 0..2 {
        for p in 0..n_sites {
            for beta in 0..2 {
                for q in 0..n_sites {
                    if (p, alpha) != (q, beta) {
                        out.push(ChemTermKind::Density { p, alpha, q, beta });
                    }
                }
            }
        }
    }
    out
}

/// Jordan-Wigner LCU of
/// `sum_{pq sigma} T(p-q) a+_{p sigma} a_{q sigma} + sum U(p) n_{p sigma}
///  + sum_{(p alpha) != (q beta)} V(p-q) n_{p alpha} n_{q beta}`.
/// Each ordered hop pair carries one string (`XZX` or `YZY`) so the list
/// matches the SELECT index space.
pub fn jw_terms<T: Real>(c: &DualBasisCoefficients<T>) -> LcuHamiltonian<T> {
    let n = c.sites();
    let half = T::lit(0.5);
    let quarter = T::lit(0.25);
    let f = |p: usize, s: usize| s * n + p;
    let mut terms = Vec::new();
    for kind in chem_term_kinds(n) {
        let (coef, string) = match kind {
            ChemTermKind::Onsite { p, sigma } => (c.z_coefficient(p), PauliString::single(f(p, sigma), Pauli::Z)),
            ChemTermKind::Hop { p, q, sigma } => {
                let axis = if p < q { Pauli::X } else { Pauli::Y };
                (c.kinetic[site_difference(p, q, c.m, c.d)] * half, PauliString::jw_hop(f(p, sigma), f(q, sigma), axis))
            }
            ChemTermKind::Density { p, alpha, q, beta } => {
                (c.coulomb[site_difference(p, q, c.m, c.d)] * quarter, PauliString::zz(f(p, alpha), f(q, beta)))
            }
        };
        terms.push(LcuTerm::signed(coef, string));
    }
    let mut offset = T::zero();
    for p in 0..n {
        offset = offset + (c.kinetic[0] + c.external[p]) + c.coulomb_field(p) * half;
    }
    LcuHamiltonian::new(2 * n, terms, offset).expect("generated terms are valid")
}

/// `lambda` of [`jw_terms`] without materializing the strings.
pub fn dual_basis_lambda<T: Real>(c: &DualBasisCoefficients<T>) -> T {
    let n = c.sites();
    let mut lam = T::zero();
    for p in 0..n {
        lam = lam + T::lit(2.0) * c.z_coefficient(p).abs();
        for q in 0..n {
            let diff = site_difference(p, q, c.m, c.d);
            if p != q {
                // two spins for hops, four spin pairs for densities
                lam = lam + c.kinetic[diff].abs() + c.coulomb[diff].abs();
            } else {
                lam = lam + c.coulomb[0].abs() * T::lit(0.5);
            }
        }
    }
    lam
}

/// The same Hamiltonian as a fermion operator, for brute-force checks.
pub fn dual_basis_fermion<T: Real>(c: &DualBasisCoefficients<T>) -> FermionOperator {
    let n = c.sites();
    let mut op = FermionOperator::new(2 * n);
    for s in 0..2 {
        for p in 0..n {
            for q in 0..n {
                op.hop(s * n + p, s * n + q, c.kinetic[site_difference(p, q, c.m, c.d)].as_f64());
            }
            op.density(s * n + p, s * n + p, c.external[p].as_f64());
        }
    }
    for a in 0..2 * n {
        for b in (0..2 * n).filter(|&b| b != a) {
            op.density(a, b, c.coulomb[site_difference(a % n, b % n, c.m, c.d)].as_f64());
        }
    }
    op
}
