//! Spinful Hubbard model on an `M x M` periodic square lattice.

use serde::{Deserialize, Serialize};

use super::fermion::FermionOperator;
use super::lcu::{LcuHamiltonian, LcuTerm, PauliString};
use crate::error::{invalid, Result};
use crate::primitives::Pauli;
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HubbardSpec<T> {
    pub m: usize,
    pub t: T,
    pub u: T,
}

/// Hop directions in index order: `+x`, `+y`, `-x`, `-y`.
pub const DIRECTIONS: [(isize, isize); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];

impl<T: Real> HubbardSpec<T> {
    pub fn new(m: usize, t: T, u: T) -> Result<Self> {
        if m < 2 {
            return invalid(format!("lattice side must be at least 2, got {m}"));
        }
        if !(t >= T::zero()) || !(u >= T::zero()) || !t.is_finite() || !u.is_finite() {
            return invalid("t and u must be finite and non-negative");
        }
        Ok(HubbardSpec { m, t, u })
    }

    pub fn sites(&self) -> usize {
        self.m * self.m
    }

    pub fn spin_orbitals(&self) -> usize {
        2 * self.sites()
    }

    /// `2 N t + N u / 2`, the term weights plus the identity offset.
    pub fn lambda(&self) -> T {
        let n = T::from_usize_lossy(self.spin_orbitals());
        T::lit(2.0) * n * self.t + n * self.u / T::lit(2.0)
    }

    /// Site reached from `p = px + M py` by one step in direction `dir`.
    pub fn neighbor(&self, p: usize, dir: usize) -> usize {
        let m = self.m as isize;
        let (dx, dy) = DIRECTIONS[dir];
        let (x, y) = ((p % self.m) as isize, (p / self.m) as isize);
        ((x + dx).rem_euclid(m) + m * (y + dy).rem_euclid(m)) as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HubTermKind {
    /// `-Z_{p,sigma}`
    Onsite { p: usize, sigma: usize },
    /// `Z_{p,0} Z_{p,1}`
    Pair { p: usize },
    /// `-X Z.. X` or `-Y Z.. Y` between `p` and its neighbor in `dir`
    Hop { p: usize, dir: usize, sigma: usize },
}

pub fn hub_term_kinds(n_sites: usize) -> Vec<HubTermKind> {
    let mut out: Vec<HubTermKind> = (0..n_sites).map(|p| HubTermKind::Pair { p }).collect();
    for sigma in 0..2 {
        out.extend((0..n_sites).map(|p| HubTermKind::Onsite { p, sigma }));
    }
    for sigma in 0..2 {
        for p in 0..n_sites {
            out.extend((0..4).map(|dir| HubTermKind::Hop { p, dir, sigma }));
        }
    }
    out
}

/// Jordan-Wigner LCU of `-t sum_{p, dir, sigma} a+_p a_{p+dir} + u sum_p n_{p,0} n_{p,1}`.
/// The identity part `N u / 8` is the offset; the term weights sum to
/// `2 N t + 3 N u / 8`.
pub fn hubbard_terms<T: Real>(spec: &HubbardSpec<T>) -> LcuHamiltonian<T> {
    let n = spec.sites();
    let quarter = spec.u / T::lit(4.0);
    let half_t = spec.t / T::lit(2.0);
    let mut terms = Vec::new();
    for kind in hub_term_kinds(n) {
        let term = match kind {
            HubTermKind::Pair { p } => LcuTerm::signed(quarter, PauliString::zz(p, n + p)),
            HubTermKind::Onsite { p, sigma } => LcuTerm::signed(-quarter, PauliString::single(sigma * n + p, Pauli::Z)),
            HubTermKind::Hop { p, dir, sigma } => {
                let q = spec.neighbor(p, dir);
                let axis = if p < q { Pauli::X } else { Pauli::Y };
                LcuTerm::signed(-half_t, PauliString::jw_hop(sigma * n + p, sigma * n + q, axis))
            }
        };
        terms.push(term);
    }
    let offset = quarter * T::from_usize_lossy(n);
    LcuHamiltonian::new(2 * n, terms, offset).expect("generated terms are valid")
}

pub fn hubbard_fermion<T: Real>(spec: &HubbardSpec<T>) -> FermionOperator {
    let n = spec.sites();
    let mut op = FermionOperator::new(2 * n);
    for s in 0..2 {
        for p in 0..n {
            for dir in 0..4 {
                op.hop(s * n + p, s * n + spec.neighbor(p, dir), -spec.t.as_f64());
            }
        }
    }
    for p in 0..n {
        op.density(p, n + p, spec.u.as_f64());
    }
    op
}
