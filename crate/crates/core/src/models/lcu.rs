//! Pauli strings and linear combinations of them.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::primitives::Pauli;
use crate::scalar::Real;

/// Tensor product of single-qubit Paulis, identity elsewhere. Factors are
/// kept sorted by qubit with at most one factor per qubit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct PauliString {
    factors: Vec<(usize, Pauli)>,
}

impl PauliString {
    pub fn identity() -> PauliString {
        PauliString::default()
    }

    pub fn new(mut factors: Vec<(usize, Pauli)>) -> Result<PauliString> {
        factors.sort_by_key(|f| f.0);
        if factors.windows(2).any(|w| w[0].0 == w[1].0) {
            return invalid("Pauli string names a qubit twice");
        }
        Ok(PauliString { factors })
    }

    pub fn single(q: usize, p: Pauli) -> PauliString {
        PauliString { factors: vec![(q, p)] }
    }

    /// `A_a Z_{a+1} ... Z_{b-1} A_b` for `a < b`.
    pub fn jw_hop(a: usize, b: usize, p: Pauli) -> PauliString {
        let (a, b) = (a.min(b), a.max(b));
        let mut factors = vec![(a, p)];
        factors.extend((a + 1..b).map(|q| (q, Pauli::Z)));
        factors.push((b, p));
        PauliString { factors }
    }

    pub fn zz(a: usize, b: usize) -> PauliString {
        PauliString::new(vec![(a, Pauli::Z), (b, Pauli::Z)]).expect("distinct qubits")
    }

    pub fn factors(&self) -> &[(usize, Pauli)] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn max_qubit(&self) -> Option<usize> {
        self.factors.last().map(|f| f.0)
    }

    /// Image of the basis state `x`: `P|x> = phase |x'>`.
    pub fn apply_basis(&self, x: u128) -> (u128, C64) {
        let mut y = x;
        let mut phase = C64::new(1.0, 0.0);
        for &(q, p) in &self.factors {
            let bit = (x >> q) & 1 == 1;
            match p {
                Pauli::X => y ^= 1 << q,
                Pauli::Y => {
                    y ^= 1 << q;
                    phase *= if bit { C64::new(0.0, -1.0) } else { C64::new(0.0, 1.0) };
                }
                Pauli::Z => {
                    if bit {
                        phase = -phase;
                    }
                }
            }
        }
        (y, phase)
    }

    pub fn matrix(&self, n: usize) -> DMatrix<C64> {
        let dim = 1usize << n;
        let mut m = DMatrix::zeros(dim, dim);
        for x in 0..dim {
            let (y, ph) = self.apply_basis(x as u128);
            m[(y as usize, x)] += ph;
        }
        m
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "I");
        }
        let parts: Vec<String> = self.factors.iter().map(|(q, p)| format!("{p:?}{q}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// One LCU term `sign * weight * P`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LcuTerm<T> {
    pub weight: T,
    pub negative: bool,
    pub string: PauliString,
}

impl<T: Real> LcuTerm<T> {
    /// Splits a signed coefficient into weight and sign.
    pub fn signed(coef: T, string: PauliString) -> LcuTerm<T> {
        LcuTerm { weight: coef.abs(), negative: coef < T::zero(), string }
    }

    pub fn coefficient(&self) -> T {
        if self.negative {
            -self.weight
        } else {
            self.weight
        }
    }
}

/// `H = offset * I + sum_l sign_l w_l P_l` with `w_l >= 0`. The identity
/// part is kept out of the term list so it does not inflate `lambda`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LcuHamiltonian<T> {
    pub n_qubits: usize,
    pub terms: Vec<LcuTerm<T>>,
    pub offset: T,
}

impl<T: Real> LcuHamiltonian<T> {
    pub fn new(n_qubits: usize, terms: Vec<LcuTerm<T>>, offset: T) -> Result<Self> {
        for t in &terms {
            if !(t.weight >= T::zero()) || !t.weight.is_finite() {
                return invalid(format!("term weight {} is not a finite non-negative number", t.weight));
            }
            if t.string.max_qubit().is_some_and(|q| q >= n_qubits) {
                return invalid(format!("term {} acts outside {n_qubits} qubits", t.string));
            }
        }
        Ok(LcuHamiltonian { n_qubits, terms, offset })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lambda(&self) -> T {
        self.terms.iter().fold(T::zero(), |acc, t| acc + t.weight)
    }

    /// `lambda + |offset|`, the one-norm if the identity were kept as a term.
    pub fn one_norm(&self) -> T {
        self.lambda() + self.offset.abs()
    }

    /// `c * lambda`, the default guess for `|H|` when the spectrum is unknown.
    pub fn norm_bound(&self, c: T) -> T {
        c * self.lambda()
    }

    /// Weights as `f64`, in term order.
    pub fn weights(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.weight.as_f64()).collect()
    }

    /// Dense matrix of the term sum, without the offset.
    pub fn matrix(&self) -> DMatrix<C64> {
        let dim = 1usize << self.n_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        for t in &self.terms {
            let c = t.coefficient().as_f64();
            for x in 0..dim {
                let (y, ph) = t.string.apply_basis(x as u128);
                m[(y as usize, x)] += ph * c;
            }
        }
        m
    }

    /// Dense matrix including the identity offset.
    pub fn full_matrix(&self) -> DMatrix<C64> {
        let mut m = self.matrix();
        let off = self.offset.as_f64();
        for i in 0..m.nrows() {
            m[(i, i)] += off;
        }
        m
    }

    /// Sorted eigenvalues of the term sum (no offset).
    pub fn spectrum(&self) -> Vec<f64> {
        hermitian_eigen(&self.matrix()).0
    }

    /// Largest eigenvalue magnitude of the term sum.
    pub fn exact_norm(&self) -> f64 {
        self.spectrum().iter().fold(0.0, |a: f64, e| a.max(e.abs()))
    }

    /// Same Hamiltonian with `f64` coefficients.
    pub fn to_f64(&self) -> LcuHamiltonian<f64> {
        LcuHamiltonian {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .map(|t| LcuTerm { weight: t.weight.as_f64(), negative: t.negative, string: t.string.clone() })
                .collect(),
            offset: self.offset.as_f64(),
        }
    }
}

/// Eigenvalues (ascending) and matching eigenvectors as columns.
pub fn hermitian_eigen(m: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(m.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}
