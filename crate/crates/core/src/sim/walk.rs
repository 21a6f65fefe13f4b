//! Spectral checks of the walk operator.
//!
//! Three routes, from smallest to largest instance: dense extraction plus a
//! Hermitian eigensolve, the two-dimensional invariant subspace spanned by
//! `|L>|k>` and `W|L>|k>`, and a matrix-free walk acting directly on
//! `(term, basis state)` amplitudes without a circuit.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::extract::{extract_unitary, spread};
use super::sparse::SparseState;
use crate::error::{invalid, Error, Result};
use crate::models::{hermitian_eigen, LcuHamiltonian};
use crate::oracles::{GenericOracle, WalkMode};
use crate::scalar::Real;

/// Vector space operations needed by [`invariant_block`].
pub trait WalkVector: Clone {
    fn dot(&self, other: &Self) -> C64;
    fn axpy(&mut self, a: C64, x: &Self);
    fn scale(&mut self, a: C64);
    fn norm(&self) -> f64 {
        self.dot(self).re.max(0.0).sqrt()
    }
}

impl WalkVector for SparseState {
    fn dot(&self, other: &Self) -> C64 {
        self.inner(other)
    }
    fn axpy(&mut self, a: C64, x: &Self) {
        self.add_scaled(a, x);
    }
    fn scale(&mut self, a: C64) {
        SparseState::scale(self, a);
    }
}

impl WalkVector for Vec<C64> {
    fn dot(&self, other: &Self) -> C64 {
        self.iter().zip(other).map(|(a, b)| a.conj() * b).sum()
    }
    fn axpy(&mut self, a: C64, x: &Self) {
        for (s, v) in self.iter_mut().zip(x) {
            *s += a * v;
        }
    }
    fn scale(&mut self, a: C64) {
        self.iter_mut().for_each(|s| *s *= a);
    }
}

/// W restricted to span{s, W s}.
#[derive(Clone, Debug)]
pub struct InvariantBlock {
    /// `<s|W|s>`; equals `E/lambda` when `s = |L>|k>`.
    pub overlap: C64,
    /// Eigenphases of the 2x2 restriction (equal when the span is 1D).
    pub phases: [f64; 2],
    /// Norm of the part of `W^2 s` outside the span. Zero for a true
    /// invariant subspace.
    pub residual: f64,
}

pub fn invariant_block<V: WalkVector>(apply: &mut dyn FnMut(&V) -> Result<V>, start: &V) -> Result<InvariantBlock> {
    let n0 = start.norm();
    if n0 < 1e-12 {
        return invalid("start vector is zero");
    }
    let mut s = start.clone();
    s.scale(C64::new(1.0 / n0, 0.0));
    let w1 = apply(&s)?;
    let a = s.dot(&w1);
    let mut r = w1;
    r.axpy(-a, &s);
    let b = r.norm();
    if b < 1e-10 {
        return Ok(InvariantBlock { overlap: a, phases: [a.arg(); 2], residual: (1.0 - a.norm()).abs() });
    }
    r.scale(C64::new(1.0 / b, 0.0));
    let w2 = apply(&r)?;
    let c = s.dot(&w2);
    let d = r.dot(&w2);
    let mut rest = w2;
    rest.axpy(-c, &s);
    rest.axpy(-d, &r);
    // Eigenvalues of [[a, c], [b, d]].
    let half = (a + d) / 2.0;
    let disc = (half * half - (a * d - c * b)).sqrt();
    let (l1, l2) = (half + disc, half - disc);
    Ok(InvariantBlock { overlap: a, phases: [l1.arg(), l2.arg()], residual: rest.norm() })
}

/// Eigenvalues of a unitary matrix. The Hermitian and anti-Hermitian parts
/// commute, so a generic real combination of them is Hermitian with the same
/// eigenvectors; this avoids a non-symmetric solver, which can stall on
/// the highly degenerate spectra walks have.
pub fn unitary_eigenvalues(w: &DMatrix<C64>) -> Result<Vec<C64>> {
    let dev = (w.adjoint() * w - DMatrix::<C64>::identity(w.nrows(), w.ncols())).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if dev > 1e-9 {
        return Err(Error::NotUnitary(dev));
    }
    Ok(normal_eigenvalues(w, 0))
}

// Mixing weights for successive refinements; irrational so that ties in one
// combination are broken by the next.
const MIX: [f64; 3] = [0.577_215_664_901_532_9, 0.318_309_886_183_790_7, 1.414_213_562_373_095_1];

fn normal_eigenvalues(w: &DMatrix<C64>, depth: usize) -> Vec<C64> {
    let i = C64::new(0.0, 1.0);
    let re = (w + w.adjoint()) * C64::new(0.5, 0.0);
    let im = (w - w.adjoint()) * (-i * 0.5);
    let mix = re + im * C64::new(MIX[depth], 0.0);
    let (vals, vecs) = hermitian_eigen(&mix);
    let mut out = Vec::with_capacity(vals.len());
    let mut start = 0;
    while start < vals.len() {
        // near-equal values of the combination can hide distinct eigenvalues of w
        let mut end = start + 1;
        while end < vals.len() && vals[end] - vals[end - 1] < 1e-6 {
            end += 1;
        }
        let block = vecs.columns(start, end - start).into_owned();
        let sub = block.adjoint() * w * &block;
        if end - start == 1 || depth + 1 == MIX.len() {
            out.extend((0..end - start).map(|k| sub[(k, k)]));
        } else {
            out.extend(normal_eigenvalues(&sub, depth + 1));
        }
        start = end;
    }
    out
}

/// Result of comparing the walk spectrum with the Hamiltonian spectrum.
#[derive(Clone, Debug)]
pub struct WalkSpectrum {
    /// Eigenvalues of `H` (without offset).
    pub energies: Vec<f64>,
    /// Walk eigenphases, matched to `+-arccos(E_k / lambda)` in the order of `energies`.
    pub matched: Vec<[f64; 2]>,
    /// Worst distance on the unit circle between an expected and a matched eigenvalue.
    pub max_error: f64,
    /// Eigenvalues left over after matching; for a qubitized walk these sit at +-1.
    pub spurious: Vec<C64>,
}

impl WalkSpectrum {
    /// Largest distance of a leftover eigenvalue from +-1.
    pub fn spurious_error(&self) -> f64 {
        self.spurious
            .iter()
            .map(|z| (z - C64::new(1.0, 0.0)).norm().min((z + C64::new(1.0, 0.0)).norm()))
            .fold(0.0, f64::max)
    }
}

/// Dense walk spectrum of the generic oracle. System at most 4 qubits,
/// selection at most 8.
pub fn walk_eigenphases<T: Real>(h: &LcuHamiltonian<T>) -> Result<WalkSpectrum> {
    let spec = GenericOracle::walk_spec(h)?;
    let map = spec.register_map();
    if map.system.len() > 4 || map.selection.len() > 8 {
        return invalid("dense walk spectrum limited to 4 system and 8 selection qubits");
    }
    let c = spec.build(WalkMode::Plain)?;
    let mut subset = map.selection.clone();
    subset.extend(&map.system);
    let w = extract_unitary(&c, &subset, &[])?;
    let evs = unitary_eigenvalues(&w)?;
    let lambda = h.lambda().as_f64();
    let energies = h.spectrum();
    Ok(match_spectrum(&energies, lambda, evs))
}

fn match_spectrum(energies: &[f64], lambda: f64, mut pool: Vec<C64>) -> WalkSpectrum {
    let mut matched = Vec::new();
    let mut max_error = 0.0f64;
    let mut take = |target: f64, pool: &mut Vec<C64>| -> f64 {
        let z = C64::from_polar(1.0, target);
        let (i, err) = pool
            .iter()
            .enumerate()
            .map(|(i, e)| (i, (e - z).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap_or((usize::MAX, f64::INFINITY));
        if i != usize::MAX {
            let e = pool.swap_remove(i);
            max_error = max_error.max(err);
            e.arg()
        } else {
            max_error = f64::INFINITY;
            f64::NAN
        }
    };
    for &e in energies {
        let x = (e / lambda).clamp(-1.0, 1.0);
        if 1.0 - x.abs() < 1e-9 {
            // acos amplifies rounding near +-1 to sqrt(eps)
            let p = take(if x > 0.0 { 0.0 } else { std::f64::consts::PI }, &mut pool);
            matched.push([p, p]);
        } else {
            let phi = x.acos();
            let p = take(phi, &mut pool);
            let q = take(-phi, &mut pool);
            matched.push([p, q]);
        }
    }
    WalkSpectrum { energies: energies.to_vec(), matched, max_error, spurious: pool }
}

/// Walk `W = R_L SELECT` applied to amplitudes indexed by `term * 2^n + x`.
/// Independent of any circuit: SELECT applies the Pauli string (with sign)
/// of each term directly, and `R_L` reflects about `sum_l sqrt(w_l/lambda)|l>`.
pub struct MatrixFreeWalk {
    h: LcuHamiltonian<f64>,
    amps: Vec<f64>,
}

impl MatrixFreeWalk {
    pub fn new<T: Real>(h: &LcuHamiltonian<T>) -> Result<MatrixFreeWalk> {
        let h = h.to_f64();
        if h.n_qubits > 24 {
            return invalid("matrix-free walk limited to 24 system qubits");
        }
        let lambda = h.lambda();
        let amps = h.weights().iter().map(|w| (w / lambda).sqrt()).collect();
        Ok(MatrixFreeWalk { h, amps })
    }

    pub fn dim(&self) -> usize {
        self.h.len() << self.h.n_qubits
    }

    /// `|L> (x) psi`.
    pub fn lift(&self, psi: &[C64]) -> Vec<C64> {
        let n = 1usize << self.h.n_qubits;
        let mut v = vec![C64::new(0.0, 0.0); self.dim()];
        for (l, &a) in self.amps.iter().enumerate() {
            for x in 0..n {
                v[l * n + x] = psi[x] * a;
            }
        }
        v
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let n = 1usize << self.h.n_qubits;
        let mut out = vec![C64::new(0.0, 0.0); v.len()];
        for (l, t) in self.h.terms.iter().enumerate() {
            let sign = if t.negative { -1.0 } else { 1.0 };
            for x in 0..n {
                let (y, ph) = t.string.apply_basis(x as u128);
                out[l * n + y as usize] += v[l * n + x] * ph * sign;
            }
        }
        // R_L = 2|L><L| - 1 on the selection register.
        for x in 0..n {
            let o: C64 = self.amps.iter().enumerate().map(|(l, a)| out[l * n + x] * a).sum();
            for (l, a) in self.amps.iter().enumerate() {
                out[l * n + x] = o * (2.0 * a) - out[l * n + x];
            }
        }
        out
    }

    /// Invariant-subspace phases for every eigenvector of `H`.
    pub fn phases(&self) -> Result<Vec<(f64, InvariantBlock)>> {
        let (evals, vecs) = hermitian_eigen(&self.h.matrix());
        let mut out = Vec::new();
        for (k, &e) in evals.iter().enumerate() {
            let psi: Vec<C64> = vecs.column(k).iter().copied().collect();
            let start = self.lift(&psi);
            let block = invariant_block(&mut |v: &Vec<C64>| Ok(self.apply(v)), &start)?;
            out.push((e, block));
        }
        Ok(out)
    }
}

/// `|0...0>_anc (PREPARE|0>) (x) |psi>_sys` for a circuit, as a sparse state.
/// `psi` is indexed by the system register in little-endian order.
pub fn lift_state(prepared: &SparseState, system: &[usize], psi: &[C64]) -> SparseState {
    let mut out = SparseState::from_terms(std::iter::empty());
    for (x, &a) in psi.iter().enumerate() {
        if a.norm_sqr() < 1e-30 {
            continue;
        }
        let key = spread(x, system);
        let shifted = SparseState::from_terms(prepared.entries().into_iter().map(|(k, b)| (k | key, b * a)));
        out.add_scaled(C64::new(1.0, 0.0), &shifted);
    }
    out
}
