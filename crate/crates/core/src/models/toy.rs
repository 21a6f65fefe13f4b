//! Small random Hamiltonians for exhaustive checks.

use rand::Rng;

use super::lcu::{LcuHamiltonian, LcuTerm, PauliString};
use crate::primitives::Pauli;

/// `n_terms` distinct non-identity strings on `n_qubits` qubits with weights
/// in `[0.1, 1)` and random signs. Needs `n_terms < 4^n_qubits`.
pub fn random_toy<R: Rng>(rng: &mut R, n_qubits: usize, n_terms: usize) -> LcuHamiltonian<f64> {
    assert!(n_terms < 1 << (2 * n_qubits), "not enough distinct strings");
    let mut seen = std::collections::HashSet::new();
    let mut terms = Vec::new();
    while terms.len() < n_terms {
        let code: usize = rng.gen_range(1..1 << (2 * n_qubits));
        if !seen.insert(code) {
            continue;
        }
        let factors = (0..n_qubits)
            .filter_map(|q| match (code >> (2 * q)) & 3 {
                1 => Some((q, Pauli::X)),
                2 => Some((q, Pauli::Y)),
                3 => Some((q, Pauli::Z)),
                _ => None,
            })
            .collect();
        let w: f64 = rng.gen_range(0.1..1.0);
        let sign = if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
        terms.push(LcuTerm::signed(sign * w, PauliString::new(factors).expect("one factor per qubit")));
    }
    LcuHamiltonian::new(n_qubits, terms, 0.0).expect("valid toy terms")
}
