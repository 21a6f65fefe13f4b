//! Second-quantized operators acting directly on occupation-number states.
//! Independent of the Pauli machinery, used to check the qubit encodings.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

/// `sum c a+_i a_j + sum d n_i n_j + e` on `n` modes. Mode `i` is bit `i`
/// of the occupation index.
#[derive(Clone, Debug, Default)]
pub struct FermionOperator {
    pub n_modes: usize,
    pub hopping: Vec<(usize, usize, f64)>,
    pub density: Vec<(usize, usize, f64)>,
    pub constant: f64,
}

impl FermionOperator {
    pub fn new(n_modes: usize) -> FermionOperator {
        FermionOperator { n_modes, ..Default::default() }
    }

    pub fn hop(&mut self, i: usize, j: usize, c: f64) {
        self.hopping.push((i, j, c));
    }

    /// `c n_i n_j`; with `i == j` this is just `c n_i`.
    pub fn density(&mut self, i: usize, j: usize, c: f64) {
        self.density.push((i, j, c));
    }

    pub fn matrix(&self) -> DMatrix<C64> {
        let dim = 1usize << self.n_modes;
        let mut m = DMatrix::zeros(dim, dim);
        for s in 0..dim {
            m[(s, s)] += C64::new(self.constant, 0.0);
            for &(i, j, c) in &self.density {
                if occupied(s, i) && occupied(s, j) {
                    m[(s, s)] += C64::new(c, 0.0);
                }
            }
            for &(i, j, c) in &self.hopping {
                if let Some((t, sign)) = annihilate(s, j).and_then(|(t, s1)| create(t, i).map(|(u, s2)| (u, s1 * s2))) {
                    m[(t, s)] += C64::new(c * sign, 0.0);
                }
            }
        }
        m
    }
}

fn occupied(s: usize, i: usize) -> bool {
    (s >> i) & 1 == 1
}

/// Parity of the modes below `i`.
fn sign_below(s: usize, i: usize) -> f64 {
    if (s & ((1 << i) - 1)).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn annihilate(s: usize, i: usize) -> Option<(usize, f64)> {
    occupied(s, i).then(|| (s & !(1 << i), sign_below(s, i)))
}

fn create(s: usize, i: usize) -> Option<(usize, f64)> {
    (!occupied(s, i)).then(|| (s | (1 << i), sign_below(s, i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_operator() {
        let mut f = FermionOperator::new(2);
        f.hop(1, 1, 1.0);
        let m = f.matrix();
        let diag: Vec<f64> = (0..4).map(|i| m[(i, i)].re).collect();
        assert_eq!(diag, vec![0.0, 0.0, 1.0, 1.0]);
    }

    #[test]
    fn anticommuting_sign() {
        // moving a fermion from mode 0 to 2 passes an occupied mode 1
        let mut f = FermionOperator::new(3);
        f.hop(2, 0, 1.0);
        let m = f.matrix();
        assert_eq!(m[(0b110, 0b011)].re, -1.0);
        assert_eq!(m[(0b100, 0b001)].re, 1.0);
    }
}
