//! Exact statevector simulation, dense and sparse, and operator extraction.

mod extract;
mod ops;
mod sparse;
mod state;
pub mod walk;

pub use extract::{extract_block, extract_unitary, gather, spread, Fixed};
pub use sparse::SparseState;
pub use state::{simulate, simulate_branches, Branch, SimOptions, StateVector};

/// Default qubit cap of the dense simulator.
pub const DEFAULT_CAP: usize = 26;

#[cfg(test)]
mod kron_check {
    //! Independent reference: every gate as a full 2^n x 2^n Kronecker product.

    use nalgebra::DMatrix;
    use num_complex::Complex64 as C64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::ops::{matrix_of, op_of};
    use super::*;
    use crate::circuit::{Circuit, Control, Gate, GateKind};

    fn m2(v: [C64; 4]) -> DMatrix<C64> {
        DMatrix::from_row_slice(2, 2, &v)
    }

    fn full(g: &Gate, n: usize) -> DMatrix<C64> {
        let dim = 1 << n;
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        if g.kind == GateKind::Swap {
            let (a, b) = (g.targets[0], g.targets[1]);
            let mut p = DMatrix::zeros(dim, dim);
            for i in 0..dim {
                let (x, y) = (i >> a & 1, i >> b & 1);
                let j = (i & !(1 << a) & !(1 << b)) | (y << a) | (x << b);
                p[(j, i)] = one;
            }
            return p;
        }
        let u = matrix_of(op_of(&g.kind).unwrap());
        let delta = m2([u[0] - one, u[1], u[2], u[3] - one]);
        let mut acc = DMatrix::from_element(1, 1, one);
        for q in (0..n).rev() {
            let f = if g.targets[0] == q {
                delta.clone()
            } else if let Some(c) = g.controls.iter().find(|c| c.qubit == q) {
                if c.on {
                    m2([zero, zero, zero, one])
                } else {
                    m2([one, zero, zero, zero])
                }
            } else {
                DMatrix::identity(2, 2)
            };
            acc = acc.kronecker(&f);
        }
        DMatrix::identity(dim, dim) + acc
    }

    fn random_circuit(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Circuit {
        let mut c = Circuit::new(&[("q", n)]).unwrap();
        for _ in 0..len {
            let mut qs: Vec<usize> = (0..n).collect();
            for i in 0..3 {
                let j = rng.gen_range(i..n);
                qs.swap(i, j);
            }
            let ctl = |k: usize, rng: &mut ChaCha8Rng| Control { qubit: qs[k], on: rng.gen_bool(0.7) };
            let g = match rng.gen_range(0..14) {
                0 => Gate::single(GateKind::X, qs[0]),
                1 => Gate::single(GateKind::Y, qs[0]),
                2 => Gate::single(GateKind::Z, qs[0]),
                3 => Gate::single(GateKind::H, qs[0]),
                4 => Gate::single(GateKind::S, qs[0]),
                5 => Gate::single(GateKind::Tdg, qs[0]),
                6 => Gate::single(GateKind::RotZ(rng.gen_range(-3.0..3.0)), qs[0]),
                7 => Gate::single(GateKind::RotY(rng.gen_range(-3.0..3.0)), qs[0]),
                8 => Gate::cnot(ctl(1, rng), qs[0]),
                9 => Gate::cz(ctl(1, rng), qs[0]),
                10 => Gate::new(GateKind::Swap, vec![qs[0], qs[1]], vec![]),
                11 => Gate::new(GateKind::Toffoli, vec![qs[0]], vec![ctl(1, rng), ctl(2, rng)]),
                12 => Gate::single(GateKind::T, qs[0]),
                _ => Gate::single(GateKind::Sdg, qs[0]),
            };
            c.push(g);
        }
        c
    }

    #[test]
    fn agrees_with_kronecker_reference() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 6;
        for _ in 0..20 {
            let c = random_circuit(&mut rng, n, 60);
            let amps: Vec<C64> = (0..1 << n).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            let amps: Vec<C64> = amps.iter().map(|a| a / norm).collect();
            let init = StateVector::from_amplitudes(amps.clone()).unwrap();
            let opts = SimOptions { check_norm: true, ..Default::default() };
            let (out, _) = simulate(&c, &init, 0, &opts).unwrap();
            let mut want = nalgebra::DVector::from_vec(amps);
            for g in c.gates() {
                want = full(g, n) * want;
            }
            for i in 0..1 << n {
                assert!((out.amplitude(i) - want[i]).norm() < 1e-12);
            }
        }
    }
}
