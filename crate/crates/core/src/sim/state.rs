use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ops::{control_mask, op_of, Op};
use super::DEFAULT_CAP;
use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};

/// Amplitudes below this are treated as zero by the AND precondition checks.
const CLEAN_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug)]
pub struct SimOptions {
    pub cap: usize,
    /// Reject AND gadgets whose target is not in the state the gadget assumes.
    pub strict_and: bool,
    /// Check the norm after every gate.
    pub check_norm: bool,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions { cap: DEFAULT_CAP, strict_and: true, check_norm: false }
    }
}

/// Dense state over `n` qubits, qubit `q` is bit `q` of the basis index.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<C64>,
}

impl StateVector {
    pub fn zero(n: usize) -> StateVector {
        StateVector::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> StateVector {
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
        amps[index] = C64::new(1.0, 0.0);
        StateVector { n, amps }
    }

    pub fn from_amplitudes(amps: Vec<C64>) -> Result<StateVector> {
        if !amps.len().is_power_of_two() {
            return Err(Error::Invalid("amplitude count is not a power of two".into()));
        }
        let n = amps.len().trailing_zeros() as usize;
        Ok(StateVector { n, amps })
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amps[index]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// Probability that qubit `q` reads 1.
    pub fn prob_one(&self, q: usize) -> f64 {
        let bit = 1usize << q;
        self.amps.iter().enumerate().filter(|(i, _)| i & bit != 0).map(|(_, a)| a.norm_sqr()).sum()
    }

    /// Marginal distribution of the integer held in `qubits` (little endian).
    pub fn marginal(&self, qubits: &[usize]) -> Vec<f64> {
        let mut out = vec![0.0; 1 << qubits.len()];
        for (i, a) in self.amps.iter().enumerate() {
            let p = a.norm_sqr();
            if p == 0.0 {
                continue;
            }
            out[gather(i, qubits)] += p;
        }
        out
    }

    /// Little-endian binary dump of the interleaved (re, im) doubles.
    pub fn to_le_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(16 * self.amps.len());
        for a in &self.amps {
            out.extend_from_slice(&a.re.to_le_bytes());
            out.extend_from_slice(&a.im.to_le_bytes());
        }
        out
    }

    pub(crate) fn apply(&mut self, g: &Gate, bits: &[bool], index: usize, strict: bool) -> Result<()> {
        let (mask, val) = control_mask(g);
        let (mask, val) = (mask as usize, val as usize);
        let kind = match &g.kind {
            GateKind::ClassicallyControlled { inner, bit } => {
                if !bits.get(*bit).copied().unwrap_or(false) {
                    return Ok(());
                }
                inner.as_ref()
            }
            GateKind::Measure(_) => return Err(Error::Invalid("measurement needs branch simulation".into())),
            k => k,
        };
        let op = op_of(kind).expect("unitary kind");
        let t = g.targets[0];
        let tb = 1usize << t;
        if strict && matches!(kind, GateKind::AndCompute) && self.dirty(tb) {
            return Err(Error::Invalid(format!("gate {index}: AND target is not |0>")));
        }
        match op {
            Op::Swap => {
                let ub = 1usize << g.targets[1];
                for i in 0..self.amps.len() {
                    if i & tb != 0 && i & ub == 0 {
                        self.amps.swap(i, i ^ tb ^ ub);
                    }
                }
            }
            Op::Flip => self.for_pairs(tb, mask, val, |a, b| std::mem::swap(a, b)),
            Op::Diag(d0, d1) => {
                let one = C64::new(1.0, 0.0);
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if i & mask == val {
                        let d = if i & tb != 0 { d1 } else { d0 };
                        if d != one {
                            *a *= d;
                        }
                    }
                }
            }
            Op::Mat(m) => self.for_pairs(tb, mask, val, |a, b| {
                let (x, y) = (*a, *b);
                *a = m[0] * x + m[1] * y;
                *b = m[2] * x + m[3] * y;
            }),
        }
        if strict && matches!(kind, GateKind::AndUncompute) && self.dirty(tb) {
            return Err(Error::Invalid(format!("gate {index}: uncomputed AND target left dirty")));
        }
        Ok(())
    }

    fn dirty(&self, tb: usize) -> bool {
        self.amps.iter().enumerate().any(|(i, a)| i & tb != 0 && a.norm_sqr() > CLEAN_TOL * CLEAN_TOL)
    }

    fn for_pairs(&mut self, tb: usize, mask: usize, val: usize, mut f: impl FnMut(&mut C64, &mut C64)) {
        let dim = self.amps.len();
        let mut base = 0;
        while base < dim {
            for i in base..base + tb {
                if i & mask == val {
                    let (lo, hi) = self.amps.split_at_mut(i + tb);
                    f(&mut lo[i], &mut hi[0]);
                }
            }
            base += 2 * tb;
        }
    }

    /// Projects qubit `q` onto `outcome`, returning the probability. The
    /// state is renormalized unless the probability is zero.
    pub fn project(&mut self, q: usize, outcome: bool) -> f64 {
        let bit = 1usize << q;
        let mut p = 0.0;
        for (i, a) in self.amps.iter_mut().enumerate() {
            if (i & bit != 0) != outcome {
                *a = C64::new(0.0, 0.0);
            } else {
                p += a.norm_sqr();
            }
        }
        if p > 0.0 {
            let s = 1.0 / p.sqrt();
            self.amps.iter_mut().for_each(|a| *a *= s);
        }
        p
    }
}

pub(crate) fn gather(i: usize, qubits: &[usize]) -> usize {
    qubits.iter().enumerate().fold(0, |acc, (k, &q)| acc | (((i >> q) & 1) << k))
}

/// One measurement history with its probability and post-measurement state.
#[derive(Clone, Debug)]
pub struct Branch {
    pub outcomes: Vec<bool>,
    pub probability: f64,
    pub state: StateVector,
}

fn check_width(c: &Circuit, init: &StateVector, opts: &SimOptions) -> Result<()> {
    if c.width() > opts.cap {
        return Err(Error::TooManyQubits { needed: c.width(), cap: opts.cap });
    }
    if init.n != c.width() {
        return Err(Error::Invalid(format!("state has {} qubits, circuit {}", init.n, c.width())));
    }
    Ok(())
}

/// Runs every measurement branch. Branches with probability below `1e-14`
/// are dropped.
pub fn simulate_branches(c: &Circuit, init: &StateVector, opts: &SimOptions) -> Result<Vec<Branch>> {
    check_width(c, init, opts)?;
    let mut live = vec![Branch { outcomes: vec![false; c.clbits()], probability: 1.0, state: init.clone() }];
    for (k, g) in c.gates().iter().enumerate() {
        if let GateKind::Measure(bit) = g.kind {
            let mut next = Vec::with_capacity(2 * live.len());
            for b in live {
                for outcome in [false, true] {
                    let mut s = b.state.clone();
                    let p = s.project(g.targets[0], outcome);
                    if p * b.probability > 1e-14 {
                        let mut outcomes = b.outcomes.clone();
                        outcomes[bit] = outcome;
                        next.push(Branch { outcomes, probability: p * b.probability, state: s });
                    }
                }
            }
            live = next;
        } else {
            for b in live.iter_mut() {
                b.state.apply(g, &b.outcomes, k, opts.strict_and)?;
                if opts.check_norm {
                    let n = b.state.norm();
                    if (n - 1.0).abs() > 1e-10 {
                        return Err(Error::Invalid(format!("norm {n} after gate {k}")));
                    }
                }
            }
        }
    }
    Ok(live)
}

/// Runs the circuit once. Measurement outcomes are sampled from a ChaCha
/// stream seeded with `seed`, so the result is reproducible.
pub fn simulate(c: &Circuit, init: &StateVector, seed: u64, opts: &SimOptions) -> Result<(StateVector, Vec<bool>)> {
    check_width(c, init, opts)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = init.clone();
    let mut bits = vec![false; c.clbits()];
    for (k, g) in c.gates().iter().enumerate() {
        if let GateKind::Measure(bit) = g.kind {
            let q = g.targets[0];
            let outcome = rng.gen::<f64>() < s.prob_one(q);
            s.project(q, outcome);
            bits[bit] = outcome;
        } else {
            s.apply(g, &bits, k, opts.strict_and)?;
        }
        if opts.check_norm && (s.norm() - 1.0).abs() > 1e-10 {
            return Err(Error::Invalid(format!("norm {} after gate {k}", s.norm())));
        }
    }
    Ok((s, bits))
}
