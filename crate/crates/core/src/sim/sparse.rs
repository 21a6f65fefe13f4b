use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::BuildHasherDefault;

use num_complex::Complex64 as C64;

use super::ops::{control_mask, op_of, Op};
use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};

/// Fixed-key hasher so iteration order, and thus rounding, is reproducible.
type Map = HashMap<u128, C64, BuildHasherDefault<DefaultHasher>>;

const PRUNE: f64 = 1e-28;

/// Sparse state for wide circuits whose support stays small, up to 128 qubits.
#[derive(Clone, Debug, Default)]
pub struct SparseState {
    amps: Map,
}

impl SparseState {
    pub fn basis(index: u128) -> SparseState {
        let mut amps = Map::default();
        amps.insert(index, C64::new(1.0, 0.0));
        SparseState { amps }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u128, C64)>) -> SparseState {
        let mut s = SparseState::default();
        for (k, a) in terms {
            *s.amps.entry(k).or_default() += a;
        }
        s
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn get(&self, index: u128) -> C64 {
        self.amps.get(&index).copied().unwrap_or_default()
    }

    pub fn norm(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Entries sorted by basis index.
    pub fn entries(&self) -> Vec<(u128, C64)> {
        let mut v: Vec<_> = self.amps.iter().map(|(k, a)| (*k, *a)).collect();
        v.sort_by_key(|e| e.0);
        v
    }

    pub fn inner(&self, other: &SparseState) -> C64 {
        self.amps.iter().map(|(k, a)| a.conj() * other.get(*k)).sum()
    }

    /// `self += a * other`.
    pub fn add_scaled(&mut self, a: C64, other: &SparseState) {
        for (k, b) in &other.amps {
            *self.amps.entry(*k).or_default() += a * b;
        }
        self.amps.retain(|_, v| v.norm_sqr() > PRUNE);
    }

    pub fn scale(&mut self, a: C64) {
        for v in self.amps.values_mut() {
            *v *= a;
        }
    }

    /// Runs a measurement-free circuit.
    pub fn run(&mut self, c: &Circuit, strict_and: bool) -> Result<()> {
        if c.width() > 128 {
            return Err(Error::TooManyQubits { needed: c.width(), cap: 128 });
        }
        for (k, g) in c.gates().iter().enumerate() {
            self.apply(g, k, strict_and)?;
        }
        Ok(())
    }

    pub fn apply(&mut self, g: &Gate, index: usize, strict: bool) -> Result<()> {
        let op = match op_of(&g.kind) {
            Some(op) => op,
            None => return Err(Error::Invalid("sparse simulation has no measurements".into())),
        };
        let (mask, val) = control_mask(g);
        let tb = 1u128 << g.targets[0];
        let dirty = |m: &Map| m.keys().any(|k| k & tb != 0);
        if strict && g.kind == GateKind::AndCompute && dirty(&self.amps) {
            return Err(Error::Invalid(format!("gate {index}: AND target is not |0>")));
        }
        match op {
            Op::Diag(d0, d1) => {
                for (k, a) in self.amps.iter_mut() {
                    if k & mask == val {
                        *a *= if k & tb != 0 { d1 } else { d0 };
                    }
                }
            }
            Op::Flip | Op::Swap => {
                let ub = if let Op::Swap = op { 1u128 << g.targets[1] } else { 0 };
                let old = std::mem::take(&mut self.amps);
                self.amps.reserve(old.len());
                for (k, a) in old {
                    let nk = match op {
                        Op::Swap if ((k & tb) != 0) != ((k & ub) != 0) => k ^ tb ^ ub,
                        Op::Flip if k & mask == val => k ^ tb,
                        _ => k,
                    };
                    self.amps.insert(nk, a);
                }
            }
            Op::Mat(m) => {
                let old = std::mem::take(&mut self.amps);
                let mut next = Map::default();
                next.reserve(old.len() * 2);
                for (k, a) in old {
                    if k & mask != val {
                        *next.entry(k).or_default() += a;
                        continue;
                    }
                    let (k0, k1) = (k & !tb, k | tb);
                    let (c0, c1) = if k & tb == 0 { (m[0], m[2]) } else { (m[1], m[3]) };
                    *next.entry(k0).or_default() += c0 * a;
                    *next.entry(k1).or_default() += c1 * a;
                }
                next.retain(|_, a| a.norm_sqr() > PRUNE);
                self.amps = next;
            }
        }
        if strict && g.kind == GateKind::AndUncompute && dirty(&self.amps) {
            return Err(Error::Invalid(format!("gate {index}: uncomputed AND target left dirty")));
        }
        Ok(())
    }
}
