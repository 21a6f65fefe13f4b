//! Oracles for an arbitrary small LCU: an exact rotation tree for PREPARE
//! and one indexed Pauli string per term for SELECT.

use super::{LcuOracle, WalkSpec};
use crate::circuit::{bits_for, Circuit, Control, Qubit};
use crate::error::{invalid, Result};
use crate::models::LcuHamiltonian;
use crate::primitives::amplitudes::prepare_amplitudes;
use crate::primitives::gadgets::{controlled_pauli, with_control};
use crate::primitives::{unary_iterate, Dim};
use crate::scalar::Real;

pub struct GenericOracle {
    pub hamiltonian: LcuHamiltonian<f64>,
    pub sel: Vec<Qubit>,
    pub sys: Vec<Qubit>,
}

impl GenericOracle {
    /// Adds `sel` and `sys` registers to `c`.
    pub fn allocate<T: Real>(c: &mut Circuit, h: &LcuHamiltonian<T>) -> Result<GenericOracle> {
        if h.is_empty() {
            return invalid("Hamiltonian has no terms");
        }
        if !(h.lambda() > T::zero()) {
            return invalid("Hamiltonian has zero one-norm");
        }
        let sel = c.add_register("sel", bits_for(h.len()).max(1))?;
        let sys = c.add_register("sys", h.n_qubits.max(1))?;
        Ok(GenericOracle { hamiltonian: h.to_f64(), sel, sys })
    }

    pub fn walk_spec<T: Real>(h: &LcuHamiltonian<T>) -> Result<WalkSpec> {
        let mut c = Circuit::empty();
        let o = GenericOracle::allocate(&mut c, h)?;
        WalkSpec::new(c, Box::new(o))
    }
}

impl LcuOracle for GenericOracle {
    fn lambda(&self) -> f64 {
        self.hamiltonian.lambda()
    }

    fn selection(&self) -> Vec<Qubit> {
        self.sel.clone()
    }

    fn system(&self) -> Vec<Qubit> {
        self.sys.clone()
    }

    fn prepare(&self, c: &mut Circuit) -> Result<()> {
        prepare_amplitudes(c, &self.sel, &self.hamiltonian.weights())
    }

    fn select(&self, c: &mut Circuit, ctrl: Option<Qubit>) -> Result<()> {
        let terms = &self.hamiltonian.terms;
        let sys = &self.sys;
        with_control(c, ctrl, |c, q| {
            unary_iterate(c, q, &[Dim::new(&self.sel, terms.len())], &mut |c, l, ind| {
                for &(t, p) in terms[l].string.factors() {
                    controlled_pauli(c, Control::on(ind), p, sys[t]);
                }
                if terms[l].negative {
                    c.z(ind);
                }
            })
        })
    }
}
