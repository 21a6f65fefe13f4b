//! PREPARE and SELECT oracles, the reflection about the prepared state and
//! the qubitized walk built from them.

mod chem;
mod generic;
mod hubbard;

pub use chem::{build_select_chem, chem_prepare_weights, ChemEntry, ChemOracle, ChemRegisters};
pub use generic::GenericOracle;
pub use hubbard::{build_select_hub, HubbardOracle, HubbardRegisters};

use serde::Serialize;

use crate::circuit::{Circuit, Control, Qubit};
use crate::error::{invalid, Result};
use crate::primitives::gadgets::{minus_one, multi_cz};

/// A block encoding `<0|PREP+ SELECT PREP|0> = H / lambda` laid out on a
/// circuit's registers.
pub trait LcuOracle {
    fn lambda(&self) -> f64;
    /// Every qubit PREPARE touches, selection and garbage alike.
    fn selection(&self) -> Vec<Qubit>;
    fn system(&self) -> Vec<Qubit>;
    fn prepare(&self, c: &mut Circuit) -> Result<()>;
    /// SELECT, optionally controlled. Leaves the selection basis state as is.
    fn select(&self, c: &mut Circuit, ctrl: Option<Qubit>) -> Result<()>;
}

/// `2|0><0| - I` on `qubits`, or its controlled version.
/// T count `4(n - 1)`, or `4n` with a control.
pub fn reflect_zero(c: &mut Circuit, qubits: &[Qubit], ctrl: Option<Qubit>) -> Result<()> {
    if qubits.is_empty() {
        return invalid("reflection over an empty register");
    }
    let mut ctrls: Vec<Control> = ctrl.map(Control::on).into_iter().collect();
    ctrls.extend(qubits.iter().map(|&q| Control::off(q)));
    multi_cz(c, &ctrls);
    match ctrl {
        Some(x) => c.z(x),
        None => minus_one(c, qubits[0]),
    }
    Ok(())
}

/// Stand-alone reflection on an `n`-qubit `sel` register.
pub fn build_reflection(n: usize, controlled: bool) -> Result<Circuit> {
    let mut c = Circuit::empty();
    let ctrl = if controlled { Some(c.add_register("ctrl", 1)?[0]) } else { None };
    let sel = if n > 0 { c.add_register("sel", n)? } else { Vec::new() };
    reflect_zero(&mut c, &sel, ctrl)?;
    Ok(c)
}

/// The registers of a walk and the oracle acting on them.
pub struct WalkSpec {
    pub base: Circuit,
    pub oracle: Box<dyn LcuOracle>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegisterMap {
    pub lambda: f64,
    pub registers: Vec<(String, Vec<Qubit>)>,
    pub selection: Vec<Qubit>,
    pub system: Vec<Qubit>,
}

impl WalkSpec {
    pub fn new(base: Circuit, oracle: Box<dyn LcuOracle>) -> Result<WalkSpec> {
        let sel = oracle.selection();
        if let Some(q) = oracle.system().iter().find(|q| sel.contains(q)) {
            return invalid(format!("qubit {q} is both selection and system"));
        }
        if base.ancilla_in_use() != 0 {
            return invalid("walk base must not hold live ancillas");
        }
        Ok(WalkSpec { base, oracle })
    }

    pub fn lambda(&self) -> f64 {
        self.oracle.lambda()
    }

    pub fn register_map(&self) -> RegisterMap {
        RegisterMap {
            lambda: self.lambda(),
            registers: self.base.registers().iter().map(|r| (r.name.clone(), r.qubits.clone())).collect(),
            selection: self.oracle.selection(),
            system: self.oracle.system(),
        }
    }

    /// Register layout with no gates and a fresh control register `name`.
    pub fn with_control_register(&self, name: &str, size: usize) -> Result<(Circuit, Vec<Qubit>)> {
        let mut c = self.base.clone();
        let q = c.add_register(name, size)?;
        Ok((c, q))
    }

    /// Appends `R_L = PREP (2|0><0| - I) PREP+`, controlled if asked. The
    /// PREPARE pair cancels when the control is off, so it stays uncontrolled.
    pub fn append_reflection(&self, c: &mut Circuit, ctrl: Option<Qubit>) -> Result<()> {
        append_adjoint(c, |c| self.oracle.prepare(c))?;
        reflect_zero(c, &self.oracle.selection(), ctrl)?;
        self.oracle.prepare(c)
    }

    /// Appends `W = R_L SELECT`, controlled if asked.
    pub fn append_walk(&self, c: &mut Circuit, ctrl: Option<Qubit>) -> Result<()> {
        self.oracle.select(c, ctrl)?;
        self.append_reflection(c, ctrl)
    }

    pub fn build(&self, mode: WalkMode) -> Result<Circuit> {
        match mode {
            WalkMode::Plain => {
                let mut c = self.base.clone();
                self.append_walk(&mut c, None)?;
                Ok(c)
            }
            WalkMode::Controlled => {
                let (mut c, q) = self.with_control_register("ctrl", 1)?;
                self.append_walk(&mut c, Some(q[0]))?;
                Ok(c)
            }
            WalkMode::Reversed { power } => {
                let (mut c, q) = self.with_control_register("ctrl", 1)?;
                self.append_reversible_power(&mut c, q[0], power)?;
                Ok(c)
            }
        }
    }

    /// PREPARE alone on the walk registers.
    pub fn build_prepare(&self) -> Result<Circuit> {
        let mut c = self.base.clone();
        self.oracle.prepare(&mut c)?;
        Ok(c)
    }

    /// `PREP+ SELECT PREP`, whose all-zero block on the selection register is `H / lambda`.
    pub fn build_block(&self) -> Result<Circuit> {
        let mut c = self.base.clone();
        self.oracle.prepare(&mut c)?;
        self.oracle.select(&mut c, None)?;
        append_adjoint(&mut c, |c| self.oracle.prepare(c))?;
        Ok(c)
    }

    /// `cR_L W^n cR_L`: `W^n` when the control is off and `(W+)^n` when on.
    pub fn append_reversible_power(&self, c: &mut Circuit, ctrl: Qubit, power: usize) -> Result<()> {
        self.append_reflection(c, Some(ctrl))?;
        for _ in 0..power {
            self.append_walk(c, None)?;
        }
        self.append_reflection(c, Some(ctrl))
    }

    /// The walk with the control polarity flipped: acts when `ctrl` is |0>.
    pub fn append_walk_if_zero(&self, c: &mut Circuit, ctrl: Qubit) -> Result<()> {
        c.x(ctrl);
        self.append_walk(c, Some(ctrl))?;
        c.x(ctrl);
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkMode {
    Plain,
    Controlled,
    Reversed { power: usize },
}

/// Appends the adjoint of whatever `f` emits.
pub fn append_adjoint(c: &mut Circuit, f: impl FnOnce(&mut Circuit) -> Result<()>) -> Result<()> {
    let start = c.mark();
    f(c)?;
    let inverse: Vec<_> = c.gates()[start..].iter().rev().map(|g| g.inverse()).collect::<Result<_>>()?;
    c.truncate_to(start);
    for g in inverse {
        c.append(g)?;
    }
    Ok(())
}
