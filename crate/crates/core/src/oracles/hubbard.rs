//! Oracles for the periodic planar Hubbard model.

use serde::Serialize;

use super::{LcuOracle, WalkSpec};
use crate::circuit::{bits_for, Circuit, Control, Qubit};
use crate::error::{invalid, Result};
use crate::models::HubbardSpec;
use crate::primitives::arith::mod_add_const_controlled;
use crate::primitives::gadgets::{and_all, controlled_h, controlled_ry, with_control};
use crate::primitives::uniform::uniform_flagged;
use crate::primitives::{majorana, unary_iterate, Dim, Pauli};
use crate::scalar::Real;

#[derive(Clone, Debug, Serialize)]
pub struct HubbardRegisters {
    pub m: usize,
    pub u: Qubit,
    pub v: Qubit,
    pub px: Vec<Qubit>,
    pub py: Vec<Qubit>,
    pub alpha: Qubit,
    pub qx: Vec<Qubit>,
    pub qy: Vec<Qubit>,
    pub beta: Qubit,
    pub sys: Vec<Qubit>,
}

impl HubbardRegisters {
    pub fn allocate(c: &mut Circuit, m: usize) -> Result<HubbardRegisters> {
        if m < 2 {
            return invalid(format!("lattice side must be at least 2, got {m}"));
        }
        let w = bits_for(m);
        let u = c.add_register("U", 1)?[0];
        let v = c.add_register("V", 1)?[0];
        let px = c.add_register("px", w)?;
        let py = c.add_register("py", w)?;
        let alpha = c.add_register("alpha", 1)?[0];
        let qx = c.add_register("qx", w)?;
        let qy = c.add_register("qy", w)?;
        let beta = c.add_register("beta", 1)?[0];
        let sys = c.add_register("sys", 2 * m * m)?;
        Ok(HubbardRegisters { m, u, v, px, py, alpha, qx, qy, beta, sys })
    }

    /// SELECT with the signs of the Hubbard terms built in. V terms arrive
    /// as `(p, 0, p, 1)`; flipping beta for their duration lets the two
    /// Majoranas meet on `(p, 0)`.
    pub fn select(&self, c: &mut Circuit, ctrl: Option<Qubit>) -> Result<()> {
        let m = self.m;
        let (alpha, beta) = ([self.alpha], [self.beta]);
        let p_dims = [Dim::new(&alpha, 2), Dim::new(&self.py, m), Dim::new(&self.px, m)];
        let q_dims = [Dim::new(&beta, 2), Dim::new(&self.qy, m), Dim::new(&self.qx, m)];
        let site_dims = [Dim::new(&self.qy, m), Dim::new(&self.qx, m)];
        let down = &self.sys[m * m..];
        with_control(c, ctrl, |c, k| {
            c.cx(self.v, self.beta);
            majorana(c, k, &q_dims, Pauli::X, &self.sys)?;
            majorana(c, k, &p_dims, Pauli::Y, &self.sys)?;
            c.cx(self.v, self.beta);
            let a = c.and(Control::on(k), Control::on(self.v));
            unary_iterate(c, a, &site_dims, &mut |c, l, ind| c.cz(ind, down[l]))?;
            c.unand(Control::on(k), Control::on(self.v), a);
            c.s(k);
            c.cz(k, self.u);
            Ok(())
        })
    }
}

pub fn build_select_hub(m: usize, controlled: bool) -> Result<Circuit> {
    let mut c = Circuit::empty();
    let ctrl = if controlled { Some(c.add_register("ctrl", 1)?[0]) } else { None };
    let r = HubbardRegisters::allocate(&mut c, m)?;
    r.select(&mut c, ctrl)?;
    Ok(c)
}

pub struct HubbardOracle {
    pub regs: HubbardRegisters,
    /// Hop direction: low bit picks the axis, high bit the sign.
    pub dir: Vec<Qubit>,
    /// Flag of the uniform superpositions over the site coordinates.
    pub flag: Qubit,
    pub t: f64,
    pub u: f64,
}

impl HubbardOracle {
    pub fn allocate<T: Real>(c: &mut Circuit, spec: &HubbardSpec<T>) -> Result<HubbardOracle> {
        let (t, u) = (spec.t.as_f64(), spec.u.as_f64());
        if t == 0.0 && u == 0.0 {
            return invalid("t = u = 0 leaves nothing to prepare");
        }
        let regs = HubbardRegisters::allocate(c, spec.m)?;
        let dir = c.add_register("dir", 2)?;
        let flag = c.add_register("unif_flag", 1)?[0];
        Ok(HubbardOracle { regs, dir, flag, t, u })
    }

    pub fn walk_spec<T: Real>(spec: &HubbardSpec<T>) -> Result<WalkSpec> {
        let mut c = Circuit::empty();
        let o = HubbardOracle::allocate(&mut c, spec)?;
        WalkSpec::new(c, Box::new(o))
    }

    fn n(&self) -> f64 {
        (2 * self.regs.m * self.regs.m) as f64
    }

    /// `(P(U), P(V | not U))` for the two-qubit coefficient state.
    pub fn branch_probabilities(&self) -> (f64, f64) {
        let n = self.n();
        let lam = self.lambda();
        let pu = n * self.u / 4.0 / lam;
        let pv = n * self.u / 8.0 / (lam - n * self.u / 4.0);
        (pu, pv)
    }
}

fn ry_angle(p: f64) -> f64 {
    2.0 * p.clamp(0.0, 1.0).sqrt().asin()
}

impl LcuOracle for HubbardOracle {
    /// Term weights only: `2 N t + 3 N u / 8`.
    fn lambda(&self) -> f64 {
        let n = self.n();
        2.0 * n * self.t + 3.0 * n * self.u / 8.0
    }

    fn selection(&self) -> Vec<Qubit> {
        let r = &self.regs;
        let mut out = vec![r.u, r.v];
        out.extend(&r.px);
        out.extend(&r.py);
        out.push(r.alpha);
        out.extend(&r.qx);
        out.extend(&r.qy);
        out.push(r.beta);
        out.extend(&self.dir);
        out.push(self.flag);
        out
    }

    fn system(&self) -> Vec<Qubit> {
        self.regs.sys.clone()
    }

    fn prepare(&self, c: &mut Circuit) -> Result<()> {
        let r = &self.regs;
        let m = r.m;
        let (pu, pv) = self.branch_probabilities();
        c.ry(ry_angle(pu), r.u);
        controlled_ry(c, Control::off(r.u), ry_angle(pv), r.v);
        uniform_flagged(c, None, &r.px, m, Some(self.flag))?;
        uniform_flagged(c, None, &r.py, m, Some(self.flag))?;
        controlled_h(c, Control::off(r.v), r.alpha);
        for &d in &self.dir {
            c.h(d);
        }
        for (&a, &b) in r.px.iter().zip(&r.qx).chain(r.py.iter().zip(&r.qy)) {
            c.cx(a, b);
        }
        c.cx(r.alpha, r.beta);
        c.cx(r.v, r.beta);
        // hops only: step q by one site in the chosen direction
        let g = c.and(Control::off(r.u), Control::off(r.v));
        for k in 0..4 {
            let axis = Control { qubit: self.dir[0], on: k & 1 == 1 };
            let back = Control { qubit: self.dir[1], on: k & 2 == 2 };
            let (ind, scope) = and_all(c, &[Control::on(g), axis, back]);
            let target = if k & 1 == 0 { &r.qx } else { &r.qy };
            let step = if k & 2 == 0 { 1 } else { m as u64 - 1 };
            mod_add_const_controlled(c, ind, step, target, m as u64);
            scope.undo(c);
        }
        c.unand(Control::off(r.u), Control::off(r.v), g);
        Ok(())
    }

    fn select(&self, c: &mut Circuit, ctrl: Option<Qubit>) -> Result<()> {
        self.regs.select(c, ctrl)
    }
}
