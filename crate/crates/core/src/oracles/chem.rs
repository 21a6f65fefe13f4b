//! Oracles for the dual-basis electronic structure Hamiltonian.

use serde::Serialize;

use super::{LcuOracle, WalkSpec};
use crate::circuit::{bits_for, Circuit, Control, Qubit};
use crate::error::{invalid, Error, Result};
use crate::models::dual_basis::{site_components, ChemTermKind};
use crate::models::{DualBasisCoefficients, LcuHamiltonian, LcuTerm};
use crate::primitives::arith::mod_add;
use crate::primitives::gadgets::{and_all, controlled_h, controlled_swap_regs, fredkin, with_control};
use crate::primitives::uniform::uniform_flagged;
use crate::primitives::{majorana, unary_iterate, Dim, Pauli, QromData};
use crate::scalar::Real;
use crate::state_prep::{build_alias_table, compute_mu, discretize, subprepare, AliasTable, SubprepareRegs};

/// Selection and system registers of the chemistry SELECT.
#[derive(Clone, Debug, Serialize)]
pub struct ChemRegisters {
    pub m: usize,
    pub d: usize,
    pub theta: Qubit,
    pub u: Qubit,
    pub v: Qubit,
    /// `d` fields of `bits_for(m)` qubits, lowest axis first.
    pub p: Vec<Qubit>,
    pub alpha: Qubit,
    pub q: Vec<Qubit>,
    pub beta: Qubit,
    pub sys: Vec<Qubit>,
}

impl ChemRegisters {
    pub fn allocate(c: &mut Circuit, m: usize, d: usize) -> Result<ChemRegisters> {
        if m < 2 {
            return invalid("chemistry oracles need at least two grid points per axis");
        }
        let w = bits_for(m);
        let theta = c.add_register("theta", 1)?[0];
        let u = c.add_register("U", 1)?[0];
        let v = c.add_register("V", 1)?[0];
        let p = c.add_register("p", d * w)?;
        let alpha = c.add_register("alpha", 1)?[0];
        let q = c.add_register("q", d * w)?;
        let beta = c.add_register("beta", 1)?[0];
        let sys = c.add_register("sys", 2 * m.pow(d as u32))?;
        Ok(ChemRegisters { m, d, theta, u, v, p, alpha, q, beta, sys })
    }

    fn width(&self) -> usize {
        bits_for(self.m)
    }

    pub fn p_axis(&self, j: usize) -> &[Qubit] {
        &self.p[j * self.width()..(j + 1) * self.width()]
    }

    pub fn q_axis(&self, j: usize) -> &[Qubit] {
        &self.q[j * self.width()..(j + 1) * self.width()]
    }

    /// Iteration dims over `f(p, alpha) = alpha M^D + sum_j p_j M^j`.
    fn orbital_dims<'a>(&self, spin: &'a [Qubit], site: &'a [Qubit]) -> Vec<Dim<'a>> {
        let w = self.width();
        let mut dims = vec![Dim::new(spin, 2)];
        for j in (0..self.d).rev() {
            dims.push(Dim::new(&site[j * w..(j + 1) * w], self.m));
        }
        dims
    }

    /// `(-1)^theta` times the indexed term, see [`ChemTermKind`].
    pub fn select(&self, c: &mut Circuit, ctrl: Option<Qubit>) -> Result<()> {
        let alpha = [self.alpha];
        let beta = [self.beta];
        let pa: Vec<Qubit> = self.p.iter().copied().chain(alpha).collect();
        let qb: Vec<Qubit> = self.q.iter().copied().chain(beta).collect();
        with_control(c, ctrl, |c, k| {
            c.cz(k, self.theta);
            // for V terms both Majoranas land on (p, alpha) and multiply to Z
            controlled_swap_regs(c, Control::on(self.v), &pa, &qb);
            majorana(c, k, &self.orbital_dims(&beta, &self.q), Pauli::X, &self.sys)?;
            controlled_swap_regs(c, Control::on(self.v), &pa, &qb);
            majorana(c, k, &self.orbital_dims(&alpha, &self.p), Pauli::Y, &self.sys)?;
            let a = c.and(Control::on(k), Control::on(self.v));
            let sys = &self.sys;
            unary_iterate(c, a, &self.orbital_dims(&beta, &self.q), &mut |c, l, ind| c.cz(ind, sys[l]))?;
            c.unand(Control::on(k), Control::on(self.v), a);
            // Y_a X_a = -i Z_a and Y_p Z.. X_q = i X Z.. X, so fix the phase
            c.sdg(k);
            c.cz(k, self.u);
            c.cz(k, self.v);
            Ok(())
        })
    }
}

/// Stand-alone SELECT for an `M^D` grid.
pub fn build_select_chem(m: usize, d: usize, controlled: bool) -> Result<Circuit> {
    let mut c = Circuit::empty();
    let ctrl = if controlled { Some(c.add_register("ctrl", 1)?[0]) } else { None };
    let r = ChemRegisters::allocate(&mut c, m, d)?;
    r.select(&mut c, ctrl)?;
    Ok(c)
}

/// One row of the SUBPREPARE table: kind 0 = U (index is p), 1 = T and
/// 2 = V (index is p - q).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChemEntry {
    pub kind: u8,
    pub index: usize,
    pub weight: f64,
    pub negative: bool,
    /// Number of LCU terms that share this entry.
    pub multiplicity: usize,
}

/// `3 M^D` entries whose weights sum to lambda. Each entry's weight is
/// shared evenly by the terms it expands into.
pub fn chem_prepare_weights<T: Real>(c: &DualBasisCoefficients<T>) -> Vec<ChemEntry> {
    let n = c.sites();
    let nf = n as f64;
    let mut out = Vec::with_capacity(3 * n);
    for p in 0..n {
        let z = c.z_coefficient(p).as_f64();
        out.push(ChemEntry { kind: 0, index: p, weight: 2.0 * z.abs(), negative: z < 0.0, multiplicity: 2 });
    }
    for d in 0..n {
        let t = c.kinetic[d].as_f64();
        let w = if d == 0 { 0.0 } else { nf * t.abs() };
        out.push(ChemEntry { kind: 1, index: d, weight: w, negative: t < 0.0, multiplicity: 2 * n });
    }
    for d in 0..n {
        let v = c.coulomb[d].as_f64();
        // p = q only pairs opposite spins, half as many terms
        let (w, mult) = if d == 0 { (nf * v.abs() / 2.0, 2 * n) } else { (nf * v.abs(), 4 * n) };
        out.push(ChemEntry { kind: 2, index: d, weight: w, negative: v < 0.0, multiplicity: mult });
    }
    out
}

/// PREPARE by coherent alias sampling followed by the spreading steps, and
/// the SELECT above.
pub struct ChemOracle {
    pub regs: ChemRegisters,
    pub sub: SubprepareRegs,
    pub entries: Vec<ChemEntry>,
    pub table: AliasTable,
    pub payload: QromData,
    lambda: f64,
}

impl ChemOracle {
    pub fn allocate<T: Real>(c: &mut Circuit, coeffs: &DualBasisCoefficients<T>, mu: u32) -> Result<ChemOracle> {
        if mu == 0 {
            return invalid("keep precision must be at least one bit");
        }
        let (m, d) = (coeffs.m, coeffs.d);
        let regs = ChemRegisters::allocate(c, m, d)?;
        let entries = chem_prepare_weights(coeffs);
        let lambda: f64 = entries.iter().map(|e| e.weight).sum();
        if !(lambda > 0.0) {
            return invalid("Hamiltonian has zero one-norm");
        }
        let weights: Vec<f64> = entries.iter().map(|e| e.weight).collect();
        let table = build_alias_table(&discretize(&weights, mu)?);
        let w = bits_for(m);
        let field = |f: &dyn Fn(&ChemEntry) -> u64| entries.iter().map(f).collect::<Vec<u64>>();
        let theta = field(&|e| e.negative as u64);
        let uf = field(&|e| (e.kind == 0) as u64);
        let vf = field(&|e| (e.kind == 2) as u64);
        let site = field(&|e| {
            site_components(e.index, m, d).iter().enumerate().map(|(j, &x)| (x as u64) << (j * w)).sum()
        });
        let payload = QromData::pack(&[(&theta, 1), (&uf, 1), (&vf, 1), (&site, d * w)])?;
        let mut pay = vec![regs.theta, regs.u, regs.v];
        pay.extend(&regs.p);
        let sub = SubprepareRegs::allocate(c, "prep_", entries.len(), mu, pay)?;
        Ok(ChemOracle { regs, sub, entries, table, payload, lambda })
    }

    /// Like [`ChemOracle::allocate`] but refuses a `mu` below what `dE` needs.
    pub fn allocate_for_precision<T: Real>(
        c: &mut Circuit,
        coeffs: &DualBasisCoefficients<T>,
        mu: u32,
        delta_e: f64,
        norm_bound: f64,
    ) -> Result<ChemOracle> {
        let lam: f64 = chem_prepare_weights(coeffs).iter().map(|e| e.weight).sum();
        let floor = compute_mu(lam, delta_e, norm_bound)?;
        if mu < floor {
            return Err(Error::Domain(format!("mu = {mu} is below the floor {floor} for dE = {delta_e}")));
        }
        ChemOracle::allocate(c, coeffs, mu)
    }

    pub fn walk_spec<T: Real>(coeffs: &DualBasisCoefficients<T>, mu: u32) -> Result<WalkSpec> {
        let mut c = Circuit::empty();
        let o = ChemOracle::allocate(&mut c, coeffs, mu)?;
        WalkSpec::new(c, Box::new(o))
    }

    /// The Hamiltonian the circuits encode exactly: term weights follow the
    /// integer alias table rather than the ideal coefficients.
    pub fn encoded_hamiltonian<T: Real>(&self, coeffs: &DualBasisCoefficients<T>) -> LcuHamiltonian<f64> {
        let exact = crate::models::jw_terms(coeffs);
        let n = coeffs.sites();
        let realized = self.table.realized();
        let total: u64 = realized.iter().sum();
        let kinds = crate::models::dual_basis::chem_term_kinds(n);
        let terms = kinds
            .iter()
            .zip(&exact.terms)
            .map(|(kind, t)| {
                let e = match *kind {
                    ChemTermKind::Onsite { p, .. } => p,
                    ChemTermKind::Hop { p, q, .. } => n + crate::models::dual_basis::site_difference(p, q, self.regs.m, self.regs.d),
                    ChemTermKind::Density { p, q, .. } => 2 * n + crate::models::dual_basis::site_difference(p, q, self.regs.m, self.regs.d),
                };
                let w = self.lambda * realized[e] as f64 / total as f64 / self.entries[e].multiplicity as f64;
                LcuTerm { weight: w, negative: self.entries[e].negative, string: t.string.clone() }
            })
            .collect();
        LcuHamiltonian::new(exact.n_qubits, terms, exact.offset.as_f64()).expect("valid terms")
    }
}

impl LcuOracle for ChemOracle {
    fn lambda(&self) -> f64 {
        self.lambda
    }

    fn selection(&self) -> Vec<Qubit> {
        let r = &self.regs;
        let s = &self.sub;
        let mut out = vec![r.theta, r.u, r.v];
        out.extend(&r.p);
        out.push(r.alpha);
        out.extend(&r.q);
        out.push(r.beta);
        for reg in [&s.index, &s.alt, &s.keep, &s.sigma, &s.payload_alt] {
            out.extend(reg);
        }
        out.push(s.cmp);
        out.push(s.flag);
        out
    }

    fn system(&self) -> Vec<Qubit> {
        self.regs.sys.clone()
    }

    fn prepare(&self, c: &mut Circuit) -> Result<()> {
        let r = &self.regs;
        let m = r.m as u64;
        subprepare(c, &self.table, Some(&self.payload), &self.sub)?;
        c.h(r.alpha);
        for j in 0..r.d {
            uniform_flagged(c, Some(Control::off(r.u)), r.q_axis(j), r.m, Some(self.sub.flag))?;
        }
        // beta: independent for V with p != q, opposite spin for V with
        // p = q, equal to alpha otherwise
        let zero: Vec<Control> = r.p.iter().map(|&x| Control::off(x)).collect();
        let (z, scope) = and_all(c, &zero);
        let nz = Control { qubit: z.qubit, on: !z.on };
        let g1 = c.and(Control::on(r.v), nz);
        let g2 = c.and(Control::on(r.v), z);
        controlled_h(c, Control::on(g1), r.beta);
        let t = c.and(Control::off(g1), Control::on(r.alpha));
        c.cx(t, r.beta);
        c.unand(Control::off(g1), Control::on(r.alpha), t);
        c.cx(g2, r.beta);
        c.unand(Control::on(r.v), z, g2);
        c.unand(Control::on(r.v), nz, g1);
        scope.undo(c);
        // U terms take q = p; then p = q + d per axis
        for (&a, &b) in r.p.iter().zip(&r.q) {
            fredkin(c, Control::on(r.u), a, b);
        }
        for j in 0..r.d {
            mod_add(c, r.q_axis(j), r.p_axis(j), m);
        }
        Ok(())
    }

    fn select(&self, c: &mut Circuit, ctrl: Option<Qubit>) -> Result<()> {
        self.regs.select(c, ctrl)
    }
}
