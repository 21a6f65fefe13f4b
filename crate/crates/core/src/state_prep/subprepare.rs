//! Coherent alias sampling: uniform index, QROM lookup of (alt, keep,
//! payload), uniform sigma, comparison and controlled swap.

use serde::Serialize;

use super::alias::AliasTable;
use crate::circuit::{bits_for, Circuit, Control, Qubit};
use crate::error::{invalid, Result};
use crate::primitives::arith::compare_geq;
use crate::primitives::gadgets::{controlled_swap_regs, with_control};
use crate::primitives::uniform::uniform_flagged;
use crate::primitives::{qrom, Dim, QromData};

/// Qubits used by [`subprepare`]. After it runs, `index` and `payload` hold
/// the sampled entry; everything else is garbage correlated with it.
#[derive(Clone, Debug, Serialize)]
pub struct SubprepareRegs {
    pub index: Vec<Qubit>,
    pub alt: Vec<Qubit>,
    pub keep: Vec<Qubit>,
    pub sigma: Vec<Qubit>,
    pub cmp: Qubit,
    /// Flag of the uniform superposition over `index`.
    pub flag: Qubit,
    pub payload: Vec<Qubit>,
    pub payload_alt: Vec<Qubit>,
}

impl SubprepareRegs {
    /// Adds the registers to `c`. `payload` is supplied by the caller since
    /// it usually doubles as an output register.
    pub fn allocate(c: &mut Circuit, prefix: &str, len: usize, mu: u32, payload: Vec<Qubit>) -> Result<SubprepareRegs> {
        let nb = bits_for(len).max(1);
        let mu = mu as usize;
        let index = c.add_register(&format!("{prefix}index"), nb)?;
        let alt = c.add_register(&format!("{prefix}alt"), nb)?;
        let keep = c.add_register(&format!("{prefix}keep"), mu)?;
        let sigma = c.add_register(&format!("{prefix}sigma"), mu)?;
        let cmp = c.add_register(&format!("{prefix}cmp"), 1)?[0];
        let flag = c.add_register(&format!("{prefix}flag"), 1)?[0];
        let payload_alt =
            if payload.is_empty() { Vec::new() } else { c.add_register(&format!("{prefix}payload_alt"), payload.len())? };
        Ok(SubprepareRegs { index, alt, keep, sigma, cmp, flag, payload, payload_alt })
    }
}

/// Keep values as loaded: `2^mu` is stored as `2^mu - 1`, which is exact
/// because such entries alias to themselves.
fn loaded_keep(table: &AliasTable) -> Vec<u64> {
    let top = (1u64 << table.mu) - 1;
    table.keep.iter().map(|&k| k.min(top)).collect()
}

pub fn subprepare(c: &mut Circuit, table: &AliasTable, payload: Option<&QromData>, r: &SubprepareRegs) -> Result<()> {
    let len = table.len();
    let mu = table.mu as usize;
    if mu == 0 {
        return invalid("keep precision must be at least one bit");
    }
    if r.keep.len() != mu || r.sigma.len() != mu {
        return invalid(format!("keep/sigma registers must have {mu} qubits"));
    }
    let nb = bits_for(len).max(1);
    if r.index.len() != nb || r.alt.len() != nb {
        return invalid(format!("index/alt registers must have {nb} qubits"));
    }
    let pw = payload.map_or(0, |p| p.word_length);
    if r.payload.len() != pw || r.payload_alt.len() != pw {
        return invalid("payload register width mismatch");
    }
    if let Some(p) = payload {
        if p.len() != len {
            return invalid("payload table length differs from alias table");
        }
    }
    let alt: Vec<u64> = table.alt.iter().map(|&a| a as u64).collect();
    let keep = loaded_keep(table);
    let empty = vec![0u64; len];
    let pay = payload.map_or(&empty[..], |p| &p.words[..]);
    let pay_alt: Vec<u64> = table.alt.iter().map(|&a| pay[a]).collect();
    let mut fields: Vec<(&[u64], usize)> = vec![(&alt, nb), (&keep, mu)];
    if pw > 0 {
        fields.push((pay, pw));
        fields.push((&pay_alt, pw));
    }
    let data = QromData::pack(&fields)?;
    let mut out: Vec<Qubit> = Vec::new();
    out.extend(&r.alt);
    out.extend(&r.keep);
    out.extend(&r.payload);
    out.extend(&r.payload_alt);

    uniform_flagged(c, None, &r.index, len, Some(r.flag))?;
    with_control(c, None, |c, flag| qrom(c, flag, &[Dim::new(&r.index, len)], &data, &out))?;
    for &q in &r.sigma {
        c.h(q);
    }
    compare_geq(c, &r.sigma, &r.keep, r.cmp);
    controlled_swap_regs(c, Control::on(r.cmp), &r.index, &r.alt);
    controlled_swap_regs(c, Control::on(r.cmp), &r.payload, &r.payload_alt);
    Ok(())
}

/// Stand-alone SUBPREPARE with an optional `payload` output register.
pub fn build_subprepare(table: &AliasTable, payload: Option<&QromData>) -> Result<Circuit> {
    let mut c = Circuit::empty();
    let pay = match payload {
        Some(p) => c.add_register("payload", p.word_length)?,
        None => Vec::new(),
    };
    let regs = SubprepareRegs::allocate(&mut c, "", table.len(), table.mu, pay)?;
    subprepare(&mut c, table, payload, &regs)?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::SparseState;
    use crate::state_prep::{build_alias_table, DiscretizedDistribution};

    fn marginal(c: &Circuit, reg: &[Qubit]) -> Vec<f64> {
        let mut s = SparseState::basis(0);
        s.run(c, true).unwrap();
        let mut out = vec![0.0; 1 << reg.len()];
        for (k, a) in s.entries() {
            let v = reg.iter().enumerate().fold(0, |acc, (i, &q)| acc | ((k >> q & 1) as usize) << i);
            out[v] += a.norm_sqr();
        }
        out
    }

    #[test]
    fn dyadic_marginals() {
        let t = build_alias_table(&DiscretizedDistribution { mu: 3, targets: vec![16, 8, 4, 4] });
        let c = build_subprepare(&t, None).unwrap();
        let m = marginal(&c, &c.reg("index").unwrap());
        for (got, want) in m.iter().zip([0.5, 0.25, 0.125, 0.125]) {
            assert!((got - want).abs() < 1e-10);
        }
        // QROM 4L-4, comparator 4 mu, swaps 4 per index bit
        assert_eq!(c.t_count(), 12 + 12 + 8);
    }

    #[test]
    fn payload_follows_the_index() {
        let t = build_alias_table(&DiscretizedDistribution { mu: 2, targets: vec![1, 7, 4, 4] });
        let data = QromData::new(vec![5, 6, 2, 3], 3).unwrap();
        let c = build_subprepare(&t, Some(&data)).unwrap();
        let (idx, pay) = (c.reg("index").unwrap(), c.reg("payload").unwrap());
        let mut s = SparseState::basis(0);
        s.run(&c, true).unwrap();
        for (k, a) in s.entries() {
            if a.norm() < 1e-12 {
                continue;
            }
            let field = |reg: &[Qubit]| reg.iter().enumerate().fold(0u64, |acc, (i, &q)| acc | ((k >> q & 1) as u64) << i);
            assert_eq!(data.words[field(&idx) as usize], field(&pay));
        }
        let m = marginal(&c, &idx);
        for (l, &tg) in t.targets.iter().enumerate() {
            assert!((m[l] - tg as f64 / 16.0).abs() < 1e-10);
        }
    }
}
