//! Unary iteration and the operations built directly on it.

use super::gadgets::{controlled_pauli, with_control, Pauli};
use crate::circuit::{bits_for, Circuit, Control, Qubit};
use crate::error::{invalid, Result};

/// One index register of an iteration: little-endian `bits` holding a value
/// below `len`. Bits above `bits_for(len)` are never read.
#[derive(Clone, Copy, Debug)]
pub struct Dim<'a> {
    pub bits: &'a [Qubit],
    pub len: usize,
}

impl<'a> Dim<'a> {
    pub fn new(bits: &'a [Qubit], len: usize) -> Self {
        Dim { bits, len }
    }
}

pub type Body<'b> = dyn FnMut(&mut Circuit, usize, Qubit) + 'b;

/// Iterates over every value of the (row-major, first dim outermost) index
/// space. `body` gets the flat index and a qubit that is on exactly when the
/// control is on and the registers hold that index. Emits `L - 1` ANDs for
/// `L` = product of lengths.
pub fn unary_iterate(c: &mut Circuit, ctrl: Qubit, dims: &[Dim], body: &mut Body) -> Result<()> {
    let mut sel: Vec<Qubit> = Vec::new();
    for d in dims {
        if d.len == 0 {
            return invalid("iteration dimension of length 0");
        }
        let nb = bits_for(d.len);
        if d.bits.len() < nb {
            return invalid(format!("{} bits cannot index {} values", d.bits.len(), d.len));
        }
        sel.extend_from_slice(&d.bits[..nb]);
    }
    let mut bad = None;
    let mut guarded = |c: &mut Circuit, i: usize, ind: Qubit| {
        let start = c.mark();
        body(c, i, ind);
        if bad.is_none() {
            bad = c.gates()[start..].iter().flat_map(|g| g.targets.iter()).find(|t| sel.contains(t)).copied();
        }
    };
    walk_dims(c, ctrl, dims, 0, &mut guarded);
    match bad {
        Some(q) => invalid(format!("iteration body targets selection qubit {q}")),
        None => Ok(()),
    }
}

fn walk_dims(c: &mut Circuit, ctrl: Qubit, dims: &[Dim], prefix: usize, body: &mut Body) {
    match dims.split_first() {
        None => body(c, prefix, ctrl),
        Some((d, rest)) => {
            let top = bits_for(d.len) as isize - 1;
            node(c, ctrl, d.bits, top, 0, d.len, &mut |c: &mut Circuit, v, ind| {
                walk_dims(c, ind, rest, prefix * d.len + v, body)
            });
        }
    }
}

/// Segment-tree node covering `[base, base + 2^(b+1)) ∩ [0, len)`.
fn node(c: &mut Circuit, ctrl: Qubit, bits: &[Qubit], b: isize, base: usize, len: usize, leaf: &mut Body) {
    if b < 0 {
        leaf(c, base, ctrl);
        return;
    }
    let mid = base + (1usize << b);
    if len <= mid {
        // every valid value has bit b clear, the control on it is dropped
        node(c, ctrl, bits, b - 1, base, len, leaf);
        return;
    }
    let s = bits[b as usize];
    let a = c.and(Control::on(ctrl), Control::off(s));
    node(c, a, bits, b - 1, base, len, leaf);
    c.cx(ctrl, a);
    node(c, a, bits, b - 1, mid, len, leaf);
    c.unand(Control::on(ctrl), Control::on(s), a);
}

/// Applies `actions[l]` (controlled Paulis) when the index is `l`.
pub fn indexed_paulis(c: &mut Circuit, ctrl: Qubit, dims: &[Dim], actions: &[Vec<(Pauli, Qubit)>]) -> Result<()> {
    unary_iterate(c, ctrl, dims, &mut |c, l, ind| {
        for &(p, t) in &actions[l] {
            controlled_pauli(c, Control::on(ind), p, t);
        }
    })
}

/// Applies `G` on `targets[k]` for every `k` below the index value, using an
/// accumulator that ends in |0>.
pub fn ranged(c: &mut Circuit, ctrl: Qubit, dims: &[Dim], p: Pauli, targets: &[Qubit]) -> Result<()> {
    selected(c, ctrl, dims, None, Some(p), targets)
}

/// `A_l Z_{l-1} ... Z_0` on `targets` for index value `l`, with `A` = X or Y.
pub fn majorana(c: &mut Circuit, ctrl: Qubit, dims: &[Dim], a: Pauli, targets: &[Qubit]) -> Result<()> {
    selected(c, ctrl, dims, Some(a), Some(Pauli::Z), targets)
}

fn selected(
    c: &mut Circuit,
    ctrl: Qubit,
    dims: &[Dim],
    at: Option<Pauli>,
    below: Option<Pauli>,
    targets: &[Qubit],
) -> Result<()> {
    let acc = c.alloc_ancilla();
    c.cx(ctrl, acc);
    let r = unary_iterate(c, ctrl, dims, &mut |c, l, ind| {
        if let Some(p) = at {
            controlled_pauli(c, Control::on(ind), p, targets[l]);
        }
        // acc becomes [index > l]
        c.cx(ind, acc);
        if let Some(p) = below {
            controlled_pauli(c, Control::on(acc), p, targets[l]);
        }
    });
    c.free_ancilla(acc);
    r
}

/// Circuit with optional `ctrl`, a `sel` register for `len` values and a
/// `sys` register of `sys_width` qubits.
pub(crate) fn frame(len: usize, sys: (&str, usize), controlled: bool) -> Result<(Circuit, Option<Qubit>, Vec<Qubit>, Vec<Qubit>)> {
    if len < 2 {
        return invalid("need at least two index values");
    }
    let mut c = Circuit::empty();
    let ctrl = if controlled { Some(c.add_register("ctrl", 1)?[0]) } else { None };
    let sel = c.add_register("sel", bits_for(len))?;
    let out = c.add_register(sys.0, sys.1)?;
    Ok((c, ctrl, sel, out))
}

/// Stand-alone unary iteration over `len` values. The body sees the circuit,
/// the index and its indicator; the `sys` register has `sys_width` qubits.
pub fn build_unary_iteration(len: usize, sys_width: usize, controlled: bool, body: &mut Body) -> Result<Circuit> {
    let (mut c, ctrl, sel, _) = frame(len, ("sys", sys_width), controlled)?;
    with_control(&mut c, ctrl, |c, q| unary_iterate(c, q, &[Dim::new(&sel, len)], body))?;
    Ok(c)
}

/// Per-index list of Pauli actions on a system register.
#[derive(Clone, Debug, PartialEq)]
pub struct IndexedTargetSpec {
    pub actions: Vec<Vec<(Pauli, usize)>>,
}

impl IndexedTargetSpec {
    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn system_width(&self) -> usize {
        self.actions.iter().flatten().map(|a| a.1 + 1).max().unwrap_or(1)
    }
}

pub fn build_indexed(spec: &IndexedTargetSpec, controlled: bool) -> Result<Circuit> {
    let (mut c, ctrl, sel, sys) = frame(spec.len(), ("sys", spec.system_width()), controlled)?;
    let actions: Vec<Vec<(Pauli, Qubit)>> =
        spec.actions.iter().map(|a| a.iter().map(|&(p, t)| (p, sys[t])).collect()).collect();
    with_control(&mut c, ctrl, |c, q| indexed_paulis(c, q, &[Dim::new(&sel, spec.len())], &actions))?;
    Ok(c)
}

pub fn build_ranged_op(len: usize, p: Pauli, controlled: bool) -> Result<Circuit> {
    let (mut c, ctrl, sel, sys) = frame(len, ("sys", len), controlled)?;
    with_control(&mut c, ctrl, |c, q| ranged(c, q, &[Dim::new(&sel, len)], p, &sys))?;
    Ok(c)
}

/// Selected Majorana `Y_l Z_{l-1} ... Z_0`.
pub fn build_majorana_selector(len: usize, controlled: bool) -> Result<Circuit> {
    let (mut c, ctrl, sel, sys) = frame(len, ("sys", len), controlled)?;
    with_control(&mut c, ctrl, |c, q| majorana(c, q, &[Dim::new(&sel, len)], Pauli::Y, &sys))?;
    Ok(c)
}
