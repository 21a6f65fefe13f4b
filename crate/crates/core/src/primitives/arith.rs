//! Reversible arithmetic built from temporary ANDs. All registers are
//! little endian.

use super::gadgets::Scope;
use crate::circuit::{bits_for, Circuit, Control, Qubit};

/// `b += a (mod 2^n)` for equal widths, `4(n - 1)` T.
pub fn add_into(c: &mut Circuit, a: &[Qubit], b: &[Qubit]) {
    let n = a.len();
    assert_eq!(n, b.len(), "adder operands differ in width");
    if n == 0 {
        return;
    }
    if n == 1 {
        c.cx(a[0], b[0]);
        return;
    }
    // carries[i] holds c_{i+1}
    let mut carries = Vec::with_capacity(n - 1);
    carries.push(c.and(Control::on(a[0]), Control::on(b[0])));
    for i in 1..n - 1 {
        let ci = carries[i - 1];
        c.cx(ci, a[i]);
        c.cx(ci, b[i]);
        let t = c.and(Control::on(a[i]), Control::on(b[i]));
        c.cx(ci, t);
        carries.push(t);
    }
    c.cx(a[n - 1], b[n - 1]);
    c.cx(carries[n - 2], b[n - 1]);
    for i in (1..n - 1).rev() {
        let (ci, next) = (carries[i - 1], carries[i]);
        c.cx(ci, next);
        c.unand(Control::on(a[i]), Control::on(b[i]), next);
        c.cx(ci, a[i]);
        c.cx(a[i], b[i]);
    }
    c.unand(Control::on(a[0]), Control::on(b[0]), carries[0]);
    c.cx(a[0], b[0]);
}

/// `b -= a (mod 2^n)`.
pub fn sub_from(c: &mut Circuit, a: &[Qubit], b: &[Qubit]) {
    let start = c.mark();
    let held = c.ancilla_in_use();
    add_into(c, a, b);
    debug_assert_eq!(held, c.ancilla_in_use());
    let end = c.mark();
    // the mirrored adder reuses the same, currently free, carry qubits
    let mirror: Vec<_> = c.gates()[start..end].iter().rev().map(|g| g.inverse().unwrap()).collect();
    c.truncate_to(start);
    for g in mirror {
        c.push(g);
    }
}

/// `b += k (mod 2^n)` when `ctrl` fires, by loading `k` into scratch qubits.
pub fn add_const_controlled(c: &mut Circuit, ctrl: Control, k: u64, b: &[Qubit]) {
    let n = b.len();
    let k = if n < 64 { k & ((1u64 << n) - 1) } else { k };
    if k == 0 {
        return;
    }
    let scratch: Vec<Qubit> = (0..n).map(|_| c.alloc_ancilla()).collect();
    load_const(c, ctrl, k, &scratch);
    add_into(c, &scratch, b);
    load_const(c, ctrl, k, &scratch);
    for &q in scratch.iter().rev() {
        c.free_ancilla(q);
    }
}

/// XORs `k` into `reg` when `ctrl` fires (CNOTs only).
pub fn load_const(c: &mut Circuit, ctrl: Control, k: u64, reg: &[Qubit]) {
    for (j, &q) in reg.iter().enumerate() {
        if k >> j & 1 == 1 {
            c.cx_if(ctrl, q);
        }
    }
}

/// Writes `out ^= [x < k]` and returns the scope that computed it; undoing
/// the scope also clears `out`. Uses at most `n - 1` ANDs.
pub fn less_than_const(c: &mut Circuit, x: &[Qubit], k: u64, out: Qubit) -> Scope {
    let n = x.len();
    let mut scope = Scope::begin(c);
    if n < 64 && k >> n != 0 {
        c.x(out);
        return scope.close(c);
    }
    // e: all bits above the current one match k (None means vacuously true)
    let mut e: Option<Control> = None;
    for i in (0..n).rev() {
        let one = k >> i & 1 == 1;
        let lit = Control { qubit: x[i], on: one };
        if one {
            // term for this bit: prefix matches and x_i = 0, i.e. e xor e_next
            match e {
                None => {
                    c.cx_if(Control::off(x[i]), out);
                    e = Some(lit);
                }
                Some(prev) => {
                    let next = scope.and(c, prev, lit);
                    c.cx_if(prev, out);
                    c.cx(next, out);
                    e = Some(Control::on(next));
                }
            }
        } else if i > 0 {
            e = Some(match e {
                None => lit,
                Some(prev) => Control::on(scope.and(c, prev, lit)),
            });
        }
    }
    scope.close(c)
}

/// `out ^= [a >= b]` for equal widths: the carry out of `a + !b + 1`. `4n` T.
pub fn compare_geq(c: &mut Circuit, a: &[Qubit], b: &[Qubit], out: Qubit) {
    let n = a.len();
    assert_eq!(n, b.len());
    assert!(n > 0);
    let mut scope = Scope::begin(c);
    for &q in b {
        c.x(q);
    }
    let first = scope.and(c, Control::off(a[0]), Control::off(b[0]));
    c.x(first);
    let mut carry = first;
    for i in 1..n {
        c.cx(carry, a[i]);
        c.cx(carry, b[i]);
        let t = scope.and(c, Control::on(a[i]), Control::on(b[i]));
        c.cx(carry, t);
        carry = t;
    }
    let scope = scope.close(c);
    c.cx(carry, out);
    scope.undo(c);
}

/// `b = (a + b) mod m` for `a, b < m`, with `b` and `a` of width
/// `bits_for(m)`. Power-of-two moduli use a plain adder.
pub fn mod_add(c: &mut Circuit, a: &[Qubit], b: &[Qubit], m: u64) {
    let w = bits_for(m as usize);
    assert!(a.len() == w && b.len() == w, "operands must have {w} bits");
    if m.is_power_of_two() {
        add_into(c, a, b);
        return;
    }
    let a_top = c.alloc_ancilla();
    let b_top = c.alloc_ancilla();
    let ax: Vec<Qubit> = a.iter().copied().chain([a_top]).collect();
    let bx: Vec<Qubit> = b.iter().copied().chain([b_top]).collect();
    add_into(c, &ax, &bx);
    // f = [s >= m]
    let f = c.alloc_ancilla();
    let lt = c.alloc_ancilla();
    let cmp = less_than_const(c, &bx, m, lt);
    c.cx_if(Control::off(lt), f);
    cmp.undo(c);
    c.free_ancilla(lt);
    add_const_controlled(c, Control::on(f), (1u64 << (w + 1)) - m, &bx);
    // after reduction f = [b < a]
    compare_geq(c, b, a, f);
    c.x(f);
    c.free_ancilla(f);
    c.free_ancilla(b_top);
    c.free_ancilla(a_top);
}

/// `b = (b + k) mod m` for a classical `k < m`, when `ctrl` fires.
pub fn mod_add_const_controlled(c: &mut Circuit, ctrl: Control, k: u64, b: &[Qubit], m: u64) {
    let scratch: Vec<Qubit> = (0..b.len()).map(|_| c.alloc_ancilla()).collect();
    load_const(c, ctrl, k, &scratch);
    mod_add(c, &scratch, b, m);
    load_const(c, ctrl, k, &scratch);
    for &q in scratch.iter().rev() {
        c.free_ancilla(q);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::SparseState;

    fn eval(c: &Circuit, input: u128) -> u128 {
        let mut s = SparseState::basis(input);
        s.run(c, true).unwrap();
        let e = s.entries();
        assert_eq!(e.len(), 1, "not a permutation");
        assert!((e[0].1.re - 1.0).abs() < 1e-12);
        e[0].0
    }

    fn field(v: u128, reg: &[Qubit]) -> u128 {
        reg.iter().enumerate().fold(0, |acc, (k, &q)| acc | ((v >> q & 1) << k))
    }

    #[test]
    fn adder_exhaustive() {
        for n in 1..=4usize {
            let mut c = Circuit::new(&[("a", n), ("b", n)]).unwrap();
            let (a, b) = (c.reg("a").unwrap(), c.reg("b").unwrap());
            add_into(&mut c, &a, &b);
            assert_eq!(c.t_count(), 4 * (n - 1));
            for x in 0..1u128 << n {
                for y in 0..1u128 << n {
                    let out = eval(&c, x | y << n);
                    assert_eq!(field(out, &a), x);
                    assert_eq!(field(out, &b), (x + y) % (1 << n));
                    assert_eq!(out >> (2 * n), 0);
                }
            }
        }
    }

    #[test]
    fn subtract_inverts_add() {
        let mut c = Circuit::new(&[("a", 3), ("b", 3)]).unwrap();
        let (a, b) = (c.reg("a").unwrap(), c.reg("b").unwrap());
        sub_from(&mut c, &a, &b);
        for x in 0..8u128 {
            for y in 0..8u128 {
                assert_eq!(field(eval(&c, x | y << 3), &b), (y + 8 - x) % 8);
            }
        }
    }

    #[test]
    fn less_than_constant_exhaustive() {
        for n in 1..=4usize {
            for k in 0..=(1u64 << n) {
                let mut c = Circuit::new(&[("x", n), ("o", 1)]).unwrap();
                let (x, o) = (c.reg("x").unwrap(), c.reg("o").unwrap()[0]);
                let s = less_than_const(&mut c, &x, k, o);
                assert!(c.ledger().and_compute <= n.saturating_sub(1));
                // copy out and undo to check cleanliness
                let copy = c.add_register("copy", 1).unwrap()[0];
                c.cx(o, copy);
                s.undo(&mut c);
                for v in 0..1u128 << n {
                    let out = eval(&c, v);
                    assert_eq!(out >> copy & 1, (v < k as u128) as u128, "n={n} k={k} v={v}");
                    assert_eq!(out & !(1 << copy), v);
                }
            }
        }
    }

    #[test]
    fn compare_exhaustive() {
        for n in 1..=3usize {
            let mut c = Circuit::new(&[("a", n), ("b", n), ("o", 1)]).unwrap();
            let (a, b, o) = (c.reg("a").unwrap(), c.reg("b").unwrap(), c.reg("o").unwrap()[0]);
            compare_geq(&mut c, &a, &b, o);
            assert_eq!(c.t_count(), 4 * n);
            for x in 0..1u128 << n {
                for y in 0..1u128 << n {
                    let input = x | y << n;
                    assert_eq!(eval(&c, input), input | ((x >= y) as u128) << o);
                }
            }
        }
    }

    #[test]
    fn modular_addition() {
        for m in [2u64, 3, 4, 5, 6, 7, 8] {
            let w = bits_for(m as usize);
            let mut c = Circuit::new(&[("a", w), ("b", w)]).unwrap();
            let (a, b) = (c.reg("a").unwrap(), c.reg("b").unwrap());
            mod_add(&mut c, &a, &b, m);
            for x in 0..m as u128 {
                for y in 0..m as u128 {
                    let out = eval(&c, x | y << w);
                    assert_eq!(out, x | ((x + y) % m as u128) << w, "m={m}");
                }
            }
        }
    }

    #[test]
    fn controlled_modular_constant() {
        let m = 6u64;
        let mut c = Circuit::new(&[("c", 1), ("b", 3)]).unwrap();
        let b = c.reg("b").unwrap();
        mod_add_const_controlled(&mut c, Control::on(0), 5, &b, m);
        for y in 0..6u128 {
            assert_eq!(eval(&c, 1 | y << 1), 1 | ((y + 5) % 6) << 1);
            assert_eq!(eval(&c, y << 1), y << 1);
        }
    }
}
