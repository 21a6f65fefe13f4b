//! Line oriented text format.
//!
//! ```text
//! CIRCUIT sel:2 out:3 anc:1 # t=4 and=1 unand=1 rot=0 ccx=0 meas=0
//! GATE and anc[0] [sel[0] !sel[1]]
//! ```
//! The header lists registers in order; gates name qubits as `reg[offset]`
//! and controls go in brackets, `!` marking a control that fires on |0>.

use std::fmt::Write;

use super::{Circuit, Control, Gate, GateKind, QubitRef};
use crate::error::{Error, Result};

impl Circuit {
    pub fn serialize(&self) -> String {
        let mut out = String::from("CIRCUIT");
        for r in self.registers() {
            let _ = write!(out, " {}:{}", r.name, r.qubits.len());
        }
        let l = self.ledger();
        let _ = writeln!(
            out,
            " # t={} and={} unand={} rot={} ccx={} meas={}",
            l.t_count(),
            l.and_compute,
            l.and_uncompute,
            l.rotations,
            l.toffoli,
            l.measurements
        );
        for g in self.gates() {
            out.push_str("GATE ");
            out.push_str(&g.kind.name());
            for &t in &g.targets {
                out.push(' ');
                out.push_str(&self.label(t));
            }
            if !g.controls.is_empty() {
                out.push_str(" [");
                for (i, c) in g.controls.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    if !c.on {
                        out.push('!');
                    }
                    out.push_str(&self.label(c.qubit));
                }
                out.push(']');
            }
            out.push('\n');
        }
        out
    }

    fn label(&self, q: usize) -> String {
        let r = self.name_of(q).expect("gate qubit belongs to a register");
        format!("{}[{}]", r.register, r.offset)
    }

    /// Inverse of [`Circuit::serialize`]. Registers are laid out contiguously
    /// in header order.
    pub fn parse(text: &str) -> Result<Circuit> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let header = header.split('#').next().unwrap_or("");
        let mut words = header.split_whitespace();
        if words.next() != Some("CIRCUIT") {
            return Err(Error::Parse { line: 1, msg: "expected CIRCUIT header".into() });
        }
        let mut c = Circuit::empty();
        for w in words {
            let (name, size) = w.split_once(':').ok_or(Error::Parse { line: 1, msg: format!("bad register `{w}`") })?;
            let size: usize = size.parse().map_err(|_| Error::Parse { line: 1, msg: format!("bad size in `{w}`") })?;
            c.add_register(name, size).map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?;
        }
        if c.registers().is_empty() {
            return Err(Error::NoRegisters);
        }
        for (i, line) in lines {
            let lineno = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: lineno, msg };
            let body = line.strip_prefix("GATE ").ok_or_else(|| perr("expected GATE".into()))?;
            let (head, ctrl) = match body.split_once(" [") {
                Some((h, c)) => (h, Some(c.strip_suffix(']').ok_or_else(|| perr("unclosed control list".into()))?)),
                None => (body, None),
            };
            let mut parts = head.split_whitespace();
            let kind = parse_kind(parts.next().ok_or_else(|| perr("missing kind".into()))?).map_err(perr)?;
            let targets = parts
                .map(|t| parse_ref(t).and_then(|r| c.resolve(&r).map_err(|e| e.to_string())))
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(perr)?;
            let mut controls = Vec::new();
            if let Some(list) = ctrl {
                for w in list.split_whitespace() {
                    let (on, w) = match w.strip_prefix('!') {
                        Some(rest) => (false, rest),
                        None => (true, w),
                    };
                    let q = parse_ref(w).and_then(|r| c.resolve(&r).map_err(|e| e.to_string())).map_err(perr)?;
                    controls.push(Control { qubit: q, on });
                }
            }
            c.append(Gate::new(kind, targets, controls)).map_err(|e| perr(e.to_string()))?;
        }
        Ok(c)
    }
}

fn parse_ref(s: &str) -> std::result::Result<QubitRef, String> {
    let (name, rest) = s.split_once('[').ok_or_else(|| format!("bad qubit `{s}`"))?;
    let idx = rest.strip_suffix(']').ok_or_else(|| format!("bad qubit `{s}`"))?;
    let offset = idx.parse().map_err(|_| format!("bad offset in `{s}`"))?;
    Ok(QubitRef::new(name, offset))
}

fn parse_kind(s: &str) -> std::result::Result<GateKind, String> {
    use GateKind::*;
    if let Some(rest) = s.strip_prefix("if(c") {
        let (bit, inner) = rest.split_once("):").ok_or_else(|| format!("bad kind `{s}`"))?;
        let bit = bit.parse().map_err(|_| format!("bad bit in `{s}`"))?;
        return Ok(ClassicallyControlled { inner: Box::new(parse_kind(inner)?), bit });
    }
    let arg = |prefix: &str| -> Option<&str> { s.strip_prefix(prefix).and_then(|r| r.strip_suffix(')')) };
    if let Some(a) = arg("rz(") {
        return a.parse().map(RotZ).map_err(|_| format!("bad angle `{a}`"));
    }
    if let Some(a) = arg("ry(") {
        return a.parse().map(RotY).map_err(|_| format!("bad angle `{a}`"));
    }
    if let Some(a) = arg("measure(c") {
        return a.parse().map(Measure).map_err(|_| format!("bad bit `{a}`"));
    }
    Ok(match s {
        "x" => X,
        "y" => Y,
        "z" => Z,
        "h" => H,
        "s" => S,
        "sdg" => Sdg,
        "t" => T,
        "tdg" => Tdg,
        "cnot" => Cnot,
        "cz" => Cz,
        "swap" => Swap,
        "and" => AndCompute,
        "unand" => AndUncompute,
        "ccx" => Toffoli,
        _ => return Err(format!("unknown gate `{s}`")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_gate_two_lines() {
        let mut c = Circuit::new(&[("q", 1)]).unwrap();
        c.h(0);
        let s = c.serialize();
        assert_eq!(s.lines().count(), 2);
        assert_eq!(s.lines().nth(1), Some("GATE h q[0]"));
    }

    #[test]
    fn round_trip_all_kinds() {
        let mut c = Circuit::new(&[("a", 2), ("b", 2)]).unwrap();
        c.x(0);
        c.y(1);
        c.z(2);
        c.h(3);
        c.s(0);
        c.sdg(0);
        c.t(1);
        c.tdg(1);
        c.rz(0.1 + 0.2, 2);
        c.ry(-1e-17, 3);
        c.cx_if(Control::off(0), 1);
        c.cz(2, 3);
        c.swap(0, 3);
        let t = c.and(Control::on(0), Control::off(1));
        c.unand(Control::on(0), Control::off(1), t);
        c.push(Gate::new(GateKind::Toffoli, vec![3], vec![Control::on(0), Control::on(1)]));
        let b = c.measure(2);
        c.push(Gate::new(GateKind::ClassicallyControlled { inner: Box::new(GateKind::X), bit: b }, vec![2], vec![]));
        let s = c.serialize();
        let back = Circuit::parse(&s).unwrap();
        assert_eq!(back.serialize(), s);
        assert_eq!(back.gates(), c.gates());
        assert_eq!(back.ledger(), c.ledger());
    }

    #[test]
    fn parse_errors_carry_line() {
        let err = Circuit::parse("CIRCUIT q:1\nGATE h q[0]\nGATE foo q[0]\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        assert!(Circuit::parse("GATE h q[0]").is_err());
        assert!(Circuit::parse("CIRCUIT q:1\nGATE h q[4]").is_err());
    }
}
