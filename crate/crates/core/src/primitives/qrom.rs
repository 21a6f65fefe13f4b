use serde::{Deserialize, Serialize};

use super::gadgets::with_control;
use super::unary::{unary_iterate, Dim};
use crate::circuit::{bits_for, Circuit, Qubit};
use crate::error::{invalid, Result};

/// Table of `L` words, `word_length` bits each, bit 0 first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QromData {
    pub words: Vec<u64>,
    pub word_length: usize,
}

impl QromData {
    pub fn new(words: Vec<u64>, word_length: usize) -> Result<QromData> {
        if words.is_empty() {
            return invalid("QROM needs at least one word");
        }
        if word_length == 0 || word_length > 64 {
            return invalid(format!("word length {word_length} outside 1..=64"));
        }
        if word_length < 64 && words.iter().any(|&w| w >> word_length != 0) {
            return invalid("word wider than the word length");
        }
        Ok(QromData { words, word_length })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Concatenates per-index fields; the first field lands in the low bits.
    pub fn pack(fields: &[(&[u64], usize)]) -> Result<QromData> {
        let len = fields.first().map_or(0, |f| f.0.len());
        if fields.iter().any(|f| f.0.len() != len) {
            return invalid("QROM fields differ in length");
        }
        let width: usize = fields.iter().map(|f| f.1).sum();
        let mut words = vec![0u64; len];
        let mut shift = 0;
        for (vals, w) in fields {
            for (word, &v) in words.iter_mut().zip(vals.iter()) {
                if *w < 64 && v >> w != 0 {
                    return invalid(format!("value {v} does not fit {w} bits"));
                }
                *word |= v << shift;
            }
            shift += w;
        }
        QromData::new(words, width)
    }
}

/// XORs `data[l]` into `out` when the index is `l`.
pub fn qrom(c: &mut Circuit, ctrl: Qubit, dims: &[Dim], data: &QromData, out: &[Qubit]) -> Result<()> {
    if out.len() != data.word_length {
        return invalid(format!("output has {} qubits, words have {} bits", out.len(), data.word_length));
    }
    if dims.iter().map(|d| d.len).product::<usize>() != data.len() {
        return invalid("index space and table length differ");
    }
    unary_iterate(c, ctrl, dims, &mut |c, l, ind| {
        let w = data.words[l];
        for (j, &q) in out.iter().enumerate() {
            if w >> j & 1 == 1 {
                c.cx(ind, q);
            }
        }
    })
}

/// Registers: optional `ctrl`, `sel` (absent when `L = 1`), `out`.
pub fn build_qrom(data: &QromData, controlled: bool) -> Result<Circuit> {
    if data.is_empty() || data.word_length == 0 {
        return invalid("empty QROM");
    }
    let mut c = Circuit::empty();
    let ctrl = if controlled { Some(c.add_register("ctrl", 1)?[0]) } else { None };
    let sel = if data.len() > 1 { c.add_register("sel", bits_for(data.len()))? } else { Vec::new() };
    let out = c.add_register("out", data.word_length)?;
    with_control(&mut c, ctrl, |c, q| qrom(c, q, &[Dim::new(&sel, data.len())], data, &out))?;
    Ok(c)
}
