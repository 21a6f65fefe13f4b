//! Job configuration: flat `key = value` text with `[section]` headers, or
//! the same structure as JSON.
//!
//! ```text
//! command = estimate
//! [model]
//! kind = hubbard
//! M = 6
//! t = 1
//! u = 4
//! [precision]
//! dE = 0.01
//! p = 1e-3, 1e-4
//! ```

use std::fmt;
use std::str::FromStr;

use qubitize::Error;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Synth,
    Verify,
    Budget,
    Estimate,
    LambdaScan,
}

impl FromStr for Command {
    type Err = String;
    fn from_str(s: &str) -> Result<Command, String> {
        Ok(match s {
            "synth" => Command::Synth,
            "verify" => Command::Verify,
            "budget" => Command::Budget,
            "estimate" => Command::Estimate,
            "lambda-scan" => Command::LambdaScan,
            _ => return Err(format!("unknown command `{s}`")),
        })
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Command::Synth => "synth",
            Command::Verify => "verify",
            Command::Budget => "budget",
            Command::Estimate => "estimate",
            Command::LambdaScan => "lambda-scan",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Chem,
    Hubbard,
    /// Every published resource row.
    Published,
}

impl FromStr for ModelKind {
    type Err = String;
    fn from_str(s: &str) -> Result<ModelKind, String> {
        Ok(match s {
            "chem" | "jellium" => ModelKind::Chem,
            "hubbard" => ModelKind::Hubbard,
            "published" => ModelKind::Published,
            _ => return Err(format!("unknown model `{s}`")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SynthTarget {
    Qrom,
    Majorana,
    Indexed,
    Ranged,
    Uniform,
    Select,
    Prepare,
    Walk,
    Chi,
    Pea,
}

impl FromStr for SynthTarget {
    type Err = String;
    fn from_str(s: &str) -> Result<SynthTarget, String> {
        Ok(match s {
            "qrom" => SynthTarget::Qrom,
            "majorana" => SynthTarget::Majorana,
            "indexed" => SynthTarget::Indexed,
            "ranged" => SynthTarget::Ranged,
            "uniform" => SynthTarget::Uniform,
            "select" => SynthTarget::Select,
            "prepare" => SynthTarget::Prepare,
            "walk" => SynthTarget::Walk,
            "chi" => SynthTarget::Chi,
            "pea" => SynthTarget::Pea,
            _ => return Err(format!("unknown synthesis target `{s}`")),
        })
    }
}

/// Every setting a job can use. Unset values fall back to per-command
/// defaults; the output directory is not part of the hash.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct JobConfig {
    pub command: Option<Command>,
    pub model: Option<ModelKind>,
    #[serde(rename = "M")]
    pub m: Option<usize>,
    #[serde(rename = "D")]
    pub d: Option<usize>,
    pub t: Option<f64>,
    pub u: Option<f64>,
    pub rs: Option<f64>,
    pub recompute_lambda: Option<bool>,
    #[serde(rename = "dE")]
    pub delta_e: Option<f64>,
    pub eps_synth: Option<f64>,
    pub p: Option<Vec<f64>>,
    pub norm: Option<f64>,
    pub pea_bits: Option<u32>,
    pub mu: Option<u32>,
    pub target: Option<SynthTarget>,
    pub len: Option<usize>,
    pub word_bits: Option<usize>,
    pub controlled: Option<bool>,
    pub scan_m: Option<Vec<usize>>,
    pub seed: Option<u64>,
    #[serde(skip)]
    pub out: Option<String>,
}

/// One `key = value` entry with the line it came from.
#[derive(Clone, Debug, PartialEq)]
struct Entry {
    line: usize,
    section: String,
    key: String,
    value: String,
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Config { line, msg: msg.into() }
}

fn split_entries(text: &str) -> Result<Vec<Entry>, Error> {
    let mut section = String::new();
    let mut out: Vec<Entry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.split(['#', ';']).next().unwrap_or("").trim();
        if s.is_empty() {
            continue;
        }
        if let Some(rest) = s.strip_prefix('[') {
            let name = rest.strip_suffix(']').ok_or_else(|| err(line, "unterminated section header"))?.trim();
            if name.is_empty() {
                return Err(err(line, "empty section name"));
            }
            section = name.to_string();
            continue;
        }
        let (k, v) = s.split_once('=').ok_or_else(|| err(line, format!("expected `key = value`, got `{s}`")))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return Err(err(line, "missing key"));
        }
        if let Some(prev) = out.iter().find(|e| e.section == section && e.key == k) {
            return Err(err(line, format!("`{k}` already set on line {}", prev.line)));
        }
        out.push(Entry { line, section: section.clone(), key: k.to_string(), value: v.to_string() });
    }
    Ok(out)
}

/// Flattens a JSON object of the same shape; line numbers point at the
/// first line mentioning the key.
fn json_entries(text: &str) -> Result<Vec<Entry>, Error> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| err(e.line(), e.to_string()))?;
    let top = v.as_object().ok_or_else(|| err(1, "top level must be an object"))?;
    let line_of = |key: &str| {
        let pat = format!("\"{key}\"");
        text.lines().position(|l| l.contains(&pat)).map_or(1, |i| i + 1)
    };
    let scalar = |key: &str, v: &serde_json::Value| -> Result<String, Error> {
        match v {
            serde_json::Value::String(s) => Ok(s.clone()),
            serde_json::Value::Number(n) => Ok(n.to_string()),
            serde_json::Value::Bool(b) => Ok(b.to_string()),
            serde_json::Value::Array(a) => {
                let parts: Result<Vec<String>, Error> = a
                    .iter()
                    .map(|x| match x {
                        serde_json::Value::Number(n) => Ok(n.to_string()),
                        _ => Err(err(line_of(key), format!("`{key}` must be a list of numbers"))),
                    })
                    .collect();
                Ok(parts?.join(","))
            }
            _ => Err(err(line_of(key), format!("`{key}` has an unsupported value"))),
        }
    };
    let mut out = Vec::new();
    for (k, v) in top {
        if let serde_json::Value::Object(inner) = v {
            for (k2, v2) in inner {
                out.push(Entry { line: line_of(k2), section: k.clone(), key: k2.clone(), value: scalar(k2, v2)? });
            }
        } else {
            out.push(Entry { line: line_of(k), section: String::new(), key: k.clone(), value: scalar(k, v)? });
        }
    }
    Ok(out)
}

fn parse_value<T: FromStr>(e: &Entry) -> Result<T, Error>
where
    T::Err: fmt::Display,
{
    e.value.parse::<T>().map_err(|x| err(e.line, format!("bad value for `{}`: {x}", e.key)))
}

fn parse_list<T: FromStr>(e: &Entry) -> Result<Vec<T>, Error>
where
    T::Err: fmt::Display,
{
    let items: Vec<&str> = e.value.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if items.is_empty() {
        return Err(err(e.line, format!("`{}` needs at least one value", e.key)));
    }
    items
        .iter()
        .map(|s| s.parse::<T>().map_err(|x| err(e.line, format!("bad list item `{s}` for `{}`: {x}", e.key))))
        .collect()
}

impl JobConfig {
    pub fn parse(text: &str) -> Result<JobConfig, Error> {
        let entries = if text.trim_start().starts_with('{') { json_entries(text)? } else { split_entries(text)? };
        let mut c = JobConfig::default();
        for e in &entries {
            let section = e.section.as_str();
            match (section, e.key.as_str()) {
                ("", "command") => c.command = Some(parse_value(e)?),
                ("model", "kind") => c.model = Some(parse_value(e)?),
                ("model", "M") => c.m = Some(parse_value(e)?),
                ("model", "D") => c.d = Some(parse_value(e)?),
                ("model", "t") => c.t = Some(parse_value(e)?),
                ("model", "u") => c.u = Some(parse_value(e)?),
                ("model", "rs") => c.rs = Some(parse_value(e)?),
                ("model", "recompute_lambda") => c.recompute_lambda = Some(parse_value(e)?),
                ("precision", "dE") => c.delta_e = Some(parse_value(e)?),
                ("precision", "eps_synth") => c.eps_synth = Some(parse_value(e)?),
                ("precision", "p") => c.p = Some(parse_list(e)?),
                ("precision", "norm") => c.norm = Some(parse_value(e)?),
                ("precision", "m") => c.pea_bits = Some(parse_value(e)?),
                ("precision", "mu") => c.mu = Some(parse_value(e)?),
                ("synth", "target") => c.target = Some(parse_value(e)?),
                ("synth", "len") => c.len = Some(parse_value(e)?),
                ("synth", "word_bits") => c.word_bits = Some(parse_value(e)?),
                ("synth", "controlled") => c.controlled = Some(parse_value(e)?),
                ("scan", "M") => c.scan_m = Some(parse_list(e)?),
                ("run", "seed") => c.seed = Some(parse_value(e)?),
                ("output", "dir") => c.out = Some(e.value.clone()),
                ("", k) => return Err(err(e.line, format!("unknown top-level key `{k}`"))),
                (s, k) if !SECTIONS.contains(&s) => return Err(err(e.line, format!("unknown section `[{s}]` (key `{k}`)"))),
                (s, k) => return Err(err(e.line, format!("unknown key `{k}` in `[{s}]`"))),
            }
        }
        c.check_ranges(&entries)?;
        Ok(c)
    }

    /// Range checks that belong to the schema rather than to a job.
    fn check_ranges(&self, entries: &[Entry]) -> Result<(), Error> {
        let line = |s: &str, k: &str| entries.iter().find(|e| e.section == s && e.key == k).map_or(0, |e| e.line);
        let positive = [
            ("precision", "dE", self.delta_e),
            ("precision", "eps_synth", self.eps_synth),
            ("model", "rs", self.rs),
        ];
        for (s, k, v) in positive {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(err(line(s, k), format!("`{k}` must be positive")));
                }
            }
        }
        for (k, v) in [("t", self.t), ("u", self.u)] {
            if let Some(v) = v {
                if !(v >= 0.0 && v.is_finite()) {
                    return Err(err(line("model", k), format!("`{k}` must be non-negative")));
                }
            }
        }
        if let Some(ps) = &self.p {
            if ps.iter().any(|&p| !(p > 0.0 && p < 0.02)) {
                return Err(err(line("precision", "p"), "error rates must lie in (0, 0.02)"));
            }
        }
        Ok(())
    }

    /// Fields set in `over` replace those in `self`.
    pub fn merge(mut self, over: JobConfig) -> JobConfig {
        macro_rules! take {
            ($($f:ident),*) => { $( if over.$f.is_some() { self.$f = over.$f; } )* };
        }
        take!(command, model, m, d, t, u, rs, recompute_lambda, delta_e, eps_synth, p, norm, pea_bits, mu, target, len, word_bits, controlled, scan_m, seed, out);
        self
    }

    /// Hex SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        use sha2::{Digest, Sha256};
        let canon = serde_json::to_string(self).expect("config serializes");
        Sha256::digest(canon.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Short form for file headers.
    pub fn short_hash(&self) -> String {
        self.hash()[..16].to_string()
    }
}

const SECTIONS: [&str; 6] = ["model", "precision", "synth", "scan", "run", "output"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_format() {
        let c = JobConfig::parse(
            "command = estimate # trailing\n\n[model]\nkind = hubbard\nM = 6\n; comment\n[precision]\np = 1e-3, 1e-4\n",
        )
        .unwrap();
        assert_eq!(c.command, Some(Command::Estimate));
        assert_eq!(c.model, Some(ModelKind::Hubbard));
        assert_eq!(c.m, Some(6));
        assert_eq!(c.p, Some(vec![1e-3, 1e-4]));
    }

    #[test]
    fn errors_carry_lines() {
        let cases = [
            ("command = synth\n[model]\nwat = 3\n", 3),
            ("[model]\nM = six\n", 2),
            ("\n\nnot a pair\n", 3),
            ("[model]\nM = 2\nM = 3\n", 3),
            ("[nope]\nx = 1\n", 2),
            ("[precision]\ndE = -1\n", 2),
            ("command = fly\n", 1),
            ("[model\n", 1),
        ];
        for (text, want) in cases {
            match JobConfig::parse(text) {
                Err(Error::Config { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn json_format() {
        let text = "{\n  \"command\": \"budget\",\n  \"model\": {\"kind\": \"chem\", \"M\": 3},\n  \"precision\": {\"p\": [0.001]}\n}";
        let c = JobConfig::parse(text).unwrap();
        assert_eq!(c.command, Some(Command::Budget));
        assert_eq!(c.m, Some(3));
        assert_eq!(c.p, Some(vec![1e-3]));
        let bad = "{\n  \"model\": {\n    \"spin\": 2\n  }\n}";
        assert!(matches!(JobConfig::parse(bad), Err(Error::Config { line: 3, .. })));
    }

    #[test]
    fn hash_ignores_output_dir() {
        let a = JobConfig { m: Some(3), out: Some("a".into()), ..Default::default() };
        let b = JobConfig { m: Some(3), out: Some("b".into()), ..Default::default() };
        assert_eq!(a.hash(), b.hash());
        let c = JobConfig { m: Some(4), ..Default::default() };
        assert_ne!(a.hash(), c.hash());
    }

    #[test]
    fn flags_override() {
        let base = JobConfig { m: Some(3), t: Some(1.0), ..Default::default() };
        let c = base.merge(JobConfig { m: Some(5), ..Default::default() });
        assert_eq!((c.m, c.t), (Some(5), Some(1.0)));
    }
}
