//! Surface-code footprint and runtime from plumbing-piece counts.
//!
//! Only data storage and one serial T factory are modeled; routing volume
//! is ignored.

use serde::{Deserialize, Serialize};

use super::logical::LogicalReport;
use crate::error::{Error, Result};

/// Compute/uncompute AND, CNOT and active-subcircuit counts of one circuit
/// invocation. Fractional counts are expectations over the family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PieceBreakdown {
    pub compute_ands: f64,
    pub uncompute_ands: f64,
    pub naked_cnots: f64,
    pub subcircuits: f64,
    pub family: Family,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Majorana,
    Qrom,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s {
            "majorana" => Ok(Family::Majorana),
            "qrom" => Ok(Family::Qrom),
            _ => Err(Error::Invalid(format!("unknown circuit family `{s}`"))),
        }
    }
}

/// `n` is the number of spin orbitals; a QROM invocation reads `3n/2` words.
pub fn piece_breakdown(family: Family, n: usize) -> Result<PieceBreakdown> {
    if n == 0 {
        return Err(Error::Domain("piece breakdown needs N > 0".into()));
    }
    let n = n as f64;
    let (ands, cnots) = match family {
        Family::Majorana => (n - 1.0, 0.5 * n),
        Family::Qrom => (1.5 * n - 1.0, 0.75 * n),
    };
    Ok(PieceBreakdown { compute_ands: ands, uncompute_ands: ands, naked_cnots: cnots, subcircuits: cnots, family })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Depths {
    pub compute_and: u32,
    pub uncompute_and: u32,
    pub cnot: u32,
    pub majorana_sub: u32,
    pub data_inner: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Factory {
    /// Plumbing pieces between consecutive T states.
    pub period_pp: u32,
    /// Footprint in plumbing pieces.
    pub area_pp: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceCodeParams {
    pub p: f64,
    pub cycle_ns: f64,
    pub depths: Depths,
    pub factory: Factory,
}

impl SurfaceCodeParams {
    pub fn new(p: f64) -> SurfaceCodeParams {
        SurfaceCodeParams {
            p,
            cycle_ns: 1000.0,
            depths: Depths { compute_and: 15, uncompute_and: 8, cnot: 1, majorana_sub: 5, data_inner: 4 },
            factory: Factory { period_pp: 6, area_pp: 160 },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let d = &self.depths;
        let all = [d.compute_and, d.uncompute_and, d.cnot, d.majorana_sub, d.data_inner, self.factory.period_pp, self.factory.area_pp];
        if all.contains(&0) {
            return Err(Error::Invalid("surface code depths and factory sizes must be positive".into()));
        }
        if !(self.cycle_ns > 0.0) {
            return Err(Error::Invalid(format!("cycle time must be positive, got {}", self.cycle_ns)));
        }
        if !(self.p > 0.0) {
            return Err(Error::Domain(format!("physical error rate must be positive, got {}", self.p)));
        }
        Ok(())
    }

    /// Depth in plumbing pieces of one invocation.
    pub fn depth_of(&self, b: &PieceBreakdown) -> f64 {
        let d = &self.depths;
        let sub = match b.family {
            Family::Majorana => d.majorana_sub,
            Family::Qrom => d.data_inner,
        };
        b.compute_ands * d.compute_and as f64
            + b.uncompute_ands * d.uncompute_and as f64
            + b.naked_cnots * d.cnot as f64
            + b.subcircuits * sub as f64
    }
}

/// Logical error per plumbing piece, `2d (50p)^((d+1)/2)`.
pub fn logical_error_rate(d: u32, p: f64) -> f64 {
    2.0 * d as f64 * (50.0 * p).powf((d as f64 + 1.0) / 2.0)
}

/// Smallest odd distance with [`logical_error_rate`] below `target`.
pub fn code_distance(p: f64, target: f64) -> Result<u32> {
    if !(p > 0.0) || 50.0 * p >= 1.0 {
        return Err(Error::Domain(format!("error model needs 0 < 50p < 1, got p={p}")));
    }
    if !(target > 0.0) {
        return Err(Error::Domain(format!("target error must be positive, got {target}")));
    }
    let mut d = 3;
    while logical_error_rate(d, p) >= target {
        d += 2;
        if d > 10_001 {
            return Err(Error::Domain(format!("no distance reaches {target:e}")));
        }
    }
    Ok(d)
}

/// Circuit invocations per walk query.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QueryMix {
    pub pieces: Vec<(PieceBreakdown, f64)>,
}

impl QueryMix {
    /// Two full Majorana selectors and one on half the system.
    pub fn hubbard(n: usize) -> Result<QueryMix> {
        Ok(QueryMix { pieces: vec![(piece_breakdown(Family::Majorana, n)?, 2.0), (piece_breakdown(Family::Majorana, n / 2)?, 1.0)] })
    }

    /// Three Majorana selectors and two lookups of `3N/2` words.
    pub fn electronic_structure(n: usize) -> Result<QueryMix> {
        Ok(QueryMix { pieces: vec![(piece_breakdown(Family::Majorana, n)?, 3.0), (piece_breakdown(Family::Qrom, n)?, 2.0)] })
    }

    pub fn compute_ands(&self) -> f64 {
        self.pieces.iter().map(|(b, k)| b.compute_ands * k).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhysicalReport {
    pub p: f64,
    pub t_gates: f64,
    pub data_pieces: f64,
    pub d_data: u32,
    pub d_factory: u32,
    pub physical_qubits: f64,
    pub hours: f64,
}

/// Each compute AND holds 4 T gates. T states are made one at a time.
pub fn physical_overhead(logical: &LogicalReport, mix: &QueryMix, params: &SurfaceCodeParams) -> Result<PhysicalReport> {
    params.validate()?;
    let q = logical.queries;
    let t_gates = 4.0 * mix.compute_ands() * q;
    let depth: f64 = mix.pieces.iter().map(|(b, k)| params.depth_of(b) * k).sum();
    let lq = logical.total_logical_qubits as f64;
    let data_pieces = q * depth * lq;
    let factory_pieces = t_gates * (params.factory.period_pp * params.factory.area_pp) as f64;
    let d_data = code_distance(params.p, 1.0 / (100.0 * data_pieces))?;
    let d_factory = code_distance(params.p, 1.0 / (100.0 * factory_pieces))?;
    // Two physical qubits per unit of distance along each side of a piece,
    // and one routing tile per data tile.
    let side = |d: u32| 2.5 * d as f64;
    let physical_qubits = 2.0 * lq * side(d_data).powi(2) + params.factory.area_pp as f64 * side(d_factory).powi(2);
    let rounds = t_gates * params.factory.period_pp as f64 * 1.25 * d_factory as f64;
    let hours = rounds * params.cycle_ns * 1e-9 / 3600.0;
    Ok(PhysicalReport { p: params.p, t_gates, data_pieces, d_data, d_factory, physical_qubits, hours })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distances() {
        assert_eq!(code_distance(1e-3, 1e-10).unwrap(), 17);
        assert!(code_distance(1e-4, 1e-10).unwrap() < 17);
        assert!(code_distance(0.02, 1e-10).is_err());
    }

    #[test]
    fn breakdown_rows() {
        let b = piece_breakdown(Family::Majorana, 72).unwrap();
        assert_eq!((b.compute_ands, b.uncompute_ands, b.naked_cnots, b.subcircuits), (71.0, 71.0, 36.0, 36.0));
        let b = piece_breakdown(Family::Qrom, 54).unwrap();
        assert_eq!((b.compute_ands, b.uncompute_ands, b.naked_cnots, b.subcircuits), (80.0, 80.0, 40.5, 40.5));
        assert!(piece_breakdown(Family::Qrom, 0).is_err());
        assert!("braid".parse::<Family>().is_err());
    }
}
