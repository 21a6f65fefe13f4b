//! Published resource rows and the inputs that regenerate them.

use serde::Serialize;

use super::logical::{logical_chem, logical_hub, LogicalReport};
use super::surface::{physical_overhead, PhysicalReport, QueryMix, SurfaceCodeParams};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum System {
    Hubbard,
    Jellium,
}

/// One published instance. Jellium uses the tabulated lambda; Hubbard uses
/// `u = 4t`, `dE = t/100` with `t = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PublishedRow {
    pub system: System,
    pub n: usize,
    /// Hubbard side length, or tabulated jellium lambda.
    pub param: f64,
    pub ancilla: u32,
    pub total_logical: u32,
    pub t_count: f64,
    pub queries: f64,
    pub qubits: [f64; 2],
    pub hours: [f64; 2],
}

pub const JELLIUM_DE: f64 = 0.0016;
pub const HUBBARD_DE: f64 = 0.01;
pub const ERROR_RATES: [f64; 2] = [1e-3, 1e-4];

const fn row(system: System, n: usize, param: f64, ancilla: u32, total_logical: u32, t_count: f64, queries: f64, qubits: [f64; 2], hours: [f64; 2]) -> PublishedRow {
    PublishedRow { system, n, param, ancilla, total_logical, t_count, queries, qubits, hours }
}

pub const PUBLISHED: [PublishedRow; 8] = [
    row(System::Hubbard, 72, 6.0, 33, 105, 9.3e7, 1.3e5, [1.4e6, 4.4e5], [4.6, 2.6]),
    row(System::Hubbard, 128, 8.0, 33, 161, 2.9e8, 2.3e5, [2.1e6, 6.6e5], [15.0, 8.4]),
    row(System::Hubbard, 200, 10.0, 36, 236, 7.1e8, 3.6e5, [3.2e6, 8.9e5], [40.0, 21.0]),
    row(System::Hubbard, 800, 20.0, 42, 842, 1.2e10, 1.4e6, [1.4e7, 3.6e6], [6.7e2, 3.7e2]),
    row(System::Jellium, 54, 5.0, 69, 123, 1.8e7, 1.4e4, [1.4e6, 3.9e5], [0.82, 0.43]),
    row(System::Jellium, 128, 23.0, 82, 210, 1.9e8, 6.3e4, [2.4e6, 8.1e5], [9.9, 5.6]),
    row(System::Jellium, 250, 64.0, 91, 341, 1.1e9, 1.7e5, [4.4e6, 1.2e6], [58.0, 30.0]),
    row(System::Jellium, 1024, 640.0, 112, 1136, 4.3e10, 1.8e6, [2.0e7, 4.8e6], [2.7e3, 1.4e3]),
];

impl PublishedRow {
    pub fn logical(&self) -> Result<LogicalReport> {
        match self.system {
            System::Hubbard => logical_hub(self.n, 1.0, 4.0, HUBBARD_DE),
            System::Jellium => logical_chem(self.n, self.param, JELLIUM_DE),
        }
    }

    pub fn mix(&self) -> Result<QueryMix> {
        match self.system {
            System::Hubbard => QueryMix::hubbard(self.n),
            System::Jellium => QueryMix::electronic_structure(self.n),
        }
    }

    pub fn physical(&self, p: f64) -> Result<PhysicalReport> {
        physical_overhead(&self.logical()?, &self.mix()?, &SurfaceCodeParams::new(p))
    }
}
