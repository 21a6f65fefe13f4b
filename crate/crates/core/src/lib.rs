//! Clifford+T synthesis of qubitized quantum walks for electronic structure
//! and Hubbard Hamiltonians, with exact small-scale simulation and
//! fault-tolerant cost models.

pub mod circuit;
pub mod error;
pub mod models;
pub mod oracles;
pub mod phase_est;
pub mod primitives;
pub mod resources;
pub mod sim;
pub mod state_prep;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub type LcuHamiltonianF64 = models::LcuHamiltonian<f64>;
pub type LcuHamiltonianF32 = models::LcuHamiltonian<f32>;
pub type LcuTermF64 = models::LcuTerm<f64>;
pub type LcuTermF32 = models::LcuTerm<f32>;
pub type HubbardSpecF64 = models::HubbardSpec<f64>;
pub type HubbardSpecF32 = models::HubbardSpec<f32>;
pub type DualBasisSpecF64 = models::DualBasisSpec<f64>;
pub type DualBasisSpecF32 = models::DualBasisSpec<f32>;
pub type DualBasisCoefficientsF64 = models::DualBasisCoefficients<f64>;
pub type DualBasisCoefficientsF32 = models::DualBasisCoefficients<f32>;
