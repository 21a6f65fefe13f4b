//! Target Hamiltonians as coefficient tables and qubit LCUs.

pub mod dual_basis;
pub mod fermion;
pub mod hubbard;
pub mod lcu;
pub mod toy;

pub use dual_basis::{
    dual_basis_coefficients, dual_basis_fermion, dual_basis_lambda, jw_terms, spin_orbital_index, wigner_seitz_volume,
    DualBasisCoefficients, DualBasisSpec, Nucleus,
};
pub use fermion::FermionOperator;
pub use hubbard::{hubbard_fermion, hubbard_terms, HubbardSpec};
pub use lcu::{hermitian_eigen, LcuHamiltonian, LcuTerm, PauliString};
pub use toy::random_toy;
