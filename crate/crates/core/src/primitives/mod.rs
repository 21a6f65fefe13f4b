//! Reusable sub-circuits: unary iteration and its relatives, QROM, uniform
//! superpositions and the reversible arithmetic they rely on.

pub mod amplitudes;
pub mod arith;
pub mod gadgets;
pub mod qrom;
pub mod uniform;
pub mod unary;

pub use gadgets::{Pauli, Scope};
pub use qrom::{build_qrom, qrom, QromData};
pub use unary::{
    build_indexed, build_majorana_selector, build_ranged_op, build_unary_iteration, indexed_paulis, majorana, ranged,
    unary_iterate, Dim, IndexedTargetSpec,
};
pub use uniform::{build_uniform, uniform, uniform_flagged};
