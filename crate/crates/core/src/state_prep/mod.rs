//! Alias-table construction and the coherent SUBPREPARE circuit.

mod alias;
mod subprepare;

pub use alias::{build_alias_table, compute_mu, discretize, AliasTable, DiscretizedDistribution};
pub use subprepare::{build_subprepare, subprepare, SubprepareRegs};
