//! Logical cost formulas and the surface-code overhead model.

pub mod logical;
pub mod surface;
pub mod tables;

pub use logical::{logical_chem, logical_hub, LogicalReport};
pub use surface::{
    code_distance, logical_error_rate, physical_overhead, piece_breakdown, Depths, Factory, Family, PhysicalReport,
    PieceBreakdown, QueryMix, SurfaceCodeParams,
};
pub use tables::{PublishedRow, System, ERROR_RATES, HUBBARD_DE, JELLIUM_DE, PUBLISHED};
