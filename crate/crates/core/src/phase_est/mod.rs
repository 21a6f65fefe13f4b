//! Error budgets, the optimal control state and the phase estimation schedule.

mod budget;
mod chi;
mod pea;
mod qft;

pub use budget::{coefficient_tolerance, energy_from_phase, eps_prep, eps_qft, pea_bits, query_bound, ErrorBudget};
pub use chi::{append_chi, append_chi_measured, build_chi_m, chi_amplitudes, chi_success_probability};
pub use pea::{
    averaged_holevo_variance, build_pea_schedule, build_pea_schedule_dithered, decode_phase, dither_grid, holevo_bound,
    pea_distribution, PeaCircuit, PhaseDistribution, MAX_PEA_BITS,
};
pub use qft::{append_inverse_qft, append_qft, semiclassical_qft_cost};
