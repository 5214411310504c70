//! Phased Pauli words, all-versus-nothing parity arguments and the
//! Peres–Mermin activation witness.

mod activation;
mod avn;
mod builtin;
mod word;

pub use activation::{
    activation_breakdown, activation_omega, lhv_max_omega, no_signaling_residuals,
    peres_mermin_chi, peres_mermin_classical_bound, OmegaBreakdown, OMEGA_LHV_BOUND,
    PM_CONTEXTS, PM_OBSERVABLES, S_TERMS,
};
pub use avn::{avn_parity_check, parse_avn, AvnClause, AvnSystem, AvnVerdict};
pub use builtin::{builtin_avn, BUILTIN_AVN};
pub use word::{commutes, pauli_multiply, stabilizer_expectation, PauliWord, MAX_QUBITS};
