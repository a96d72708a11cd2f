//! Special functions: Γ and its Laurent data at the poles, polygamma, ζ jets,
//! Stieltjes constants.

pub mod gamma;
pub mod jet;
pub mod zeta;

pub use gamma::{
    bernoulli, bernoulli_f64, digamma, gamma_derivative, gamma_jet, gamma_laurent_direct,
    gamma_laurent_table, ln_gamma, polygamma,
};
pub use jet::Jet;
pub use zeta::{stieltjes_computed, zeta, zeta_derivative, zeta_jet, zeta_jet_scaled, STIELTJES};
