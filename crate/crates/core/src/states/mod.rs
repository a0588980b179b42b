//! Density operators, observables and the two-qubit constructions used
//! throughout: the `√p|00⟩ + √(1−p)|11⟩` family and CHSH operators.

mod chsh;
mod density;
mod pauli;

pub use chsh::{chsh_eta, make_chsh, paper_chsh_settings, ChshSettings, UnitVector};
pub use density::{make_psi_p, psi_p_ket, DensityOperator, Observable};
pub use pauli::{pauli, sigma_dot, sigma_minus, sigma_plus, Pauli};
