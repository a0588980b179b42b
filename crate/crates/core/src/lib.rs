//! Speed limits on correlations in bipartite quantum systems.
//!
//! The crate simulates two-qubit closed and open dynamics, evaluates the
//! correlation measures that the speed limits are stated for (negativity,
//! squared concurrence, I-concurrence, von Neumann entropy, mutual
//! information and the Bell-CHSH expectation), and turns trajectories into
//! lower bounds on the evolution time.
//!
//! Modules, bottom-up:
//!
//! - [`linalg`]: dense complex matrices, Jacobi eigensolver, Schatten norms,
//!   partial trace/transpose and operator functions on the support.
//! - [`states`]: validated density operators and observables, the
//!   `√p|00⟩ + √(1−p)|11⟩` family and CHSH operators.
//! - [`correlations`]: the measures themselves.
//! - [`dynamics`]: the four processes, RK4 evolution in both pictures and
//!   closed-form trajectories.
//! - [`speedlimits`]: every bound, evaluated from a stored trajectory.
//! - [`figures`] and [`cli`]: figure reproduction, parameter sweeps and the
//!   command-line front end.

#![forbid(unsafe_code)]

pub mod cli;
pub mod correlations;
pub mod dynamics;
pub mod error;
pub mod figures;
pub mod linalg;
pub mod speedlimits;
pub mod states;

pub use error::{Error, Result};
