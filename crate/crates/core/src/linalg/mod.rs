//! Dense complex linear algebra for small bipartite systems.

mod eigen;
mod functions;
mod matrix;
mod norms;
mod partial;

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub use eigen::{
    eig_hermitian, eigvals_hermitian, HermitianEigen, MAX_SWEEPS, OFF_DIAGONAL_THRESHOLD,
};
pub use functions::{matrix_log_on_support, SupportLog};
pub use matrix::{ComplexMatrix, C64, I, ONE, ZERO};
pub use norms::{schatten_norm, SchattenP};
pub use partial::{partial_trace, partial_transpose, Subsystem};

/// Numerical tolerances shared by every module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub tol_herm: f64,
    pub tol_unitary: f64,
    pub eps_support: f64,
    pub eps_psd: f64,
    /// Trace of a density operator must equal one within this.
    pub tol_trace: f64,
    /// Gate on `1 − tr(ρ²)` for the pure-state measures.
    pub tol_purity: f64,
    pub tol_bound: f64,
    /// Invariant tolerance for integrated states.
    pub tol_trajectory: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            tol_herm: 1e-10,
            tol_unitary: 1e-9,
            eps_support: 1e-12,
            eps_psd: 1e-10,
            tol_trace: 1e-10,
            tol_purity: 1e-8,
            tol_bound: 1e-6,
            tol_trajectory: 1e-7,
        }
    }
}

static GLOBAL: OnceLock<Tolerances> = OnceLock::new();

impl Tolerances {
    /// The process-wide tolerances; defaults unless [`Tolerances::install`] ran first.
    pub fn global() -> &'static Tolerances {
        GLOBAL.get_or_init(Tolerances::default)
    }

    /// Installs process-wide tolerances. Fails once they have been read or set.
    pub fn install(self) -> Result<()> {
        for (name, v) in [
            ("tol_herm", self.tol_herm),
            ("tol_unitary", self.tol_unitary),
            ("eps_support", self.eps_support),
            ("eps_psd", self.eps_psd),
            ("tol_trace", self.tol_trace),
            ("tol_purity", self.tol_purity),
            ("tol_bound", self.tol_bound),
            ("tol_trajectory", self.tol_trajectory),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        GLOBAL
            .set(self)
            .map_err(|_| Error::InvalidConfig("tolerances already fixed for this process".into()))
    }
}
