use super::matrix::ComplexMatrix;
use super::{eig_hermitian, Tolerances};
use crate::error::{Error, Result};

/// `ln m` restricted to the support of `m`, with the support projector.
#[derive(Debug, Clone)]
pub struct SupportLog {
    pub log: ComplexMatrix,
    pub projector: ComplexMatrix,
    /// Eigenvalues above the support threshold, ascending.
    pub support_eigenvalues: Vec<f64>,
}

/// Eigenvalues `≤ eps_support` are dropped (`0·ln 0 = 0`).
pub fn matrix_log_on_support(m: &ComplexMatrix, eps_support: f64) -> Result<SupportLog> {
    let tol = Tolerances::global();
    let deviation = m.hermiticity_deviation();
    if deviation > tol.tol_herm {
        return Err(Error::NotHermitian { deviation });
    }
    let eig = eig_hermitian(m)?;
    if let Some(&min) = eig.values.first() {
        if min < -eps_support.max(tol.eps_psd) {
            return Err(Error::NotPsd {
                min_eigenvalue: min,
            });
        }
    }
    let log = eig.map(|l| (l > eps_support).then(|| l.ln()));
    let projector = eig.map(|l| (l > eps_support).then_some(1.0));
    let support_eigenvalues = eig
        .values
        .iter()
        .copied()
        .filter(|&l| l > eps_support)
        .collect();
    Ok(SupportLog {
        log,
        projector,
        support_eigenvalues,
    })
}
