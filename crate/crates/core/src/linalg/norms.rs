use std::fmt;
use std::str::FromStr;

use super::matrix::ComplexMatrix;
use super::{eigvals_hermitian, Tolerances};
use crate::error::{Error, Result};

/// The Schatten indices the bounds use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchattenP {
    One,
    Two,
    Infinity,
}

impl SchattenP {
    pub const ALL: [SchattenP; 3] = [SchattenP::One, SchattenP::Two, SchattenP::Infinity];
}

impl fmt::Display for SchattenP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchattenP::One => "1",
            SchattenP::Two => "2",
            SchattenP::Infinity => "inf",
        })
    }
}

impl FromStr for SchattenP {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(SchattenP::One),
            "2" => Ok(SchattenP::Two),
            "inf" | "infinity" => Ok(SchattenP::Infinity),
            other => Err(Error::InvalidConfig(format!(
                "unknown Schatten index {other:?}"
            ))),
        }
    }
}

/// Singular values of `m`. For Hermitian input these are `|λ_i|`.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if m.is_hermitian(Tolerances::global().tol_herm) {
        let vals = eigvals_hermitian(&m.hermitian_part())?;
        return Ok(vals.into_iter().map(f64::abs).collect());
    }
    let gram = m.adjoint().matmul(m).hermitian_part();
    Ok(eigvals_hermitian(&gram)?
        .into_iter()
        .map(|l| l.max(0.0).sqrt())
        .collect())
}

/// `‖m‖_p = (tr|m|^p)^{1/p}`.
pub fn schatten_norm(m: &ComplexMatrix, p: SchattenP) -> Result<f64> {
    match p {
        SchattenP::Two => Ok(m.frobenius_norm()),
        SchattenP::One => Ok(singular_values(m)?.iter().sum()),
        SchattenP::Infinity => Ok(singular_values(m)?.into_iter().fold(0.0, f64::max)),
    }
}
