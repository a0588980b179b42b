//! Correlation measures: negativity, (I-)concurrence, entropies, mutual
//! information and the Bell-CHSH expectation.

mod entanglement;
mod entropy;

use std::fmt;

pub use entanglement::{
    concurrence_sq, entanglement_entropy, i_concurrence_sq, negativity, spin_flip,
};
pub use entropy::{mutual_information, relative_entropy, support_leak, von_neumann_entropy};

use crate::error::Result;
use crate::states::{DensityOperator, Observable};

/// Magnitude below which a negative result is treated as roundoff.
pub const ROUNDOFF_CLAMP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeasureKind {
    Negativity,
    ConcurrenceSq,
    IConcurrenceSq,
    Entropy,
    EntanglementEntropy,
    MutualInfo,
    ChshExpectation,
    RelativeEntropy,
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MeasureKind::Negativity => "negativity",
            MeasureKind::ConcurrenceSq => "concurrence_sq",
            MeasureKind::IConcurrenceSq => "i_concurrence_sq",
            MeasureKind::Entropy => "entropy",
            MeasureKind::EntanglementEntropy => "entanglement_entropy",
            MeasureKind::MutualInfo => "mutual_info",
            MeasureKind::ChshExpectation => "chsh",
            MeasureKind::RelativeEntropy => "relative_entropy",
        })
    }
}

/// A measure evaluated on a state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureValue {
    pub kind: MeasureKind,
    pub value: f64,
}

impl MeasureValue {
    /// Evaluates the single-state measures. `IConcurrenceSq` uses `ν_A = ν_B = 1`;
    /// `ChshExpectation` and `RelativeEntropy` need a second argument and go
    /// through [`chsh_expectation`] and [`relative_entropy`].
    pub fn of(kind: MeasureKind, rho: &DensityOperator) -> Option<Result<Self>> {
        let value = match kind {
            MeasureKind::Negativity => negativity(rho),
            MeasureKind::ConcurrenceSq => concurrence_sq(rho),
            MeasureKind::IConcurrenceSq => i_concurrence_sq(rho, 1.0, 1.0),
            MeasureKind::Entropy => von_neumann_entropy(rho),
            MeasureKind::EntanglementEntropy => entanglement_entropy(rho),
            MeasureKind::MutualInfo => mutual_information(rho),
            MeasureKind::ChshExpectation | MeasureKind::RelativeEntropy => return None,
        };
        Some(value.map(|value| MeasureValue { kind, value }))
    }
}

/// Roundoff in `[−1e−12, 0)` becomes 0; anything more negative is kept so callers can see it.
pub(crate) fn clamp_roundoff(x: f64) -> f64 {
    if (-ROUNDOFF_CLAMP..0.0).contains(&x) {
        0.0
    } else {
        x
    }
}

/// `tr(ρ ℬ)`
pub fn chsh_expectation(rho: &DensityOperator, bell: &Observable) -> Result<f64> {
    bell.expectation(rho)
}
