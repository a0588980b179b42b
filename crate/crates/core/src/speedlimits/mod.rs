//! Speed limits on correlations, each evaluated from a stored trajectory as
//! `numerator / Λ` with `Λ` the time-averaged evolution speed.

mod bounds;
mod profile;
mod quadrature;
mod rate;

use std::fmt;
use std::str::FromStr;

pub use bounds::{
    bell_profile, bound_bell, bound_bell_separable, bound_concurrence, bound_entropy,
    bound_entropy_double_cs, bound_i_concurrence, bound_mutual_info, bound_negativity,
    bound_observable, concurrence_profile, entropy_profile, i_concurrence_profile,
    mutual_info_profile, negativity_profile, observable_profile, separable_bell_profile,
    SeparableSpeedForm, MI_SUPPORT_LEAK_TOLERANCE,
};
pub use profile::{BoundProfile, SpeedIntegral};
pub use quadrature::{cumulative_simpson, simpson};
pub use rate::{
    verify_observable_rate, verify_rate_inequality, RateMeasure, RatePoint, RateReport,
};

use crate::error::Error;
use crate::linalg::SchattenP;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundKind {
    /// Negativity.
    Nsl,
    /// Squared concurrence, unitary dynamics.
    Csl,
    /// Squared I-concurrence, unitary dynamics.
    Icsl,
    /// Expectation of a generic observable, Heisenberg picture.
    Oqsl,
    /// Bell-CHSH expectation, Heisenberg picture.
    Bqsl,
    /// Bell-CHSH expectation under a separable generator.
    BqslSeparable,
    /// Mutual information generated from a product state.
    Misl,
    /// Von Neumann entropy, one Cauchy-Schwarz step.
    Esl,
    /// Von Neumann entropy with Cauchy-Schwarz applied again to the time integral.
    EslDoubleCs,
}

impl BoundKind {
    pub const ALL: [BoundKind; 9] = [
        BoundKind::Nsl,
        BoundKind::Csl,
        BoundKind::Icsl,
        BoundKind::Oqsl,
        BoundKind::Bqsl,
        BoundKind::BqslSeparable,
        BoundKind::Misl,
        BoundKind::Esl,
        BoundKind::EslDoubleCs,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BoundKind::Nsl => "nsl",
            BoundKind::Csl => "csl",
            BoundKind::Icsl => "icsl",
            BoundKind::Oqsl => "oqsl",
            BoundKind::Bqsl => "bqsl",
            BoundKind::BqslSeparable => "bqsl-sep",
            BoundKind::Misl => "misl",
            BoundKind::Esl => "esl",
            BoundKind::EslDoubleCs => "esl-double-cs",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        BoundKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown bound {s:?}")))
    }
}

/// One evaluated speed limit.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub t_actual: f64,
    pub numerator: f64,
    /// The speed actually used in the denominator (the minimum over `α` for observable bounds).
    pub lambda: f64,
    pub bound_value: f64,
    /// `bound_value / t_actual`, when `t_actual > 0`.
    pub tightness: Option<f64>,
    /// Schatten index attaining the minimum speed, for observable bounds.
    pub argmin_alpha: Option<SchattenP>,
    /// `Λ^α` for every `α`, for observable bounds.
    pub alpha_lambdas: Vec<(SchattenP, f64)>,
    /// Both numerator and speed vanished; the bound is reported as 0.
    pub indeterminate: bool,
}

impl BoundReport {
    /// `bound_value ≤ t_actual + tol`
    pub fn holds(&self, tol: f64) -> bool {
        self.bound_value <= self.t_actual + tol
    }
}
