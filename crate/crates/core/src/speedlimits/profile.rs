use super::quadrature::cumulative_simpson;
use super::{BoundKind, BoundReport};
use crate::error::{Error, Result};
use crate::linalg::SchattenP;

/// Below this the time-averaged speed counts as zero.
const ZERO_SPEED: f64 = 1e-14;
/// Below this a measure change counts as zero.
const ZERO_CHANGE: f64 = 1e-12;

/// How channel averages combine into the speed in the denominator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Denominator {
    /// `(1/T)∫ s dt` of the single channel.
    Average,
    /// Minimum of `(1/T)∫ s_α dt` over the channels.
    MinAverage,
    /// `√((1/T)∫ f² · (1/T)∫ g²)` for channels `f²` and `g²`.
    GeometricAverage,
    /// `∫ s dt`, not divided by `T`.
    Integral,
}

#[derive(Debug, Clone)]
struct Channel {
    alpha: Option<SchattenP>,
    speeds: Vec<f64>,
    cumulative: Vec<f64>,
}

/// Instantaneous speed samples over `[0, T]` and their average `Λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpeedIntegral {
    pub kind: BoundKind,
    pub values: Vec<f64>,
    pub t_final: f64,
    pub lambda: f64,
}

/// Everything needed to evaluate a bound at any even stored index: the
/// numerator as if the run had stopped there, and running speed integrals.
#[derive(Debug, Clone)]
pub struct BoundProfile {
    kind: BoundKind,
    times: Vec<f64>,
    numerators: Vec<f64>,
    channels: Vec<Channel>,
    denominator: Denominator,
    prefactor: f64,
}

impl BoundProfile {
    pub(crate) fn new(
        kind: BoundKind,
        times: Vec<f64>,
        step: f64,
        numerators: Vec<f64>,
        channels: Vec<(Option<SchattenP>, Vec<f64>)>,
        denominator: Denominator,
        prefactor: f64,
    ) -> Self {
        debug_assert!(channels.iter().all(|(_, s)| s.len() == times.len()));
        debug_assert_eq!(numerators.len(), times.len());
        let channels = channels
            .into_iter()
            .map(|(alpha, speeds)| Channel {
                alpha,
                cumulative: cumulative_simpson(&speeds, step),
                speeds,
            })
            .collect();
        Self {
            kind,
            times,
            numerators,
            channels,
            denominator,
            prefactor,
        }
    }

    pub fn kind(&self) -> BoundKind {
        self.kind
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// Numerator at each stored time.
    pub fn numerators(&self) -> &[f64] {
        &self.numerators
    }

    /// Instantaneous speeds of the first channel.
    pub fn speeds(&self) -> &[f64] {
        &self.channels[0].speeds
    }

    /// Speeds for a given Schatten index, for observable bounds.
    pub fn speeds_for(&self, alpha: SchattenP) -> Option<&[f64]> {
        self.channels
            .iter()
            .find(|c| c.alpha == Some(alpha))
            .map(|c| c.speeds.as_slice())
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// The bound for the whole trajectory.
    pub fn report(&self) -> Result<BoundReport> {
        self.report_at(self.times.len() - 1)
    }

    /// The bound for the run truncated at stored index `k` (must be even).
    pub fn report_at(&self, k: usize) -> Result<BoundReport> {
        if k >= self.times.len() {
            return Err(Error::DimensionMismatch {
                expected: self.times.len(),
                found: k + 1,
            });
        }
        if !k.is_multiple_of(2) {
            return Err(Error::OddStepCount { steps: k });
        }
        let t = self.times[k];
        let numerator = self.numerators[k];
        let alpha_lambdas: Vec<(SchattenP, f64)> = if k == 0 {
            self.channels
                .iter()
                .filter_map(|c| c.alpha.map(|a| (a, c.speeds[0])))
                .collect()
        } else {
            self.channels
                .iter()
                .filter_map(|c| c.alpha.map(|a| (a, c.cumulative[k] / t)))
                .collect()
        };

        if k == 0 {
            return Ok(BoundReport {
                kind: self.kind,
                t_actual: 0.0,
                numerator,
                lambda: self.channels[0].speeds[0],
                bound_value: 0.0,
                tightness: None,
                argmin_alpha: None,
                alpha_lambdas,
                indeterminate: false,
            });
        }

        let average = |c: &Channel| c.cumulative[k] / t;
        let (lambda, argmin_alpha) = match self.denominator {
            Denominator::Average => (average(&self.channels[0]), None),
            Denominator::Integral => (self.channels[0].cumulative[k], None),
            Denominator::GeometricAverage => (
                (average(&self.channels[0]) * average(&self.channels[1]))
                    .max(0.0)
                    .sqrt(),
                None,
            ),
            Denominator::MinAverage => {
                let best = self
                    .channels
                    .iter()
                    .map(|c| (c.alpha, average(c)))
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .expect("at least one channel");
                (best.1, best.0)
            }
        };

        // both sides at roundoff level: the ratio is noise
        let (bound_value, indeterminate) = if numerator <= ZERO_CHANGE && lambda <= ZERO_CHANGE {
            (0.0, true)
        } else if lambda <= ZERO_SPEED {
            return Err(Error::ZeroSpeed { numerator });
        } else {
            (self.prefactor * numerator / lambda, false)
        };

        Ok(BoundReport {
            kind: self.kind,
            t_actual: t,
            numerator,
            lambda,
            bound_value,
            tightness: Some(bound_value / t),
            argmin_alpha,
            alpha_lambdas,
            indeterminate,
        })
    }

    /// Reports at stored indices `stride, 2·stride, …`; `stride` must be even.
    pub fn reports_every(&self, stride: usize) -> Result<Vec<BoundReport>> {
        if stride == 0 || !stride.is_multiple_of(2) {
            return Err(Error::OddStepCount { steps: stride });
        }
        (1..)
            .map(|j| j * stride)
            .take_while(|&k| k < self.times.len())
            .map(|k| self.report_at(k))
            .collect()
    }

    /// The first channel's samples and average over the whole run.
    pub fn speed_integral(&self) -> SpeedIntegral {
        let last = self.times.len() - 1;
        let t_final = self.times[last];
        let c = &self.channels[0];
        let lambda = if last == 0 {
            c.speeds[0]
        } else if last.is_multiple_of(2) {
            c.cumulative[last] / t_final
        } else {
            f64::NAN
        };
        SpeedIntegral {
            kind: self.kind,
            values: c.speeds.clone(),
            t_final,
            lambda,
        }
    }
}
