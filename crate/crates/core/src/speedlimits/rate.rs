use std::fmt;

use crate::correlations::{concurrence_sq, negativity};
use crate::dynamics::{Process, Trajectory};
use crate::error::{Error, Result};
use crate::linalg::{
    eigvals_hermitian, matrix_log_on_support, partial_transpose, schatten_norm, SchattenP,
    Subsystem, Tolerances,
};
use crate::states::{DensityOperator, Observable};

/// Tolerance inside a window of `3h` around an eigenvalue crossing of `ρ^{Γ_B}`.
pub const CROSSING_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RateMeasure {
    /// `|d𝒩/dt| ≤ ½‖(ℒ_t ρ_t)^{Γ_B}‖₁`
    Negativity,
    /// `|d𝒞²/dt| ≤ (4/ħ)√tr(ψ_t H²)`, unitary dynamics only.
    ConcurrenceSq,
    /// `|dS/dt| ≤ ‖ℒ_t ρ_t‖₂ ‖ln ρ_t‖₂`
    Entropy,
}

impl fmt::Display for RateMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RateMeasure::Negativity => "negativity",
            RateMeasure::ConcurrenceSq => "concurrence_sq",
            RateMeasure::Entropy => "entropy",
        })
    }
}

/// One interior point of a rate check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint {
    pub time: f64,
    /// Central-difference `|df/dt|`.
    pub derivative: f64,
    pub speed: f64,
    pub tolerance: f64,
}

impl RatePoint {
    /// `|df/dt| − speed − tolerance`; positive means a violation.
    pub fn excess(&self) -> f64 {
        self.derivative - self.speed - self.tolerance
    }
}

#[derive(Debug, Clone)]
pub struct RateReport {
    pub points: Vec<RatePoint>,
}

impl RateReport {
    /// Largest `|df/dt| − speed` over the points (may be negative).
    pub fn max_violation(&self) -> f64 {
        self.points
            .iter()
            .map(|p| p.derivative - p.speed)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest [`RatePoint::excess`].
    pub fn max_excess(&self) -> f64 {
        self.points
            .iter()
            .map(RatePoint::excess)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn holds(&self) -> bool {
        self.points.iter().all(|p| p.excess() <= 0.0)
    }

    /// Interior points where `|df/dt| ≤ speed − gap`.
    pub fn strict_points(&self, gap: f64) -> usize {
        self.points
            .iter()
            .filter(|p| p.derivative <= p.speed - gap)
            .count()
    }
}

/// Finite-difference tolerance at each interior point: `max(1e−6, 10h²)`
/// plus twice the central-difference truncation estimate `(h²/6)|f‴|`.
fn tolerances(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    let base = (10.0 * h * h).max(1e-6);
    let third: Vec<Option<f64>> = (0..n)
        .map(|i| {
            (i >= 2 && i + 2 < n).then(|| {
                (values[i + 2] - 2.0 * values[i + 1] + 2.0 * values[i - 1] - values[i - 2])
                    / (2.0 * h * h * h)
            })
        })
        .collect();
    (0..n)
        .map(|i| {
            let nearest = third[i]
                .or_else(|| third.get(i + 1).copied().flatten())
                .or_else(|| i.checked_sub(1).and_then(|j| third[j]))
                .unwrap_or(0.0);
            base + 2.0 * h * h / 6.0 * nearest.abs()
        })
        .collect()
}

fn compare(times: &[f64], values: &[f64], speeds: &[f64], widen: &[bool]) -> RateReport {
    let n = values.len();
    let h = if n > 1 { times[1] - times[0] } else { 0.0 };
    let tol = tolerances(values, h);
    let points = (1..n.saturating_sub(1))
        .map(|i| RatePoint {
            time: times[i],
            derivative: ((values[i + 1] - values[i - 1]) / (2.0 * h)).abs(),
            speed: speeds[i],
            tolerance: if widen[i] {
                tol[i].max(CROSSING_TOLERANCE)
            } else {
                tol[i]
            },
        })
        .collect();
    RateReport { points }
}

/// Marks points within `3h` of a change in the number of eigenvalues of `ρ^{Γ_B}` below `−eps_support`.
fn crossing_window(traj: &Trajectory<DensityOperator>) -> Result<Vec<bool>> {
    let eps = Tolerances::global().eps_support;
    let counts: Vec<usize> = traj
        .states()
        .iter()
        .map(|rho| {
            let vals = eigvals_hermitian(&rho.partial_transpose(Subsystem::B))?;
            Ok(vals.iter().filter(|&&l| l < -eps).count())
        })
        .collect::<Result<_>>()?;
    let n = counts.len();
    let mut widen = vec![false; n];
    for i in 1..n {
        if counts[i] != counts[i - 1] {
            for w in widen
                .iter_mut()
                .take((i + 3).min(n))
                .skip(i.saturating_sub(4))
            {
                *w = true;
            }
        }
    }
    Ok(widen)
}

/// Central-difference check of the differential inequality behind a bound,
/// at every interior stored point.
pub fn verify_rate_inequality(
    traj: &Trajectory<DensityOperator>,
    measure: RateMeasure,
    proc: &Process,
) -> Result<RateReport> {
    if traj.len() < 3 {
        return Err(Error::OutOfRange {
            name: "trajectory points",
            value: traj.len() as f64,
            range: "[3, ∞)",
        });
    }
    let mut values = Vec::with_capacity(traj.len());
    let mut speeds = Vec::with_capacity(traj.len());
    let mut widen = vec![false; traj.len()];
    match measure {
        RateMeasure::Negativity => {
            for (t, rho) in traj.iter() {
                values.push(negativity(rho)?);
                let rate = proc.liouvillian(t, rho.matrix());
                let pt = partial_transpose(&rate, rho.d_a(), rho.d_b(), Subsystem::B)?;
                speeds.push(0.5 * schatten_norm(&pt, SchattenP::One)?);
            }
            widen = crossing_window(traj)?;
        }
        RateMeasure::ConcurrenceSq => {
            if !proc.is_unitary() {
                return Err(Error::NotUnitaryProcess(format!(
                    "concurrence rate under {}",
                    proc.kind()
                )));
            }
            for (_, psi) in traj.iter() {
                values.push(concurrence_sq(psi)?);
                speeds.push(4.0 * proc.energy_second_moment(psi.matrix()).max(0.0).sqrt());
            }
        }
        RateMeasure::Entropy => {
            let eps = Tolerances::global().eps_support;
            for (t, rho) in traj.iter() {
                let log = matrix_log_on_support(rho.matrix(), eps)?;
                values.push(
                    log.support_eigenvalues
                        .iter()
                        .map(|&l| -l * l.ln())
                        .sum::<f64>()
                        .max(0.0),
                );
                let rate = proc.liouvillian(t, rho.matrix());
                speeds.push(rate.frobenius_norm() * log.log.frobenius_norm());
            }
        }
    }
    Ok(compare(traj.times(), &values, &speeds, &widen))
}

/// `|d⟨𝒪_t⟩_ρ/dt| ≤ ‖ρ‖₁ ‖ℒ_t†(𝒪_t)‖_∞` along a Heisenberg trajectory.
pub fn verify_observable_rate(
    traj: &Trajectory<Observable>,
    rho0: &DensityOperator,
    proc: &Process,
) -> Result<RateReport> {
    if traj.len() < 3 {
        return Err(Error::OutOfRange {
            name: "trajectory points",
            value: traj.len() as f64,
            range: "[3, ∞)",
        });
    }
    let rho_norm = schatten_norm(rho0.matrix(), SchattenP::One)?;
    let mut values = Vec::with_capacity(traj.len());
    let mut speeds = Vec::with_capacity(traj.len());
    for (t, obs) in traj.iter() {
        values.push(obs.expectation(rho0)?);
        speeds.push(rho_norm * schatten_norm(&proc.adjoint(t, obs.matrix()), SchattenP::Infinity)?);
    }
    Ok(compare(
        traj.times(),
        &values,
        &speeds,
        &vec![false; traj.len()],
    ))
}
