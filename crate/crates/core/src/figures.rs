//! Fixed parameter sets for the published figures and the curves behind them.

use std::fmt;
use std::str::FromStr;

use crate::correlations::{concurrence_sq, negativity};
use crate::dynamics::{evolve, Process, ProcessKind};
use crate::error::{Error, Result};
use crate::speedlimits::{
    bell_profile, concurrence_profile, negativity_profile, BoundKind, BoundProfile,
};
use crate::states::{make_psi_p, paper_chsh_settings, DensityOperator};

/// Points per curve, at `T_k = T_max·k/200`, `k = 1..=200`.
pub const FIGURE_SAMPLES: usize = 200;
/// RK4 steps between consecutive samples (even, so every sample is a Simpson endpoint).
pub const STEPS_PER_SAMPLE: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3a,
    Fig3b,
    Fig4a,
    Fig4b,
    Fig5Appendix,
    Fig6aAppendix,
    Fig6bAppendix,
}

impl FigureId {
    pub const ALL: [FigureId; 9] = [
        FigureId::Fig1,
        FigureId::Fig2,
        FigureId::Fig3a,
        FigureId::Fig3b,
        FigureId::Fig4a,
        FigureId::Fig4b,
        FigureId::Fig5Appendix,
        FigureId::Fig6aAppendix,
        FigureId::Fig6bAppendix,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3a => "fig3a",
            FigureId::Fig3b => "fig3b",
            FigureId::Fig4a => "fig4a",
            FigureId::Fig4b => "fig4b",
            FigureId::Fig5Appendix => "fig5-appendix",
            FigureId::Fig6aAppendix => "fig6a-appendix",
            FigureId::Fig6bAppendix => "fig6b-appendix",
        }
    }

    pub fn spec(self) -> FigureSpec {
        let dephasing = ProcessKind::PureDephasing {
            gamma_a: 1.0,
            gamma_b: 1.0,
        };
        let depolarizing = ProcessKind::Depolarizing {
            gamma_a: 1.0,
            gamma_b: 1.0,
        };
        let amplitude = ProcessKind::AmplitudeDamping {
            gamma_a: 1.0,
            gamma_b: 1.0,
        };
        let nonlocal = |theta: f64| ProcessKind::NonlocalUnitary {
            mu_x: theta,
            mu_y: 0.0,
            mu_z: 0.1,
        };
        let by_p = |process, quantity, ps: &[f64]| -> Vec<CurveSpec> {
            ps.iter()
                .map(|&p| CurveSpec {
                    label: format!("p{p:.2}"),
                    process,
                    p,
                    quantity,
                })
                .collect()
        };
        let closed = |theta: f64| {
            vec![
                CurveSpec {
                    label: "nsl".into(),
                    process: nonlocal(theta),
                    p: 0.0,
                    quantity: Quantity::Bound(BoundKind::Nsl),
                },
                CurveSpec {
                    label: "csl".into(),
                    process: nonlocal(theta),
                    p: 0.0,
                    quantity: Quantity::Bound(BoundKind::Csl),
                },
            ]
        };
        let three = [0.25, 0.50, 0.66];
        let (t_max, curves) = match self {
            FigureId::Fig1 => (0.7, closed(1.0)),
            FigureId::Fig2 => (
                0.15,
                by_p(dephasing, Quantity::Bound(BoundKind::Bqsl), &three),
            ),
            FigureId::Fig3a => (
                0.5,
                by_p(depolarizing, Quantity::Bound(BoundKind::Nsl), &[0.50, 0.66]),
            ),
            FigureId::Fig3b => (
                0.5,
                by_p(depolarizing, Quantity::Bound(BoundKind::Bqsl), &three),
            ),
            FigureId::Fig4a => (
                0.5,
                by_p(amplitude, Quantity::Bound(BoundKind::Nsl), &three),
            ),
            FigureId::Fig4b => (
                0.5,
                by_p(amplitude, Quantity::Bound(BoundKind::Bqsl), &three),
            ),
            FigureId::Fig5Appendix => {
                let mut curves = Vec::new();
                for theta in [0.5, 2.0] {
                    for (name, quantity) in [
                        ("negativity", Quantity::Negativity),
                        ("concurrence_sq", Quantity::ConcurrenceSq),
                    ] {
                        curves.push(CurveSpec {
                            label: format!("{name}_theta{theta}"),
                            process: nonlocal(theta),
                            p: 0.0,
                            quantity,
                        });
                    }
                }
                (0.7, curves)
            }
            FigureId::Fig6aAppendix => (0.7, closed(0.5)),
            FigureId::Fig6bAppendix => (0.7, closed(2.0)),
        };
        FigureSpec {
            id: self,
            t_max,
            curves,
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownFigure(s.to_string()))
    }
}

/// What a curve plots against `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// `T_QSL(T)`; `Nsl`, `Csl` and `Bqsl` are supported.
    Bound(BoundKind),
    Negativity,
    ConcurrenceSq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec {
    pub label: String,
    pub process: ProcessKind,
    pub p: f64,
    pub quantity: Quantity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureSpec {
    pub id: FigureId,
    /// Curves span `T ∈ [0, t_max]`.
    pub t_max: f64,
    pub curves: Vec<CurveSpec>,
}

impl FigureSpec {
    /// `T_k = t_max·k/200`, `k = 1..=200`.
    pub fn sample_times(&self) -> Vec<f64> {
        (1..=FIGURE_SAMPLES)
            .map(|k| self.t_max * k as f64 / FIGURE_SAMPLES as f64)
            .collect()
    }

    /// `<figure>_<curve>.csv`
    pub fn file_name(&self, curve: &CurveSpec) -> String {
        format!("{}_{}.csv", self.id, curve.label)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub label: String,
    pub t: Vec<f64>,
    pub values: Vec<f64>,
}

/// Evaluates one curve from a single trajectory of `200·20` RK4 steps.
pub fn compute_curve(curve: &CurveSpec, t_max: f64) -> Result<Curve> {
    let proc = Process::from_kind(curve.process)?;
    let psi = make_psi_p(curve.p)?;
    let steps = FIGURE_SAMPLES * STEPS_PER_SAMPLE;

    let values = match curve.quantity {
        Quantity::Negativity | Quantity::ConcurrenceSq => {
            let traj = evolve(&proc, &psi, t_max, steps)?;
            let f: fn(&DensityOperator) -> Result<f64> = match curve.quantity {
                Quantity::Negativity => negativity,
                _ => concurrence_sq,
            };
            traj.states()
                .iter()
                .skip(STEPS_PER_SAMPLE)
                .step_by(STEPS_PER_SAMPLE)
                .map(f)
                .collect::<Result<Vec<_>>>()?
        }
        Quantity::Bound(kind) => {
            let profile: BoundProfile = match kind {
                BoundKind::Nsl => negativity_profile(&evolve(&proc, &psi, t_max, steps)?, &proc)?,
                BoundKind::Csl => {
                    concurrence_profile(&evolve(&proc, &psi, t_max, steps)?, &proc, 1.0)?
                }
                BoundKind::Bqsl => {
                    let bell = paper_chsh_settings(curve.p)?.observable();
                    bell_profile(&evolve(&proc, &bell, t_max, steps)?, &psi, &proc)?
                }
                other => {
                    return Err(Error::UnsupportedCombination(format!(
                        "{other} is not plotted in any figure"
                    )));
                }
            };
            profile
                .reports_every(STEPS_PER_SAMPLE)?
                .into_iter()
                .map(|r| r.bound_value)
                .collect()
        }
    };
    let t = (1..=values.len())
        .map(|k| t_max * k as f64 / FIGURE_SAMPLES as f64)
        .collect();
    Ok(Curve {
        label: curve.label.clone(),
        t,
        values,
    })
}

/// Every curve of a figure, in the order of [`FigureId::spec`].
pub fn reproduce(id: FigureId) -> Result<Vec<Curve>> {
    let spec = id.spec();
    spec.curves
        .iter()
        .map(|c| compute_curve(c, spec.t_max))
        .collect()
}
