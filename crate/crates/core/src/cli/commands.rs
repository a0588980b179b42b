use std::path::Path;

use rayon::prelude::*;

use super::config::{BoundSelection, GridPoint, ProcessName, RunConfig, SweepConfig};
use super::csv::{format_number, CsvBuffer};
use crate::dynamics::{default_steps, evolve, Picture, Process, ProcessKind, Trajectory};
use crate::error::{Error, Result};
use crate::figures::{compute_curve, FigureId};
use crate::linalg::{ComplexMatrix, Tolerances};
use crate::speedlimits::{
    bound_bell, bound_bell_separable, bound_concurrence, bound_entropy, bound_entropy_double_cs,
    bound_i_concurrence, bound_mutual_info, bound_negativity, bound_observable,
    verify_observable_rate, verify_rate_inequality, BoundKind, BoundReport, RateMeasure,
    RateReport,
};
use crate::states::{
    make_psi_p, paper_chsh_settings, pauli, ChshSettings, DensityOperator, Observable, Pauli,
};

pub const BOUND_COLUMNS: [&str; 7] = [
    "t_final",
    "bound_kind",
    "numerator",
    "lambda",
    "bound_value",
    "tightness",
    "argmin_alpha",
];

/// Bound columns of the sweep CSV, in this order.
pub const SWEEP_BOUNDS: [BoundKind; 8] = [
    BoundKind::Nsl,
    BoundKind::Csl,
    BoundKind::Icsl,
    BoundKind::Oqsl,
    BoundKind::Bqsl,
    BoundKind::BqslSeparable,
    BoundKind::Misl,
    BoundKind::Esl,
];

/// Bounds evaluated for `--bound all` and in sweeps.
pub fn applicable_bounds(process: ProcessName) -> Vec<BoundKind> {
    SWEEP_BOUNDS
        .into_iter()
        .filter(|k| match process {
            ProcessName::Nonlocal => *k != BoundKind::BqslSeparable,
            _ => !matches!(k, BoundKind::Csl | BoundKind::Icsl),
        })
        .collect()
}

/// Trajectory picture a bound is evaluated in.
pub fn bound_picture(kind: BoundKind) -> Picture {
    match kind {
        BoundKind::Oqsl | BoundKind::Bqsl | BoundKind::BqslSeparable => Picture::Heisenberg,
        _ => Picture::Schrodinger,
    }
}

/// Observable used for `oqsl`: `σ_z ⊗ 𝟙`.
pub fn oqsl_observable() -> Observable {
    let m = pauli(Pauli::Z).kron(&ComplexMatrix::identity(2));
    Observable::new(m, 2, 2).expect("Hermitian")
}

/// Product state `diag(p, 1−p) ⊗ diag(p, 1−p)` used for `misl`.
pub fn misl_initial_state(p: f64) -> Result<DensityOperator> {
    let local = DensityOperator::new(ComplexMatrix::from_diagonal(&[p, 1.0 - p]), 2, 1)?;
    DensityOperator::product(&local, &local)
}

/// Lazily built inputs shared by the bounds of one run.
struct Run {
    proc: Process,
    psi: DensityOperator,
    settings: ChshSettings,
    p: f64,
    t_final: f64,
    steps: usize,
    schrodinger: Option<Trajectory<DensityOperator>>,
}

impl Run {
    fn new(
        kind: ProcessKind,
        p: f64,
        eta: Option<f64>,
        t_final: f64,
        steps: usize,
    ) -> Result<Self> {
        let settings = match eta {
            Some(eta) => ChshSettings::from_eta(eta),
            None => paper_chsh_settings(p)?,
        };
        Ok(Self {
            proc: Process::from_kind(kind)?,
            psi: make_psi_p(p)?,
            settings,
            p,
            t_final,
            steps,
            schrodinger: None,
        })
    }

    fn schrodinger(&mut self) -> Result<&Trajectory<DensityOperator>> {
        if self.schrodinger.is_none() {
            self.schrodinger = Some(evolve(&self.proc, &self.psi, self.t_final, self.steps)?);
        }
        Ok(self.schrodinger.as_ref().expect("just set"))
    }

    fn with_schrodinger<T>(
        &mut self,
        f: impl FnOnce(&Trajectory<DensityOperator>, &Process) -> Result<T>,
    ) -> Result<T> {
        self.schrodinger()?;
        f(self.schrodinger.as_ref().expect("built above"), &self.proc)
    }

    fn evaluate(&mut self, kind: BoundKind) -> Result<BoundReport> {
        match kind {
            BoundKind::Nsl => self.with_schrodinger(bound_negativity),
            BoundKind::Csl => self.with_schrodinger(|t, p| bound_concurrence(t, p, 1.0)),
            BoundKind::Icsl => self.with_schrodinger(|t, p| bound_i_concurrence(t, p, 1.0, 1.0)),
            BoundKind::Esl => self.with_schrodinger(bound_entropy),
            BoundKind::EslDoubleCs => self.with_schrodinger(bound_entropy_double_cs),
            BoundKind::Misl => {
                let omega = misl_initial_state(self.p)?;
                let traj = evolve(&self.proc, &omega, self.t_final, self.steps)?;
                bound_mutual_info(&traj, &self.proc)
            }
            BoundKind::Oqsl => {
                let traj = evolve(&self.proc, &oqsl_observable(), self.t_final, self.steps)?;
                bound_observable(&traj, &self.psi, &self.proc)
            }
            BoundKind::Bqsl => {
                let traj = evolve(
                    &self.proc,
                    &self.settings.observable(),
                    self.t_final,
                    self.steps,
                )?;
                bound_bell(&traj, &self.psi, &self.proc)
            }
            BoundKind::BqslSeparable => bound_bell_separable(
                &self.settings,
                &self.psi,
                &self.proc,
                self.t_final,
                self.steps,
            ),
        }
    }
}

/// Whether a bound exceeds the elapsed time by more than `tol_bound`.
pub fn is_violation(report: &BoundReport) -> bool {
    !report.holds(Tolerances::global().tol_bound)
}

/// Result of a command: CSV text plus whether a bound or rate check failed.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub csv: String,
    pub violation: bool,
}

pub fn bound_row(report: &BoundReport) -> Vec<String> {
    vec![
        format_number(report.t_actual),
        report.kind.to_string(),
        format_number(report.numerator),
        format_number(report.lambda),
        format_number(report.bound_value),
        report.tightness.map(format_number).unwrap_or_default(),
        report
            .argmin_alpha
            .map(|a| a.to_string())
            .unwrap_or_default(),
    ]
}

/// Evaluates the requested bounds for one configuration.
pub fn cmd_bound(cfg: &RunConfig) -> Result<CommandOutput> {
    let kinds: Vec<BoundKind> = match &cfg.bounds {
        BoundSelection::All => applicable_bounds(cfg.process)
            .into_iter()
            .filter(|k| cfg.picture.is_none_or(|pic| bound_picture(*k) == pic))
            .collect(),
        BoundSelection::Listed(kinds) => {
            if let Some(pic) = cfg.picture {
                if let Some(k) = kinds.iter().find(|k| bound_picture(**k) != pic) {
                    return Err(Error::WrongPicture(format!(
                        "{k} is evaluated in the {} picture, not {pic}",
                        bound_picture(*k)
                    )));
                }
            }
            kinds.clone()
        }
    };
    let mut run = Run::new(cfg.process_kind(), cfg.p, cfg.eta, cfg.t_final, cfg.steps)?;
    let mut csv = CsvBuffer::with_header(&BOUND_COLUMNS);
    let mut violation = false;
    for kind in kinds {
        let report = run.evaluate(kind)?;
        violation |= is_violation(&report);
        csv.row(bound_row(&report));
    }
    Ok(CommandOutput {
        csv: csv.into_string(),
        violation,
    })
}

/// Writes one `T,value` file per curve into `out_dir`; returns the paths written.
pub fn cmd_reproduce(figures: &[FigureId], out_dir: &Path) -> Result<Vec<std::path::PathBuf>> {
    std::fs::create_dir_all(out_dir)
        .map_err(|e| Error::InvalidConfig(format!("cannot create {}: {e}", out_dir.display())))?;
    let mut written = Vec::new();
    for &id in figures {
        let spec = id.spec();
        for curve_spec in &spec.curves {
            let curve = compute_curve(curve_spec, spec.t_max)?;
            let mut csv = CsvBuffer::with_header(&["T", "value"]);
            for (t, v) in curve.t.iter().zip(&curve.values) {
                csv.row([format_number(*t), format_number(*v)]);
            }
            let path = out_dir.join(spec.file_name(curve_spec));
            std::fs::write(&path, csv.as_str()).map_err(|e| {
                Error::InvalidConfig(format!("cannot write {}: {e}", path.display()))
            })?;
            written.push(path);
        }
    }
    Ok(written)
}

/// Every applicable bound at one grid point; `None` where a bound does not apply.
pub fn sweep_point(point: &GridPoint) -> Result<Vec<Option<BoundReport>>> {
    let steps = default_steps(point.t_final);
    let mut run = Run::new(
        point.process.kind(point.param, point.mu_z),
        point.p,
        None,
        point.t_final,
        steps,
    )?;
    let applicable = applicable_bounds(point.process);
    SWEEP_BOUNDS
        .iter()
        .map(|k| applicable.contains(k).then(|| run.evaluate(*k)).transpose())
        .collect()
}

pub fn sweep_header() -> Vec<&'static str> {
    let mut cols = vec!["process", "param", "p", "t_final"];
    cols.extend(SWEEP_BOUNDS.iter().map(|k| k.as_str()));
    cols.push("violation");
    cols
}

/// Grid points are evaluated in parallel and written in grid order.
pub fn cmd_sweep(cfg: &SweepConfig) -> Result<CommandOutput> {
    let points = cfg.points();
    let results: Vec<Result<Vec<Option<BoundReport>>>> =
        points.par_iter().map(sweep_point).collect();
    let mut csv = CsvBuffer::with_header(&sweep_header());
    let mut any = false;
    for (point, result) in points.iter().zip(results) {
        let reports = result?;
        let violation = reports.iter().flatten().any(is_violation);
        any |= violation;
        let mut row = vec![
            point.process.to_string(),
            format_number(point.param),
            format_number(point.p),
            format_number(point.t_final),
        ];
        row.extend(reports.iter().map(|r| {
            r.as_ref()
                .map(|r| format_number(r.bound_value))
                .unwrap_or_default()
        }));
        row.push(if violation { "1" } else { "0" }.to_string());
        csv.row(row);
    }
    Ok(CommandOutput {
        csv: csv.into_string(),
        violation: any,
    })
}

pub const VERIFY_COLUMNS: [&str; 5] = ["measure", "points", "max_gap", "max_excess", "holds"];

fn verify_row(name: &str, report: &RateReport) -> Vec<String> {
    vec![
        name.to_string(),
        report.points.len().to_string(),
        format_number(report.max_violation()),
        format_number(report.max_excess()),
        report.holds().to_string(),
    ]
}

/// Rate-inequality checks along the configured trajectory. The Schrödinger
/// picture checks negativity, entropy and (for unitary dynamics) squared
/// concurrence; the Heisenberg picture checks the Bell-CHSH expectation.
pub fn cmd_verify(cfg: &RunConfig) -> Result<CommandOutput> {
    let mut run = Run::new(cfg.process_kind(), cfg.p, cfg.eta, cfg.t_final, cfg.steps)?;
    let mut csv = CsvBuffer::with_header(&VERIFY_COLUMNS);
    let mut violation = false;
    match cfg.picture.unwrap_or(Picture::Schrodinger) {
        Picture::Schrodinger => {
            let unitary = run.proc.is_unitary();
            let rows = run.with_schrodinger(|traj, proc| {
                let mut measures = vec![RateMeasure::Negativity, RateMeasure::Entropy];
                if unitary {
                    measures.push(RateMeasure::ConcurrenceSq);
                }
                measures
                    .into_iter()
                    .map(|m| Ok((m, verify_rate_inequality(traj, m, proc)?)))
                    .collect::<Result<Vec<_>>>()
            })?;
            for (m, report) in rows {
                violation |= !report.holds();
                csv.row(verify_row(&m.to_string(), &report));
            }
        }
        Picture::Heisenberg => {
            let traj = evolve(
                &run.proc,
                &run.settings.observable(),
                cfg.t_final,
                cfg.steps,
            )?;
            let report = verify_observable_rate(&traj, &run.psi, &run.proc)?;
            violation |= !report.holds();
            csv.row(verify_row("chsh", &report));
        }
    }
    Ok(CommandOutput {
        csv: csv.into_string(),
        violation,
    })
}
