use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::dynamics::{default_steps, Picture, ProcessKind};
use crate::error::{Error, Result};
use crate::speedlimits::BoundKind;

/// `key = value` lines; `#` starts a comment. Keys accept `-` or `_`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidConfig(format!("line {}: expected key=value", n + 1))
            })?;
            let key = key.trim().replace('-', "_");
            if key.is_empty() {
                return Err(Error::InvalidConfig(format!("line {}: empty key", n + 1)));
            }
            entries.insert(key, value.trim().to_string());
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Typed lookup; a present but unparsable value is an error.
    pub fn value<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.get(key)
            .map(|raw| {
                raw.parse::<T>()
                    .map_err(|_| Error::InvalidConfig(format!("invalid value {raw:?} for {key}")))
            })
            .transpose()
    }

    /// Rejects keys outside `allowed`.
    pub fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        match self.entries.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(Error::InvalidConfig(format!("unknown config key {k:?}"))),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProcessName {
    Nonlocal,
    Dephasing,
    Depolarizing,
    Amplitude,
}

impl ProcessName {
    pub const ALL: [ProcessName; 4] = [
        ProcessName::Nonlocal,
        ProcessName::Dephasing,
        ProcessName::Depolarizing,
        ProcessName::Amplitude,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ProcessName::Nonlocal => "nonlocal",
            ProcessName::Dephasing => "dephasing",
            ProcessName::Depolarizing => "depolarizing",
            ProcessName::Amplitude => "amplitude",
        }
    }

    /// `param` is `θ` for the nonlocal Hamiltonian and `γ` otherwise.
    pub fn kind(&self, param: f64, mu_z: f64) -> ProcessKind {
        match self {
            ProcessName::Nonlocal => ProcessKind::NonlocalUnitary {
                mu_x: param,
                mu_y: 0.0,
                mu_z,
            },
            ProcessName::Dephasing => ProcessKind::PureDephasing {
                gamma_a: param,
                gamma_b: param,
            },
            ProcessName::Depolarizing => ProcessKind::Depolarizing {
                gamma_a: param,
                gamma_b: param,
            },
            ProcessName::Amplitude => ProcessKind::AmplitudeDamping {
                gamma_a: param,
                gamma_b: param,
            },
        }
    }
}

impl fmt::Display for ProcessName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProcessName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "nonlocal" => Ok(ProcessName::Nonlocal),
            "dephasing" => Ok(ProcessName::Dephasing),
            "depolarizing" | "depolarising" => Ok(ProcessName::Depolarizing),
            "amplitude" | "amplitude-damping" => Ok(ProcessName::Amplitude),
            other => Err(Error::InvalidConfig(format!("unknown process {other:?}"))),
        }
    }
}

/// Which bounds to evaluate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundSelection {
    /// Every bound that applies to the process.
    All,
    Listed(Vec<BoundKind>),
}

impl FromStr for BoundSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .collect();
        if parts.is_empty() {
            return Err(Error::InvalidConfig("empty bound list".into()));
        }
        if parts.iter().any(|p| p.eq_ignore_ascii_case("all")) {
            return Ok(BoundSelection::All);
        }
        parts
            .iter()
            .map(|p| p.to_ascii_lowercase().parse())
            .collect::<Result<Vec<_>>>()
            .map(BoundSelection::Listed)
    }
}

/// Parameters of a single run, after merging flags over the config file.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub process: ProcessName,
    pub gamma: f64,
    pub theta: f64,
    pub mu_z: f64,
    pub p: f64,
    /// Overrides the CHSH angle derived from `p`.
    pub eta: Option<f64>,
    pub t_final: f64,
    pub steps: usize,
    pub bounds: BoundSelection,
    pub picture: Option<Picture>,
    pub out: Option<PathBuf>,
}

/// Flag values before merging; `None` means "not given".
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunOverrides {
    pub process: Option<String>,
    pub gamma: Option<f64>,
    pub theta: Option<f64>,
    pub mu_z: Option<f64>,
    pub p: Option<f64>,
    pub eta: Option<f64>,
    pub t_final: Option<f64>,
    pub steps: Option<usize>,
    pub bound: Option<String>,
    pub picture: Option<String>,
    pub out: Option<PathBuf>,
}

const RUN_KEYS: [&str; 11] = [
    "process", "gamma", "theta", "mu_z", "p", "eta", "t_final", "steps", "bound", "picture", "out",
];

impl RunConfig {
    pub const DEFAULT_GAMMA: f64 = 1.0;
    pub const DEFAULT_THETA: f64 = 1.0;
    pub const DEFAULT_MU_Z: f64 = 0.1;
    pub const DEFAULT_P: f64 = 0.5;

    /// Flags win over the file; missing values take the defaults. `t_final` is required.
    pub fn resolve(flags: RunOverrides, file: Option<&ConfigFile>) -> Result<Self> {
        let empty = ConfigFile::default();
        let file = file.unwrap_or(&empty);
        file.check_keys(&RUN_KEYS)?;

        let process: ProcessName = match flags.process {
            Some(s) => s.parse()?,
            None => file.value("process")?.unwrap_or(ProcessName::Dephasing),
        };
        let gamma = flags
            .gamma
            .or(file.value("gamma")?)
            .unwrap_or(Self::DEFAULT_GAMMA);
        let theta = flags
            .theta
            .or(file.value("theta")?)
            .unwrap_or(Self::DEFAULT_THETA);
        let mu_z = flags
            .mu_z
            .or(file.value("mu_z")?)
            .unwrap_or(Self::DEFAULT_MU_Z);
        let p = flags.p.or(file.value("p")?).unwrap_or(Self::DEFAULT_P);
        let eta = flags.eta.or(file.value("eta")?);
        let t_final = flags
            .t_final
            .or(file.value("t_final")?)
            .ok_or_else(|| Error::InvalidConfig("t_final is required".into()))?;
        let bounds = match flags.bound {
            Some(s) => s.parse()?,
            None => file.value("bound")?.unwrap_or(BoundSelection::All),
        };
        let picture = match flags.picture {
            Some(s) => Some(s.parse()?),
            None => file.value("picture")?,
        };
        let out = flags.out.or(file.value("out")?);

        if !(t_final.is_finite() && t_final > 0.0) {
            return Err(Error::InvalidConfig("t_final must be positive".into()));
        }
        let steps = flags
            .steps
            .or(file.value("steps")?)
            .unwrap_or_else(|| default_steps(t_final));
        if steps < 2 || !steps.is_multiple_of(2) {
            return Err(Error::InvalidConfig(format!(
                "steps must be even and at least 2 (got {steps})"
            )));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidConfig(format!(
                "p must lie in [0, 1] (got {p})"
            )));
        }
        for (name, v) in [("gamma", gamma), ("theta", theta), ("mu_z", mu_z)] {
            if !v.is_finite() {
                return Err(Error::InvalidConfig(format!("{name} must be finite")));
            }
        }
        if gamma < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "gamma must be non-negative (got {gamma})"
            )));
        }

        Ok(Self {
            process,
            gamma,
            theta,
            mu_z,
            p,
            eta,
            t_final,
            steps,
            bounds,
            picture,
            out,
        })
    }

    pub fn process_kind(&self) -> ProcessKind {
        match self.process {
            ProcessName::Nonlocal => self.process.kind(self.theta, self.mu_z),
            _ => self.process.kind(self.gamma, self.mu_z),
        }
    }
}

/// Grid for `sweep`; rows run over process, parameter, `p`, `T` in that order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub processes: Vec<ProcessName>,
    pub gammas: Vec<f64>,
    pub thetas: Vec<f64>,
    pub mu_z: f64,
    pub ps: Vec<f64>,
    pub t_finals: Vec<f64>,
    pub out: Option<PathBuf>,
}

/// Sweep flag values before merging.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepOverrides {
    pub process: Option<String>,
    pub gamma: Option<String>,
    pub theta: Option<String>,
    pub mu_z: Option<f64>,
    pub p: Option<String>,
    pub t_final: Option<String>,
    pub out: Option<PathBuf>,
}

const SWEEP_KEYS: [&str; 7] = ["process", "gamma", "theta", "mu_z", "p", "t_final", "out"];

fn parse_list<T: FromStr>(raw: &str, key: &str) -> Result<Vec<T>> {
    let items: Vec<T> = raw
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| Error::InvalidConfig(format!("invalid value {s:?} in {key}")))
        })
        .collect::<Result<_>>()?;
    if items.is_empty() {
        return Err(Error::InvalidConfig(format!("{key} list is empty")));
    }
    Ok(items)
}

impl SweepConfig {
    /// Dephasing-tightness grid plus `θ ∈ {0.5, 1, 2}` for the nonlocal Hamiltonian.
    pub fn acceptance_grid() -> Self {
        Self {
            processes: ProcessName::ALL.to_vec(),
            gammas: vec![0.5, 1.0, 2.0],
            thetas: vec![0.5, 1.0, 2.0],
            mu_z: RunConfig::DEFAULT_MU_Z,
            ps: vec![0.1, 0.25, 0.5, 0.75, 0.9],
            t_finals: vec![0.05, 0.1, 0.2],
            out: None,
        }
    }

    pub fn resolve(flags: SweepOverrides, file: Option<&ConfigFile>) -> Result<Self> {
        let empty = ConfigFile::default();
        let file = file.unwrap_or(&empty);
        file.check_keys(&SWEEP_KEYS)?;
        let mut cfg = Self::acceptance_grid();

        let pick = |flag: Option<String>, key: &str| -> Option<String> {
            flag.or_else(|| file.get(key).map(String::from))
        };
        if let Some(raw) = pick(flags.process, "process") {
            let mut names: Vec<ProcessName> = parse_list(&raw, "process")?;
            names.sort();
            names.dedup();
            cfg.processes = names;
        }
        if let Some(raw) = pick(flags.gamma, "gamma") {
            cfg.gammas = parse_list(&raw, "gamma")?;
        }
        if let Some(raw) = pick(flags.theta, "theta") {
            cfg.thetas = parse_list(&raw, "theta")?;
        }
        if let Some(raw) = pick(flags.p, "p") {
            cfg.ps = parse_list(&raw, "p")?;
        }
        if let Some(raw) = pick(flags.t_final, "t_final") {
            cfg.t_finals = parse_list(&raw, "t_final")?;
        }
        cfg.mu_z = flags.mu_z.or(file.value("mu_z")?).unwrap_or(cfg.mu_z);
        cfg.out = flags.out.or(file.value("out")?);

        if cfg.t_finals.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(Error::InvalidConfig("t_final must be positive".into()));
        }
        if cfg.ps.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::InvalidConfig("p must lie in [0, 1]".into()));
        }
        if cfg.gammas.iter().any(|g| !(g.is_finite() && *g >= 0.0)) {
            return Err(Error::InvalidConfig("gamma must be non-negative".into()));
        }
        if cfg.thetas.iter().any(|t| !t.is_finite()) || !cfg.mu_z.is_finite() {
            return Err(Error::InvalidConfig("theta and mu_z must be finite".into()));
        }
        Ok(cfg)
    }

    /// `γ` values for open processes, `θ` for the nonlocal one.
    pub fn params(&self, process: ProcessName) -> &[f64] {
        match process {
            ProcessName::Nonlocal => &self.thetas,
            _ => &self.gammas,
        }
    }

    /// Grid points in output order.
    pub fn points(&self) -> Vec<GridPoint> {
        let mut out = Vec::new();
        for &process in &self.processes {
            for &param in self.params(process) {
                for &p in &self.ps {
                    for &t_final in &self.t_finals {
                        out.push(GridPoint {
                            process,
                            param,
                            mu_z: self.mu_z,
                            p,
                            t_final,
                        });
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub process: ProcessName,
    pub param: f64,
    pub mu_z: f64,
    pub p: f64,
    pub t_final: f64,
}
