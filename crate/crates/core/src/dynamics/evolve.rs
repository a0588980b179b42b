use super::{Picture, Process};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Tolerances};
use crate::states::{DensityOperator, Observable};

pub const STEPS_PER_UNIT_TIME: f64 = 2000.0;

/// Largest re-hermitization or trace correction tolerated after one RK4 step.
pub const CORRECTION_LIMIT: f64 = 1e-9;

/// `2000·t_final` rounded, at least 2 and even.
pub fn default_steps(t_final: f64) -> usize {
    let n = (STEPS_PER_UNIT_TIME * t_final).round().max(2.0) as usize;
    n + n % 2
}

/// Anything RK4 can carry along a generator: states forward with `ℒ`,
/// observables forward with `ℒ†`.
pub trait Evolvable: Sized + Clone {
    const PICTURE: Picture;

    fn matrix(&self) -> &ComplexMatrix;

    fn dims(&self) -> (usize, usize);

    fn generator(proc: &Process, t: f64, m: &ComplexMatrix) -> ComplexMatrix;

    /// Projects an integrated matrix back onto the type's constraints and
    /// returns the size of the correction.
    fn normalize(m: ComplexMatrix) -> (ComplexMatrix, f64);

    fn validate(m: ComplexMatrix, d_a: usize, d_b: usize, tol: f64) -> Result<Self>;
}

impl Evolvable for DensityOperator {
    const PICTURE: Picture = Picture::Schrodinger;

    fn matrix(&self) -> &ComplexMatrix {
        DensityOperator::matrix(self)
    }

    fn dims(&self) -> (usize, usize) {
        (self.d_a(), self.d_b())
    }

    fn generator(proc: &Process, t: f64, m: &ComplexMatrix) -> ComplexMatrix {
        proc.liouvillian(t, m)
    }

    fn normalize(m: ComplexMatrix) -> (ComplexMatrix, f64) {
        let herm = m.hermiticity_deviation();
        let h = m.hermitian_part();
        let trace = h.trace().re;
        ((h.scale_real(1.0 / trace)), herm.max((trace - 1.0).abs()))
    }

    fn validate(m: ComplexMatrix, d_a: usize, d_b: usize, tol: f64) -> Result<Self> {
        DensityOperator::with_tolerance(m, d_a, d_b, tol)
    }
}

impl Evolvable for Observable {
    const PICTURE: Picture = Picture::Heisenberg;

    fn matrix(&self) -> &ComplexMatrix {
        Observable::matrix(self)
    }

    fn dims(&self) -> (usize, usize) {
        (self.d_a(), self.d_b())
    }

    fn generator(proc: &Process, t: f64, m: &ComplexMatrix) -> ComplexMatrix {
        proc.adjoint(t, m)
    }

    fn normalize(m: ComplexMatrix) -> (ComplexMatrix, f64) {
        let herm = m.hermiticity_deviation();
        (m.hermitian_part(), herm)
    }

    fn validate(m: ComplexMatrix, d_a: usize, d_b: usize, tol: f64) -> Result<Self> {
        Observable::with_tolerance(m, d_a, d_b, tol)
    }
}

/// Stored states of a fixed-step integration, one per step including `t = 0`.
#[derive(Debug, Clone)]
pub struct Trajectory<S> {
    times: Vec<f64>,
    states: Vec<S>,
    step: f64,
    max_correction: f64,
}

impl<S: Evolvable> Trajectory<S> {
    /// Wraps externally produced samples (for example closed-form states).
    /// Times must start at 0 and be uniformly spaced.
    pub fn from_samples(times: Vec<f64>, states: Vec<S>) -> Result<Self> {
        if times.len() != states.len() || times.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: times.len(),
                found: states.len(),
            });
        }
        let step = if times.len() > 1 {
            times[1] - times[0]
        } else {
            0.0
        };
        for w in times.windows(2) {
            if w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater)
                || ((w[1] - w[0]) - step).abs() > 1e-9 * step.max(1.0)
            {
                return Err(Error::InvalidConfig(
                    "trajectory times must be uniform and increasing".into(),
                ));
            }
        }
        Ok(Self {
            times,
            states,
            step,
            max_correction: 0.0,
        })
    }

    pub fn picture(&self) -> Picture {
        S::PICTURE
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[S] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Number of RK4 steps, one less than the number of stored points.
    pub fn steps(&self) -> usize {
        self.states.len() - 1
    }

    pub fn step_size(&self) -> f64 {
        self.step
    }

    pub fn t_final(&self) -> f64 {
        *self.times.last().expect("non-empty")
    }

    pub fn initial(&self) -> &S {
        &self.states[0]
    }

    pub fn final_state(&self) -> &S {
        self.states.last().expect("non-empty")
    }

    /// Largest per-step hermitization/trace correction applied during integration.
    pub fn max_correction(&self) -> f64 {
        self.max_correction
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &S)> {
        self.times.iter().copied().zip(&self.states)
    }

    /// The sub-trajectory of the first `steps + 1` points.
    pub fn truncated(&self, steps: usize) -> Self {
        let n = (steps + 1).min(self.len());
        Self {
            times: self.times[..n].to_vec(),
            states: self.states[..n].to_vec(),
            step: self.step,
            max_correction: self.max_correction,
        }
    }
}

/// One classical RK4 step of `dm/dt = f(t, m)`.
pub fn rk4_step(
    m: &ComplexMatrix,
    t: f64,
    h: f64,
    f: impl Fn(f64, &ComplexMatrix) -> ComplexMatrix,
) -> ComplexMatrix {
    let k1 = f(t, m);
    let k2 = f(t + h / 2.0, &(m + &k1.scale_real(h / 2.0)));
    let k3 = f(t + h / 2.0, &(m + &k2.scale_real(h / 2.0)));
    let k4 = f(t + h, &(m + &k3.scale_real(h)));
    let mut incr = k1;
    incr += &k2.scale_real(2.0);
    incr += &k3.scale_real(2.0);
    incr += &k4;
    m + &incr.scale_real(h / 6.0)
}

/// Classical RK4 with `h = t_final/steps`, storing every step.
///
/// Each stored matrix is re-hermitized (and trace-renormalized for states);
/// a correction above [`CORRECTION_LIMIT`] or a state failing its invariants
/// at the trajectory tolerance is reported as [`Error::InvariantDrift`].
pub fn evolve<S: Evolvable>(
    proc: &Process,
    initial: &S,
    t_final: f64,
    steps: usize,
) -> Result<Trajectory<S>> {
    if !(t_final.is_finite() && t_final >= 0.0) {
        return Err(Error::OutOfRange {
            name: "t_final",
            value: t_final,
            range: "[0, ∞)",
        });
    }
    if steps == 0 {
        return Err(Error::OutOfRange {
            name: "steps",
            value: 0.0,
            range: "[1, ∞)",
        });
    }
    initial.matrix().check_dim(proc.hamiltonian().dim())?;
    if t_final == 0.0 {
        return Trajectory::from_samples(vec![0.0], vec![initial.clone()]);
    }

    let tol = Tolerances::global().tol_trajectory;
    let (d_a, d_b) = initial.dims();
    let h = t_final / steps as f64;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(0.0);
    states.push(initial.clone());
    let mut current = initial.matrix().clone();
    let mut max_correction = 0.0_f64;

    for k in 0..steps {
        let t = k as f64 * h;
        let next = rk4_step(&current, t, h, |t, m| S::generator(proc, t, m));

        let t_next = if k + 1 == steps {
            t_final
        } else {
            (k + 1) as f64 * h
        };
        let (next, correction) = S::normalize(next);
        if correction > CORRECTION_LIMIT {
            return Err(Error::InvariantDrift {
                time: t_next,
                detail: format!(
                    "normalization correction {correction:.3e} exceeds {CORRECTION_LIMIT:e}"
                ),
            });
        }
        max_correction = max_correction.max(correction);
        let state =
            S::validate(next.clone(), d_a, d_b, tol).map_err(|e| Error::InvariantDrift {
                time: t_next,
                detail: e.to_string(),
            })?;
        current = next;
        times.push(t_next);
        states.push(state);
    }

    Ok(Trajectory {
        times,
        states,
        step: h,
        max_correction,
    })
}
