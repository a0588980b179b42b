use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, I};
use crate::states::{pauli, sigma_minus, DensityOperator, Observable, Pauli};

/// Which generator, with its rates or couplings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProcessKind {
    /// `H = μ_x XX + μ_y YY + μ_z ZZ`; only `θ = μ_x − μ_y` and `μ_z` matter for `ψ_p`.
    NonlocalUnitary {
        mu_x: f64,
        mu_y: f64,
        mu_z: f64,
    },
    PureDephasing {
        gamma_a: f64,
        gamma_b: f64,
    },
    Depolarizing {
        gamma_a: f64,
        gamma_b: f64,
    },
    AmplitudeDamping {
        gamma_a: f64,
        gamma_b: f64,
    },
}

impl ProcessKind {
    pub fn name(&self) -> &'static str {
        match self {
            ProcessKind::NonlocalUnitary { .. } => "nonlocal",
            ProcessKind::PureDephasing { .. } => "dephasing",
            ProcessKind::Depolarizing { .. } => "depolarizing",
            ProcessKind::AmplitudeDamping { .. } => "amplitude",
        }
    }
}

impl fmt::Display for ProcessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ProcessKind::NonlocalUnitary { mu_x, mu_y, mu_z } => {
                write!(f, "nonlocal(mu_x={mu_x}, mu_y={mu_y}, mu_z={mu_z})")
            }
            ProcessKind::PureDephasing { gamma_a, gamma_b }
            | ProcessKind::Depolarizing { gamma_a, gamma_b }
            | ProcessKind::AmplitudeDamping { gamma_a, gamma_b } => {
                write!(f, "{}(gamma_a={gamma_a}, gamma_b={gamma_b})", self.name())
            }
        }
    }
}

/// A single-qubit Lindblad generator, one factor of a separable process.
#[derive(Debug, Clone)]
pub struct LocalGenerator {
    jumps: Vec<ComplexMatrix>,
    decay: ComplexMatrix,
}

impl LocalGenerator {
    fn new(jumps: Vec<ComplexMatrix>) -> Self {
        let decay = decay_operator(&jumps, 2);
        Self { jumps, decay }
    }

    /// `ℒ(ρ) = Σ 2LρL† − {L†L, ρ}`
    pub fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        dissipator(&self.jumps, &self.decay, rho)
    }

    /// `ℒ†(O) = Σ 2L†OL − {L†L, O}`
    pub fn adjoint_apply(&self, obs: &ComplexMatrix) -> ComplexMatrix {
        adjoint_dissipator(&self.jumps, &self.decay, obs)
    }
}

/// A two-qubit generator in Lindblad form,
/// `ℒ(ρ) = −i[H, ρ] + Σ_α (2 L_α ρ L_α† − {L_α†L_α, ρ})`, with `ħ = 1`.
#[derive(Debug, Clone)]
pub struct Process {
    kind: ProcessKind,
    hamiltonian: ComplexMatrix,
    jumps: Vec<ComplexMatrix>,
    decay: ComplexMatrix,
    local: Option<(LocalGenerator, LocalGenerator)>,
}

fn check_rate(name: &'static str, g: f64) -> Result<()> {
    if g.is_finite() && g >= 0.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value: g,
            range: "[0, ∞)",
        })
    }
}

fn check_coupling(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value: v,
            range: "finite reals",
        })
    }
}

fn decay_operator(jumps: &[ComplexMatrix], dim: usize) -> ComplexMatrix {
    let mut k = ComplexMatrix::zeros(dim);
    for l in jumps {
        k += &l.adjoint().matmul(l);
    }
    k
}

fn dissipator(
    jumps: &[ComplexMatrix],
    decay: &ComplexMatrix,
    rho: &ComplexMatrix,
) -> ComplexMatrix {
    let mut out = -&decay.anticommutator(rho);
    for l in jumps {
        out += &l.matmul(rho).matmul(&l.adjoint()).scale_real(2.0);
    }
    out
}

fn adjoint_dissipator(
    jumps: &[ComplexMatrix],
    decay: &ComplexMatrix,
    obs: &ComplexMatrix,
) -> ComplexMatrix {
    let mut out = -&decay.anticommutator(obs);
    for l in jumps {
        out += &l.adjoint().matmul(obs).matmul(l).scale_real(2.0);
    }
    out
}

impl Process {
    /// `H = θ XX + μ_z ZZ` (`μ_x = θ`, `μ_y = 0`).
    pub fn nonlocal(theta: f64, mu_z: f64) -> Result<Self> {
        Self::nonlocal_full(theta, 0.0, mu_z)
    }

    pub fn nonlocal_full(mu_x: f64, mu_y: f64, mu_z: f64) -> Result<Self> {
        check_coupling("mu_x", mu_x)?;
        check_coupling("mu_y", mu_y)?;
        check_coupling("mu_z", mu_z)?;
        let pp = |p: Pauli| pauli(p).kron(&pauli(p));
        let h = &(&pp(Pauli::X).scale_real(mu_x) + &pp(Pauli::Y).scale_real(mu_y))
            + &pp(Pauli::Z).scale_real(mu_z);
        Ok(Self {
            kind: ProcessKind::NonlocalUnitary { mu_x, mu_y, mu_z },
            hamiltonian: h,
            jumps: Vec::new(),
            decay: ComplexMatrix::zeros(4),
            local: None,
        })
    }

    /// `L = √(γ/2) σ_z` on each side.
    pub fn dephasing(gamma: f64) -> Result<Self> {
        Self::dephasing_asymmetric(gamma, gamma)
    }

    pub fn dephasing_asymmetric(gamma_a: f64, gamma_b: f64) -> Result<Self> {
        Self::local_process(ProcessKind::PureDephasing { gamma_a, gamma_b }, |g| {
            vec![pauli(Pauli::Z).scale_real((g / 2.0).sqrt())]
        })
    }

    /// `L_i = √(γ/8) σ_i` on each side.
    pub fn depolarizing(gamma: f64) -> Result<Self> {
        Self::depolarizing_asymmetric(gamma, gamma)
    }

    pub fn depolarizing_asymmetric(gamma_a: f64, gamma_b: f64) -> Result<Self> {
        Self::local_process(ProcessKind::Depolarizing { gamma_a, gamma_b }, |g| {
            Pauli::ALL
                .iter()
                .map(|&p| pauli(p).scale_real((g / 8.0).sqrt()))
                .collect()
        })
    }

    /// `L = √(γ/2) σ₋` on each side, `σ₋ = |1⟩⟨0|`.
    pub fn amplitude_damping(gamma: f64) -> Result<Self> {
        Self::amplitude_damping_asymmetric(gamma, gamma)
    }

    pub fn amplitude_damping_asymmetric(gamma_a: f64, gamma_b: f64) -> Result<Self> {
        Self::local_process(ProcessKind::AmplitudeDamping { gamma_a, gamma_b }, |g| {
            vec![sigma_minus().scale_real((g / 2.0).sqrt())]
        })
    }

    pub fn from_kind(kind: ProcessKind) -> Result<Self> {
        match kind {
            ProcessKind::NonlocalUnitary { mu_x, mu_y, mu_z } => {
                Self::nonlocal_full(mu_x, mu_y, mu_z)
            }
            ProcessKind::PureDephasing { gamma_a, gamma_b } => {
                Self::dephasing_asymmetric(gamma_a, gamma_b)
            }
            ProcessKind::Depolarizing { gamma_a, gamma_b } => {
                Self::depolarizing_asymmetric(gamma_a, gamma_b)
            }
            ProcessKind::AmplitudeDamping { gamma_a, gamma_b } => {
                Self::amplitude_damping_asymmetric(gamma_a, gamma_b)
            }
        }
    }

    fn local_process(
        kind: ProcessKind,
        jumps_for: impl Fn(f64) -> Vec<ComplexMatrix>,
    ) -> Result<Self> {
        let (gamma_a, gamma_b) = match kind {
            ProcessKind::PureDephasing { gamma_a, gamma_b }
            | ProcessKind::Depolarizing { gamma_a, gamma_b }
            | ProcessKind::AmplitudeDamping { gamma_a, gamma_b } => (gamma_a, gamma_b),
            ProcessKind::NonlocalUnitary { .. } => unreachable!("local processes only"),
        };
        check_rate("gamma_A", gamma_a)?;
        check_rate("gamma_B", gamma_b)?;
        let id = ComplexMatrix::identity(2);
        let local_a = jumps_for(gamma_a);
        let local_b = jumps_for(gamma_b);
        let jumps: Vec<ComplexMatrix> = local_a
            .iter()
            .map(|l| l.kron(&id))
            .chain(local_b.iter().map(|l| id.kron(l)))
            .collect();
        let decay = decay_operator(&jumps, 4);
        Ok(Self {
            kind,
            hamiltonian: ComplexMatrix::zeros(4),
            jumps,
            decay,
            local: Some((LocalGenerator::new(local_a), LocalGenerator::new(local_b))),
        })
    }

    pub fn kind(&self) -> ProcessKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn hamiltonian(&self) -> &ComplexMatrix {
        &self.hamiltonian
    }

    pub fn jump_operators(&self) -> &[ComplexMatrix] {
        &self.jumps
    }

    pub fn is_unitary(&self) -> bool {
        self.jumps.is_empty()
    }

    /// `θ = μ_x − μ_y` for the nonlocal Hamiltonian.
    pub fn theta(&self) -> Option<f64> {
        match self.kind {
            ProcessKind::NonlocalUnitary { mu_x, mu_y, .. } => Some(mu_x - mu_y),
            _ => None,
        }
    }

    /// The common rate when both sides share it.
    pub fn equal_rate(&self) -> Option<f64> {
        match self.kind {
            ProcessKind::PureDephasing { gamma_a, gamma_b }
            | ProcessKind::Depolarizing { gamma_a, gamma_b }
            | ProcessKind::AmplitudeDamping { gamma_a, gamma_b }
                if gamma_a == gamma_b =>
            {
                Some(gamma_a)
            }
            _ => None,
        }
    }

    /// `(ℒ_A, ℒ_B)` with `ℒ = ℒ_A ⊗ id + id ⊗ ℒ_B`.
    pub fn local_generators(&self) -> Result<&(LocalGenerator, LocalGenerator)> {
        self.local
            .as_ref()
            .ok_or_else(|| Error::NotSeparableProcess(self.kind.to_string()))
    }

    /// `ℒ_t(ρ)` on a raw matrix. The built-in generators are time independent.
    pub fn liouvillian(&self, _t: f64, rho: &ComplexMatrix) -> ComplexMatrix {
        let mut out = dissipator(&self.jumps, &self.decay, rho);
        out += &self.hamiltonian.commutator(rho).scale(-I);
        out
    }

    /// `ℒ_t†(O)` on a raw matrix.
    pub fn adjoint(&self, _t: f64, obs: &ComplexMatrix) -> ComplexMatrix {
        let mut out = adjoint_dissipator(&self.jumps, &self.decay, obs);
        out += &self.hamiltonian.commutator(obs).scale(I);
        out
    }

    /// `tr(ψ H²)`
    pub fn energy_second_moment(&self, psi: &ComplexMatrix) -> f64 {
        let h2 = self.hamiltonian.matmul(&self.hamiltonian);
        psi.trace_product(&h2).re
    }
}

/// `ℒ_t(ρ)`, checking dimensions.
pub fn liouvillian_apply(proc: &Process, t: f64, rho: &DensityOperator) -> Result<ComplexMatrix> {
    rho.matrix().check_dim(4)?;
    Ok(proc.liouvillian(t, rho.matrix()))
}

/// `ℒ_t†(O)`, checking dimensions.
pub fn adjoint_apply(proc: &Process, t: f64, obs: &Observable) -> Result<ComplexMatrix> {
    obs.matrix().check_dim(4)?;
    Ok(proc.adjoint(t, obs.matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{partial_transpose, schatten_norm, SchattenP, Subsystem};
    use crate::states::{make_psi_p, paper_chsh_settings};

    fn all_processes() -> Vec<Process> {
        vec![
            Process::nonlocal(1.0, 0.1).unwrap(),
            Process::dephasing(0.7).unwrap(),
            Process::depolarizing(1.3).unwrap(),
            Process::amplitude_damping(0.9).unwrap(),
        ]
    }

    #[test]
    fn generators_are_trace_free() {
        let rho = make_psi_p(0.3).unwrap();
        for proc in all_processes() {
            let l = liouvillian_apply(&proc, 0.0, &rho).unwrap();
            assert!(l.trace().norm() < 1e-11, "{}", proc.name());
            assert!(l.is_hermitian(1e-12));
        }
    }

    #[test]
    fn adjoints_are_unital() {
        let id = Observable::identity(2, 2);
        for proc in all_processes() {
            assert!(
                adjoint_apply(&proc, 0.0, &id).unwrap().max_abs() < 1e-11,
                "{}",
                proc.name()
            );
        }
    }

    #[test]
    fn dephasing_fixes_diagonal_states() {
        let rho = DensityOperator::new(ComplexMatrix::from_diagonal(&[0.1, 0.2, 0.3, 0.4]), 2, 2)
            .unwrap();
        let l = liouvillian_apply(&Process::dephasing(1.0).unwrap(), 0.0, &rho).unwrap();
        assert!(l.max_abs() < 1e-15);
    }

    #[test]
    fn bell_state_is_a_fixed_point_of_the_nonlocal_hamiltonian() {
        let rho = make_psi_p(0.5).unwrap();
        let l = liouvillian_apply(&Process::nonlocal(1.0, 0.1).unwrap(), 0.0, &rho).unwrap();
        assert!(l.max_abs() < 1e-15);
    }

    #[test]
    fn dephasing_negativity_speed_at_zero() {
        let gamma = 1.0;
        for p in [0.1, 0.5, 0.8] {
            let rho = make_psi_p(p).unwrap();
            let pt = partial_transpose(rho.matrix(), 2, 2, Subsystem::B).unwrap();
            let l = Process::dephasing(gamma).unwrap().liouvillian(0.0, &pt);
            let speed = schatten_norm(&l, SchattenP::One).unwrap();
            assert!((speed - 8.0 * gamma * (p - p * p).sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn dephasing_scales_bell_coherences() {
        let gamma = 0.5;
        let p = 0.3;
        let b0 = paper_chsh_settings(p).unwrap().observable();
        let d = adjoint_apply(&Process::dephasing(gamma).unwrap(), 0.0, &b0).unwrap();
        for (i, j) in [(0, 3), (1, 2), (2, 1), (3, 0)] {
            let expected = b0.matrix()[(i, j)] * (-4.0 * gamma);
            assert!((d[(i, j)] - expected).norm() < 1e-14);
        }
        for k in 0..4 {
            assert!(d[(k, k)].norm() < 1e-14);
        }
    }

    #[test]
    fn nonlocal_is_not_separable() {
        let proc = Process::nonlocal(1.0, 0.0).unwrap();
        assert!(matches!(
            proc.local_generators(),
            Err(Error::NotSeparableProcess(_))
        ));
        assert!(Process::dephasing(-1.0).is_err());
    }

    #[test]
    fn local_generators_reassemble_the_full_generator() {
        for proc in all_processes().into_iter().skip(1) {
            let (la, lb) = proc.local_generators().unwrap();
            // product operators: ℒ(X⊗Y) = ℒ_A(X)⊗Y + X⊗ℒ_B(Y)
            let x = pauli(Pauli::X);
            let y = &pauli(Pauli::Z) + &ComplexMatrix::identity(2);
            let lhs = proc.liouvillian(0.0, &x.kron(&y));
            let rhs = &la.apply(&x).kron(&y) + &x.kron(&lb.apply(&y));
            assert!((&lhs - &rhs).max_abs() < 1e-14, "{}", proc.name());
        }
    }
}
