use super::profile::{BoundProfile, Denominator};
use super::BoundKind;
use super::BoundReport;
use crate::correlations::{
    concurrence_sq, i_concurrence_sq, mutual_information, negativity, support_leak,
};
use crate::dynamics::{rk4_step, Process, Trajectory};
use crate::error::{Error, Result};
use crate::linalg::{
    matrix_log_on_support, partial_trace, partial_transpose, schatten_norm, ComplexMatrix,
    SchattenP, Subsystem, Tolerances,
};
use crate::states::{sigma_dot, ChshSettings, DensityOperator, Observable};

/// Weight of `ω_t` outside `supp ω_0` above which the mutual-information bound is refused.
pub const MI_SUPPORT_LEAK_TOLERANCE: f64 = 1e-10;

/// Distance `‖ω_0 − ω_A ⊗ ω_B‖₂` above which an initial state is not a product.
const PRODUCT_TOLERANCE: f64 = 1e-10;

fn require_unitary(proc: &Process, what: &str) -> Result<()> {
    if proc.is_unitary() {
        Ok(())
    } else {
        Err(Error::NotUnitaryProcess(format!(
            "{what} under {}",
            proc.kind()
        )))
    }
}

/// Speed `‖(ℒ_t ρ_t)^{Γ_B}‖₁`, numerator `2|𝒩(ρ_T) − 𝒩(ρ_0)|`.
pub fn negativity_profile(
    traj: &Trajectory<DensityOperator>,
    proc: &Process,
) -> Result<BoundProfile> {
    let n0 = negativity(traj.initial())?;
    let mut numerators = Vec::with_capacity(traj.len());
    let mut speeds = Vec::with_capacity(traj.len());
    for (t, rho) in traj.iter() {
        numerators.push(2.0 * (negativity(rho)? - n0).abs());
        let rate = proc.liouvillian(t, rho.matrix());
        let pt = partial_transpose(&rate, rho.d_a(), rho.d_b(), Subsystem::B)?;
        speeds.push(schatten_norm(&pt, SchattenP::One)?);
    }
    Ok(BoundProfile::new(
        BoundKind::Nsl,
        traj.times().to_vec(),
        traj.step_size(),
        numerators,
        vec![(None, speeds)],
        Denominator::Average,
        1.0,
    ))
}

pub fn bound_negativity(traj: &Trajectory<DensityOperator>, proc: &Process) -> Result<BoundReport> {
    negativity_profile(traj, proc)?.report()
}

/// Speed `√tr(ψ_t H²)`, numerator `|𝒞²(ψ_T) − 𝒞²(ψ_0)|`, bound `(ħ/4)·numerator/Λ`.
pub fn concurrence_profile(
    traj: &Trajectory<DensityOperator>,
    proc: &Process,
    hbar: f64,
) -> Result<BoundProfile> {
    require_unitary(proc, "concurrence speed limit")?;
    if !(hbar.is_finite() && hbar > 0.0) {
        return Err(Error::OutOfRange {
            name: "hbar",
            value: hbar,
            range: "(0, ∞)",
        });
    }
    let c0 = concurrence_sq(traj.initial())?;
    let mut numerators = Vec::with_capacity(traj.len());
    let mut speeds = Vec::with_capacity(traj.len());
    for (_, psi) in traj.iter() {
        numerators.push((concurrence_sq(psi)? - c0).abs());
        speeds.push(proc.energy_second_moment(psi.matrix()).max(0.0).sqrt());
    }
    Ok(BoundProfile::new(
        BoundKind::Csl,
        traj.times().to_vec(),
        traj.step_size(),
        numerators,
        vec![(None, speeds)],
        Denominator::Average,
        hbar / 4.0,
    ))
}

pub fn bound_concurrence(
    traj: &Trajectory<DensityOperator>,
    proc: &Process,
    hbar: f64,
) -> Result<BoundReport> {
    concurrence_profile(traj, proc, hbar)?.report()
}

/// Speed `4ν_Aν_B ‖ρ_A‖₂ ‖tr_B ℒ_t(ψ_t)‖₂`, numerator `|𝒞_I²(ψ_T) − 𝒞_I²(ψ_0)|`.
pub fn i_concurrence_profile(
    traj: &Trajectory<DensityOperator>,
    proc: &Process,
    nu_a: f64,
    nu_b: f64,
) -> Result<BoundProfile> {
    require_unitary(proc, "I-concurrence speed limit")?;
    let c0 = i_concurrence_sq(traj.initial(), nu_a, nu_b)?;
    let mut numerators = Vec::with_capacity(traj.len());
    let mut speeds = Vec::with_capacity(traj.len());
    for (t, psi) in traj.iter() {
        numerators.push((i_concurrence_sq(psi, nu_a, nu_b)? - c0).abs());
        let rho_a = psi.marginal(Subsystem::A)?;
        let rate = proc.liouvillian(t, psi.matrix());
        let rate_a = partial_trace(&rate, psi.d_a(), psi.d_b(), Subsystem::B)?;
        speeds.push(4.0 * nu_a * nu_b * rho_a.matrix().frobenius_norm() * rate_a.frobenius_norm());
    }
    Ok(BoundProfile::new(
        BoundKind::Icsl,
        traj.times().to_vec(),
        traj.step_size(),
        numerators,
        vec![(None, speeds)],
        Denominator::Average,
        1.0,
    ))
}

pub fn bound_i_concurrence(
    traj: &Trajectory<DensityOperator>,
    proc: &Process,
    nu_a: f64,
    nu_b: f64,
) -> Result<BoundReport> {
    i_concurrence_profile(traj, proc, nu_a, nu_b)?.report()
}

/// Speeds `‖ℒ_t†(𝒪_t)‖_α` for `α ∈ {1, 2, ∞}`; numerator `|⟨𝒪_T⟩ − ⟨𝒪_0⟩| / ‖ρ‖₁`.
/// The bound divides by the smallest `Λ^α`.
pub fn observable_profile(
    traj: &Trajectory<Observable>,
    rho0: &DensityOperator,
    proc: &Process,
) -> Result<BoundProfile> {
    observable_profile_as(BoundKind::Oqsl, traj, rho0, proc)
}

fn observable_profile_as(
    kind: BoundKind,
    traj: &Trajectory<Observable>,
    rho0: &DensityOperator,
    proc: &Process,
) -> Result<BoundProfile> {
    rho0.matrix().check_dim(traj.initial().dim())?;
    let rho_norm = schatten_norm(rho0.matrix(), SchattenP::One)?;
    let e0 = traj.initial().expectation(rho0)?;
    let mut numerators = Vec::with_capacity(traj.len());
    let mut channels: Vec<(Option<SchattenP>, Vec<f64>)> = SchattenP::ALL
        .iter()
        .map(|&a| (Some(a), Vec::with_capacity(traj.len())))
        .collect();
    for (t, obs) in traj.iter() {
        numerators.push((obs.expectation(rho0)? - e0).abs() / rho_norm);
        let rate = proc.adjoint(t, obs.matrix());
        for (alpha, speeds) in channels.iter_mut() {
            speeds.push(schatten_norm(&rate, alpha.expect("set above"))?);
        }
    }
    Ok(BoundProfile::new(
        kind,
        traj.times().to_vec(),
        traj.step_size(),
        numerators,
        channels,
        Denominator::MinAverage,
        1.0,
    ))
}

pub fn bound_observable(
    traj: &Trajectory<Observable>,
    rho0: &DensityOperator,
    proc: &Process,
) -> Result<BoundReport> {
    observable_profile(traj, rho0, proc)?.report()
}

/// [`observable_profile`] for a Bell-CHSH trajectory.
pub fn bell_profile(
    traj: &Trajectory<Observable>,
    rho0: &DensityOperator,
    proc: &Process,
) -> Result<BoundProfile> {
    observable_profile_as(BoundKind::Bqsl, traj, rho0, proc)
}

pub fn bound_bell(
    traj: &Trajectory<Observable>,
    rho0: &DensityOperator,
    proc: &Process,
) -> Result<BoundReport> {
    bell_profile(traj, rho0, proc)?.report()
}

/// Instantaneous speed used by the separable Bell-CHSH bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeparableSpeedForm {
    /// `Σ_k ‖ℒ_A†(a_k)⊗b_k + a_k⊗ℒ_B†(b_k)‖₂`, time-averaged. This is the
    /// derivative of `a_k ⊗ b_k` under `ℒ_A ⊗ id + id ⊗ ℒ_B`.
    ProductRule,
    /// `Σ_k ‖ℒ_A†(a_k)⊗ℒ_B†(b_k)‖₂`, integrated but not averaged. Kept for
    /// comparison; it is not an upper bound on the rate and the resulting
    /// "bound" can exceed `T`.
    AsPrinted,
}

/// Bell-CHSH bound for separable generators, writing `ℬ_t = a_{1t}⊗b_{1t} + a_{2t}⊗b_{2t}`
/// and evolving each local factor with its own adjoint generator.
/// The numerator is additionally divided by `√tr(ρ²)`.
pub fn separable_bell_profile(
    settings: &ChshSettings,
    rho0: &DensityOperator,
    proc: &Process,
    t_final: f64,
    steps: usize,
    form: SeparableSpeedForm,
) -> Result<BoundProfile> {
    let (gen_a, gen_b) = proc.local_generators()?;
    if !rho0.is_two_qubit() {
        return Err(Error::NotTwoQubit {
            d_a: rho0.d_a(),
            d_b: rho0.d_b(),
        });
    }
    if !(t_final.is_finite() && t_final > 0.0) {
        return Err(Error::OutOfRange {
            name: "t_final",
            value: t_final,
            range: "(0, ∞)",
        });
    }
    if steps == 0 {
        return Err(Error::OutOfRange {
            name: "steps",
            value: 0.0,
            range: "[1, ∞)",
        });
    }
    let add =
        |u: [f64; 3], v: [f64; 3], s: f64| [u[0] + s * v[0], u[1] + s * v[1], u[2] + s * v[2]];
    let b = settings.b.components();
    let b_prime = settings.b_prime.components();
    let mut factors = [
        (
            sigma_dot(settings.a.components()),
            sigma_dot(add(b, b_prime, 1.0)),
        ),
        (
            sigma_dot(settings.a_prime.components()),
            sigma_dot(add(b, b_prime, -1.0)),
        ),
    ];

    let h = t_final / steps as f64;
    let norm = rho0.purity().sqrt();
    let bell =
        |f: &[(ComplexMatrix, ComplexMatrix); 2]| &f[0].0.kron(&f[0].1) + &f[1].0.kron(&f[1].1);
    let expectation = |m: &ComplexMatrix| rho0.matrix().trace_product(m).re;
    let e0 = expectation(&bell(&factors));

    let mut times = Vec::with_capacity(steps + 1);
    let mut numerators = Vec::with_capacity(steps + 1);
    let mut speeds = Vec::with_capacity(steps + 1);
    for k in 0..=steps {
        let t = if k == steps { t_final } else { k as f64 * h };
        if k > 0 {
            for (a, b) in factors.iter_mut() {
                *a = rk4_step(a, t - h, h, |_, m| gen_a.adjoint_apply(m)).hermitian_part();
                *b = rk4_step(b, t - h, h, |_, m| gen_b.adjoint_apply(m)).hermitian_part();
            }
        }
        times.push(t);
        numerators.push((expectation(&bell(&factors)) - e0).abs() / norm);
        let speed: f64 = factors
            .iter()
            .map(|(a, b)| {
                let da = gen_a.adjoint_apply(a);
                let db = gen_b.adjoint_apply(b);
                match form {
                    SeparableSpeedForm::ProductRule => {
                        (&da.kron(b) + &a.kron(&db)).frobenius_norm()
                    }
                    SeparableSpeedForm::AsPrinted => da.kron(&db).frobenius_norm(),
                }
            })
            .sum();
        speeds.push(speed);
    }
    let denominator = match form {
        SeparableSpeedForm::ProductRule => Denominator::Average,
        SeparableSpeedForm::AsPrinted => Denominator::Integral,
    };
    Ok(BoundProfile::new(
        BoundKind::BqslSeparable,
        times,
        h,
        numerators,
        vec![(None, speeds)],
        denominator,
        1.0,
    ))
}

pub fn bound_bell_separable(
    settings: &ChshSettings,
    rho0: &DensityOperator,
    proc: &Process,
    t_final: f64,
    steps: usize,
) -> Result<BoundReport> {
    separable_bell_profile(
        settings,
        rho0,
        proc,
        t_final,
        steps,
        SeparableSpeedForm::ProductRule,
    )?
    .report()
}

/// Speed `‖ℒ_t(ω_t)‖₂ ‖ln ω_t − ln ω_0‖₂`, numerator `I(A;B)_{ω_T}`.
///
/// Refuses non-product initial states and trajectories that leave the
/// support of `ω_0`.
pub fn mutual_info_profile(
    traj: &Trajectory<DensityOperator>,
    proc: &Process,
) -> Result<BoundProfile> {
    let omega0 = traj.initial();
    let distance = (omega0.matrix() - omega0.product_of_marginals()?.matrix()).frobenius_norm();
    if distance > PRODUCT_TOLERANCE {
        return Err(Error::NotProductInitial { distance });
    }
    let eps = Tolerances::global().eps_support;
    let log0 = matrix_log_on_support(omega0.matrix(), eps)?;
    let mut numerators = Vec::with_capacity(traj.len());
    let mut speeds = Vec::with_capacity(traj.len());
    for (t, omega) in traj.iter() {
        let weight = support_leak(omega.matrix(), &log0.projector);
        if weight > MI_SUPPORT_LEAK_TOLERANCE {
            return Err(Error::SupportEscape { time: t, weight });
        }
        let log_t = matrix_log_on_support(omega.matrix(), eps)?;
        numerators.push(mutual_information(omega)?);
        let rate = proc.liouvillian(t, omega.matrix());
        speeds.push(rate.frobenius_norm() * (&log_t.log - &log0.log).frobenius_norm());
    }
    Ok(BoundProfile::new(
        BoundKind::Misl,
        traj.times().to_vec(),
        traj.step_size(),
        numerators,
        vec![(None, speeds)],
        Denominator::Average,
        1.0,
    ))
}

pub fn bound_mutual_info(
    traj: &Trajectory<DensityOperator>,
    proc: &Process,
) -> Result<BoundReport> {
    mutual_info_profile(traj, proc)?.report()
}

/// Per-point `(S(ρ_t), ‖ℒ_t ρ_t‖₂, ‖ln ρ_t‖₂)`.
fn entropy_parts(
    traj: &Trajectory<DensityOperator>,
    proc: &Process,
) -> Result<Vec<(f64, f64, f64)>> {
    let eps = Tolerances::global().eps_support;
    traj.iter()
        .map(|(t, rho)| {
            let log = matrix_log_on_support(rho.matrix(), eps)?;
            let s: f64 = log.support_eigenvalues.iter().map(|&l| -l * l.ln()).sum();
            let rate = proc.liouvillian(t, rho.matrix());
            Ok((s.max(0.0), rate.frobenius_norm(), log.log.frobenius_norm()))
        })
        .collect()
}

/// Speed `‖ℒ_t(ρ_t)‖₂ ‖ln ρ_t‖₂`, numerator `|S(ρ_T) − S(ρ_0)|`.
pub fn entropy_profile(traj: &Trajectory<DensityOperator>, proc: &Process) -> Result<BoundProfile> {
    let parts = entropy_parts(traj, proc)?;
    let s0 = parts[0].0;
    Ok(BoundProfile::new(
        BoundKind::Esl,
        traj.times().to_vec(),
        traj.step_size(),
        parts.iter().map(|p| (p.0 - s0).abs()).collect(),
        vec![(None, parts.iter().map(|p| p.1 * p.2).collect())],
        Denominator::Average,
        1.0,
    ))
}

/// The weaker entropy bound: `Λ = (1/T)√(∫‖ℒρ‖₂² dt · ∫‖ln ρ‖₂² dt)`.
pub fn entropy_double_cs_profile(
    traj: &Trajectory<DensityOperator>,
    proc: &Process,
) -> Result<BoundProfile> {
    let parts = entropy_parts(traj, proc)?;
    let s0 = parts[0].0;
    Ok(BoundProfile::new(
        BoundKind::EslDoubleCs,
        traj.times().to_vec(),
        traj.step_size(),
        parts.iter().map(|p| (p.0 - s0).abs()).collect(),
        vec![
            (None, parts.iter().map(|p| p.1 * p.1).collect()),
            (None, parts.iter().map(|p| p.2 * p.2).collect()),
        ],
        Denominator::GeometricAverage,
        1.0,
    ))
}

pub fn bound_entropy(traj: &Trajectory<DensityOperator>, proc: &Process) -> Result<BoundReport> {
    entropy_profile(traj, proc)?.report()
}

pub fn bound_entropy_double_cs(
    traj: &Trajectory<DensityOperator>,
    proc: &Process,
) -> Result<BoundReport> {
    entropy_double_cs_profile(traj, proc)?.report()
}
