//! Closed-form trajectories for `ψ_p` and the tuned CHSH operator, with the
//! scalar quantities derived from them.
//!
//! All open-system forms assume equal rates on both sides.

use super::{Picture, Process, ProcessKind};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};

const K00: usize = 0;
const K01: usize = 1;
const K10: usize = 2;
const K11: usize = 3;

fn matrix(entries: &[(usize, usize, C64)]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4);
    for &(i, j, v) in entries {
        m[(i, j)] += v;
    }
    m
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Diagonal in `{|00⟩, |01⟩, |10⟩, |11⟩}` plus a real symmetric `|00⟩⟨11|` coherence.
fn x_state(pops: [f64; 4], coherence: C64) -> ComplexMatrix {
    matrix(&[
        (K00, K00, re(pops[0])),
        (K01, K01, re(pops[1])),
        (K10, K10, re(pops[2])),
        (K11, K11, re(pops[3])),
        (K00, K11, coherence),
        (K11, K00, coherence.conj()),
    ])
}

/// `diag(d00, d01, d10, d11)` plus `c` on the `|00⟩⟨11|` and `|01⟩⟨10|` pairs.
fn bell_like(diag: [f64; 4], c: f64) -> ComplexMatrix {
    matrix(&[
        (K00, K00, re(diag[0])),
        (K01, K01, re(diag[1])),
        (K10, K10, re(diag[2])),
        (K11, K11, re(diag[3])),
        (K00, K11, re(c)),
        (K11, K00, re(c)),
        (K01, K10, re(c)),
        (K10, K01, re(c)),
    ])
}

fn coherence0(p: f64) -> f64 {
    (p * (1.0 - p)).sqrt()
}

pub fn nonlocal_state(p: f64, theta: f64, t: f64) -> ComplexMatrix {
    let (s, c) = (2.0 * theta * t).sin_cos();
    x_state(
        [
            0.5 * (1.0 + (2.0 * p - 1.0) * c),
            0.0,
            0.0,
            0.5 * (1.0 + (1.0 - 2.0 * p) * c),
        ],
        C64::new(coherence0(p), 0.5 * (2.0 * p - 1.0) * s),
    )
}

pub fn dephasing_state(p: f64, gamma: f64, t: f64) -> ComplexMatrix {
    x_state(
        [p, 0.0, 0.0, 1.0 - p],
        re(coherence0(p) * (-4.0 * gamma * t).exp()),
    )
}

pub fn dephasing_bell(eta: f64, gamma: f64, t: f64) -> ComplexMatrix {
    let c = 2.0 * eta.cos();
    bell_like([c, -c, -c, c], 2.0 * eta.sin() * (-4.0 * gamma * t).exp())
}

pub fn depolarizing_state(p: f64, gamma: f64, t: f64) -> ComplexMatrix {
    let g = gamma * t;
    let e = (-g).exp();
    x_state(
        [
            0.5 * e * (2.0 * p + g.cosh() - 1.0),
            0.5 * e * g.sinh(),
            0.5 * e * g.sinh(),
            0.5 * e * (1.0 - 2.0 * p + g.cosh()),
        ],
        re(coherence0(p) * (-2.0 * g).exp()),
    )
}

/// `e^{−2γt} ℬ₀`, the integrated solution.
pub fn depolarizing_bell(eta: f64, gamma: f64, t: f64) -> ComplexMatrix {
    let decay = (-2.0 * gamma * t).exp();
    let c = 2.0 * eta.cos() * decay;
    bell_like([c, -c, -c, c], 2.0 * eta.sin() * decay)
}

/// The printed depolarizing `ℬ_t`, whose coherence coefficient lacks `sin η`.
pub fn depolarizing_bell_as_printed(eta: f64, gamma: f64, t: f64) -> ComplexMatrix {
    let g = gamma * t;
    let e = (-g).exp();
    let ce = eta.cos();
    let q = 0.5 * e * (4.0 * ce * g.cosh() - 4.0 * ce * g.sinh());
    let h =
        0.5 * e * (4.0 * ce * g.sinh() - 2.0 * ce * (g.cosh() - 1.0) - 2.0 * ce * (g.cosh() + 1.0));
    bell_like([q, h, h, q], 2.0 * (-2.0 * g).exp())
}

fn amplitude_pops(p: f64, gamma: f64, t: f64) -> [f64; 4] {
    let g = gamma * t;
    let e2 = (-2.0 * g).exp();
    let grow = g.exp() - 1.0;
    [
        p * e2,
        p * e2 * grow,
        p * e2 * grow,
        1.0 - p + p * e2 * grow * grow,
    ]
}

/// Coherence decays as `e^{−γt}`, as the master equation requires.
pub fn amplitude_damping_state(p: f64, gamma: f64, t: f64) -> ComplexMatrix {
    x_state(
        amplitude_pops(p, gamma, t),
        re(coherence0(p) * (-gamma * t).exp()),
    )
}

/// The printed amplitude-damping `ρ_t`, with coherence factor `e^{−2γt}`.
pub fn amplitude_damping_state_as_printed(p: f64, gamma: f64, t: f64) -> ComplexMatrix {
    x_state(
        amplitude_pops(p, gamma, t),
        re(coherence0(p) * (-2.0 * gamma * t).exp()),
    )
}

pub fn amplitude_damping_bell(eta: f64, gamma: f64, t: f64) -> ComplexMatrix {
    let g = gamma * t;
    let ce = eta.cos();
    let d00 = (-2.0 * g).exp() * (8.0 * ce - 8.0 * ce * g.exp() + 2.0 * ce * (2.0 * g).exp());
    let d01 = (-g).exp() * (2.0 * ce * g.exp() - 4.0 * ce);
    bell_like([d00, d01, d01, 2.0 * ce], 2.0 * eta.sin() * (-g).exp())
}

/// `𝒩(ψ_t)` under the nonlocal Hamiltonian.
pub fn nonlocal_negativity(p: f64, theta: f64, t: f64) -> f64 {
    let arg = -4.0 * p * p - (1.0 - 2.0 * p).powi(2) * (4.0 * theta * t).cos() + 4.0 * p + 1.0;
    arg.max(0.0).sqrt() / (2.0 * 2f64.sqrt())
}

/// `𝒞²(ψ_t)` under the nonlocal Hamiltonian.
pub fn nonlocal_concurrence_sq(p: f64, theta: f64, t: f64) -> f64 {
    0.5 * (4.0 * (p * (p - 1.0)).abs() - (1.0 - 2.0 * p).powi(2) * (4.0 * theta * t).cos() + 1.0)
}

/// `‖(ℒ ψ_t)^{Γ_B}‖₁ = 2θ|1 − 2p| (|sin 2θt| + |cos 2θt|)`.
pub fn nonlocal_negativity_speed(p: f64, theta: f64, t: f64) -> f64 {
    let (s, c) = (2.0 * theta * t).sin_cos();
    2.0 * theta.abs() * (1.0 - 2.0 * p).abs() * (s.abs() + c.abs())
}

/// `tr(ψ_p H²) = θ² + μ_z² + 4θμ_z√(p(1−p))`; the cross term vanishes for `p ∈ {0, 1}`.
pub fn nonlocal_energy_second_moment(p: f64, theta: f64, mu_z: f64) -> f64 {
    theta * theta + mu_z * mu_z + 4.0 * theta * mu_z * coherence0(p)
}

/// `‖ℒ(ρ_t^{Γ_B})‖₁ = 8γ√(p − p²) e^{−4γt}` for dephasing.
pub fn dephasing_negativity_speed(p: f64, gamma: f64, t: f64) -> f64 {
    8.0 * gamma * (p - p * p).sqrt() * (-4.0 * gamma * t).exp()
}

/// `|𝒩(ρ_T) − 𝒩(ρ_0)| = √(p − p²)(1 − e^{−4γT})` for dephasing.
pub fn dephasing_negativity_change(p: f64, gamma: f64, t: f64) -> f64 {
    (p - p * p).sqrt() * (1.0 - (-4.0 * gamma * t).exp())
}

/// `min_α ‖ℒ†(ℬ_t)‖_α = 8γ sin η e^{−4γt}` for dephasing.
pub fn dephasing_bell_speed(eta: f64, gamma: f64, t: f64) -> f64 {
    8.0 * gamma * eta.sin() * (-4.0 * gamma * t).exp()
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "p",
            value: p,
            range: "[0, 1]",
        })
    }
}

/// The closed-form `ρ_t` (Schrödinger) or `ℬ_t` (Heisenberg) for `ψ_p` and
/// CHSH angle `η`.
pub fn closed_form(
    proc: &Process,
    p: f64,
    t: f64,
    picture: Picture,
    eta: f64,
) -> Result<ComplexMatrix> {
    check_p(p)?;
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::OutOfRange {
            name: "t",
            value: t,
            range: "[0, ∞)",
        });
    }
    if let ProcessKind::NonlocalUnitary { mu_x, mu_y, .. } = proc.kind() {
        return match picture {
            Picture::Schrodinger => Ok(nonlocal_state(p, mu_x - mu_y, t)),
            Picture::Heisenberg => Err(Error::UnsupportedCombination(format!(
                "{} in the Heisenberg picture",
                proc.kind()
            ))),
        };
    }
    let gamma = proc.equal_rate().ok_or_else(|| {
        Error::UnsupportedCombination(format!("{} with unequal rates", proc.kind()))
    })?;
    Ok(match (proc.kind(), picture) {
        (ProcessKind::PureDephasing { .. }, Picture::Schrodinger) => dephasing_state(p, gamma, t),
        (ProcessKind::PureDephasing { .. }, Picture::Heisenberg) => dephasing_bell(eta, gamma, t),
        (ProcessKind::Depolarizing { .. }, Picture::Schrodinger) => depolarizing_state(p, gamma, t),
        (ProcessKind::Depolarizing { .. }, Picture::Heisenberg) => depolarizing_bell(eta, gamma, t),
        (ProcessKind::AmplitudeDamping { .. }, Picture::Schrodinger) => {
            amplitude_damping_state(p, gamma, t)
        }
        (ProcessKind::AmplitudeDamping { .. }, Picture::Heisenberg) => {
            amplitude_damping_bell(eta, gamma, t)
        }
        (ProcessKind::NonlocalUnitary { .. }, _) => unreachable!("handled above"),
    })
}
