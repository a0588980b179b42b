use super::clamp_roundoff;
use super::entropy::von_neumann_entropy;
use crate::error::{Error, Result};
use crate::linalg::{eigvals_hermitian, ComplexMatrix, Subsystem};
use crate::states::{pauli, DensityOperator, Pauli};

/// `(‖ρ^{Γ_B}‖₁ − 1)/2`
pub fn negativity(rho: &DensityOperator) -> Result<f64> {
    let pt = rho.partial_transpose(Subsystem::B);
    let trace_norm: f64 = eigvals_hermitian(&pt)?.iter().map(|l| l.abs()).sum();
    Ok(clamp_roundoff((trace_norm - 1.0) / 2.0))
}

/// `ℛ(M) = (σ_y ⊗ σ_y) M (σ_y ⊗ σ_y)`
pub fn spin_flip(m: &ComplexMatrix) -> ComplexMatrix {
    let yy = pauli(Pauli::Y).kron(&pauli(Pauli::Y));
    yy.matmul(m).matmul(&yy)
}

fn require_two_qubit(rho: &DensityOperator) -> Result<()> {
    if rho.is_two_qubit() {
        Ok(())
    } else {
        Err(Error::NotTwoQubit {
            d_a: rho.d_a(),
            d_b: rho.d_b(),
        })
    }
}

/// `tr(ψ ℛ(ψ*))` for a pure two-qubit state, conjugating in the computational basis.
pub fn concurrence_sq(psi: &DensityOperator) -> Result<f64> {
    require_two_qubit(psi)?;
    psi.require_pure()?;
    let flipped = spin_flip(&psi.matrix().conj());
    Ok(clamp_roundoff(psi.matrix().trace_product(&flipped).re))
}

/// `2 ν_A ν_B (1 − tr ρ_A²)` for a pure bipartite state.
pub fn i_concurrence_sq(psi: &DensityOperator, nu_a: f64, nu_b: f64) -> Result<f64> {
    for (name, nu) in [("nu_A", nu_a), ("nu_B", nu_b)] {
        if !(nu.is_finite() && nu > 0.0) {
            return Err(Error::OutOfRange {
                name,
                value: nu,
                range: "(0, ∞)",
            });
        }
    }
    psi.require_pure()?;
    let rho_a = psi.marginal(Subsystem::A)?;
    Ok(clamp_roundoff(2.0 * nu_a * nu_b * (1.0 - rho_a.purity())))
}

/// `S(tr_B ψ)` for a pure bipartite state.
pub fn entanglement_entropy(psi: &DensityOperator) -> Result<f64> {
    psi.require_pure()?;
    von_neumann_entropy(&psi.marginal(Subsystem::A)?)
}
