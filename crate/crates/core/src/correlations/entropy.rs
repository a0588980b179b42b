use super::clamp_roundoff;
use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, matrix_log_on_support, ComplexMatrix, Subsystem, Tolerances};
use crate::states::DensityOperator;

/// `−tr(ρ ln ρ)`, natural log, eigenvalues below `eps_support` dropped.
pub fn von_neumann_entropy(rho: &DensityOperator) -> Result<f64> {
    let eps = Tolerances::global().eps_support;
    let values = eig_hermitian(rho.matrix())?.values;
    let s: f64 = values
        .into_iter()
        .filter(|&l| l > eps)
        .map(|l| -l * l.ln())
        .sum();
    Ok(clamp_roundoff(s))
}

/// `tr(ρ(𝟙 − Π_σ))`: the weight of `ρ` outside the support of `σ`.
pub fn support_leak(rho: &ComplexMatrix, support_projector: &ComplexMatrix) -> f64 {
    let inside = rho.trace_product(support_projector).re;
    (rho.trace().re - inside).max(0.0)
}

/// `tr(ρ(ln ρ − ln σ))`, or `+∞` when `supp ρ ⊄ supp σ`.
pub fn relative_entropy(rho: &DensityOperator, sigma: &ComplexMatrix) -> Result<f64> {
    rho.matrix().check_dim(sigma.dim())?;
    let tol = Tolerances::global();
    let sigma_log = matrix_log_on_support(sigma, tol.eps_support)?;
    if support_leak(rho.matrix(), &sigma_log.projector) > tol.eps_psd {
        return Ok(f64::INFINITY);
    }
    let rho_log = matrix_log_on_support(rho.matrix(), tol.eps_support)?;
    let d = rho
        .matrix()
        .trace_product(&(&rho_log.log - &sigma_log.log))
        .re;
    Ok(clamp_roundoff(d))
}

/// `S(A) + S(B) − S(AB)`
pub fn mutual_information(rho: &DensityOperator) -> Result<f64> {
    let s_a = von_neumann_entropy(&rho.marginal(Subsystem::A)?)?;
    let s_b = von_neumann_entropy(&rho.marginal(Subsystem::B)?)?;
    let s_ab = von_neumann_entropy(rho)?;
    let i = clamp_roundoff(s_a + s_b - s_ab);
    if i < 0.0 {
        return Err(Error::NotPsd { min_eigenvalue: i });
    }
    Ok(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::make_psi_p;

    fn qubit(diag: &[f64]) -> DensityOperator {
        DensityOperator::new(ComplexMatrix::from_diagonal(diag), diag.len(), 1).unwrap()
    }

    #[test]
    fn entropy_examples() {
        assert!(
            von_neumann_entropy(&make_psi_p(0.3).unwrap())
                .unwrap()
                .abs()
                < 1e-12
        );
        let mixed = DensityOperator::maximally_mixed(2, 2);
        assert!((von_neumann_entropy(&mixed).unwrap() - 4f64.ln()).abs() < 1e-14);
        let s = von_neumann_entropy(&qubit(&[0.75, 0.25])).unwrap();
        assert!((s - 0.562_335_144_618_808_8).abs() < 1e-12);
    }

    #[test]
    fn relative_entropy_examples() {
        let zero = qubit(&[1.0, 0.0]);
        assert!(relative_entropy(&zero, zero.matrix()).unwrap().abs() < 1e-14);
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        assert!((relative_entropy(&zero, &half).unwrap() - 2f64.ln()).abs() < 1e-14);
        let one = ComplexMatrix::from_diagonal(&[0.0, 1.0]);
        assert_eq!(relative_entropy(&zero, &one).unwrap(), f64::INFINITY);
    }

    #[test]
    fn relative_entropy_rejects_non_psd_sigma() {
        let zero = qubit(&[1.0, 0.0]);
        let bad = ComplexMatrix::from_diagonal(&[1.5, -0.5]);
        assert!(matches!(
            relative_entropy(&zero, &bad),
            Err(Error::NotPsd { .. })
        ));
    }

    #[test]
    fn mutual_information_examples() {
        let bell = make_psi_p(0.5).unwrap();
        assert!((mutual_information(&bell).unwrap() - 2.0 * 2f64.ln()).abs() < 1e-12);
        let product = DensityOperator::product(&qubit(&[0.3, 0.7]), &qubit(&[0.6, 0.4])).unwrap();
        assert!(mutual_information(&product).unwrap().abs() < 1e-12);
        let classical =
            DensityOperator::new(ComplexMatrix::from_diagonal(&[0.5, 0.0, 0.0, 0.5]), 2, 2)
                .unwrap();
        assert!((mutual_information(&classical).unwrap() - 2f64.ln()).abs() < 1e-12);
    }
}
