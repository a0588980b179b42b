use crate::error::{Error, Result};
use crate::linalg::{
    eigvals_hermitian, partial_trace, partial_transpose, ComplexMatrix, Subsystem, Tolerances, C64,
};

/// Tolerances a density operator is validated against.
#[derive(Debug, Clone, Copy)]
struct StateTolerance {
    herm: f64,
    psd: f64,
    trace: f64,
}

impl StateTolerance {
    fn global() -> Self {
        let t = Tolerances::global();
        Self {
            herm: t.tol_herm,
            psd: t.eps_psd,
            trace: t.tol_trace,
        }
    }

    fn uniform(tol: f64) -> Self {
        Self {
            herm: tol,
            psd: tol,
            trace: tol,
        }
    }
}

fn check_dims(m: &ComplexMatrix, d_a: usize, d_b: usize) -> Result<()> {
    if d_a == 0 || d_b == 0 {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: 0,
        });
    }
    m.check_dim(d_a * d_b)
}

/// A unit-trace positive Hermitian operator on `ℋ_A ⊗ ℋ_B`.
///
/// The stored matrix is exactly Hermitian: validation checks the input and
/// then keeps its Hermitian part.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
    d_a: usize,
    d_b: usize,
}

impl DensityOperator {
    /// Validates against the global tolerances.
    pub fn new(matrix: ComplexMatrix, d_a: usize, d_b: usize) -> Result<Self> {
        Self::validate(matrix, d_a, d_b, StateTolerance::global())
    }

    /// Validates Hermiticity, positivity and trace all at `tol`.
    pub fn with_tolerance(matrix: ComplexMatrix, d_a: usize, d_b: usize, tol: f64) -> Result<Self> {
        Self::validate(matrix, d_a, d_b, StateTolerance::uniform(tol))
    }

    fn validate(
        matrix: ComplexMatrix,
        d_a: usize,
        d_b: usize,
        tol: StateTolerance,
    ) -> Result<Self> {
        check_dims(&matrix, d_a, d_b)?;
        let deviation = matrix.hermiticity_deviation();
        if deviation > tol.herm {
            return Err(Error::NotHermitian { deviation });
        }
        let matrix = matrix.hermitian_part();
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol.trace {
            return Err(Error::InvalidTrace { trace });
        }
        let min = eigvals_hermitian(&matrix)?[0];
        if min < -tol.psd {
            return Err(Error::NotPsd {
                min_eigenvalue: min,
            });
        }
        Ok(Self { matrix, d_a, d_b })
    }

    /// `|ψ⟩⟨ψ|` for a normalized ket.
    pub fn pure(ket: &[C64], d_a: usize, d_b: usize) -> Result<Self> {
        Self::new(ComplexMatrix::projector(ket), d_a, d_b)
    }

    /// `ρ_A ⊗ ρ_B` from single-system operators (each with trivial partner dimension 1).
    pub fn product(rho_a: &DensityOperator, rho_b: &DensityOperator) -> Result<Self> {
        Self::new(rho_a.matrix.kron(&rho_b.matrix), rho_a.dim(), rho_b.dim())
    }

    /// `𝟙/(d_A d_B)`
    pub fn maximally_mixed(d_a: usize, d_b: usize) -> Self {
        let d = d_a * d_b;
        Self {
            matrix: ComplexMatrix::identity(d).scale_real(1.0 / d as f64),
            d_a,
            d_b,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn is_two_qubit(&self) -> bool {
        self.d_a == 2 && self.d_b == 2
    }

    /// `tr(ρ²)`
    pub fn purity(&self) -> f64 {
        self.matrix.trace_product(&self.matrix).re
    }

    pub fn is_pure(&self) -> bool {
        (1.0 - self.purity()).abs() <= Tolerances::global().tol_purity
    }

    pub fn require_pure(&self) -> Result<()> {
        if self.is_pure() {
            Ok(())
        } else {
            Err(Error::NotPure {
                purity: self.purity(),
            })
        }
    }

    /// Reduced state on `keep`, as a single-system operator (partner dimension 1).
    pub fn marginal(&self, keep: Subsystem) -> Result<DensityOperator> {
        let traced = match keep {
            Subsystem::A => Subsystem::B,
            Subsystem::B => Subsystem::A,
        };
        let m = partial_trace(&self.matrix, self.d_a, self.d_b, traced)?;
        let d = m.dim();
        // A marginal of a valid state is valid; only roundoff can differ.
        Ok(DensityOperator {
            matrix: m.hermitian_part(),
            d_a: d,
            d_b: 1,
        })
    }

    /// `ρ^{Γ}` on the named subsystem (not a state in general).
    pub fn partial_transpose(&self, subsystem: Subsystem) -> ComplexMatrix {
        partial_transpose(&self.matrix, self.d_a, self.d_b, subsystem).expect("dims validated")
    }

    /// `ρ_A ⊗ ρ_B` built from this state's marginals.
    pub fn product_of_marginals(&self) -> Result<DensityOperator> {
        let a = self.marginal(Subsystem::A)?;
        let b = self.marginal(Subsystem::B)?;
        Ok(DensityOperator {
            matrix: a.matrix.kron(&b.matrix),
            d_a: self.d_a,
            d_b: self.d_b,
        })
    }
}

/// A Hermitian operator on `ℋ_A ⊗ ℋ_B`.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    matrix: ComplexMatrix,
    d_a: usize,
    d_b: usize,
}

impl Observable {
    pub fn new(matrix: ComplexMatrix, d_a: usize, d_b: usize) -> Result<Self> {
        Self::with_tolerance(matrix, d_a, d_b, Tolerances::global().tol_herm)
    }

    pub fn with_tolerance(matrix: ComplexMatrix, d_a: usize, d_b: usize, tol: f64) -> Result<Self> {
        check_dims(&matrix, d_a, d_b)?;
        let deviation = matrix.hermiticity_deviation();
        if deviation > tol {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self {
            matrix: matrix.hermitian_part(),
            d_a,
            d_b,
        })
    }

    pub fn identity(d_a: usize, d_b: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(d_a * d_b),
            d_a,
            d_b,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `tr(ρ 𝒪)`
    pub fn expectation(&self, rho: &DensityOperator) -> Result<f64> {
        rho.matrix().check_dim(self.dim())?;
        let z = rho.matrix().trace_product(&self.matrix);
        let tol = Tolerances::global().tol_herm * self.matrix.frobenius_norm().max(1.0);
        if z.im.abs() > tol {
            return Err(Error::NotHermitian {
                deviation: z.im.abs(),
            });
        }
        Ok(z.re)
    }
}

/// `√p|00⟩ + √(1−p)|11⟩`
pub fn psi_p_ket(p: f64) -> Result<Vec<C64>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange {
            name: "p",
            value: p,
            range: "[0, 1]",
        });
    }
    Ok(vec![
        C64::new(p.sqrt(), 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new((1.0 - p).sqrt(), 0.0),
    ])
}

/// `|ψ_p⟩⟨ψ_p|` on two qubits.
pub fn make_psi_p(p: f64) -> Result<DensityOperator> {
    DensityOperator::pure(&psi_p_ket(p)?, 2, 2)
}
