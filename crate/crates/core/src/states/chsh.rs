use super::density::Observable;
use super::pauli::sigma_dot;
use crate::error::{Error, Result};

/// A direction on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVector([f64; 3]);

impl UnitVector {
    pub const X: UnitVector = UnitVector([1.0, 0.0, 0.0]);
    pub const Z: UnitVector = UnitVector([0.0, 0.0, 1.0]);

    pub fn new(v: [f64; 3]) -> Result<Self> {
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NotUnitVector { norm });
        }
        Ok(Self(v))
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    fn add(self, rhs: Self) -> [f64; 3] {
        [
            self.0[0] + rhs.0[0],
            self.0[1] + rhs.0[1],
            self.0[2] + rhs.0[2],
        ]
    }

    fn sub(self, rhs: Self) -> [f64; 3] {
        [
            self.0[0] - rhs.0[0],
            self.0[1] - rhs.0[1],
            self.0[2] - rhs.0[2],
        ]
    }
}

/// Measurement directions `(a, a′)` on A and `(b, b′)` on B.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshSettings {
    pub a: UnitVector,
    pub a_prime: UnitVector,
    pub b: UnitVector,
    pub b_prime: UnitVector,
}

impl ChshSettings {
    /// `a = ẑ`, `a′ = x̂`, `b = cos η ẑ + sin η x̂`, `b′ = cos η ẑ − sin η x̂`.
    pub fn from_eta(eta: f64) -> Self {
        let (s, c) = eta.sin_cos();
        Self {
            a: UnitVector::Z,
            a_prime: UnitVector::X,
            b: UnitVector([s, 0.0, c]),
            b_prime: UnitVector([-s, 0.0, c]),
        }
    }

    /// `ℬ = a·σ ⊗ (b + b′)·σ + a′·σ ⊗ (b − b′)·σ`
    pub fn observable(&self) -> Observable {
        let first = sigma_dot(self.a.0).kron(&sigma_dot(self.b.add(self.b_prime)));
        let second = sigma_dot(self.a_prime.0).kron(&sigma_dot(self.b.sub(self.b_prime)));
        Observable::new(&first + &second, 2, 2).expect("real combination of Paulis is Hermitian")
    }
}

/// Builds the CHSH operator from raw direction vectors.
pub fn make_chsh(
    a: [f64; 3],
    a_prime: [f64; 3],
    b: [f64; 3],
    b_prime: [f64; 3],
) -> Result<Observable> {
    Ok(ChshSettings {
        a: UnitVector::new(a)?,
        a_prime: UnitVector::new(a_prime)?,
        b: UnitVector::new(b)?,
        b_prime: UnitVector::new(b_prime)?,
    }
    .observable())
}

/// `η = arctan(2√(p(1−p)))`, in `[0, π/4]` for `p ∈ [0, 1]`.
pub fn chsh_eta(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange {
            name: "p",
            value: p,
            range: "[0, 1]",
        });
    }
    Ok((2.0 * (p * (1.0 - p)).sqrt()).atan())
}

/// Settings tuned to `√p|00⟩ + √(1−p)|11⟩`.
pub fn paper_chsh_settings(p: f64) -> Result<ChshSettings> {
    Ok(ChshSettings::from_eta(chsh_eta(p)?))
}
