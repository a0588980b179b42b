use crate::linalg::{ComplexMatrix, C64, I, ONE, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];
}

pub fn pauli(which: Pauli) -> ComplexMatrix {
    let rows = match which {
        Pauli::X => [[ZERO, ONE], [ONE, ZERO]],
        Pauli::Y => [[ZERO, -I], [I, ZERO]],
        Pauli::Z => [[ONE, ZERO], [ZERO, -ONE]],
    };
    ComplexMatrix::from_vec(2, rows.concat()).expect("2x2")
}

/// `n·σ⃗ = n_x σ_x + n_y σ_y + n_z σ_z`
pub fn sigma_dot(n: [f64; 3]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2);
    for (c, p) in n.into_iter().zip(Pauli::ALL) {
        m += &pauli(p).scale_real(c);
    }
    m
}

/// `σ₋ = |1⟩⟨0|`, the decay operator with `|0⟩` excited.
pub fn sigma_minus() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2);
    m[(1, 0)] = C64::new(1.0, 0.0);
    m
}

/// `σ₊ = |0⟩⟨1|`
pub fn sigma_plus() -> ComplexMatrix {
    sigma_minus().adjoint()
}
