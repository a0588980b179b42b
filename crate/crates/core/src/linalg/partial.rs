use std::fmt;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// One factor of `ℋ_A ⊗ ℋ_B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subsystem::A => "A",
            Subsystem::B => "B",
        })
    }
}

fn check_bipartite(m: &ComplexMatrix, d_a: usize, d_b: usize) -> Result<()> {
    if d_a == 0 || d_b == 0 {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: 0,
        });
    }
    m.check_dim(d_a * d_b)
}

/// Transposes the named tensor factor. Index convention: `i = α·d_B + β`.
pub fn partial_transpose(
    m: &ComplexMatrix,
    d_a: usize,
    d_b: usize,
    subsystem: Subsystem,
) -> Result<ComplexMatrix> {
    check_bipartite(m, d_a, d_b)?;
    let mut out = ComplexMatrix::zeros(m.dim());
    for a1 in 0..d_a {
        for b1 in 0..d_b {
            for a2 in 0..d_a {
                for b2 in 0..d_b {
                    let v = m[(a1 * d_b + b1, a2 * d_b + b2)];
                    let (r, c) = match subsystem {
                        Subsystem::A => (a2 * d_b + b1, a1 * d_b + b2),
                        Subsystem::B => (a1 * d_b + b2, a2 * d_b + b1),
                    };
                    out[(r, c)] = v;
                }
            }
        }
    }
    Ok(out)
}

/// Traces out `traced`; the result lives on the other factor.
pub fn partial_trace(
    m: &ComplexMatrix,
    d_a: usize,
    d_b: usize,
    traced: Subsystem,
) -> Result<ComplexMatrix> {
    check_bipartite(m, d_a, d_b)?;
    match traced {
        Subsystem::B => {
            let mut out = ComplexMatrix::zeros(d_a);
            for a1 in 0..d_a {
                for a2 in 0..d_a {
                    for b in 0..d_b {
                        out[(a1, a2)] += m[(a1 * d_b + b, a2 * d_b + b)];
                    }
                }
            }
            Ok(out)
        }
        Subsystem::A => {
            let mut out = ComplexMatrix::zeros(d_b);
            for b1 in 0..d_b {
                for b2 in 0..d_b {
                    for a in 0..d_a {
                        out[(b1, b2)] += m[(a * d_b + b1, a * d_b + b2)];
                    }
                }
            }
            Ok(out)
        }
    }
}
