use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not positive semi-definite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("trace is not 1 (got {trace})")]
    InvalidTrace { trace: f64 },

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("direction vector has norm {norm}, expected 1")]
    NotUnitVector { norm: f64 },

    #[error("state is not pure (purity {purity})")]
    NotPure { purity: f64 },

    #[error("expected a two-qubit state, got dimensions {d_a}x{d_b}")]
    NotTwoQubit { d_a: usize, d_b: usize },

    #[error("no closed form for {0}")]
    UnsupportedCombination(String),

    #[error("trajectory drifted at t = {time}: {detail}")]
    InvariantDrift { time: f64, detail: String },

    #[error("evolution speed vanishes while the measure changes by {numerator:.3e}")]
    ZeroSpeed { numerator: f64 },

    #[error("{0} requires unitary dynamics")]
    NotUnitaryProcess(String),

    #[error("{0} does not factor into local generators")]
    NotSeparableProcess(String),

    #[error("initial state is not a product state (distance {distance:.3e})")]
    NotProductInitial { distance: f64 },

    #[error("state left the support of the initial state at t = {time} (weight {weight:.3e})")]
    SupportEscape { time: f64, weight: f64 },

    #[error("bound needs an even number of steps, trajectory has {steps}")]
    OddStepCount { steps: usize },

    #[error("wrong picture: {0}")]
    WrongPicture(String),

    #[error("unknown figure '{0}'")]
    UnknownFigure(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
