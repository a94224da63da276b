use thiserror::Error;

/// Errors raised while building states or evaluating measures.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("state is not normalized (|norm^2 - 1| = {deviation:e})")]
    NotNormalized { deviation: f64 },

    #[error("all amplitudes are zero; the state cannot be normalized")]
    DegenerateState,

    #[error("amplitude {index} is not finite")]
    NonFiniteAmplitude { index: usize },

    #[error("parameter {name} = {value} is outside [{lo}, {hi}]")]
    ParameterRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix trace is {0}, expected 1")]
    InvalidTrace(f64),

    #[error("matrix is not positive semidefinite (det = {0:e})")]
    NotPositive(f64),

    #[error("{quantity} = {value:e} is outside its bound [{lo}, {hi}]")]
    OutOfBounds {
        quantity: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("concurrence triangle violated: Q - side = {0:e}")]
    TriangleViolation(f64),

    #[error("sample count must be at least 1")]
    EmptyEnsemble,

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("{quantity:?} is not available for the {family:?} family")]
    UnsupportedQuantity {
        family: crate::states::Family,
        quantity: crate::closed_form::Quantity,
    },

    #[error("a boundary curve needs at least 2 points, got {0}")]
    TooFewPoints(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
