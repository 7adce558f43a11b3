use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series has a nonzero constant term where zero is required")]
    NonZeroConstant,
    #[error("leading coefficient is not invertible in the coefficient ring")]
    NotInvertible,
    #[error("incompatible series shapes: {0}")]
    ShapeMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("requested precision 1e-{requested} unreachable; achieved bound {achieved:e}")]
    PrecisionUnreachable { requested: u32, achieved: f64 },
    #[error("cost guard: {0}")]
    CostGuard(String),
    #[error("too close to a pole: {0}")]
    PoleProximity(String),
    #[error("too close to a lattice point: {0}")]
    LatticeProximity(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
