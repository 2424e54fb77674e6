use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("lattice size must be odd and at least 3, got {0}")]
    InvalidLatticeSize(usize),
    #[error("field has {got} nodes, lattice has {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("node {index} has norm {norm}, expected a unit spin")]
    NotUnitNorm { index: usize, norm: f64 },
    #[error("negative exponent {0} is not allowed here")]
    NegativeExponent(f64),
    #[error("sampling a degree-{degree} polynomial on {nodes} nodes would alias")]
    WouldAlias { degree: usize, nodes: usize },
    #[error("input has degree {degree}, at most {max} is allowed")]
    DegreeTooHigh { degree: usize, max: usize },
    #[error("smoothness index s = {s} must be below {limit}")]
    SmoothnessOutOfRange { s: f64, limit: f64 },
    #[error("invalid flow parameters: {0}")]
    InvalidParams(String),
    #[error("time step {dt} exceeds the stability cap {cap} for this lattice")]
    StepTooLarge { dt: f64, cap: f64 },
    #[error("state became non-finite at t = {t}")]
    NonFiniteState { t: f64 },
    #[error("sphere projection cannot be combined with viscosity epsilon = {0}")]
    ProjectionWithViscosity(f64),
    #[error("at least {needed} snapshots are required, got {got}")]
    TooFewSnapshots { needed: usize, got: usize },
    #[error("reference size {n_ref} must exceed twice the largest sweep size {max_n}")]
    ReferenceTooSmall { n_ref: usize, max_n: usize },
    #[error("at least {needed} rows are required, got {got}")]
    TooFewRows { needed: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
