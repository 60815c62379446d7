use thiserror::Error;

/// Errors raised by samplers, analytic solvers and estimators.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("stationarity violated: {0}")]
    Stationarity(String),
    #[error("no finite tail index in search range: {0}")]
    NoTailIndex(String),
    #[error("rank undetermined (function may be a.s. constant)")]
    RankUndetermined,
    #[error("boundary case, unclassified: {0}")]
    BoundaryCase(String),
    #[error("outside supported regime: {0}")]
    OutsideRegime(String),
    #[error("degenerate sample: {0}")]
    DegenerateSample(String),
    #[error("empty input")]
    EmptyInput,
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("negative circulant spectrum: min eigenvalue {0}")]
    NegativeSpectrum(f64),
    #[error("simulation horizon exceeded: {0}")]
    Horizon(String),
}

pub type Result<T> = std::result::Result<T, ModelError>;
