use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range for {len} factors")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("phase step {step:.3} rad between samples {index} and {next} exceeds the refinement threshold", next = index + 1)]
    Refinement { index: usize, step: f64 },

    #[error("singular configuration: points {0} and {1} coincide")]
    SingularConfiguration(usize, usize),

    #[error("configuration is not in the interleaved real chamber: {0}")]
    NotInterleaved(String),

    #[error("no branch convention available: {0}")]
    BranchUnspecified(String),

    #[error("invalid block parameters: {0}")]
    InvalidParams(String),

    #[error("weight mismatch: {0}")]
    WeightMismatch(String),

    #[error("polynomial product is not multilinear (variables overlap)")]
    NotMultilinear,

    #[error("integrand is singular at the evaluation point: {0}")]
    Singularity(String),

    #[error("degenerate Pochhammer cycle: {0}")]
    DegenerateCycle(String),

    #[error("contour geometry: {0}")]
    Geometry(String),

    #[error("exponent {0} is not integrable at the endpoint; use the Pochhammer engine")]
    NonIntegrable(f64),

    #[error("step leaves the interleaved chamber: {0}")]
    StepLeavesChamber(String),

    #[error("quadrature did not converge: {0}")]
    Convergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
