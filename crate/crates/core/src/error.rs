use thiserror::Error;

/// Errors raised by the geometric and numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("zero base raised to a negative exponent")]
    ZeroToNegativePower,

    #[error("degenerate point: gradient vanishes")]
    DegeneratePoint,

    /// A profile slope `f_i'` vanishes where a negative power of it is needed.
    #[error("singular configuration: derivative of profile {index} vanishes")]
    SingularConfiguration { index: usize },

    #[error("point is off the surface (defect {defect:e})")]
    OffSurface { defect: f64 },

    #[error("singular linear system")]
    SingularMatrix,

    #[error("constraint violated: {0}")]
    ConstraintViolated(&'static str),

    #[error("X-profile {index} is not positive at u = {u}")]
    NonPositiveProfile { index: usize, u: f64 },

    #[error("admissible domain is empty")]
    EmptyDomain,

    #[error("integration blew up immediately")]
    ImmediateBlowUp,

    #[error("step too large: local residual {residual:e} on the first step")]
    StepTooLarge { residual: f64 },

    #[error("root finding failed: {0}")]
    RootNotFound(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
