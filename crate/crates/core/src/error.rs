use thiserror::Error;

/// Errors raised by ring, module and resolution computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring descriptor: {0}")]
    InvalidDescriptor(String),

    /// The constructed tables violate a ring axiom. This is an implementation bug.
    #[error("ring axiom violated: {0}")]
    AxiomViolation(String),

    #[error("elements belong to different rings")]
    RingMismatch,

    #[error("{0} is not a unit")]
    NotAUnit(String),

    #[error("operation requires a finite ring")]
    NotFinite,

    #[error("operation requires a local ring")]
    NotLocal,

    #[error("search needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("object of size {size} exceeds the cutoff {cutoff}")]
    TooLarge { size: u128, cutoff: u128 },

    #[error("wrong shape: {0}")]
    WrongShape(String),

    #[error("ideal is not proper")]
    ImproperIdeal,

    #[error("degree bound {degree} is too large for precision {precision}")]
    PrecisionTooSmall { degree: usize, precision: usize },

    #[error("invalid element: {0}")]
    InvalidElement(String),

    /// Two independent certificates disagree. Always an implementation bug.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
