use thiserror::Error;

/// Errors raised by the numeration library.
///
/// The variant names are part of the command-line contract: the CLI prints
/// them verbatim, so renaming one is a breaking change.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("MalformedSpec: {0}")]
    MalformedSpec(String),
    #[error("ConstraintViolation: {0}")]
    ConstraintViolation(String),
    #[error("NotQuadratic: operation requires a quadratic base")]
    NotQuadratic,
    #[error("NotClassA: operation requires a base with x^2 = mx - n")]
    NotClassA,
    #[error("InexactBase: operation needs exact field arithmetic")]
    InexactBase,
    #[error("OutOfDomain: {0} is outside [-beta/(beta+1), 1/(beta+1))")]
    OutOfDomain(String),
    #[error("UndecidableDigit: interval at {bits} bits straddles a decision boundary")]
    UndecidableDigit { bits: u32 },
    #[error("NotEventuallyPeriodicWithinBudget: no period found in {budget} steps")]
    NotEventuallyPeriodicWithinBudget { budget: usize },
    #[error("PatternNotMatched: no rewriting case applies to {0}")]
    PatternNotMatched(String),
    #[error("BudgetExceeded: expansion of {0} truncated")]
    BudgetExceeded(String),
    #[error("KZero: infimum of conjugates vanished")]
    KZero,
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("ClosedFormMismatch: closed form {closed} disagrees with orbit {orbit}")]
    ClosedFormMismatch { closed: String, orbit: String },
}

impl Error {
    /// The bare variant name, as printed by the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            Error::MalformedSpec(_) => "MalformedSpec",
            Error::ConstraintViolation(_) => "ConstraintViolation",
            Error::NotQuadratic => "NotQuadratic",
            Error::NotClassA => "NotClassA",
            Error::InexactBase => "InexactBase",
            Error::OutOfDomain(_) => "OutOfDomain",
            Error::UndecidableDigit { .. } => "UndecidableDigit",
            Error::NotEventuallyPeriodicWithinBudget { .. } => "NotEventuallyPeriodicWithinBudget",
            Error::PatternNotMatched(_) => "PatternNotMatched",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::KZero => "KZero",
            Error::DivisionByZero => "DivisionByZero",
            Error::ClosedFormMismatch { .. } => "ClosedFormMismatch",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
