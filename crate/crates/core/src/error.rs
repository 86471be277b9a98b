use thiserror::Error;

/// Every failure the engine can report.
///
/// Validation-style failures (bad input, hypotheses not met) are kept apart
/// from precision and internal-consistency failures so the CLI can map them
/// to distinct exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("polynomial is not monic of positive degree")]
    NonMonicInput,
    #[error("polynomial has zero constant term; reciprocal is not monic-normalizable")]
    ZeroConstantTerm,
    #[error("polynomial is not self-reciprocal")]
    NotSelfReciprocal,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("matrix is singular at the working precision")]
    SingularAtPrecision,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("Hilbert symbol needs nonzero arguments")]
    ZeroArgument,
    #[error("odd dimension {0}; an even-dimensional form is required")]
    OddDimension(usize),
    #[error("g is not regular semisimple")]
    NotRegularSemisimple,
    #[error("g is not minuscule (Cartan invariants {0:?})")]
    NotMinuscule(Vec<i64>),
    #[error("g does not stabilize L(g): {0}")]
    GDoesNotStabilize(String),
    #[error("the quotient form is split")]
    SplitOmega,
    #[error("matrix is not cyclic (minimal polynomial differs from characteristic polynomial)")]
    NotCyclic,
    #[error("shape infeasible: {0}")]
    ShapeInfeasible(String),
    #[error("characteristic polynomial is reducible")]
    ReducibleCharPoly,
    #[error("eigenline pairing is degenerate: {0}")]
    PairingDegenerate(String),
    #[error("local ring length did not stabilize below truncation degree {0}")]
    NotStabilized(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by precision limits or internal inconsistencies
    /// rather than by input that violates a hypothesis.
    pub fn is_precision_or_internal(&self) -> bool {
        matches!(
            self,
            Error::PrecisionExhausted(_)
                | Error::SingularAtPrecision
                | Error::PairingDegenerate(_)
                | Error::NotStabilized(_)
                | Error::Internal(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
