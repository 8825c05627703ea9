use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum YdhError {
    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{to}): {from} does not divide {to}")]
    NonDivisibleOrders { from: u32, to: u32 },
    #[error("field does not split: {0}")]
    NonSplitField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("element does not belong to the group: {0}")]
    InvalidElement(String),
    #[error("singular matrix")]
    Singular,
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("modules live over different groups or fields: {0}")]
    GroupMismatch(String),
    #[error("malformed structure: {0}")]
    MalformedStructure(String),
    #[error("idempotent formulas disagree: {0}")]
    FormulaMismatch(String),
    #[error("module does not split into one-dimensional pieces: {0}")]
    DecompositionFailure(String),
    #[error("equivalence violated: {0}")]
    EquivalenceViolation(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("algebra is not semisimple (counit of the integral vanishes)")]
    NotSemisimple,
    #[error("integral space has dimension {0}, expected 1")]
    NotUnique(usize),
    #[error("not a subcoalgebra: {0}")]
    NotSubcoalgebra(String),
    #[error("not a unital subalgebra: {0}")]
    NotUnitalSubalgebra(String),
    #[error("rank is not an integer: {0}")]
    NonIntegralRank(String),
    #[error("no antipode exists")]
    NoAntipode,
    #[error("antipode is not colinear: {0}")]
    NotColinear(String),
    #[error("antipode is not bijective")]
    NotBijective,
    #[error("algebra is not commutative: {0}")]
    NotCommutative(String),
    #[error("closure failure: {0}")]
    ClosureFailure(String),
    #[error("theorem violated: {claim} (witness: {witness})")]
    TheoremViolation { claim: String, witness: String },
    #[error("search budget exhausted after {0} candidates")]
    BudgetExhausted(u64),
    #[error("parse error at line {line}, column {col}: expected {expected}")]
    Parse {
        line: usize,
        col: usize,
        expected: String,
    },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, YdhError>;

pub(crate) fn violation(claim: impl Into<String>, witness: impl Into<String>) -> YdhError {
    YdhError::TheoremViolation {
        claim: claim.into(),
        witness: witness.into(),
    }
}
