use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inhomogeneous input: term of degree {found} in a form of degree {expected}")]
    Inhomogeneous { expected: u32, found: u32 },
    #[error("characteristic {characteristic} is not larger than degree {degree}")]
    CharacteristicTooSmall { characteristic: u64, degree: u32 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("Hensel criterion violated: v(g(x0)) = {value_valuation}, v(g'(x0)) = {derivative_valuation:?}")]
    HenselCriterion {
        value_valuation: i64,
        derivative_valuation: Option<i64>,
    },
    #[error("wrong degree: expected {expected}, found {found}")]
    WrongDegree { expected: u32, found: u32 },
    #[error("form is not diagonal")]
    NotDiagonal,
    #[error("enumeration budget exceeded: need {needed}, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("too many forms: {forms} forms in {vars} variables")]
    TooManyForms { forms: usize, vars: usize },
    #[error("not found within budget at stage `{stage}`")]
    NotFound { stage: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("linearly dependent basis")]
    LinearlyDependent,
    #[error("undecided at {bits} bits of precision: {what}")]
    Undecided { what: String, bits: u32 },
    #[error("inequality violated: {0}")]
    Violated(String),
}

impl Error {
    /// True for outcomes that say "nothing found" rather than "bad input".
    pub fn is_search_outcome(&self) -> bool {
        matches!(
            self,
            Error::NotFound { .. } | Error::BudgetExceeded { .. } | Error::Undecided { .. }
        )
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn not_found(stage: impl Into<String>) -> Self {
        Error::NotFound {
            stage: stage.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
