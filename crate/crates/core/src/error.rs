use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("unsupported radicand {0}: only squarefree divisors of 30 are representable")]
    UnsupportedRadicand(u32),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),

    #[error("generator index {0} out of range for rank {1}")]
    GeneratorOutOfRange(usize, usize),

    #[error("{0} is not a left descent of the given word")]
    NotADescent(String),

    #[error("word {0:?} is not reduced")]
    NotReduced(String),

    #[error("braid element needs m(s,s')=3, found {0}")]
    NotBraidPair(String),

    #[error("vertex budget of {budget} exceeded ({found} vertices found)")]
    BudgetExceeded { budget: usize, found: usize },

    #[error("theorem violation: maximal 2-clique {0} matches no template")]
    TheoremViolation(String),

    #[error("rank {0} is too small: extension needs |S| >= 5")]
    RankTooSmall(usize),

    #[error("ball around {0} is not the whole group")]
    NotFullGroup(String),

    #[error("not extendable: {0}")]
    NotExtendable(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("diagram permutation breaks label m({0},{1})")]
    LabelBreaking(String, String),
}

impl Error {
    /// Short stable identifier for the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division-by-zero",
            Error::UnsupportedRadicand(_) => "unsupported-radicand",
            Error::Parse(_) => "parse",
            Error::UnknownGenerator(_) => "unknown-generator",
            Error::GeneratorOutOfRange(..) => "generator-out-of-range",
            Error::NotADescent(_) => "not-a-descent",
            Error::NotReduced(_) => "not-reduced",
            Error::NotBraidPair(_) => "not-braid-pair",
            Error::BudgetExceeded { .. } => "budget-exceeded",
            Error::TheoremViolation(_) => "theorem-violation",
            Error::RankTooSmall(_) => "rank-too-small",
            Error::NotFullGroup(_) => "not-full-group",
            Error::NotExtendable(_) => "not-extendable",
            Error::InvalidMap(_) => "invalid-map",
            Error::LabelBreaking(..) => "label-breaking",
        }
    }
}
