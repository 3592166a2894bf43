use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("unknown series kind `{0}`")]
    UnknownKind(String),
    #[error("missing parameter `{0}`")]
    MissingParam(&'static str),
    #[error("parameter `{name}` out of domain: {reason}")]
    Domain { name: &'static str, reason: String },
    #[error("pole at term {0}")]
    Pole(usize),
    #[error("product factor {0} is exactly zero")]
    ZeroFactor(usize),
    #[error("zero partial denominator b_{0}")]
    ZeroDenominator(usize),
    #[error("convergent denominator vanished at depth {0}")]
    PoleAtConvergent(usize),
    #[error("degenerate quotient: {kind}_{index} = 0")]
    Degenerate { kind: &'static str, index: usize },
    #[error("inversion singular at index {0}")]
    InversionSingular(usize),
    #[error("unknown contiguous relation `{0}`")]
    UnknownRelation(String),
    #[error("unknown problem `{0}`")]
    UnknownProblem(String),
    #[error("no registered p-form for `{0}`")]
    NoPForm(String),
    #[error("matrix must be square and symmetric")]
    NotSymmetric,
    #[error("zero pivot I_{0} in LR decomposition")]
    ZeroPivot(usize),
    #[error("square root unavailable in this scalar backend")]
    SqrtUnavailable,
    #[error("insufficient coefficients: need {need}, have {have}")]
    InsufficientCoefficients { need: usize, have: usize },
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("classification mismatch: expected {expected}, found {found}")]
    ClassificationMismatch {
        expected: &'static str,
        found: String,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
