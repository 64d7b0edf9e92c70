use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is not below 2^62")]
    ModulusTooLarge(u64),
    #[error("{value} is not an element of GF({modulus})")]
    NotInField { value: u64, modulus: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("evaluation set contains {0} twice")]
    DuplicatePoint(u64),
    #[error("evaluation set is empty")]
    EmptySet,
    #[error("degree {degree} exceeds the bound {bound}")]
    DegreeOverflow { degree: usize, bound: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid uncertainty {0}")]
    InvalidUncertainty(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("rational overflow")]
    Overflow,
    #[error("{0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
