use thiserror::Error;

/// Errors raised by the algebra kernel.
#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("field spec mismatch: {0}")]
    SpecMismatch(String),
    #[error("division by zero in the field")]
    DivisionByZero,
    #[error("not a prime: {0}")]
    NotPrime(u64),
    #[error("characteristic {0} exceeds the 2^31 bound")]
    CharacteristicTooLarge(u64),
    #[error("modulus is not irreducible over GF({p})")]
    ReducibleModulus { p: u64 },
    #[error("modulus degree {got} does not match extension degree {want}")]
    ModulusDegree { got: usize, want: usize },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("point length {got} does not match variable count {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("exponent overflow while multiplying monomials")]
    DegreeOverflow,
    #[error("zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("ghost level bound {n} too small for exponent {exp}")]
    LevelOverflow { n: usize, exp: u64 },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("lambda multipliers required when the ideal has more than one generator")]
    LambdaRequired,
    #[error("point does not lie on the variety")]
    NotOnVariety,
    #[error("no suitable level h found below h_max = {0}")]
    NoSuggestion(usize),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("pair budget of {0} exceeded during Groebner computation")]
    BudgetExceeded(u64),
    #[error("level {0} not present in the conormal ideal")]
    LevelNotPresent(usize),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
