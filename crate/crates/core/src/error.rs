use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Jacobi symbol needs an odd positive modulus, got {0}")]
    EvenOrNonPositiveModulus(i128),

    #[error("{0} is undefined at 0")]
    ZeroArgument(&'static str),

    #[error("sieve limit {limit} needs {bytes} bytes, above the ceiling of {ceiling} bytes")]
    SieveTooLarge { limit: u64, bytes: u64, ceiling: u64 },

    #[error("argument {x} is outside the sieve range 1..={limit}")]
    BeyondSieve { x: f64, limit: u64 },

    #[error("argument must be at least 1, got {0}")]
    BelowOne(f64),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("delta = 0")]
    DeltaZero,

    #[error("delta = {0} is not squarefree")]
    DeltaNotSquarefree(i128),

    #[error("|delta| exceeds 2^64 - 1 (delta = {0})")]
    DeltaOutOfRange(i128),

    #[error("delta ≡ 1 mod 4 (delta = {0})")]
    DeltaOneModFour(i128),

    #[error("f(n) is not positive and non-decreasing for n >= 1 (b = {b}, c = {c})")]
    NotPositiveNondecreasing { b: i64, c: i64 },

    #[error("f({n}) = {value} is not positive")]
    NonPositiveValue { n: u64, value: i128 },

    #[error("characters disagree at n = {n}: Jacobi form {jacobi}, Kronecker form {kronecker}")]
    CharacterMismatch { n: u64, jacobi: i8, kronecker: i8 },

    #[error("the refined bound needs N >= 1000, got {0}")]
    RefinedBelowRange(u64),

    #[error("the {0} bound only applies to n^2+1")]
    BoundNeedsUnitPoly(&'static str),

    #[error("N must be at least 1")]
    ZeroN,

    #[error("work limit exceeded: {0}")]
    WorkLimit(String),

    #[error("bound violated at N = {n}: exact {exact} >= bound {bound}")]
    BoundViolated { n: u64, exact: u64, bound: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
