use thiserror::Error;

/// Errors raised by the exact-arithmetic kernel.
///
/// Several variants (`NotDivisible`, `ExactDivisionFailure`, `NonInteger`,
/// `ExponentViolation`) signal that an integrality or support statement the
/// kernel relies on has failed. They are never recovered from internally.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: {left:?} vs {right:?}")]
    ArityMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },

    #[error("coefficient {coeff} of monomial {exponents:?} is not divisible by {divisor}")]
    NotDivisible {
        exponents: Vec<u32>,
        coeff: String,
        divisor: String,
    },

    #[error("integrality violated while computing u_{n}: {source}")]
    IntegralityViolation {
        n: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("exact division failed: {0}")]
    ExactDivisionFailure(String),

    #[error("no sign change of det T_{depth} on [0, {cap}]")]
    NoSignChange { depth: usize, cap: String },

    #[error("det T_{depth} touches zero without changing sign near lambda = {lambda}")]
    TangencyCandidate { depth: usize, lambda: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degenerate truncation: K_2 vanishes at depth {depth}, lambda = {lambda}")]
    DegenerateTruncation { depth: usize, lambda: String },

    #[error("fixed-point iteration did not converge within {max_iter} steps (last step {last_step})")]
    NotConverged { max_iter: usize, last_step: String },

    #[error("certificate entry n = {n} is not an integer: {value}")]
    NonInteger { n: usize, value: String },

    #[error("exponent bound violated by monomial x^{r} lambda^{s} of u_{n}")]
    ExponentViolation { n: usize, r: u32, s: u32 },

    #[error("invalid constants: {0}")]
    InvalidConstants(String),

    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
