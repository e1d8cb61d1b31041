use thiserror::Error;

use crate::monomial::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponent {exponent} is not representable with denominator {denom}")]
    IncompatibleDenominator { exponent: Rat, denom: i64 },
    #[error("leading coefficient {0} is not a unit")]
    NonUnitLeadingCoefficient(String),
    #[error("cannot invert the zero series")]
    ZeroDivisor,
    #[error("infinite product does not converge: {0}")]
    NonConvergentProduct(String),
    #[error("coefficient at {exponent} requested but series is only known below {order}")]
    OrderExceeded { exponent: Rat, order: Rat },
    #[error("quadratic form is not positive on the orthant: {0}")]
    NotPositiveDefinite(String),
    #[error("Pochhammer length {length} is negative at lattice point {point:?}")]
    NegativeLength { length: i64, point: Vec<i64> },
    #[error("sequence quadratic coefficient must be positive, got {0}")]
    NonPositiveQuadratic(Rat),
    #[error("constant-term sum has no finite stopping bound: {0}")]
    UnboundedCt(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
