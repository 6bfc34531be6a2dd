use thiserror::Error;

/// Errors produced by the exact q-series kernel and the verifiers built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator vanishes at q = 1 after cancellation")]
    PoleAtOne,
    #[error("series quotient needs a divisor with nonzero constant term")]
    DivisionByZeroConstantTerm,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("half-power scaling needs an odd or even series")]
    ParityRequired,
    #[error("coefficient at z^{index} violates declared {parity} parity")]
    ParityViolation { index: usize, parity: &'static str },
    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("word length {n} does not match a {kind} variant")]
    KindMismatch { n: usize, kind: &'static str },
    #[error("invalid variant: {0}")]
    InvalidVariant(String),
    #[error("unknown continued-fraction schedule: {0}")]
    UnknownSchedule(String),
    #[error("continued fraction step {step} needs inverting a series with zero constant term")]
    ZeroLeadingCoefficient { step: usize },
    #[error("series order {order} too small for depth {depth}")]
    InsufficientOrder { order: usize, depth: usize },
    #[error("value is not an integer polynomial: {0}")]
    NotAPolynomial(String),
    #[error("not divisible, remainder {remainder}")]
    NotDivisible { remainder: String },
    #[error("q-series expansion needs a denominator with unit constant term: {0}")]
    NotIntegralSeries(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
