use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-unit leading coefficient")]
    NonUnitLeading,
    #[error("q\u{2070} pole in x: 1 - ({0})")]
    Q0Pole(String),
    #[error("exact pole at k = {0}")]
    ExactPole(i64),
    #[error("inexact Laurent division")]
    InexactDivision,
    #[error("substitution underflow")]
    SubstitutionUnderflow,
    #[error("coefficient outside truncation window: q^{n} not in [{val}, {order})")]
    OutsideWindow { n: i64, val: i64, order: i64 },
    #[error("non-integral q-exponent at k = {0}")]
    NonIntegralExponent(i64),
    #[error("product is identically zero")]
    IdenticallyZero,
    #[error("degenerate parameter configuration: {0}")]
    Degenerate(String),
    #[error("parity of bivariate series undefined")]
    BivariateParity,
    #[error("unbounded factorization set")]
    UnboundedFactorization,
    #[error("unknown identity: {0}")]
    UnknownIdentity(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid sum specification: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
