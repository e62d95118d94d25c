use thiserror::Error;

/// Domain errors raised by the arithmetic and reduction layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Congruence modulo 0 is plain equality and is not supported.
    #[error("modulus must be nonzero (m ≠ 0)")]
    ZeroModulus,
    /// `factorize` and `totient` are only defined for n ≥ 1.
    #[error("{0} requires a positive argument, got 0")]
    ZeroArgument(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
