//! Exact multivariate polynomial arithmetic over the rationals and prime
//! fields, with monomial orders, derivatives and truncated power-series
//! substitution.

mod field;
mod monomial;
mod parse;
mod polynomial;
mod ring;
mod series;

pub use field::{is_prime, ElemDisplay, Field, PrimeField, Rationals};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;
pub use ring::PolyRing;
pub use series::{substitute_series, SeriesOrder, TruncatedSeries};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("variable index {index} out of range for a ring with {nvars} variables")]
    VarIndexOutOfRange { index: usize, nvars: usize },
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("invalid variable list: {0}")]
    InvalidVariables(String),
    #[error("expected {expected} images, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("series precision {got} is below the requested precision {needed}")]
    PrecisionMismatch { needed: usize, got: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("division by zero")]
    DivisionByZero,
}
