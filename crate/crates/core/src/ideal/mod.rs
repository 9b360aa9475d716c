//! Gröbner bases and ideal operations, monomial ideals with integral
//! closure, Q-ideals and monomial valuations.

mod groebner;
mod ops;
mod monomial_ideal;
mod qideal;

pub use groebner::groebner_basis;
pub use ops::{Ideal, Saturation};
pub use monomial_ideal::{exponents_of_degree, CyclicLattice, MonomialIdeal};
pub use qideal::{
    monomial_order_of_ideal, sandwich_certificate, Equivalence, MonomialValuation, OrderOfIdeal, QIdeal,
    SandwichCertificate,
};

use std::time::Instant;

use thiserror::Error;

use crate::poly::PolyError;

/// Resource limits for Gröbner computations. Running out is an error,
/// never a silently truncated answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest total degree of an S-pair lcm that may be processed.
    pub max_degree: u32,
    /// Largest number of S-pairs reduced in one basis computation.
    pub max_pairs: usize,
    pub deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_degree: 256,
            max_pairs: 2_000_000,
            deadline: None,
        }
    }
}

impl Budget {
    pub fn with_time_limit(mut self, limit: std::time::Duration) -> Self {
        self.deadline = Some(Instant::now() + limit);
        self
    }

    pub(crate) fn check_time(&self) -> Result<(), IdealError> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(IdealError::Deadline),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("degree cap {cap} exceeded: S-pair of degree {degree}")]
    DegreeCap { cap: u32, degree: u32 },
    #[error("pair budget of {0} S-pairs exhausted")]
    PairBudget(usize),
    #[error("time budget exhausted")]
    Deadline,
    #[error("ideal is not generated by monomials")]
    NotMonomial,
    #[error("{r} does not clear the exponent denominators")]
    NotADenominator { r: u64 },
    #[error("{0}")]
    Invalid(String),
}

impl IdealError {
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            IdealError::DegreeCap { .. } | IdealError::PairBudget(_) | IdealError::Deadline
        )
    }
}
