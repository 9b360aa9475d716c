//! Exact computational algebraic geometry: polynomials, Gröbner bases and
//! ideal operations, singularity invariants, jet schemes and minimal log
//! discrepancies of monomial pairs.

pub mod exec;
pub mod ideal;
pub mod lp;
pub mod poly;
pub mod random;
pub mod singularity;
pub mod jets;
pub mod mld;
