//! Exact-arithmetic toolkit for the Eisenstein family `E*_k / V(E*_k)`.
//!
//! The crate computes q-expansions of Eisenstein series over exact rationals
//! (or exact cyclotomic rationals for conductor-p^2 nebentypus characters),
//! recovers the two-variable family coefficients by Vandermonde interpolation
//! over classical weights, decomposes along Katz / Hauptmodul bases, and
//! verifies the resulting valuation lower bounds at desk scale.
//!
//! See the `examples/` directory for one runnable example per capability, and
//! the `eisfam` binary for a scriptable interface producing JSON/CSV reports.

pub mod arith;
pub mod cli;
pub mod family;
pub mod forms;
pub mod qexp;
pub mod report;
pub mod ring;
pub mod vand;

use num_rational::BigRational;

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("prime {0} is not supported here (need a genus-zero prime in {{5,7,13}})")]
    UnsupportedPrime(u64),
    #[error("weight {0} is invalid: {1}")]
    BadWeight(u64, &'static str),
    #[error("constant term is not a unit; cannot invert the series")]
    NonUnitConstantTerm,
    #[error("inconsistent generator images for the Dirichlet character: {0}")]
    BadCharacter(String),
    #[error("nodes are not pairwise distinct")]
    CoincidentNodes,
    #[error("node {0} is not in the node set")]
    NodeNotInSet(String),
    #[error("insufficient q-precision at stage `{stage}`: have {have}, need {need}")]
    InsufficientQPrecision {
        stage: &'static str,
        have: usize,
        need: usize,
    },
    #[error("p-adic precision exhausted at stage `{stage}`")]
    PrecisionExhausted { stage: &'static str },
    #[error("invalid configuration: {0}")]
    BadConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
