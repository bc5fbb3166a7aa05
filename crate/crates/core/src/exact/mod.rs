//! Exact arithmetic: rationals, univariate polynomials, eventual comparison
//! and real-root isolation.

pub mod poly;
pub mod quadratic;
pub mod rational;
pub mod roots;

use thiserror::Error;

pub use poly::{eventual_compare, Degree, Polynomial, Var};
pub use quadratic::QuadraticNumber;
pub use rational::{format_rational, parse_rational, Rational, Sign};
pub use roots::{eval_sign, isolate_common, sturm_isolate, CommonRoot, IsolatedRoot};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("polynomial is identically zero")]
    IdenticallyZero,
    #[error("isolation interval is empty (need lo < hi)")]
    EmptyInterval,
}
