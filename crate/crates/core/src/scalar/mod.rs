//! Exact scalars over Q and Q(√d), plus extended-precision evaluation.
//!
//! Rationals are `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator.

mod float;
pub(crate) mod parse;
mod quadratic;

pub use float::{bits_for_digits, relative_deviation, ExtendedFloat, DEFAULT_DIGITS};
pub use num_rational::BigRational;
pub use parse::parse_decimal;
pub use quadratic::{square_free_decomposition, QuadraticNumber};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("radicand mismatch: sqrt({left}) combined with sqrt({right})")]
    RadicandMismatch { left: u64, right: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid number literal {0:?}")]
    InvalidLiteral(String),
}
