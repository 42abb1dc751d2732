//! Functions of x written as rational functions of `E = e^{κx}`.

mod exp_rational;
mod laurent;
mod poly;

pub use exp_rational::ExpRational;
pub use laurent::LaurentPoly;

use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("operands have different exponential rates ({left} vs {right})")]
    RateMismatch { left: String, right: String },
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("evaluation failed: {0}")]
    Evaluation(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
