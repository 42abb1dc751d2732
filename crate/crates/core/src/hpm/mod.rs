//! Homotopy perturbation expansion for the generalized Burgers-Huxley equation.

mod expansion;
mod problem;
mod series;

pub use expansion::{initial_guess, run_hpm, HpmExpansion};
pub use problem::{BhProblem, Branch, Case};
pub use series::TimePolynomial;

use crate::algebra::AlgebraError;
use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HpmError {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl From<ScalarError> for HpmError {
    fn from(e: ScalarError) -> Self {
        HpmError::Algebra(AlgebraError::Scalar(e))
    }
}
