//! Hyperelliptic models `y^2 = f(x)` over Q, point counting over
//! `F_{p^i}`, and L-polynomials assembled from the counts.
//!
//! Only `N_1..N_g` are ever enumerated; the remaining coefficients come
//! from the functional equation `a_{2g-j} = p^{g-j} a_j`.

mod count;
mod lpoly;
mod model;
mod source;

pub use count::{affine_char_sum, naive_point_count, point_count, CharSumMethod, CountVector};
pub use lpoly::{log_derivative_counts, lpoly_from_counts, validate_weil, LPolynomial, WeilViolation};
pub use model::{CurveError, CurveModel, Reduction};
pub use source::{frobenius_trace, lpoly, CountSource, Counter, DEFAULT_BUDGET};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{label} has bad reduction at {p}")]
    BadReduction { label: String, p: u64 },
    #[error("work budget exceeded: {required} field evaluations needed, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("inconsistent point counts: {0}")]
    InconsistentCounts(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
