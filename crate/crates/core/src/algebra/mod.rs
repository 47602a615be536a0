//! Exact arithmetic over prime and extension finite fields.
//!
//! Everything here works with machine integers. The characteristic is
//! capped at [`MAX_PRIME`] so that a product of two residues plus a few
//! thousand accumulated products still fits in a `u64` without intermediate
//! reduction. The prime 2 is rejected everywhere: all counting formulas in
//! this crate assume odd characteristic.

mod field;
mod poly;
mod primes;
mod symbols;

pub use field::{Elements, FieldElement, FieldSpec, SquareTable, MAX_EXT_DEGREE};
pub use poly::{ddf_degrees, PolyModP};
pub use primes::{is_prime, odd_primes_in, MAX_PRIME};
pub use symbols::{kronecker, legendre, mod_pow, multiplicative_order, sqrt_mod};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("prime {0} exceeds the supported cap {MAX_PRIME}")]
    PrimeTooLarge(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("polynomial is not squarefree mod {0}")]
    NotSquarefree(u64),
    #[error("field of order {p}^{degree} does not fit in 64 bits")]
    FieldTooLarge { p: u64, degree: usize },
}

/// Rejects anything that is not an odd prime below [`MAX_PRIME`].
pub fn check_odd_prime(p: u64) -> Result<(), AlgebraError> {
    if p >= MAX_PRIME {
        return Err(AlgebraError::PrimeTooLarge(p));
    }
    if p == 2 || !is_prime(p) {
        return Err(AlgebraError::NotOddPrime(p));
    }
    Ok(())
}
