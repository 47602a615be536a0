use std::fmt;
use std::str::FromStr;

use crate::curvecount::LPolynomial;

use super::TwistError;

/// How two L-polynomials (or two traces) at the same prime relate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignMatch {
    /// `L' = L(T)` only.
    Plus,
    /// `L' = L(-T)` only.
    Minus,
    /// Both hold: every odd coefficient vanishes on both sides.
    Both,
    /// Neither: the reductions are not quadratic twists at this prime.
    Neither,
}

impl SignMatch {
    pub fn is_match(self) -> bool {
        self != SignMatch::Neither
    }

    /// Whether a twist by a character taking `chi` at this prime is
    /// compatible with the verdict.
    pub fn allows(self, chi: i8) -> bool {
        match self {
            SignMatch::Both => true,
            SignMatch::Plus => chi == 1,
            SignMatch::Minus => chi == -1,
            SignMatch::Neither => false,
        }
    }

    fn from_flags(plus: bool, minus: bool) -> Self {
        match (plus, minus) {
            (true, true) => SignMatch::Both,
            (true, false) => SignMatch::Plus,
            (false, true) => SignMatch::Minus,
            (false, false) => SignMatch::Neither,
        }
    }
}

impl fmt::Display for SignMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignMatch::Plus => "plus",
            SignMatch::Minus => "minus",
            SignMatch::Both => "both",
            SignMatch::Neither => "none",
        })
    }
}

impl FromStr for SignMatch {
    type Err = TwistError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plus" => Ok(SignMatch::Plus),
            "minus" => Ok(SignMatch::Minus),
            "both" => Ok(SignMatch::Both),
            "none" => Ok(SignMatch::Neither),
            other => Err(TwistError::InvalidArgument(format!("unknown verdict {other:?}"))),
        }
    }
}

/// Whether the reductions are quadratic twists at this prime:
/// `L'(T) = L(T)` or `L'(T) = L(-T)`.
pub fn local_twist_sign(l: &LPolynomial, l_prime: &LPolynomial) -> Result<SignMatch, TwistError> {
    if l.p() != l_prime.p() || l.genus() != l_prime.genus() {
        return Err(TwistError::InvalidArgument(format!(
            "comparing L-polynomials at (p={}, g={}) and (p={}, g={})",
            l.p(),
            l.genus(),
            l_prime.p(),
            l_prime.genus()
        )));
    }
    Ok(SignMatch::from_flags(l_prime == l, *l_prime == l.twisted(-1)))
}

/// Whether two Frobenius traces agree up to sign.
pub fn trace_sign_match(a: i64, a_prime: i64) -> SignMatch {
    SignMatch::from_flags(a_prime == a, a_prime == -a)
}

/// At a locally twisted prime, `L' = L(±T)` leaves every even-index
/// coefficient untouched. Errors on a `Neither` verdict.
pub fn even_coeff_invariant(
    l: &LPolynomial,
    l_prime: &LPolynomial,
    verdict: SignMatch,
) -> Result<bool, TwistError> {
    if verdict == SignMatch::Neither {
        return Err(TwistError::InvalidArgument(
            "even-coefficient invariant only applies to locally twisted primes".into(),
        ));
    }
    Ok(l.coeffs().iter().zip(l_prime.coeffs()).step_by(2).all(|(a, b)| a == b))
}
