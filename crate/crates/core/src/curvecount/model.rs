use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{check_odd_prime, PolyModP};

use super::CountError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("f must have odd degree 3, 5, 7 or 9 (got degree {0})")]
    UnsupportedDegree(usize),
    #[error("f must be monic (leading coefficient is {0})")]
    NotMonic(i64),
    #[error("f is not squarefree over Q")]
    NotSquarefree,
    #[error("discriminant has a prime factor above the trial-division bound: {0}")]
    UnfactoredDiscriminant(BigInt),
}

/// An odd-degree model `y^2 = f(x)` over Q with monic squarefree
/// integer `f`. Its Jacobian has dimension `genus = (deg f - 1) / 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveModel {
    label: String,
    f_coeffs: Vec<i64>,
    genus: usize,
}

/// Outcome of reducing a model modulo an odd prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    Good(PolyModP),
    Bad,
}

impl CurveModel {
    /// `f_coeffs` is ascending; trailing zeros are dropped.
    pub fn new(label: impl Into<String>, mut f_coeffs: Vec<i64>) -> Result<Self, CurveError> {
        while f_coeffs.last() == Some(&0) {
            f_coeffs.pop();
        }
        let degree = f_coeffs.len().saturating_sub(1);
        if !matches!(degree, 3 | 5 | 7 | 9) {
            return Err(CurveError::UnsupportedDegree(degree));
        }
        if f_coeffs[degree] != 1 {
            return Err(CurveError::NotMonic(f_coeffs[degree]));
        }
        let curve = CurveModel { label: label.into(), f_coeffs, genus: (degree - 1) / 2 };
        if curve.discriminant().is_zero() {
            return Err(CurveError::NotSquarefree);
        }
        Ok(curve)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn f_coeffs(&self) -> &[i64] {
        &self.f_coeffs
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn degree(&self) -> usize {
        self.f_coeffs.len() - 1
    }

    pub fn with_label(&self, label: impl Into<String>) -> Self {
        CurveModel { label: label.into(), ..self.clone() }
    }

    /// Discriminant of `f`, from the Sylvester resultant `Res(f, f')`.
    pub fn discriminant(&self) -> BigInt {
        let n = self.degree();
        let f: Vec<BigInt> = self.f_coeffs.iter().map(|&c| BigInt::from(c)).collect();
        let df: Vec<BigInt> = f
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        let res = sylvester_resultant(&f, &df);
        // disc = (-1)^(n(n-1)/2) Res(f, f') / lc(f), and lc(f) = 1
        if (n * (n - 1) / 2) % 2 == 1 {
            -res
        } else {
            res
        }
    }

    /// Odd primes dividing the discriminant, ascending.
    pub fn odd_bad_primes(&self) -> Result<Vec<u64>, CurveError> {
        let mut rest = self.discriminant().abs();
        let mut out = Vec::new();
        while rest.is_even() && !rest.is_zero() {
            rest /= 2;
        }
        let mut d = 3u64;
        while d < crate::algebra::MAX_PRIME && BigInt::from(d) * BigInt::from(d) <= rest {
            let bd = BigInt::from(d);
            if (&rest % &bd).is_zero() {
                out.push(d);
                while (&rest % &bd).is_zero() {
                    rest /= &bd;
                }
            }
            d += 2;
        }
        if rest > BigInt::one() {
            match rest.to_u64() {
                Some(r) if BigInt::from(d) * BigInt::from(d) > BigInt::from(r) => out.push(r),
                _ => return Err(CurveError::UnfactoredDiscriminant(rest)),
            }
        }
        Ok(out)
    }

    /// Reduces `f` mod the odd prime `p`; good reduction means `f mod p` is
    /// squarefree (the monic leading term keeps the degree).
    pub fn reduce(&self, p: u64) -> Result<Reduction, CountError> {
        check_odd_prime(p)?;
        let fbar = PolyModP::from_i64(p, &self.f_coeffs);
        Ok(if fbar.is_squarefree() { Reduction::Good(fbar) } else { Reduction::Bad })
    }

    pub fn is_good_at(&self, p: u64) -> Result<bool, CountError> {
        Ok(matches!(self.reduce(p)?, Reduction::Good(_)))
    }

    /// `f` written in the syntax accepted by the curve parser, e.g. `x^5 - x`.
    pub fn expression(&self) -> String {
        let mut out = String::new();
        for (i, &c) in self.f_coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            let body = match (i, mag) {
                (0, m) => m.to_string(),
                (1, 1) => "x".to_string(),
                (1, m) => format!("{m}x"),
                (i, 1) => format!("x^{i}"),
                (i, m) => format!("{m}x^{i}"),
            };
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: y^2 = {}", self.label, self.expression())
    }
}

/// Resultant of two integer polynomials (ascending coefficients) as the
/// determinant of their Sylvester matrix, by fraction-free elimination.
fn sylvester_resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for r in 0..n {
        for (j, c) in a.iter().rev().enumerate() {
            mat[r][r + j] = c.clone();
        }
    }
    for r in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            mat[n + r][r + j] = c.clone();
        }
    }
    bareiss_determinant(mat)
}

fn bareiss_determinant(mut mat: Vec<Vec<BigInt>>) -> BigInt {
    let n = mat.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if mat[k][k].is_zero() {
            match (k + 1..n).find(|&r| !mat[r][k].is_zero()) {
                Some(r) => {
                    mat.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                mat[i][j] = v / &prev;
            }
            mat[i][k] = BigInt::zero();
        }
        prev = mat[k][k].clone();
    }
    sign * &mat[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(c: &[i64]) -> CurveModel {
        CurveModel::new("c", c.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(CurveModel::new("e", vec![1, 0, 0, 0, 1]), Err(CurveError::UnsupportedDegree(4)));
        assert_eq!(CurveModel::new("e", vec![0, 1, 2]), Err(CurveError::UnsupportedDegree(2)));
        assert_eq!(CurveModel::new("e", vec![0, -1, 0, 2]), Err(CurveError::NotMonic(2)));
        // x^3 - 2x^2 + x = x (x - 1)^2
        assert_eq!(CurveModel::new("e", vec![0, 1, -2, 1]), Err(CurveError::NotSquarefree));
        let c = CurveModel::new("e", vec![0, -1, 0, 1, 0, 0]).unwrap();
        assert_eq!(c.degree(), 3);
        assert_eq!(c.genus(), 1);
    }

    #[test]
    fn discriminants() {
        // x^3 + a x + b: -4a^3 - 27b^2
        assert_eq!(curve(&[0, -1, 0, 1]).discriminant(), BigInt::from(4));
        assert_eq!(curve(&[1, 1, 0, 1]).discriminant(), BigInt::from(-31));
        // x^n + a x: (-1)^(n(n-1)/2) (-1)^(n-1) (n-1)^(n-1) a^n
        assert_eq!(curve(&[0, -1, 0, 0, 0, 1]).discriminant(), BigInt::from(-256));
        assert_eq!(curve(&[0, 4, 0, 0, 0, 1]).discriminant(), BigInt::from(262144));
        let mut x9 = vec![0i64; 10];
        x9[1] = 1;
        x9[9] = 1;
        assert_eq!(curve(&x9).discriminant(), BigInt::from(8u64.pow(8)));
    }

    #[test]
    fn bad_primes() {
        assert!(curve(&[0, -1, 0, 0, 0, 1]).odd_bad_primes().unwrap().is_empty());
        // x^3 + x + 1 has discriminant -31
        assert_eq!(curve(&[1, 1, 0, 1]).odd_bad_primes().unwrap(), vec![31]);
        // x^3 - 3x + 5: -4(-27) - 27*25 = -567 = -3^4 * 7
        assert_eq!(curve(&[5, -3, 0, 1]).odd_bad_primes().unwrap(), vec![3, 7]);
    }

    #[test]
    fn reduction() {
        let c = curve(&[0, -1, 0, 0, 0, 1]);
        match c.reduce(3).unwrap() {
            Reduction::Good(f) => assert_eq!(f.coeffs(), &[0, 2, 0, 0, 0, 1]),
            Reduction::Bad => panic!("x^5 - x is good at 3"),
        }
        assert!(c.reduce(2).is_err());
        assert!(curve(&[0, -1, 0, 1]).is_good_at(5).unwrap());
        assert_eq!(curve(&[1, 1, 0, 1]).reduce(31).unwrap(), Reduction::Bad);
    }

    #[test]
    fn reduction_agrees_with_discriminant() {
        let c = curve(&[5, -3, 0, 1]);
        let disc = c.discriminant();
        for p in crate::algebra::odd_primes_in(3, 200) {
            let divides = (&disc % BigInt::from(p)).is_zero();
            assert_eq!(c.is_good_at(p).unwrap(), !divides, "p={p}");
        }
    }

    #[test]
    fn expressions() {
        assert_eq!(curve(&[0, -1, 0, 0, 0, 1]).expression(), "x^5 - x");
        assert_eq!(curve(&[0, 16, 0, 0, 0, 0, 0, 0, 0, 1]).expression(), "x^9 + 16x");
        assert_eq!(curve(&[-7, 0, 3, 1]).expression(), "x^3 + 3x^2 - 7");
    }
}
