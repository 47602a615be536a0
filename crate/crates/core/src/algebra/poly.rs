use std::fmt;

use super::{check_odd_prime, AlgebraError};

/// Dense polynomial over `F_p`, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyModP {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyModP {
    /// Builds a polynomial from residues, reducing and trimming.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        trim(&mut coeffs);
        PolyModP { p, coeffs }
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        let coeffs = coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
        Self::new(p, coeffs)
    }

    pub fn zero(p: u64) -> Self {
        PolyModP { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inverse_mod(self.leading(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.p;
        Self::new(p, self.coeffs.iter().map(|&a| mul_mod(a, c % p, p)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let out = (0..n)
            .map(|i| (self.coeff(i) + other.coeff(i)) % p)
            .collect();
        Self::new(p, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let out = (0..n)
            .map(|i| (self.coeff(i) + p - other.coeff(i)) % p)
            .collect();
        Self::new(p, out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        Self::new(p, out)
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), AlgebraError> {
        let d = divisor
            .degree()
            .ok_or_else(|| AlgebraError::InvalidArgument("division by the zero polynomial".into()))?;
        let p = self.p;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Self::zero(p), self.clone()));
        }
        let inv = inverse_mod(divisor.leading(), p);
        let mut quot = vec![0u64; rem.len() - d];
        for k in (d..rem.len()).rev() {
            let c = mul_mod(rem[k], inv, p);
            if c == 0 {
                continue;
            }
            quot[k - d] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let idx = k - d + j;
                rem[idx] = (rem[idx] + p - mul_mod(c, b, p)) % p;
            }
        }
        rem.truncate(d);
        Ok((Self::new(p, quot), Self::new(p, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self, AlgebraError> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Result<Self, AlgebraError> {
        if modulus.is_zero() {
            return Err(AlgebraError::InvalidArgument("zero modulus".into()));
        }
        let mut base = self.rem(modulus)?;
        let mut acc = Self::one(self.p).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus)?;
            }
            base = base.mul(&base).rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(i as u64 % p, c, p))
            .collect();
        Self::new(p, out)
    }

    /// True when `gcd(f, f')` is constant. Constants count as squarefree.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.coeffs.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x % p, p) + c) % p)
    }

    fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }
}

impl fmt::Display for PolyModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        write!(f, " (mod {})", self.p)
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inverse_mod(a: u64, p: u64) -> u64 {
    super::mod_pow(a, p - 2, p)
}

/// Degrees of the irreducible factors of a monic squarefree `h`, as
/// `(degree, count)` pairs in increasing degree.
///
/// Classic distinct-degree factorization: at step `j` the product of all
/// degree-`j` factors is `gcd(h, x^(p^j) - x)`.
pub fn ddf_degrees(h: &PolyModP) -> Result<Vec<(usize, usize)>, AlgebraError> {
    let p = h.p();
    check_odd_prime(p)?;
    if !h.is_monic() {
        return Err(AlgebraError::InvalidArgument(format!("ddf needs a monic polynomial, got {h}")));
    }
    if !h.is_squarefree() {
        return Err(AlgebraError::NotSquarefree(p));
    }
    let x = PolyModP::x(p);
    let mut rest = h.clone();
    let mut w = x.rem(&rest)?;
    let mut out = Vec::new();
    let mut j = 0usize;
    while rest.degree().unwrap_or(0) >= 2 * (j + 1) {
        j += 1;
        w = w.pow_mod(p, &rest)?;
        let g = rest.gcd(&w.sub(&x));
        let gd = g.degree().unwrap_or(0);
        if gd > 0 {
            out.push((j, gd / j));
            rest = rest.div_rem(&g)?.0;
            w = w.rem(&rest)?;
        }
    }
    if let Some(d) = rest.degree() {
        if d > 0 {
            out.push((d, 1));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(p: u64, c: &[i64]) -> PolyModP {
        PolyModP::from_i64(p, c)
    }

    #[test]
    fn canonical_form() {
        let f = PolyModP::new(5, vec![6, 0, 5, 0]);
        assert_eq!(f.coeffs(), &[1]);
        assert_eq!(PolyModP::new(5, vec![0, 0]).degree(), None);
    }

    #[test]
    fn pow_mod_examples() {
        let m = poly(3, &[1, 0, 1]);
        assert_eq!(PolyModP::x(3).pow_mod(1, &m).unwrap(), PolyModP::x(3));
        assert_eq!(PolyModP::x(3).pow_mod(4, &m).unwrap(), PolyModP::one(3));
        assert_eq!(PolyModP::x(3).pow_mod(2, &m).unwrap(), poly(3, &[-1]));
        assert!(PolyModP::x(3).pow_mod(2, &PolyModP::zero(3)).is_err());
    }

    #[test]
    fn gcd_example() {
        let a = poly(5, &[-1, 0, 1]);
        let b = poly(5, &[-1, 1]);
        assert_eq!(a.gcd(&b), poly(5, &[-1, 1]));
        assert_eq!(poly(5, &[2, 0, 2]).gcd(&PolyModP::zero(5)), poly(5, &[1, 0, 1]));
    }

    #[test]
    fn ddf_examples() {
        assert_eq!(ddf_degrees(&poly(5, &[1, 0, 1])).unwrap(), vec![(1, 2)]);
        assert_eq!(ddf_degrees(&poly(3, &[1, 0, 1])).unwrap(), vec![(2, 1)]);
        assert_eq!(ddf_degrees(&poly(3, &[1, 0, 0, 0, 1])).unwrap(), vec![(2, 2)]);
        // x^4+1 = (x^2+x+2)(x^2+2x+2) mod 3
        let prod = poly(3, &[2, 1, 1]).mul(&poly(3, &[2, 2, 1]));
        assert_eq!(prod, poly(3, &[1, 0, 0, 0, 1]));
    }

    #[test]
    fn ddf_rejects_non_squarefree() {
        let f = poly(5, &[1, 2, 1]);
        assert_eq!(ddf_degrees(&f), Err(AlgebraError::NotSquarefree(5)));
        assert!(ddf_degrees(&poly(5, &[1, 2])).is_err());
    }

    /// Brute-force factor degrees: repeatedly strip the smallest-degree
    /// monic divisor (necessarily irreducible) found by trial division.
    fn brute_degrees(h: &PolyModP) -> Vec<(usize, usize)> {
        let p = h.p();
        let monic = |deg: usize, mut n: u64| {
            let mut c = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                c.push(n % p);
                n /= p;
            }
            c.push(1);
            PolyModP::new(p, c)
        };
        let mut rest = h.clone();
        let mut found = Vec::new();
        'outer: while rest.degree().unwrap() > 0 {
            let d_rest = rest.degree().unwrap();
            for d in 1..=d_rest / 2 {
                for n in 0..p.pow(d as u32) {
                    let g = monic(d, n);
                    let (q, r) = rest.div_rem(&g).unwrap();
                    if r.is_zero() {
                        found.push(d);
                        rest = q;
                        continue 'outer;
                    }
                }
            }
            found.push(d_rest);
            break;
        }
        let mut out: Vec<(usize, usize)> = Vec::new();
        found.sort_unstable();
        for d in found {
            match out.last_mut() {
                Some((last, n)) if *last == d => *n += 1,
                _ => out.push((d, 1)),
            }
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn ddf_matches_brute_force(
            pi in 0usize..5,
            tail in proptest::collection::vec(0u64..13, 1..=8),
        ) {
            let p = [3u64, 5, 7, 11, 13][pi];
            let mut c = tail.clone();
            c.push(1);
            let h = PolyModP::new(p, c);
            prop_assume!(h.is_squarefree());
            let got = ddf_degrees(&h).unwrap();
            let total: usize = got.iter().map(|(d, n)| d * n).sum();
            prop_assert_eq!(total, h.degree().unwrap());
            prop_assert_eq!(got, brute_degrees(&h));
        }

        #[test]
        fn div_rem_reconstructs(
            a in proptest::collection::vec(0u64..7, 0..8),
            b in proptest::collection::vec(0u64..7, 1..5),
        ) {
            let a = PolyModP::new(7, a);
            let b = PolyModP::new(7, b);
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
        }
    }
}
