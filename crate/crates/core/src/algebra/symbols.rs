use super::{check_odd_prime, AlgebraError};

/// `base^exp mod m` with 128-bit intermediates.
pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `a` modulo `n`, or `None` when `gcd(a, n) != 1`.
pub fn multiplicative_order(a: u64, n: u64) -> Option<u64> {
    if n == 0 {
        return None;
    }
    if n == 1 {
        return Some(1);
    }
    if num_integer::gcd(a % n, n) != 1 {
        return None;
    }
    let a = a % n;
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * a as u128) % n as u128) as u64;
        k += 1;
    }
    Some(k)
}

/// Legendre symbol `(a/p)` via Euler's criterion.
pub fn legendre(a: i64, p: u64) -> Result<i8, AlgebraError> {
    check_odd_prime(p)?;
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    Ok(if mod_pow(r, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

/// Kronecker symbol `(d/n)` for odd positive `n`.
///
/// For odd `n` this is the Jacobi symbol, computed with quadratic
/// reciprocity and the two supplementary laws; `d` only matters mod `n`.
pub fn kronecker(d: i64, n: u64) -> Result<i8, AlgebraError> {
    if d == 0 {
        return Err(AlgebraError::InvalidArgument("kronecker symbol needs d != 0".into()));
    }
    if n == 0 || n.is_multiple_of(2) {
        return Err(AlgebraError::InvalidArgument(format!(
            "kronecker symbol is only evaluated at odd positive n, got {n}"
        )));
    }
    let mut a = (d as i128).rem_euclid(n as i128) as u64;
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// The smaller square root of `a` modulo the odd prime `p`
/// (Tonelli-Shanks), or `None` for a non-residue.
pub fn sqrt_mod(a: i64, p: u64) -> Result<Option<u64>, AlgebraError> {
    check_odd_prime(p)?;
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return Ok(Some(0));
    }
    if legendre(a as i64, p)? != 1 {
        return Ok(None);
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| mod_pow(z, (p - 1) / 2, p) == p - 1).expect("p is an odd prime");
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let (mut m, mut c, mut t, mut r) = (s, mod_pow(z, q, p), mod_pow(a, q, p), mod_pow(a, q.div_ceil(2), p));
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul(t2, t2);
            i += 1;
        }
        let b = mod_pow(c, 1 << (m - i - 1), p);
        m = i;
        c = mul(b, b);
        t = mul(t, c);
        r = mul(r, b);
    }
    Ok(Some(r.min(p - r)))
}
