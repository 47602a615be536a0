//! Brute-force point counting that shares no code with the library: its own
//! polynomial arithmetic, its own irreducible moduli (searched from the top
//! down, Rabin's test) and a hash map of square roots.

#![allow(dead_code)]

use std::collections::HashMap;

type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

fn sub(a: &Poly, b: &Poly, p: u64) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect())
}

fn rem(a: &Poly, m: &Poly, p: u64) -> Poly {
    let mut a = trim(a.clone());
    let lead_inv = inv(*m.last().unwrap(), p);
    while a.len() >= m.len() {
        let shift = a.len() - m.len();
        let c = mulmod(*a.last().unwrap(), lead_inv, p);
        for (i, &mi) in m.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - mulmod(c, mi, p)) % p;
        }
        a = trim(a);
    }
    a
}

fn mul(a: &Poly, b: &Poly, m: &Poly, p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    rem(&out, m, p)
}

fn powmod(base: &Poly, mut e: u128, m: &Poly, p: u64) -> Poly {
    let mut r = vec![1];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = mul(&r, &b, m, p);
        }
        b = mul(&b, &b, m, p);
        e >>= 1;
    }
    r
}

fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_irreducible(m: &Poly, p: u64) -> bool {
    let n = m.len() - 1;
    let x = vec![0, 1];
    let q = |k: usize| (p as u128).pow(k as u32);
    if sub(&powmod(&x, q(n), m, p), &x, p) != Vec::<u64>::new() {
        return false;
    }
    prime_factors(n).into_iter().all(|r| gcd(m, &sub(&powmod(&x, q(n / r), m, p), &x, p), p).len() == 1)
}

/// Monic irreducible of degree `n`, scanning the lower coefficients from
/// `p^n - 1` downwards.
pub fn modulus(p: u64, n: usize) -> Poly {
    if n == 1 {
        return vec![0, 1];
    }
    let total = p.pow(n as u32);
    for code in (0..total).rev() {
        let mut m: Poly = (0..n).map(|i| code / p.pow(i as u32) % p).collect();
        m.push(1);
        if m[0] != 0 && is_irreducible(&m, p) {
            return m;
        }
    }
    panic!("no irreducible polynomial of degree {n} mod {p}");
}

fn elements(p: u64, n: usize) -> impl Iterator<Item = Poly> {
    (0..p.pow(n as u32)).map(move |code| trim((0..n).map(|i| code / p.pow(i as u32) % p).collect()))
}

/// `#C(F_{p^n})` for `y^2 = f(x)` with `f` of odd degree (one point at
/// infinity).
pub fn count_points(f: &[i64], p: u64, n: usize) -> u64 {
    let m = modulus(p, n);
    let mut roots: HashMap<Poly, u64> = HashMap::new();
    for y in elements(p, n) {
        *roots.entry(mul(&y, &y, &m, p)).or_insert(0) += 1;
    }
    let fc: Vec<Poly> = f.iter().map(|&c| trim(vec![c.rem_euclid(p as i64) as u64])).collect();
    let mut total = 1;
    for x in elements(p, n) {
        let mut v: Poly = Vec::new();
        for c in fc.iter().rev() {
            v = mul(&v, &x, &m, p);
            let n = v.len().max(c.len());
            v = trim((0..n).map(|i| (v.get(i).copied().unwrap_or(0) + c.get(i).copied().unwrap_or(0)) % p).collect());
        }
        total += roots.get(&v).copied().unwrap_or(0);
    }
    total
}

/// L-polynomial coefficients from `N_1..N_g` by Newton's identities in
/// rational arithmetic, then the functional equation.
pub fn lpoly_from_counts(p: u64, counts: &[u64]) -> Vec<i128> {
    let g = counts.len();
    let s: Vec<i128> = (1..=g).map(|i| (p as i128).pow(i as u32) + 1 - counts[i - 1] as i128).collect();
    let mut e = vec![1i128];
    for k in 1..=g {
        let mut acc = 0i128;
        for j in 1..=k {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            acc += sign * e[k - j] * s[j - 1];
        }
        assert_eq!(acc % k as i128, 0, "non-integral elementary symmetric function");
        e.push(acc / k as i128);
    }
    let mut a: Vec<i128> = e.iter().enumerate().map(|(j, &v)| if j % 2 == 1 { -v } else { v }).collect();
    for j in (0..g).rev() {
        a.push((p as i128).pow((g - j) as u32) * a[j]);
    }
    a
}
