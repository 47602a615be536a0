use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::{check_odd_prime, ddf_degrees, AlgebraError, PolyModP};

/// Largest extension degree supported by [`FieldElement`]'s inline storage.
pub const MAX_EXT_DEGREE: usize = 8;

/// The field `F_{p^i}`, presented as `F_p[x]/(modulus)`.
///
/// For `i = 1` there is no modulus and arithmetic is plain residue
/// arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    degree: usize,
    modulus: Option<PolyModP>,
    order: u64,
    /// `-m_j mod p` for the low coefficients of the modulus; folding `x^i`
    /// back into the basis adds `c * fold[j]` to coefficient `j`.
    fold: [u64; MAX_EXT_DEGREE],
}

/// An element of some [`FieldSpec`]: `degree` residues in the power basis of
/// the modulus root, little-endian. Entries past the degree are zero.
///
/// Elements carry no pointer to their field; every operation goes through
/// the `FieldSpec` that produced them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: [u32; MAX_EXT_DEGREE],
}

impl FieldElement {
    /// Power-basis coefficients (padded to [`MAX_EXT_DEGREE`]).
    pub fn raw(&self) -> &[u32; MAX_EXT_DEGREE] {
        &self.coeffs
    }
}

impl FieldSpec {
    /// `F_p` itself.
    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        check_odd_prime(p)?;
        Ok(FieldSpec { p, degree: 1, modulus: None, order: p, fold: [0; MAX_EXT_DEGREE] })
    }

    /// `F_{p^i}` using the lexicographically smallest monic irreducible
    /// modulus of degree `i`.
    ///
    /// Candidates `x^i + c_{i-1} x^{i-1} + ... + c_0` are scanned in
    /// increasing order of the integer `sum c_j p^j`, so the choice is a pure
    /// function of `(p, i)`.
    pub fn build_extension(p: u64, degree: usize) -> Result<Self, AlgebraError> {
        check_odd_prime(p)?;
        if degree == 0 || degree > MAX_EXT_DEGREE {
            return Err(AlgebraError::InvalidArgument(format!(
                "extension degree must be in 1..={MAX_EXT_DEGREE}, got {degree}"
            )));
        }
        let order = p
            .checked_pow(degree as u32)
            .ok_or(AlgebraError::FieldTooLarge { p, degree })?;
        if degree == 1 {
            return Self::prime(p);
        }
        // a degree >= 2 irreducible has nonzero constant term, so start at 1
        for n in 1..order {
            let mut coeffs = digits(n, p, degree);
            coeffs.push(1);
            let candidate = PolyModP::new(p, coeffs);
            if is_irreducible(&candidate)? {
                return Self::with_modulus(candidate);
            }
        }
        unreachable!("irreducible polynomials of every degree exist over F_p")
    }

    /// `F_p[x]/(modulus)` for a caller-chosen monic irreducible modulus.
    pub fn with_modulus(modulus: PolyModP) -> Result<Self, AlgebraError> {
        let p = modulus.p();
        check_odd_prime(p)?;
        let degree = modulus
            .degree()
            .filter(|&d| (1..=MAX_EXT_DEGREE).contains(&d))
            .ok_or_else(|| AlgebraError::InvalidArgument(format!("bad modulus degree: {modulus}")))?;
        if !modulus.is_monic() || !is_irreducible(&modulus)? {
            return Err(AlgebraError::InvalidArgument(format!(
                "modulus must be monic irreducible: {modulus}"
            )));
        }
        if degree == 1 {
            return Self::prime(p);
        }
        let order = p
            .checked_pow(degree as u32)
            .ok_or(AlgebraError::FieldTooLarge { p, degree })?;
        let mut fold = [0u64; MAX_EXT_DEGREE];
        for (j, &m) in modulus.coeffs()[..degree].iter().enumerate() {
            fold[j] = (p - m) % p;
        }
        Ok(FieldSpec { p, degree, modulus: Some(modulus), order, fold })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> Option<&PolyModP> {
        self.modulus.as_ref()
    }

    /// `q = p^i`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::default()
    }

    pub fn one(&self) -> FieldElement {
        self.from_base(1)
    }

    /// Embeds a residue of the prime subfield.
    pub fn from_base(&self, c: u64) -> FieldElement {
        let mut e = FieldElement::default();
        e.coeffs[0] = (c % self.p) as u32;
        e
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement, AlgebraError> {
        if coeffs.len() > self.degree {
            return Err(AlgebraError::InvalidArgument(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.degree
            )));
        }
        let mut e = FieldElement::default();
        for (slot, &c) in e.coeffs.iter_mut().zip(coeffs) {
            *slot = (c % self.p) as u32;
        }
        Ok(e)
    }

    pub fn coeffs<'a>(&self, e: &'a FieldElement) -> &'a [u32] {
        &e.coeffs[..self.degree]
    }

    /// Base-`p` encoding `sum c_j p^j`, a bijection onto `[0, q)`.
    pub fn index(&self, e: &FieldElement) -> u64 {
        self.coeffs(e).iter().rev().fold(0, |acc, &c| acc * self.p + c as u64)
    }

    pub fn from_index(&self, mut n: u64) -> FieldElement {
        let mut e = FieldElement::default();
        for slot in e.coeffs.iter_mut().take(self.degree) {
            *slot = (n % self.p) as u32;
            n /= self.p;
        }
        e
    }

    pub fn is_zero(&self, e: &FieldElement) -> bool {
        e.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p as u32;
        let mut out = FieldElement::default();
        for j in 0..self.degree {
            let s = a.coeffs[j] + b.coeffs[j];
            out.coeffs[j] = if s >= p { s - p } else { s };
        }
        out
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.p as u32;
        let mut out = FieldElement::default();
        for j in 0..self.degree {
            out.coeffs[j] = if a.coeffs[j] == 0 { 0 } else { p - a.coeffs[j] };
        }
        out
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &FieldElement, c: u64) -> FieldElement {
        let c = c % self.p;
        let mut out = FieldElement::default();
        for j in 0..self.degree {
            out.coeffs[j] = (a.coeffs[j] as u64 * c % self.p) as u32;
        }
        out
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p;
        let d = self.degree;
        let mut out = FieldElement::default();
        if d == 1 {
            out.coeffs[0] = (a.coeffs[0] as u64 * b.coeffs[0] as u64 % p) as u32;
            return out;
        }
        // products are < 2^48; at most 2d - 1 <= 15 land on one slot before
        // the final reduction, so nothing overflows
        let mut t = [0u64; 2 * MAX_EXT_DEGREE - 1];
        for i in 0..d {
            let ai = a.coeffs[i] as u64;
            if ai == 0 {
                continue;
            }
            for j in 0..d {
                t[i + j] += ai * b.coeffs[j] as u64;
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = t[k] % p;
            if c == 0 {
                continue;
            }
            for j in 0..d {
                t[k - d + j] += c * self.fold[j];
            }
        }
        for j in 0..d {
            out.coeffs[j] = (t[j] % p) as u32;
        }
        out
    }

    pub fn square(&self, a: &FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = *a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.square(&base);
            e >>= 1;
        }
        acc
    }

    /// Quadratic character of `F_q`: `0` at zero, otherwise `e^((q-1)/2)`
    /// read as `+1` or `-1`.
    pub fn quad_char(&self, e: &FieldElement) -> i8 {
        if self.is_zero(e) {
            return 0;
        }
        if self.pow(e, (self.order - 1) / 2) == self.one() {
            1
        } else {
            -1
        }
    }

    /// Iterates `count` elements in index order starting at index `start`.
    pub fn elements_from(&self, start: u64, count: u64) -> Elements<'_> {
        Elements { spec: self, next: self.from_index(start), remaining: count }
    }

    pub fn elements(&self) -> Elements<'_> {
        self.elements_from(0, self.order)
    }
}

/// Odometer walk over field elements in index order.
pub struct Elements<'a> {
    spec: &'a FieldSpec,
    next: FieldElement,
    remaining: u64,
}

impl Iterator for Elements<'_> {
    type Item = FieldElement;

    fn next(&mut self) -> Option<FieldElement> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = self.next;
        let p = self.spec.p as u32;
        for slot in self.next.coeffs.iter_mut().take(self.spec.degree) {
            *slot += 1;
            if *slot < p {
                break;
            }
            *slot = 0;
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.remaining as usize;
        (n, Some(n))
    }
}

/// Bitmap of the nonzero squares of `F_q`, keyed by [`FieldSpec::index`].
///
/// A lookup replaces the exponentiation in [`FieldSpec::quad_char`]; the
/// two give identical characters.
pub struct SquareTable {
    bits: Vec<u64>,
}

impl SquareTable {
    pub fn build(spec: &FieldSpec) -> Self {
        let q = spec.order();
        let words: Vec<AtomicU64> = (0..q.div_ceil(64)).map(|_| AtomicU64::new(0)).collect();
        // y and -y have the same square; walking indices 1..=(q-1)/2 is not
        // a half of F_q^* for i > 1, so just walk everything
        const CHUNK: u64 = 1 << 14;
        (0..q.div_ceil(CHUNK)).into_par_iter().for_each(|c| {
            let start = c * CHUNK;
            let count = CHUNK.min(q - start);
            for y in spec.elements_from(start, count) {
                if spec.is_zero(&y) {
                    continue;
                }
                let s = spec.index(&spec.square(&y));
                words[(s / 64) as usize].fetch_or(1 << (s % 64), Ordering::Relaxed);
            }
        });
        SquareTable { bits: words.into_iter().map(AtomicU64::into_inner).collect() }
    }

    pub fn quad_char_at(&self, index: u64) -> i8 {
        if index == 0 {
            0
        } else if self.bits[(index / 64) as usize] >> (index % 64) & 1 == 1 {
            1
        } else {
            -1
        }
    }
}

fn digits(mut n: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len + 1);
    for _ in 0..len {
        out.push(n % p);
        n /= p;
    }
    out
}

fn is_irreducible(h: &PolyModP) -> Result<bool, AlgebraError> {
    let d = h.degree().unwrap_or(0);
    if d == 0 {
        return Ok(false);
    }
    if !h.is_squarefree() {
        return Ok(false);
    }
    Ok(ddf_degrees(h)? == vec![(d, 1)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::odd_primes_in;

    #[test]
    fn build_extension_examples() {
        let f3 = FieldSpec::build_extension(3, 1).unwrap();
        assert!(f3.modulus().is_none());
        assert_eq!(f3.order(), 3);

        let f9 = FieldSpec::build_extension(3, 2).unwrap();
        assert_eq!(f9.modulus().unwrap().coeffs(), &[1, 0, 1]);

        let f25 = FieldSpec::build_extension(5, 2).unwrap();
        assert_eq!(f25.modulus().unwrap().coeffs(), &[2, 0, 1]);
    }

    #[test]
    fn build_extension_rejects_bad_input() {
        assert!(FieldSpec::build_extension(2, 2).is_err());
        assert!(FieldSpec::build_extension(9, 2).is_err());
        assert!(FieldSpec::build_extension(3, 0).is_err());
        assert!(FieldSpec::build_extension(3, 9).is_err());
        assert!(FieldSpec::with_modulus(PolyModP::new(5, vec![1, 0, 1])).is_err());
    }

    #[test]
    fn build_extension_is_deterministic() {
        for (p, i) in [(3, 4), (5, 3), (7, 4), (47, 4), (13, 8)] {
            let a = FieldSpec::build_extension(p, i).unwrap();
            let b = FieldSpec::build_extension(p, i).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.modulus().unwrap().degree(), Some(i));
        }
    }

    #[test]
    fn index_round_trip_and_enumeration() {
        let f = FieldSpec::build_extension(5, 3).unwrap();
        let all: Vec<_> = f.elements().collect();
        assert_eq!(all.len(), 125);
        for (n, e) in all.iter().enumerate() {
            assert_eq!(f.index(e), n as u64);
            assert_eq!(f.from_index(n as u64), *e);
        }
        let tail: Vec<_> = f.elements_from(120, 5).collect();
        assert_eq!(tail, all[120..]);
    }

    #[test]
    fn field_axioms_small() {
        let f = FieldSpec::build_extension(3, 3).unwrap();
        let all: Vec<_> = f.elements().collect();
        for a in &all {
            assert_eq!(f.add(a, &f.neg(a)), f.zero());
            if !f.is_zero(a) {
                // a^(q-1) = 1
                assert_eq!(f.pow(a, f.order() - 1), f.one());
            }
            for b in all.iter().step_by(5) {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in all.iter().step_by(7) {
                    let lhs = f.mul(a, &f.add(b, c));
                    let rhs = f.add(&f.mul(a, b), &f.mul(a, c));
                    assert_eq!(lhs, rhs);
                    assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn quad_char_examples_in_f9() {
        let f9 = FieldSpec::build_extension(3, 2).unwrap();
        assert_eq!(f9.quad_char(&f9.zero()), 0);
        assert_eq!(f9.quad_char(&f9.one()), 1);
        let generator = f9
            .elements()
            .find(|e| !f9.is_zero(e) && (1..8).all(|k| f9.pow(e, k) != f9.one()))
            .expect("F_9^* is cyclic");
        assert_eq!(f9.quad_char(&generator), -1);
    }

    #[test]
    fn quad_char_matches_exhaustive_squaring() {
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 49, 81, 121] {
            let (p, i) = (2..=q)
                .filter(|p| q % p == 0)
                .map(|p| (p, (0..).take_while(|&k| p.pow(k) < q).count()))
                .next()
                .unwrap();
            let f = FieldSpec::build_extension(p, i).unwrap();
            assert_eq!(f.order(), q);
            let squares: std::collections::HashSet<_> =
                f.elements().filter(|e| !f.is_zero(e)).map(|e| f.square(&e)).collect();
            let table = SquareTable::build(&f);
            for e in f.elements() {
                let expected = if f.is_zero(&e) {
                    0
                } else if squares.contains(&e) {
                    1
                } else {
                    -1
                };
                assert_eq!(f.quad_char(&e), expected);
                assert_eq!(table.quad_char_at(f.index(&e)), expected);
            }
        }
    }

    #[test]
    fn prime_subfield_character_is_legendre_in_odd_degree() {
        // an F_p-element is a square in F_{p^i} for even i, and keeps its
        // Legendre symbol for odd i
        for p in odd_primes_in(3, 13) {
            for i in 1..=3usize {
                let f = FieldSpec::build_extension(p, i).unwrap();
                for a in 1..p {
                    let expect = if i % 2 == 0 { 1 } else { crate::algebra::legendre(a as i64, p).unwrap() };
                    assert_eq!(f.quad_char(&f.from_base(a)), expect, "p={p} i={i} a={a}");
                }
            }
        }
    }
}
