use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{CountError, CountVector};

/// `L_p(T) = 1 + a_1 T + ... + a_{2g} T^{2g}`, the reverse of the Weil
/// polynomial of the reduction at a good prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LPolynomial {
    p: u64,
    genus: usize,
    coeffs: Vec<i128>,
}

/// A clause of the Weil conditions that an [`LPolynomial`] fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeilViolation {
    ConstantTerm(i128),
    /// `a_{2g-j} != p^{g-j} a_j`.
    FunctionalEquation { j: usize },
    /// `|a_j| > C(2g, j) p^{j/2}`.
    Bound { j: usize, value: i128 },
}

impl fmt::Display for WeilViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeilViolation::ConstantTerm(a) => write!(f, "a_0 = {a}, expected 1"),
            WeilViolation::FunctionalEquation { j } => {
                write!(f, "functional equation fails at a_{j}")
            }
            WeilViolation::Bound { j, value } => write!(f, "|a_{j}| = {} exceeds the Weil bound", value.abs()),
        }
    }
}

impl LPolynomial {
    /// Wraps raw coefficients; only the length `2g + 1` is checked here,
    /// use [`validate_weil`] for the arithmetic conditions.
    pub fn new(p: u64, genus: usize, coeffs: Vec<i128>) -> Result<Self, CountError> {
        if genus == 0 || coeffs.len() != 2 * genus + 1 {
            return Err(CountError::InvalidArgument(format!(
                "genus {genus} needs {} coefficients, got {}",
                2 * genus + 1,
                coeffs.len()
            )));
        }
        Ok(LPolynomial { p, genus, coeffs })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    /// Frobenius trace `a_p = -a_1`.
    pub fn trace(&self) -> i128 {
        -self.coeffs[1]
    }

    /// `L(sign * T)`.
    pub fn twisted(&self, sign: i8) -> LPolynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, &a)| if sign < 0 && j % 2 == 1 { -a } else { a })
            .collect();
        LPolynomial { coeffs, ..self.clone() }
    }

    pub fn odd_part_vanishes(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|&a| a == 0)
    }

    /// `T^{2g} L(1/T)`, ascending.
    pub fn weil_polynomial(&self) -> Vec<i128> {
        self.coeffs.iter().rev().copied().collect()
    }
}

impl fmt::Display for LPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if first {
                if a < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if a < 0 { '-' } else { '+' })?;
            }
            first = false;
            let m = a.unsigned_abs();
            match j {
                0 => write!(f, "{m}")?,
                1 if m == 1 => write!(f, "T")?,
                1 => write!(f, "{m}T")?,
                _ if m == 1 => write!(f, "T^{j}")?,
                _ => write!(f, "{m}T^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Checks `a_0 = 1`, the functional equation and the Weil bounds; returns
/// every violated clause (empty when the polynomial is consistent).
pub fn validate_weil(l: &LPolynomial) -> Vec<WeilViolation> {
    let g = l.genus;
    let p = BigInt::from(l.p);
    let a = &l.coeffs;
    let mut out = Vec::new();
    if a[0] != 1 {
        out.push(WeilViolation::ConstantTerm(a[0]));
    }
    for j in 0..g {
        if BigInt::from(a[2 * g - j]) != p.pow((g - j) as u32) * BigInt::from(a[j]) {
            out.push(WeilViolation::FunctionalEquation { j: 2 * g - j });
        }
    }
    for (j, &aj) in a.iter().enumerate() {
        // |a_j| <= C(2g, j) p^{j/2}, squared to stay in integers
        let lhs = BigInt::from(aj) * BigInt::from(aj);
        let c = binomial(2 * g, j);
        if lhs > &c * &c * p.pow(j as u32) {
            out.push(WeilViolation::Bound { j, value: aj });
        }
    }
    out
}

/// Assembles `L_p` from `N_1..N_g` with Newton's identities and the
/// functional equation. Extra counts beyond `g` are ignored.
pub fn lpoly_from_counts(counts: &CountVector, genus: usize) -> Result<LPolynomial, CountError> {
    let p = counts.p;
    if genus == 0 || counts.len() < genus {
        return Err(CountError::InvalidArgument(format!(
            "genus {genus} needs {genus} point counts, got {}",
            counts.len()
        )));
    }
    let pb = BigInt::from(p);
    let mut power_sums = Vec::with_capacity(genus);
    for (i, &n) in counts.counts.iter().take(genus).enumerate() {
        let q = pb.pow(i as u32 + 1);
        let s = &q + 1 - BigInt::from(n);
        // |N_i - (q + 1)| <= 2g sqrt(q)
        if &s * &s > BigInt::from(4 * genus * genus) * &q {
            return Err(CountError::InconsistentCounts(format!(
                "N_{} = {n} is outside the Weil range at p = {p}",
                i + 1
            )));
        }
        power_sums.push(s);
    }
    // k e_k = sum_{j=1..k} (-1)^{j-1} e_{k-j} s_j
    let mut e = vec![BigInt::one()];
    for k in 1..=genus {
        let mut acc = BigInt::zero();
        for j in 1..=k {
            let term = &e[k - j] * &power_sums[j - 1];
            if j % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let (ek, r) = acc.div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(CountError::InconsistentCounts(format!(
                "Newton step {k} is not integral at p = {p}"
            )));
        }
        e.push(ek);
    }
    let mut coeffs = vec![0i128; 2 * genus + 1];
    for j in 0..=genus {
        let aj = if j % 2 == 1 { -&e[j] } else { e[j].clone() };
        coeffs[j] = to_i128(&aj)?;
        if j < genus {
            coeffs[2 * genus - j] = to_i128(&(pb.pow((genus - j) as u32) * aj))?;
        }
    }
    let l = LPolynomial { p, genus, coeffs };
    let violations = validate_weil(&l);
    if !violations.is_empty() {
        let msg: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return Err(CountError::InconsistentCounts(format!("{l} at p = {p}: {}", msg.join("; "))));
    }
    Ok(l)
}

fn to_i128(v: &BigInt) -> Result<i128, CountError> {
    v.to_i128()
        .ok_or_else(|| CountError::InconsistentCounts(format!("coefficient {v} overflows i128")))
}

/// Point counts `N_1..N_m` predicted by `L`: the power sums of the reciprocal
/// roots come from Newton's identities run forward, `N_i = p^i + 1 - s_i`.
/// Any `m` is allowed; counts past `2g` follow from the same recursion.
pub fn log_derivative_counts(l: &LPolynomial, m: usize) -> Vec<BigInt> {
    let g2 = 2 * l.genus;
    // e_k = (-1)^k a_k, zero past 2g
    let e: Vec<BigInt> = (0..=m.max(g2))
        .map(|k| match l.coeffs.get(k) {
            Some(&a) if k % 2 == 1 => -BigInt::from(a),
            Some(&a) => BigInt::from(a),
            None => BigInt::zero(),
        })
        .collect();
    let mut s: Vec<BigInt> = Vec::with_capacity(m);
    for k in 1..=m {
        // s_k = sum_{j=1..k-1} (-1)^{j-1} e_j s_{k-j} + (-1)^{k-1} k e_k
        let mut acc = BigInt::zero();
        for j in 1..k {
            let term = &e[j] * &s[k - j - 1];
            if j % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let last = BigInt::from(k) * &e[k];
        if k % 2 == 1 {
            acc += last;
        } else {
            acc -= last;
        }
        s.push(acc);
    }
    let p = BigInt::from(l.p);
    s.iter()
        .enumerate()
        .map(|(i, si)| p.pow(i as u32 + 1) + 1 - si)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(p: u64, g: usize, c: &[i128]) -> LPolynomial {
        LPolynomial::new(p, g, c.to_vec()).unwrap()
    }

    fn cv(p: u64, c: &[u64]) -> CountVector {
        CountVector::new(p, c.to_vec())
    }

    #[test]
    fn from_counts_examples() {
        assert_eq!(lpoly_from_counts(&cv(7, &[8]), 1).unwrap(), lp(7, 1, &[1, 0, 7]));
        assert_eq!(lpoly_from_counts(&cv(5, &[9]), 1).unwrap(), lp(5, 1, &[1, 3, 5]));
        assert_eq!(lpoly_from_counts(&cv(5, &[6, 26]), 2).unwrap(), lp(5, 2, &[1, 0, 0, 0, 25]));
        assert_eq!(lpoly_from_counts(&cv(3, &[4, 6]), 2).unwrap(), lp(3, 2, &[1, 0, -2, 0, 9]));
    }

    #[test]
    fn from_counts_errors() {
        // s_1 = 1 - 20 outside |s| <= 2 sqrt(5)
        assert!(matches!(lpoly_from_counts(&cv(5, &[20]), 1), Err(CountError::InconsistentCounts(_))));
        // s_1 = 1, s_2 = 0: e_2 = (1 - 0) / 2 not integral
        assert!(matches!(
            lpoly_from_counts(&cv(5, &[5, 26]), 2),
            Err(CountError::InconsistentCounts(_))
        ));
        assert!(matches!(lpoly_from_counts(&cv(5, &[6]), 2), Err(CountError::InvalidArgument(_))));
    }

    #[test]
    fn weil_examples() {
        assert!(validate_weil(&lp(5, 1, &[1, 3, 5])).is_empty());
        assert_eq!(validate_weil(&lp(5, 1, &[1, 7, 5])), vec![WeilViolation::Bound { j: 1, value: 7 }]);
        let p = 7i128;
        assert!(validate_weil(&lp(7, 2, &[1, 1, 1, p, p * p])).is_empty());
        assert_eq!(
            validate_weil(&lp(7, 2, &[1, 1, 1, p + 1, p * p])),
            vec![WeilViolation::FunctionalEquation { j: 3 }]
        );
        assert!(validate_weil(&lp(7, 1, &[2, 0, 7])).contains(&WeilViolation::ConstantTerm(2)));
    }

    #[test]
    fn log_derivative_examples() {
        let counts = |l: &LPolynomial, m| -> Vec<i64> {
            log_derivative_counts(l, m).iter().map(|n| n.to_i64().unwrap()).collect()
        };
        assert_eq!(counts(&lp(7, 1, &[1, 0, 7]), 1), vec![8]);
        assert_eq!(counts(&lp(5, 1, &[1, 3, 5]), 2), vec![9, 27]);
        assert_eq!(counts(&lp(3, 2, &[1, 0, -2, 0, 9]), 4), vec![4, 6, 28, 110]);
    }

    #[test]
    fn log_derivative_matches_root_arithmetic() {
        // 1 + 3T + 5T^2 has reciprocal roots a, b with a + b = -3, ab = 5;
        // a^n + b^n satisfies t_n = -3 t_{n-1} - 5 t_{n-2}
        let l = lp(5, 1, &[1, 3, 5]);
        let mut t = vec![2i64, -3];
        for n in 2..=6 {
            t.push(-3 * t[n - 1] - 5 * t[n - 2]);
        }
        let got = log_derivative_counts(&l, 6);
        for i in 1..=6 {
            assert_eq!(got[i - 1], BigInt::from(5i64.pow(i as u32) + 1 - t[i]));
        }
    }

    #[test]
    fn twisting_and_display() {
        let l = lp(5, 1, &[1, -1, 5]);
        assert_eq!(l.twisted(-1), lp(5, 1, &[1, 1, 5]));
        assert_eq!(l.twisted(1), l);
        assert_eq!(l.trace(), 1);
        assert_eq!(l.to_string(), "1 - T + 5T^2");
        assert_eq!(l.weil_polynomial(), vec![5, -1, 1]);
        assert!(lp(5, 1, &[1, 0, 5]).odd_part_vanishes());
    }

    proptest! {
        #[test]
        fn counts_round_trip_genus_one(pi in 0usize..6, t in -1000i64..1000) {
            let p = [3u64, 5, 7, 11, 101, 1009][pi];
            let bound = (2.0 * (p as f64).sqrt()).floor() as i64;
            let trace = t.rem_euclid(2 * bound + 1) - bound;
            let n1 = (p as i64 + 1 - trace) as u64;
            let l = lpoly_from_counts(&cv(p, &[n1]), 1).unwrap();
            prop_assert_eq!(log_derivative_counts(&l, 1), vec![BigInt::from(n1)]);
        }

        #[test]
        fn counts_round_trip_genus_two(pi in 0usize..4, a1 in -8i128..=8, a2 in -20i128..=20) {
            // build a Weil-consistent quartic from (a_1, a_2) and check the
            // recovered counts reassemble to it
            let p = [3u64, 5, 7, 11][pi];
            let pp = p as i128;
            let l = lp(p, 2, &[1, a1, a2, pp * a1, pp * pp]);
            prop_assume!(validate_weil(&l).is_empty());
            let counts: Option<Vec<u64>> = log_derivative_counts(&l, 2).iter().map(|n| n.to_u64()).collect();
            // negative "counts" mean the box point is outside the Weil region
            prop_assume!(counts.is_some());
            let counts = counts.unwrap();
            match lpoly_from_counts(&cv(p, &counts), 2) {
                Ok(back) => prop_assert_eq!(back, l),
                // the coefficient box is wider than the real Weil region
                Err(CountError::InconsistentCounts(_)) => {}
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
    }
}
