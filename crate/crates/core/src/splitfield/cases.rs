use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::algebra::{check_odd_prime, odd_primes_in};
use crate::curvecount::{CountSource, CurveModel, LPolynomial};

use super::{residue_degree, FieldConfig, NumberFieldSpec, SplitError};

/// Lines of the case table relating residue degrees in `K`, `L`, `L'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SplitCase {
    I,
    II,
    III,
    Violation,
}

impl fmt::Display for SplitCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitCase::I => "i",
            SplitCase::II => "ii",
            SplitCase::III => "iii",
            SplitCase::Violation => "violation",
        })
    }
}

/// Residue degrees `r`, `s`, `s'` of `p` in `K`, `L`, `L'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitProfile {
    pub p: u64,
    pub r: usize,
    pub s: usize,
    pub s_prime: usize,
    pub case: SplitCase,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitEntry {
    Profile(SplitProfile),
    /// `p` divides the discriminant of one of the three polynomials.
    Ramified { p: u64 },
}

/// Table lookup:
/// - i: `r = 1`, `s, s' in {1, 2}`
/// - ii: `r = 2`, `s, s' in {2, 4}`
/// - iii: `r = 4`, `s = s' = 4`
pub fn case_classify(r: usize, s: usize, s_prime: usize) -> SplitCase {
    let within = |set: &[usize]| set.contains(&s) && set.contains(&s_prime);
    match r {
        1 if within(&[1, 2]) => SplitCase::I,
        2 if within(&[2, 4]) => SplitCase::II,
        4 if s == 4 && s_prime == 4 => SplitCase::III,
        _ => SplitCase::Violation,
    }
}

fn triple(config: &FieldConfig) -> Result<[&NumberFieldSpec; 3], SplitError> {
    Ok([config.get("K")?, config.get("L")?, config.get("L'")?])
}

pub fn split_profile(config: &FieldConfig, p: u64) -> Result<SplitEntry, SplitError> {
    check_odd_prime(p)?;
    let fields = triple(config)?;
    if fields.iter().any(|f| f.is_ramified_guard(p)) {
        return Ok(SplitEntry::Ramified { p });
    }
    let [r, s, s_prime] = [0, 1, 2].map(|i| residue_degree(fields[i], p));
    let (r, s, s_prime) = (r?, s?, s_prime?);
    Ok(SplitEntry::Profile(SplitProfile { p, r, s, s_prime, case: case_classify(r, s, s_prime) }))
}

/// Profiles for every odd prime in `[pmin, pmax]`, ascending.
pub fn split_table(config: &FieldConfig, pmin: u64, pmax: u64) -> Result<Vec<SplitEntry>, SplitError> {
    if pmax < pmin {
        return Err(SplitError::InvalidArgument(format!("empty range [{pmin}, {pmax}]")));
    }
    odd_primes_in(pmin.max(3), pmax).into_par_iter().map(|p| split_profile(config, p)).collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CaseCounts {
    pub i: u64,
    pub ii: u64,
    pub iii: u64,
    pub violation: u64,
    pub ramified: u64,
}

impl CaseCounts {
    pub fn tally(entries: &[SplitEntry]) -> Self {
        let mut c = CaseCounts::default();
        for e in entries {
            match e {
                SplitEntry::Ramified { .. } => c.ramified += 1,
                SplitEntry::Profile(pr) => match pr.case {
                    SplitCase::I => c.i += 1,
                    SplitCase::II => c.ii += 1,
                    SplitCase::III => c.iii += 1,
                    SplitCase::Violation => c.violation += 1,
                },
            }
        }
        c
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceCheck {
    Vanishes { p: u64 },
    Counterexample { p: u64, a: i64, a_prime: i64 },
}

/// In cases ii and iii both Frobenius traces must be zero.
pub fn verify_trace_vanishing(
    source: &impl CountSource,
    first: &CurveModel,
    second: &CurveModel,
    profile: &SplitProfile,
) -> Result<TraceCheck, SplitError> {
    if !matches!(profile.case, SplitCase::II | SplitCase::III) {
        return Err(SplitError::InvalidArgument(format!(
            "trace vanishing applies to cases ii and iii, {} is case {}",
            profile.p, profile.case
        )));
    }
    let p = profile.p;
    let a = source.frobenius_trace(first, p)?;
    let a_prime = source.frobenius_trace(second, p)?;
    Ok(if a == 0 && a_prime == 0 { TraceCheck::Vanishes { p } } else { TraceCheck::Counterexample { p, a, a_prime } })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lemma62Outcome {
    /// `L = 1 + s T^4 + p^4 T^8`.
    Holds { p: u64, c: i64, s: i128, l: LPolynomial },
    Violation { p: u64, c: i64, l: LPolynomial },
}

/// The curve `y^2 = x^9 + c x`.
pub fn x9_curve(c: i64) -> Result<CurveModel, SplitError> {
    let mut f = vec![0i64; 10];
    f[1] = c;
    f[9] = 1;
    let curve = CurveModel::new("", f)?;
    let label = curve.expression();
    Ok(curve.with_label(label))
}

/// Computes the L-polynomial of `y^2 = x^9 + c x` at `p = 3, 5 mod 8` and
/// checks that only `a_0`, `a_4`, `a_8` survive, with `a_8 = p^4`.
pub fn lemma62_check(source: &impl CountSource, c: i64, p: u64) -> Result<Lemma62Outcome, SplitError> {
    check_odd_prime(p)?;
    if p % 8 != 3 && p % 8 != 5 {
        return Err(SplitError::InvalidArgument(format!("{p} is not 3 or 5 mod 8")));
    }
    if c == 0 {
        return Err(SplitError::InvalidArgument("c must be nonzero".into()));
    }
    let curve = x9_curve(c)?;
    let l = source.lpoly(&curve, p)?;
    let a = l.coeffs();
    let shape = a.iter().enumerate().all(|(i, &v)| matches!(i, 0 | 4 | 8) || v == 0);
    Ok(if shape && a[8] == (p as i128).pow(4) {
        Lemma62Outcome::Holds { p, c, s: a[4], l }
    } else {
        Lemma62Outcome::Violation { p, c, l }
    })
}

/// Fraction of odd primes up to `pmax`, outside the field's guard list,
/// with residue degree 1.
pub fn chebotarev_fraction(field: &NumberFieldSpec, pmax: u64) -> Result<Ratio<u64>, SplitError> {
    let primes: Vec<u64> = odd_primes_in(3, pmax).into_iter().filter(|&p| !field.is_ramified_guard(p)).collect();
    if primes.is_empty() {
        return Err(SplitError::InvalidArgument(format!("no unramified odd primes up to {pmax}")));
    }
    let split = primes
        .par_iter()
        .map(|&p| residue_degree(field, p).map(|r| (r == 1) as u64))
        .sum::<Result<u64, SplitError>>()?;
    Ok(Ratio::new(split, primes.len() as u64))
}
