use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::algebra::{odd_primes_in, MAX_PRIME};
use crate::curvecount::{CountError, CountSource, CurveModel, LPolynomial};

use super::{local_twist_sign, trace_sign_match, SignMatch, TwistError};

/// How much of the L-polynomial a scan computes per prime.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Depth {
    /// `a_p` only (one count over `F_p`).
    #[default]
    Traces,
    /// The whole L-polynomial (counts over `F_{p^i}`, `i <= g`).
    Full,
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Depth::Traces => "traces",
            Depth::Full => "full",
        })
    }
}

impl FromStr for Depth {
    type Err = TwistError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "traces" => Ok(Depth::Traces),
            "full" => Ok(Depth::Full),
            other => Err(TwistError::InvalidArgument(format!("unknown depth {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SkipReason {
    BadReduction { first: bool, second: bool },
    BudgetExceeded { required: u128 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScanRecord {
    Traces { p: u64, a: i64, a_prime: i64, verdict: SignMatch },
    Full { p: u64, l: LPolynomial, l_prime: LPolynomial, verdict: SignMatch, trace_verdict: SignMatch },
    Skipped { p: u64, reason: SkipReason },
}

impl ScanRecord {
    pub fn p(&self) -> u64 {
        match self {
            ScanRecord::Traces { p, .. } | ScanRecord::Full { p, .. } | ScanRecord::Skipped { p, .. } => *p,
        }
    }

    /// The verdict of a recorded prime, `None` for skips.
    pub fn verdict(&self) -> Option<SignMatch> {
        match self {
            ScanRecord::Traces { verdict, .. } | ScanRecord::Full { verdict, .. } => Some(*verdict),
            ScanRecord::Skipped { .. } => None,
        }
    }

    pub fn traces(&self) -> Option<(i64, i64)> {
        match self {
            ScanRecord::Traces { a, a_prime, .. } => Some((*a, *a_prime)),
            ScanRecord::Full { l, l_prime, .. } => Some((l.trace() as i64, l_prime.trace() as i64)),
            ScanRecord::Skipped { .. } => None,
        }
    }
}

/// Per-prime comparison of two curves over an odd-prime range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub first: CurveModel,
    pub second: CurveModel,
    pub pmin: u64,
    pub pmax: u64,
    pub depth: Depth,
    /// One entry per odd prime in `[pmin, pmax]`, ascending.
    pub records: Vec<ScanRecord>,
}

/// Counters over a report. Fractions are exact and describe only the
/// scanned range.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Aggregates {
    pub primes: u64,
    pub recorded: u64,
    pub skipped_bad: u64,
    pub skipped_budget: u64,
    pub plus: u64,
    pub minus: u64,
    pub both: u64,
    pub none: u64,
}

impl Aggregates {
    /// Fraction of recorded primes with verdict `none`; `None` if nothing
    /// was recorded.
    pub fn none_fraction(&self) -> Option<Ratio<u64>> {
        (self.recorded > 0).then(|| Ratio::new(self.none, self.recorded))
    }
}

impl ScanReport {
    pub fn aggregates(&self) -> Aggregates {
        let mut agg = Aggregates { primes: self.records.len() as u64, ..Aggregates::default() };
        for r in &self.records {
            match r {
                ScanRecord::Skipped { reason: SkipReason::BadReduction { .. }, .. } => agg.skipped_bad += 1,
                ScanRecord::Skipped { reason: SkipReason::BudgetExceeded { .. }, .. } => {
                    agg.skipped_budget += 1
                }
                _ => {
                    agg.recorded += 1;
                    match r.verdict() {
                        Some(SignMatch::Plus) => agg.plus += 1,
                        Some(SignMatch::Minus) => agg.minus += 1,
                        Some(SignMatch::Both) => agg.both += 1,
                        Some(SignMatch::Neither) => agg.none += 1,
                        None => {}
                    }
                }
            }
        }
        agg
    }

    pub fn full_records(&self) -> impl Iterator<Item = (u64, &LPolynomial, &LPolynomial, SignMatch)> {
        self.records.iter().filter_map(|r| match r {
            ScanRecord::Full { p, l, l_prime, verdict, .. } => Some((*p, l, l_prime, *verdict)),
            _ => None,
        })
    }
}

/// Compares `first` and `second` at every odd prime in `[pmin, pmax]`.
///
/// Primes are processed in parallel and merged in ascending order. Bad
/// reduction and budget overruns become skip records; any other counting
/// error aborts the scan.
pub fn scan_pair(
    source: &impl CountSource,
    first: &CurveModel,
    second: &CurveModel,
    pmin: u64,
    pmax: u64,
    depth: Depth,
) -> Result<ScanReport, TwistError> {
    if pmin < 3 || pmax < pmin || pmax >= MAX_PRIME {
        return Err(TwistError::InvalidArgument(format!(
            "prime range [{pmin}, {pmax}] must satisfy 3 <= pmin <= pmax < {MAX_PRIME}"
        )));
    }
    if depth == Depth::Full && first.genus() != second.genus() {
        return Err(TwistError::InvalidArgument(format!(
            "full-depth scan needs equal genera, got {} and {}",
            first.genus(),
            second.genus()
        )));
    }
    let records = odd_primes_in(pmin, pmax)
        .into_par_iter()
        .map(|p| scan_prime(source, first, second, p, depth))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ScanReport { first: first.clone(), second: second.clone(), pmin, pmax, depth, records })
}

fn scan_prime(
    source: &impl CountSource,
    first: &CurveModel,
    second: &CurveModel,
    p: u64,
    depth: Depth,
) -> Result<ScanRecord, TwistError> {
    let good_first = first.is_good_at(p)?;
    let good_second = second.is_good_at(p)?;
    if !(good_first && good_second) {
        return Ok(ScanRecord::Skipped {
            p,
            reason: SkipReason::BadReduction { first: !good_first, second: !good_second },
        });
    }
    let computed = match depth {
        Depth::Traces => source.frobenius_trace(first, p).and_then(|a| {
            let a_prime = source.frobenius_trace(second, p)?;
            Ok(ScanRecord::Traces { p, a, a_prime, verdict: trace_sign_match(a, a_prime) })
        }),
        Depth::Full => source.lpoly(first, p).and_then(|l| {
            let l_prime = source.lpoly(second, p)?;
            let verdict = local_twist_sign(&l, &l_prime).expect("same p and genus");
            let trace_verdict = trace_sign_match(l.trace() as i64, l_prime.trace() as i64);
            Ok(ScanRecord::Full { p, l, l_prime, verdict, trace_verdict })
        }),
    };
    match computed {
        Ok(r) => Ok(r),
        Err(CountError::BudgetExceeded { required, .. }) => {
            Ok(ScanRecord::Skipped { p, reason: SkipReason::BudgetExceeded { required } })
        }
        Err(e) => Err(e.into()),
    }
}
