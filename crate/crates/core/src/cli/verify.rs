//! The `verify-paper` suite: every numbered claim about the two example
//! pairs, checked end to end through the library.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;

use crate::algebra::{legendre, odd_primes_in, sqrt_mod, AlgebraError};
use crate::curvecount::{
    log_derivative_counts, naive_point_count, validate_weil, CountError, CountSource, CountVector, Counter,
    CurveModel, LPolynomial,
};
use crate::splitfield::{
    chebotarev_fraction, lemma62_check, split_table, verify_trace_vanishing, CaseCounts, FieldConfig,
    Lemma62Outcome, SplitEntry, SplitError, TraceCheck,
};
use crate::twistlab::{
    character_search, enumerate_characters, even_coeff_invariant, scan_pair, Depth, ScanReport, SearchOutcome,
    SignMatch, TwistError,
};

use super::parse_curve;

pub const GENUS2_PAIR: (&str, &str) = ("x^5 - x", "x^5 + 4x");
pub const GENUS4_PAIR: (&str, &str) = ("x^9 + x", "x^9 + 16x");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    BudgetExceeded,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::BudgetExceeded => "BUDGET",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub status: Status,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] criterion {:>2} {}: {} ({:.2?}", self.status, self.id, self.title, self.detail, self.elapsed)?;
        if let Some(limit) = self.limit {
            write!(f, ", limit {limit:?}")?;
        }
        write!(f, ")")
    }
}

/// Exit status for a finished suite: 1 if anything failed, 3 if the only
/// problems were budget overruns, else 0.
pub fn suite_exit_code(reports: &[CriterionReport]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else if reports.iter().any(|r| r.status == Status::BudgetExceeded) {
        3
    } else {
        0
    }
}

enum Problem {
    Math(String),
    Budget(String),
}

impl From<CountError> for Problem {
    fn from(e: CountError) -> Self {
        match e {
            CountError::BudgetExceeded { .. } => Problem::Budget(e.to_string()),
            other => Problem::Math(other.to_string()),
        }
    }
}

impl From<AlgebraError> for Problem {
    fn from(e: AlgebraError) -> Self {
        Problem::Math(e.to_string())
    }
}

impl From<TwistError> for Problem {
    fn from(e: TwistError) -> Self {
        match e {
            TwistError::Count(c) => c.into(),
            other => Problem::Math(other.to_string()),
        }
    }
}

impl From<SplitError> for Problem {
    fn from(e: SplitError) -> Self {
        match e {
            SplitError::Count(c) => c.into(),
            other => Problem::Math(other.to_string()),
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), Problem> {
    if cond {
        Ok(())
    } else {
        Err(Problem::Math(msg()))
    }
}

/// Everything the suite computed that the invariant criterion re-checks.
#[derive(Default)]
struct Evidence {
    lpolys: Vec<LPolynomial>,
    matched: Vec<(LPolynomial, LPolynomial, SignMatch)>,
}

impl Evidence {
    fn absorb(&mut self, report: &ScanReport) {
        for (_, l, l_prime, verdict) in report.full_records() {
            self.lpolys.push(l.clone());
            self.lpolys.push(l_prime.clone());
            if verdict != SignMatch::Neither {
                self.matched.push((l.clone(), l_prime.clone(), verdict));
            }
        }
    }
}

/// Remembers counts in memory so criteria sharing primes count once.
struct Memo<'a, S> {
    inner: &'a S,
    seen: Mutex<HashMap<(Vec<i64>, u64), CountVector>>,
}

impl<S: CountSource> CountSource for Memo<'_, S> {
    fn counts(&self, curve: &CurveModel, p: u64, m: usize) -> Result<CountVector, CountError> {
        let key = (curve.f_coeffs().to_vec(), p);
        if let Some(cv) = self.seen.lock().unwrap().get(&key) {
            if cv.len() >= m {
                return Ok(cv.prefix(m));
            }
        }
        let cv = self.inner.counts(curve, p, m)?;
        let mut seen = self.seen.lock().unwrap();
        if seen.get(&key).is_none_or(|old| old.len() < cv.len()) {
            seen.insert(key, cv.clone());
        }
        Ok(cv)
    }
}

fn pair(names: (&str, &str)) -> (CurveModel, CurveModel) {
    (parse_curve(names.0).expect("built-in curve"), parse_curve(names.1).expect("built-in curve"))
}

fn no_budget_skips(report: &ScanReport) -> Result<(), Problem> {
    let skipped = report.aggregates().skipped_budget;
    if skipped > 0 {
        return Err(Problem::Budget(format!("{skipped} primes skipped for budget")));
    }
    Ok(())
}

fn good_primes(a: &CurveModel, b: &CurveModel, lo: u64, hi: u64) -> Result<Vec<u64>, Problem> {
    let mut out = Vec::new();
    for p in odd_primes_in(lo, hi) {
        if a.is_good_at(p)? && b.is_good_at(p)? {
            out.push(p);
        }
    }
    Ok(out)
}

fn refuted_at(
    source: &impl CountSource,
    a: &CurveModel,
    b: &CurveModel,
    witness: u64,
) -> Result<String, Problem> {
    let candidates = enumerate_characters(&[], true, true)?;
    let primes = good_primes(a, b, 3, 100)?;
    match character_search(source, a, b, &candidates, &primes)? {
        SearchOutcome::Refuted { witnesses } => {
            ensure(witnesses.len() == 4 && witnesses.iter().all(|&(_, p)| p == witness), || {
                format!("witnesses {witnesses:?}, expected {witness} for all four")
            })?;
            Ok(format!("characters 1,-1,2,-2 refuted at {witness}"))
        }
        SearchOutcome::Certified { survivors, .. } => {
            Err(Problem::Math(format!("characters {survivors:?} survived the search")))
        }
    }
}

fn c1(source: &impl CountSource, _: &FieldConfig, _: &mut Evidence) -> Result<String, Problem> {
    let (a, b) = pair(GENUS2_PAIR);
    let report = scan_pair(source, &a, &b, 3, 1000, Depth::Traces)?;
    no_budget_skips(&report)?;
    let agg = report.aggregates();
    ensure(agg.none == 0, || format!("{} primes with unmatched traces", agg.none))?;
    Ok(format!(
        "{} good primes: plus {}, minus {}, both {}, none 0",
        agg.recorded, agg.plus, agg.minus, agg.both
    ))
}

fn c2(source: &impl CountSource, _: &FieldConfig, ev: &mut Evidence) -> Result<String, Problem> {
    let (a, b) = pair(GENUS2_PAIR);
    let report = scan_pair(source, &a, &b, 3, 3, Depth::Full)?;
    no_budget_skips(&report)?;
    ev.absorb(&report);
    let (_, l, l_prime, verdict) = report.full_records().next().ok_or(Problem::Math("no record at 3".into()))?;
    ensure(verdict == SignMatch::Neither, || format!("verdict at 3 is {verdict}"))?;
    let refuted = refuted_at(source, &a, &b, 3)?;
    Ok(format!("L_3 = {l}, L'_3 = {l_prime}, verdict none; {refuted}"))
}

fn c3(source: &impl CountSource, _: &FieldConfig, ev: &mut Evidence) -> Result<String, Problem> {
    let (a, b) = pair(GENUS4_PAIR);
    let t = (source.frobenius_trace(&a, 17)?, source.frobenius_trace(&b, 17)?);
    ensure(t == (-8, 8), || format!("a_17 = {} and {}", t.0, t.1))?;
    let refuted = refuted_at(source, &a, &b, 17)?;
    for p in odd_primes_in(3, 17) {
        ev.lpolys.push(source.lpoly(&a, p)?);
        ev.lpolys.push(source.lpoly(&b, p)?);
    }
    Ok(format!("a_17 = -8 on {}, +8 on {}; {refuted}", a.label(), b.label()))
}

fn c4(source: &impl CountSource, _: &FieldConfig, ev: &mut Evidence) -> Result<String, Problem> {
    let (a, b) = pair(GENUS4_PAIR);
    let report = scan_pair(source, &a, &b, 3, 47, Depth::Full)?;
    no_budget_skips(&report)?;
    ev.absorb(&report);
    let agg = report.aggregates();
    ensure(agg.none == 0, || format!("{} primes with verdict none", agg.none))?;
    let mut signs = Vec::new();
    for (p, _, _, verdict) in report.full_records() {
        if p % 8 == 1 || p % 8 == 7 {
            let root = sqrt_mod(2, p)?.expect("2 is a square mod p = 1, 7 mod 8");
            let chi = legendre(root as i64, p)?;
            ensure(verdict.allows(chi), || format!("p = {p}: verdict {verdict}, (sqrt 2 / p) = {chi}"))?;
            signs.push(format!("{p}:{verdict}"));
        }
    }
    Ok(format!(
        "{} primes, plus {}, minus {}, both {}; p = 1,7 mod 8 match (sqrt 2 / p): {}",
        agg.recorded,
        agg.plus,
        agg.minus,
        agg.both,
        signs.join(" ")
    ))
}

fn c5(source: &impl CountSource, _: &FieldConfig, ev: &mut Evidence) -> Result<String, Problem> {
    let mut shown = Vec::new();
    for p in odd_primes_in(3, 47).into_iter().filter(|p| p % 8 == 3 || p % 8 == 5) {
        let mut ls = Vec::new();
        for c in [1, 16] {
            match lemma62_check(source, c, p)? {
                Lemma62Outcome::Holds { l, .. } => ls.push(l),
                Lemma62Outcome::Violation { l, .. } => {
                    return Err(Problem::Math(format!("c = {c}, p = {p}: L = {l} has the wrong shape")))
                }
            }
        }
        ensure(ls[0] == ls[1], || format!("p = {p}: L = {} but L' = {}", ls[0], ls[1]))?;
        shown.push(format!("{p}:{}", ls[0].coeffs()[4]));
        ev.lpolys.extend(ls);
    }
    Ok(format!("L = 1 + sT^4 + p^4T^8 for both curves, s by prime: {}", shown.join(" ")))
}

fn c6(source: &impl CountSource, _: &FieldConfig, _: &mut Evidence) -> Result<String, Problem> {
    let (a, b) = pair(GENUS4_PAIR);
    let primes: Vec<u64> = odd_primes_in(48, 150).into_iter().filter(|p| p % 8 == 3 || p % 8 == 5).collect();
    for &p in &primes {
        for c in [&a, &b] {
            let cv = source.counts(c, p, 3)?;
            let expected: Vec<u64> = (1..=3).map(|i| p.pow(i) + 1).collect();
            ensure(cv.counts == expected, || format!("{} at {p}: counts {:?}", c.label(), cv.counts))?;
        }
    }
    Ok(format!("N_i = p^i + 1 (i <= 3) on both curves at {primes:?}"))
}

fn c7(source: &impl CountSource, fields: &FieldConfig, _: &mut Evidence) -> Result<String, Problem> {
    let (a, b) = pair(GENUS2_PAIR);
    let table = split_table(fields, 3, 1000)?;
    let counts = CaseCounts::tally(&table);
    ensure(counts.violation == 0, || format!("{} violations", counts.violation))?;
    for entry in &table {
        if let SplitEntry::Profile(pr) = entry {
            if pr.r > 1 {
                if let TraceCheck::Counterexample { p, a, a_prime } = verify_trace_vanishing(source, &a, &b, pr)? {
                    return Err(Problem::Math(format!("case {} at {p} with traces {a}, {a_prime}", pr.case)));
                }
            }
        }
    }
    Ok(format!(
        "cases i {}, ii {}, iii {}, violation 0, ramified {}; traces vanish in every case ii/iii",
        counts.i, counts.ii, counts.iii, counts.ramified
    ))
}

fn c8(_: &impl CountSource, fields: &FieldConfig, _: &mut Evidence) -> Result<String, Problem> {
    let fraction = chebotarev_fraction(fields.get("K")?, 100_000)?;
    let value = fraction.to_f64().unwrap_or(f64::NAN);
    ensure((value - 0.25).abs() <= 0.01, || format!("split fraction {fraction} = {value:.5}"))?;
    Ok(format!("split fraction {fraction} = {value:.5}"))
}

fn c9(source: &impl CountSource, _: &FieldConfig, ev: &mut Evidence, budget: u64) -> Result<String, Problem> {
    let curves = [GENUS2_PAIR.0, GENUS2_PAIR.1, "x^3 - x"].map(|s| parse_curve(s).expect("built-in curve"));
    let mut checked = 0;
    for c in &curves {
        let m = 2 * c.genus();
        for p in odd_primes_in(3, 13) {
            if !c.is_good_at(p)? {
                continue;
            }
            let required = Counter::required_work(p, 0, m);
            if required > budget as u128 {
                return Err(Problem::Budget(format!("listing F_{p}^{m} for {} needs {required}", c.label())));
            }
            let l = source.lpoly(c, p)?;
            let predicted = log_derivative_counts(&l, m);
            for (i, n) in predicted.iter().enumerate() {
                let listed = naive_point_count(c, p, i + 1)?;
                ensure(n.to_u64() == Some(listed), || {
                    format!("{} at {p}: N_{} predicted {n}, listed {listed}", c.label(), i + 1)
                })?;
            }
            ev.lpolys.push(l);
            checked += 1;
        }
    }
    Ok(format!("{checked} (curve, prime) pairs agree up to N_2g"))
}

fn c10(ev: &Evidence) -> Result<String, Problem> {
    ensure(!ev.lpolys.is_empty(), || "no L-polynomials were produced".into())?;
    for l in &ev.lpolys {
        let v = validate_weil(l);
        ensure(v.is_empty(), || format!("{l} at {}: {v:?}", l.p()))?;
    }
    for (l, l_prime, verdict) in &ev.matched {
        let ok = even_coeff_invariant(l, l_prime, *verdict)?;
        ensure(ok, || format!("even coefficients differ at {}: {l} vs {l_prime}", l.p()))?;
    }
    Ok(format!(
        "{} L-polynomials pass the Weil checks, {} matched records keep their even coefficients",
        ev.lpolys.len(),
        ev.matched.len()
    ))
}

const TITLES: [&str; 10] = [
    "genus-2 traces agree up to sign, p <= 1000",
    "genus-2 pair fails to match at 3",
    "genus-4 traces at 17",
    "genus-4 local twists, p <= 47",
    "x^9 + cx L-polynomial shape, p = 3,5 mod 8",
    "x^9 + cx counts for 47 < p <= 150",
    "case table, p <= 1000",
    "split density in K, p <= 100000",
    "L-polynomials against listed points, p <= 13",
    "Weil and even-coefficient invariants",
];

const LIMITS: [u64; 10] = [60, 1, 1, 600, 600, 600, 60, 60, 60, 60];

/// Runs every criterion in order, handing each report to `on_report` as
/// soon as it is available.
pub fn verify_paper(
    source: &impl CountSource,
    fields: &FieldConfig,
    budget: u64,
    mut on_report: impl FnMut(&CriterionReport),
) -> Vec<CriterionReport> {
    let memo = Memo { inner: source, seen: Mutex::new(HashMap::new()) };
    let mut ev = Evidence::default();
    let mut reports = Vec::new();
    for id in 1u8..=10 {
        let start = Instant::now();
        let result = match id {
            1 => c1(&memo, fields, &mut ev),
            2 => c2(&memo, fields, &mut ev),
            3 => c3(&memo, fields, &mut ev),
            4 => c4(&memo, fields, &mut ev),
            5 => c5(&memo, fields, &mut ev),
            6 => c6(&memo, fields, &mut ev),
            7 => c7(&memo, fields, &mut ev),
            8 => c8(&memo, fields, &mut ev),
            9 => c9(&memo, fields, &mut ev, budget),
            _ => c10(&ev),
        };
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(LIMITS[id as usize - 1]);
        let (mut status, mut detail) = match result {
            Ok(d) => (Status::Pass, d),
            Err(Problem::Math(d)) => (Status::Fail, d),
            Err(Problem::Budget(d)) => (Status::BudgetExceeded, d),
        };
        if status == Status::Pass && elapsed > limit {
            status = Status::Fail;
            detail = format!("{detail}; over the time limit");
        }
        let report = CriterionReport { id, title: TITLES[id as usize - 1], status, detail, elapsed, limit: Some(limit) };
        on_report(&report);
        reports.push(report);
    }
    reports
}
