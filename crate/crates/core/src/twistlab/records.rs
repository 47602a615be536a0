//! Tab-separated text form of a [`ScanReport`].
//!
//! ```text
//! twistscope-records  v1
//! curve  first  <label>  <f coefficients, ascending, comma-separated>
//! curve  second  <label>  <...>
//! range  <pmin>  <pmax>
//! depth  <traces|full>
//! rec  <p>  <status>  <a_p>  <a'_p>  <L>  <L'>  <verdict>
//! ...
//! agg  <name>  <value>
//! ```
//!
//! `status` is `good`, `skip:bad-first`, `skip:bad-second`, `skip:bad-both`
//! or `skip:budget=<required>`. Absent fields are `-`. The `agg` block is
//! recomputed and checked when parsing.

use std::fmt::Write as _;

use crate::curvecount::{CurveModel, LPolynomial};

use super::{Aggregates, Depth, ScanRecord, ScanReport, SignMatch, SkipReason, TwistError};

pub const RECORDS_HEADER: &str = "twistscope-records\tv1";

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

pub fn write_report(report: &ScanReport) -> Result<String, TwistError> {
    let mut out = String::new();
    out.push_str(RECORDS_HEADER);
    out.push('\n');
    for (role, c) in [("first", &report.first), ("second", &report.second)] {
        if c.label().contains(['\t', '\n', '\r']) || c.label().is_empty() {
            return Err(TwistError::InvalidArgument(format!("label {:?} cannot be written", c.label())));
        }
        writeln!(out, "curve\t{role}\t{}\t{}", c.label(), join(c.f_coeffs())).unwrap();
    }
    writeln!(out, "range\t{}\t{}", report.pmin, report.pmax).unwrap();
    writeln!(out, "depth\t{}", report.depth).unwrap();
    for r in &report.records {
        let line = match r {
            ScanRecord::Traces { p, a, a_prime, verdict } => format!("{p}\tgood\t{a}\t{a_prime}\t-\t-\t{verdict}"),
            ScanRecord::Full { p, l, l_prime, verdict, .. } => format!(
                "{p}\tgood\t{}\t{}\t{}\t{}\t{verdict}",
                l.trace(),
                l_prime.trace(),
                join(l.coeffs()),
                join(l_prime.coeffs())
            ),
            ScanRecord::Skipped { p, reason } => format!("{p}\t{}\t-\t-\t-\t-\t-", skip_status(reason)),
        };
        writeln!(out, "rec\t{line}").unwrap();
    }
    let agg = report.aggregates();
    for (name, v) in agg_fields(&agg) {
        writeln!(out, "agg\t{name}\t{v}").unwrap();
    }
    match agg.none_fraction() {
        Some(f) => writeln!(out, "agg\tnone_fraction\t{}/{}\tfinite-range", f.numer(), f.denom()).unwrap(),
        None => writeln!(out, "agg\tnone_fraction\t-\tfinite-range").unwrap(),
    }
    Ok(out)
}

fn skip_status(reason: &SkipReason) -> String {
    match reason {
        SkipReason::BadReduction { first: true, second: true } => "skip:bad-both".into(),
        SkipReason::BadReduction { first: true, .. } => "skip:bad-first".into(),
        SkipReason::BadReduction { .. } => "skip:bad-second".into(),
        SkipReason::BudgetExceeded { required } => format!("skip:budget={required}"),
    }
}

fn agg_fields(agg: &Aggregates) -> [(&'static str, u64); 8] {
    [
        ("primes", agg.primes),
        ("recorded", agg.recorded),
        ("skipped_bad", agg.skipped_bad),
        ("skipped_budget", agg.skipped_budget),
        ("plus", agg.plus),
        ("minus", agg.minus),
        ("both", agg.both),
        ("none", agg.none),
    ]
}

struct Parser<'a> {
    lines: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
}

impl<'a> Parser<'a> {
    fn next_fields(&mut self, tag: &str) -> Result<(usize, Vec<&'a str>), TwistError> {
        match self.lines.next() {
            Some((i, line)) => {
                let fields: Vec<&str> = line.split('\t').collect();
                if fields[0] != tag {
                    return Err(err(i + 1, format!("expected a {tag:?} line, found {:?}", fields[0])));
                }
                Ok((i + 1, fields[1..].to_vec()))
            }
            None => Err(err(0, format!("unexpected end of input, expected a {tag:?} line"))),
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> TwistError {
    TwistError::Format { line, message: message.into() }
}

fn arity(line: usize, fields: &[&str], n: usize) -> Result<(), TwistError> {
    if fields.len() != n {
        return Err(err(line, format!("expected {n} fields, found {}", fields.len())));
    }
    Ok(())
}

fn num<T: std::str::FromStr>(line: usize, s: &str) -> Result<T, TwistError> {
    s.parse().map_err(|_| err(line, format!("bad integer {s:?}")))
}

fn list<T: std::str::FromStr>(line: usize, s: &str) -> Result<Vec<T>, TwistError> {
    s.split(',').map(|x| num(line, x)).collect()
}

fn dash(line: usize, s: &str) -> Result<(), TwistError> {
    if s != "-" {
        return Err(err(line, format!("expected '-', found {s:?}")));
    }
    Ok(())
}

/// Parses the output of [`write_report`]. Verdicts, traces and the
/// aggregate block must agree with the L-polynomials and records.
pub fn parse_report(text: &str) -> Result<ScanReport, TwistError> {
    let mut parser = Parser { lines: text.lines().enumerate().peekable() };
    match parser.lines.next() {
        Some((_, line)) if line == RECORDS_HEADER => {}
        Some((_, line)) => return Err(err(1, format!("unsupported header {line:?}"))),
        None => return Err(err(1, "empty input")),
    }
    let mut curves = Vec::new();
    for role in ["first", "second"] {
        let (ln, f) = parser.next_fields("curve")?;
        arity(ln, &f, 3)?;
        if f[0] != role {
            return Err(err(ln, format!("expected the {role} curve")));
        }
        let coeffs: Vec<i64> = list(ln, f[2])?;
        curves.push(CurveModel::new(f[1], coeffs).map_err(|e| err(ln, e.to_string()))?);
    }
    let (ln, f) = parser.next_fields("range")?;
    arity(ln, &f, 2)?;
    let (pmin, pmax): (u64, u64) = (num(ln, f[0])?, num(ln, f[1])?);
    let (ln, f) = parser.next_fields("depth")?;
    arity(ln, &f, 1)?;
    let depth: Depth = f[0].parse().map_err(|e: TwistError| err(ln, e.to_string()))?;
    let genus = curves[0].genus();

    let mut records = Vec::new();
    while matches!(parser.lines.peek(), Some((_, l)) if l.starts_with("rec\t")) {
        let (ln, f) = parser.next_fields("rec")?;
        arity(ln, &f, 7)?;
        let p: u64 = num(ln, f[0])?;
        let record = if let Some(skip) = f[1].strip_prefix("skip:") {
            for x in &f[2..] {
                dash(ln, x)?;
            }
            let reason = match skip {
                "bad-first" => SkipReason::BadReduction { first: true, second: false },
                "bad-second" => SkipReason::BadReduction { first: false, second: true },
                "bad-both" => SkipReason::BadReduction { first: true, second: true },
                s => match s.strip_prefix("budget=") {
                    Some(r) => SkipReason::BudgetExceeded { required: num(ln, r)? },
                    None => return Err(err(ln, format!("unknown skip status {s:?}"))),
                },
            };
            ScanRecord::Skipped { p, reason }
        } else if f[1] == "good" {
            let a: i64 = num(ln, f[2])?;
            let a_prime: i64 = num(ln, f[3])?;
            let verdict: SignMatch = f[6].parse().map_err(|e: TwistError| err(ln, e.to_string()))?;
            match depth {
                Depth::Traces => {
                    dash(ln, f[4])?;
                    dash(ln, f[5])?;
                    if super::trace_sign_match(a, a_prime) != verdict {
                        return Err(err(ln, "verdict does not match the traces"));
                    }
                    ScanRecord::Traces { p, a, a_prime, verdict }
                }
                Depth::Full => {
                    let l = LPolynomial::new(p, genus, list(ln, f[4])?).map_err(|e| err(ln, e.to_string()))?;
                    let l_prime =
                        LPolynomial::new(p, genus, list(ln, f[5])?).map_err(|e| err(ln, e.to_string()))?;
                    if l.trace() != a as i128 || l_prime.trace() != a_prime as i128 {
                        return Err(err(ln, "traces do not match the L-polynomials"));
                    }
                    if super::local_twist_sign(&l, &l_prime)? != verdict {
                        return Err(err(ln, "verdict does not match the L-polynomials"));
                    }
                    let trace_verdict = super::trace_sign_match(a, a_prime);
                    ScanRecord::Full { p, l, l_prime, verdict, trace_verdict }
                }
            }
        } else {
            return Err(err(ln, format!("unknown status {:?}", f[1])));
        };
        if records.last().is_some_and(|r: &ScanRecord| r.p() >= p) {
            return Err(err(ln, "records are not in ascending prime order"));
        }
        records.push(record);
    }

    let report = ScanReport { first: curves.remove(0), second: curves.remove(0), pmin, pmax, depth, records };
    let agg = report.aggregates();
    for (name, v) in agg_fields(&agg) {
        let (ln, f) = parser.next_fields("agg")?;
        arity(ln, &f, 2)?;
        if f[0] != name || num::<u64>(ln, f[1])? != v {
            return Err(err(ln, format!("aggregate {name} should be {v}")));
        }
    }
    let (ln, f) = parser.next_fields("agg")?;
    arity(ln, &f, 3)?;
    let expected = match agg.none_fraction() {
        Some(r) => format!("{}/{}", r.numer(), r.denom()),
        None => "-".into(),
    };
    if f[0] != "none_fraction" || f[1] != expected || f[2] != "finite-range" {
        return Err(err(ln, format!("none_fraction should be {expected}")));
    }
    if let Some((i, l)) = parser.lines.next() {
        return Err(err(i + 1, format!("trailing content {l:?}")));
    }
    Ok(report)
}
