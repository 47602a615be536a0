//! Command-line front end. Every subcommand parses its inputs, calls one
//! library operation and formats the result; exit codes are 0 on success,
//! 1 when a mathematical check fails, 2 for configuration or I/O problems
//! and 3 when the work budget stopped a computation.

mod cache;
mod grammar;
pub mod verify;

pub use cache::{CachedCounter, DiskCache, Lookup, CACHE_ENV, DEFAULT_CACHE_DIR};
pub use grammar::{parse_curve, parse_poly, CurveParseError};

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::{check_odd_prime, odd_primes_in, AlgebraError};
use crate::curvecount::{validate_weil, CountError, CountSource, Counter, CurveModel, DEFAULT_BUDGET};
use crate::splitfield::{
    lemma62_check, split_table, CaseCounts, FieldConfig, Lemma62Outcome, SplitEntry, SplitError,
};
use crate::twistlab::{
    character_search, enumerate_characters, moment_stats, parse_report, scan_pair, write_report, z20_statistic,
    Depth, ScanRecord, ScanReport, SearchOutcome, SkipReason, TwistError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MATH: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "twistscope", version, about = "L-polynomials and local quadratic twists of hyperelliptic curves")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Maximum field evaluations per curve and prime.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Count cache directory.
    #[arg(long, global = true, env = CACHE_ENV, default_value = DEFAULT_CACHE_DIR)]
    pub cache_dir: PathBuf,
    /// Neither read nor write the count cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Records,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DepthArg {
    Traces,
    Full,
}

impl From<DepthArg> for Depth {
    fn from(d: DepthArg) -> Self {
        match d {
            DepthArg::Traces => Depth::Traces,
            DepthArg::Full => Depth::Full,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Range {
    #[arg(long, default_value_t = 3)]
    pub pmin: u64,
    #[arg(long, default_value_t = 100)]
    pub pmax: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// L-polynomial of one curve at one prime or over a range.
    Lpoly {
        curve: String,
        #[arg(long, conflicts_with_all = ["pmin", "pmax"])]
        p: Option<u64>,
        #[arg(long)]
        pmin: Option<u64>,
        #[arg(long)]
        pmax: Option<u64>,
    },
    /// Compare two curves prime by prime.
    Scan {
        first: String,
        second: String,
        #[command(flatten)]
        range: Range,
        #[arg(long, value_enum, default_value_t = DepthArg::Traces)]
        depth: DepthArg,
    },
    /// Test quadratic characters as a global twist between two curves.
    CharSearch {
        first: String,
        second: String,
        /// Places allowed to ramify: -1 for the sign, 2, odd primes.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-1,2")]
        support: Vec<i64>,
        #[command(flatten)]
        range: Range,
    },
    /// Residue degrees in K, L, L' and the case table.
    Split {
        /// Field table in TOML; the shipped table by default.
        #[arg(long)]
        fields: Option<PathBuf>,
        #[command(flatten)]
        range: Range,
    },
    /// Shape of the L-polynomial of y^2 = x^9 + cx at p = 3, 5 mod 8.
    Lemma62 {
        #[arg(long = "c", default_values_t = [1i64, 16], allow_negative_numbers = true)]
        c: Vec<i64>,
        #[command(flatten)]
        range: Range,
    },
    /// Moments and zero frequencies from a saved full-depth scan.
    Stats {
        report: PathBuf,
        /// Exponent vector e_1,e_2,... of a monomial in the normalised a_i;
        /// repeatable.
        #[arg(long = "moment", value_delimiter = ';')]
        moments: Vec<String>,
        /// Coefficient index for the zero-frequency statistic; the middle
        /// coefficient by default.
        #[arg(long)]
        zero_coeff: Option<usize>,
    },
    /// Check every claim about the two example pairs.
    VerifyPaper,
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Failure { code: EXIT_CONFIG, message: message.into() }
    }

    fn math(message: impl Into<String>) -> Self {
        Failure { code: EXIT_MATH, message: message.into() }
    }
}

impl From<CountError> for Failure {
    fn from(e: CountError) -> Self {
        let code = match e {
            CountError::BudgetExceeded { .. } => EXIT_BUDGET,
            CountError::InconsistentCounts(_) => EXIT_MATH,
            _ => EXIT_CONFIG,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::config(e.to_string())
    }
}

impl From<TwistError> for Failure {
    fn from(e: TwistError) -> Self {
        match e {
            TwistError::Count(c) => c.into(),
            other => Failure::config(other.to_string()),
        }
    }
}

impl From<SplitError> for Failure {
    fn from(e: SplitError) -> Self {
        match e {
            SplitError::Count(c) => c.into(),
            SplitError::NotGaloisConsistent { .. } => Failure::math(e.to_string()),
            other => Failure::config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::config(e.to_string())
    }
}

fn curve_arg(expr: &str) -> Result<CurveModel, Failure> {
    parse_curve(expr).map_err(|e| Failure::config(format!("curve {expr:?}: {e}")))
}

fn source(global: &GlobalArgs) -> Result<CachedCounter, Failure> {
    let cache = if global.no_cache {
        None
    } else {
        Some(DiskCache::open(&global.cache_dir).map_err(|e| {
            Failure::config(format!("cache directory {}: {e}", global.cache_dir.display()))
        })?)
    };
    Ok(CachedCounter::new(Counter::with_budget(global.budget), cache))
}

fn check_range(pmin: u64, pmax: u64) -> Result<Vec<u64>, Failure> {
    if pmin < 3 || pmax < pmin {
        return Err(Failure::config(format!("prime range [{pmin}, {pmax}] must satisfy 3 <= pmin <= pmax")));
    }
    if pmax >= crate::algebra::MAX_PRIME {
        return Err(Failure::config(format!("pmax must be below {}", crate::algebra::MAX_PRIME)));
    }
    Ok(odd_primes_in(pmin, pmax))
}

/// A mathematical failure outranks a budget stop.
fn combine(code: i32, new: i32) -> i32 {
    if code == EXIT_MATH || new == EXIT_MATH {
        EXIT_MATH
    } else {
        code.max(new)
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

/// Parses `args` (including the program name) and runs the command,
/// writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut text = String::new();
    let result = dispatch(&cli, &mut text);
    let _ = out.write_all(text.as_bytes());
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut String) -> Result<i32, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Lpoly { curve, p, pmin, pmax } => {
            let curve = curve_arg(curve)?;
            let primes = match (p, pmin, pmax) {
                (Some(p), _, _) => {
                    check_odd_prime(*p)?;
                    vec![*p]
                }
                (None, None, None) => return Err(Failure::config("give --p or --pmin/--pmax")),
                (None, lo, hi) => check_range(lo.unwrap_or(3), hi.unwrap_or(100))?,
            };
            cmd_lpoly(&source(g)?, &curve, &primes, p.is_some(), g.format, out)
        }
        Command::Scan { first, second, range, depth } => {
            let (a, b) = (curve_arg(first)?, curve_arg(second)?);
            check_range(range.pmin, range.pmax)?;
            let report = scan_pair(&source(g)?, &a, &b, range.pmin, range.pmax, (*depth).into())?;
            emit_scan(&report, g.format, out)?;
            Ok(if report.aggregates().skipped_budget > 0 { EXIT_BUDGET } else { EXIT_OK })
        }
        Command::CharSearch { first, second, support, range } => {
            let (a, b) = (curve_arg(first)?, curve_arg(second)?);
            let primes = check_range(range.pmin, range.pmax)?;
            cmd_char_search(&source(g)?, &a, &b, support, &primes, g.format, out)
        }
        Command::Split { fields, range } => {
            let config = match fields {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Failure::config(format!("{}: {e}", path.display())))?;
                    FieldConfig::from_toml(&text)?
                }
                None => FieldConfig::default_fields(),
            };
            check_range(range.pmin, range.pmax)?;
            cmd_split(&config, range, g.format, out)
        }
        Command::Lemma62 { c, range } => {
            let primes = check_range(range.pmin, range.pmax)?;
            cmd_lemma62(&source(g)?, c, &primes, g.format, out)
        }
        Command::Stats { report, moments, zero_coeff } => {
            let text = std::fs::read_to_string(report)
                .map_err(|e| Failure::config(format!("{}: {e}", report.display())))?;
            let report = parse_report(&text)?;
            cmd_stats(&report, moments, *zero_coeff, g.format, out)
        }
        Command::VerifyPaper => {
            let src = source(g)?;
            let reports = verify::verify_paper(&src, &FieldConfig::default_fields(), g.budget, |_| {});
            for r in &reports {
                match g.format {
                    Format::Table => writeln!(out, "{r}").unwrap(),
                    Format::Records => writeln!(
                        out,
                        "criterion\t{}\t{}\t{:.3}\t{}",
                        r.id,
                        r.status,
                        r.elapsed.as_secs_f64(),
                        r.detail.replace('\t', " ")
                    )
                    .unwrap(),
                }
            }
            Ok(verify::suite_exit_code(&reports))
        }
    }
}

fn cmd_lpoly(
    src: &CachedCounter,
    curve: &CurveModel,
    primes: &[u64],
    single: bool,
    format: Format,
    out: &mut String,
) -> Result<i32, Failure> {
    let mut code = EXIT_OK;
    match format {
        Format::Table => {
            writeln!(out, "{curve}").unwrap();
            writeln!(out, "{:>8}  {:>8}  {:<6}  L(T)", "p", "a_p", "weil").unwrap();
        }
        Format::Records => {
            writeln!(out, "twistscope-lpoly\tv1").unwrap();
            writeln!(out, "curve\t{}\t{}", curve.label(), join(curve.f_coeffs())).unwrap();
        }
    }
    for &p in primes {
        let status = match src.lpoly(curve, p) {
            Ok(l) => {
                let weil = if validate_weil(&l).is_empty() { "ok" } else { "FAIL" };
                if weil != "ok" {
                    code = combine(code, EXIT_MATH);
                }
                match format {
                    Format::Table => writeln!(out, "{p:>8}  {:>8}  {weil:<6}  {l}", l.trace()).unwrap(),
                    Format::Records => {
                        writeln!(out, "lpoly\t{p}\tgood\t{}\t{}\t{weil}", l.trace(), join(l.coeffs())).unwrap()
                    }
                }
                continue;
            }
            Err(e) if single => return Err(e.into()),
            Err(CountError::BadReduction { .. }) => "skip:bad".to_string(),
            Err(CountError::BudgetExceeded { required, .. }) => {
                code = combine(code, EXIT_BUDGET);
                format!("skip:budget={required}")
            }
            Err(e) => return Err(e.into()),
        };
        match format {
            Format::Table => writeln!(out, "{p:>8}  {:>8}  {:<6}  {status}", "-", "-").unwrap(),
            Format::Records => writeln!(out, "lpoly\t{p}\t{status}\t-\t-\t-").unwrap(),
        }
    }
    Ok(code)
}

fn emit_scan(report: &ScanReport, format: Format, out: &mut String) -> Result<(), Failure> {
    if format == Format::Records {
        out.push_str(&write_report(report)?);
        return Ok(());
    }
    writeln!(out, "first:  {}", report.first).unwrap();
    writeln!(out, "second: {}", report.second).unwrap();
    writeln!(out, "primes {}..={}, depth {}", report.pmin, report.pmax, report.depth).unwrap();
    for r in &report.records {
        match r {
            ScanRecord::Traces { p, a, a_prime, verdict } => {
                writeln!(out, "{p:>8}  {a:>8}  {a_prime:>8}  {verdict}").unwrap()
            }
            ScanRecord::Full { p, l, l_prime, verdict, .. } => {
                writeln!(out, "{p:>8}  {verdict:<5}  L = {l}  |  L' = {l_prime}").unwrap()
            }
            ScanRecord::Skipped { p, reason } => {
                let why = match reason {
                    SkipReason::BadReduction { .. } => "bad reduction".to_string(),
                    SkipReason::BudgetExceeded { required } => format!("over budget ({required} evaluations)"),
                };
                writeln!(out, "{p:>8}  skipped: {why}").unwrap()
            }
        }
    }
    let agg = report.aggregates();
    writeln!(
        out,
        "primes {}  recorded {}  plus {}  minus {}  both {}  none {}  skipped(bad) {}  skipped(budget) {}",
        agg.primes, agg.recorded, agg.plus, agg.minus, agg.both, agg.none, agg.skipped_bad, agg.skipped_budget
    )
    .unwrap();
    match agg.none_fraction() {
        Some(f) => writeln!(out, "none fraction over this range: {f}").unwrap(),
        None => writeln!(out, "none fraction over this range: n/a").unwrap(),
    }
    Ok(())
}

fn cmd_char_search(
    src: &CachedCounter,
    a: &CurveModel,
    b: &CurveModel,
    support: &[i64],
    primes: &[u64],
    format: Format,
    out: &mut String,
) -> Result<i32, Failure> {
    let mut odd = Vec::new();
    let (mut two, mut sign) = (false, false);
    for &s in support {
        match s {
            -1 => sign = true,
            2 => two = true,
            q if q > 2 => odd.push(q as u64),
            other => return Err(Failure::config(format!("support entry {other} is not -1, 2 or an odd prime"))),
        }
    }
    let candidates = enumerate_characters(&odd, two, sign)?;
    let mut good = Vec::new();
    let mut bad = Vec::new();
    for &p in primes {
        if a.is_good_at(p)? && b.is_good_at(p)? {
            good.push(p);
        } else {
            bad.push(p);
        }
    }
    let outcome = character_search(src, a, b, &candidates, &good)?;
    let (verdict, survivors, refuted, checked) = match &outcome {
        SearchOutcome::Refuted { witnesses } => ("refuted", vec![], witnesses.clone(), None),
        SearchOutcome::Certified { survivors, refuted, primes_checked, .. } => {
            ("certified", survivors.clone(), refuted.clone(), Some(primes_checked.len()))
        }
    };
    match format {
        Format::Table => {
            writeln!(out, "first:  {a}\nsecond: {b}").unwrap();
            for (chi, p) in &refuted {
                writeln!(out, "{:>8}  refuted at {p}", chi.d()).unwrap();
            }
            for chi in &survivors {
                writeln!(out, "{:>8}  consistent at every tested prime", chi.d()).unwrap();
            }
            if !bad.is_empty() {
                writeln!(out, "skipped bad primes: {}", join(&bad)).unwrap();
            }
            match checked {
                Some(n) => writeln!(out, "certified on {n} primes only; finite evidence, not a proof").unwrap(),
                None => writeln!(out, "every candidate refuted").unwrap(),
            }
        }
        Format::Records => {
            writeln!(out, "twistscope-charsearch\tv1").unwrap();
            writeln!(out, "curve\tfirst\t{}\t{}", a.label(), join(a.f_coeffs())).unwrap();
            writeln!(out, "curve\tsecond\t{}\t{}", b.label(), join(b.f_coeffs())).unwrap();
            for (chi, p) in &refuted {
                writeln!(out, "cand\t{}\trefuted\t{p}", chi.d()).unwrap();
            }
            for chi in &survivors {
                writeln!(out, "cand\t{}\tsurvives\t-", chi.d()).unwrap();
            }
            for p in &bad {
                writeln!(out, "skip\t{p}\tbad").unwrap();
            }
            writeln!(out, "result\t{verdict}\tfinite-range").unwrap();
        }
    }
    Ok(EXIT_OK)
}

fn cmd_split(config: &FieldConfig, range: &Range, format: Format, out: &mut String) -> Result<i32, Failure> {
    let table = split_table(config, range.pmin, range.pmax)?;
    let counts = CaseCounts::tally(&table);
    match format {
        Format::Table => writeln!(out, "{:>8}  {:>2}  {:>2}  {:>2}  case", "p", "r", "s", "s'").unwrap(),
        Format::Records => writeln!(out, "twistscope-split\tv1").unwrap(),
    }
    for e in &table {
        match (e, format) {
            (SplitEntry::Profile(pr), Format::Table) => {
                writeln!(out, "{:>8}  {:>2}  {:>2}  {:>2}  {}", pr.p, pr.r, pr.s, pr.s_prime, pr.case).unwrap()
            }
            (SplitEntry::Profile(pr), Format::Records) => {
                writeln!(out, "split\t{}\t{}\t{}\t{}\t{}", pr.p, pr.r, pr.s, pr.s_prime, pr.case).unwrap()
            }
            (SplitEntry::Ramified { p }, Format::Table) => writeln!(out, "{p:>8}  ramified").unwrap(),
            (SplitEntry::Ramified { p }, Format::Records) => writeln!(out, "split\t{p}\tskip:ramified").unwrap(),
        }
    }
    let summary = [
        ("i", counts.i),
        ("ii", counts.ii),
        ("iii", counts.iii),
        ("violation", counts.violation),
        ("ramified", counts.ramified),
    ];
    for (name, n) in summary {
        match format {
            Format::Table => write!(out, "{name} {n}  ").unwrap(),
            Format::Records => writeln!(out, "agg\t{name}\t{n}").unwrap(),
        }
    }
    if format == Format::Table {
        out.truncate(out.trim_end().len());
        out.push('\n');
    }
    Ok(if counts.violation > 0 { EXIT_MATH } else { EXIT_OK })
}

fn cmd_lemma62(
    src: &CachedCounter,
    cs: &[i64],
    primes: &[u64],
    format: Format,
    out: &mut String,
) -> Result<i32, Failure> {
    let mut code = EXIT_OK;
    match format {
        Format::Table => writeln!(out, "{:>8}  {:>6}  {:>16}  shape", "p", "c", "s").unwrap(),
        Format::Records => writeln!(out, "twistscope-lemma62\tv1").unwrap(),
    }
    for &p in primes.iter().filter(|&&p| p % 8 == 3 || p % 8 == 5) {
        for &c in cs {
            let (s, shape) = match lemma62_check(src, c, p) {
                Ok(Lemma62Outcome::Holds { s, .. }) => (s.to_string(), "ok".to_string()),
                Ok(Lemma62Outcome::Violation { l, .. }) => {
                    code = combine(code, EXIT_MATH);
                    ("-".into(), format!("violation: {l}"))
                }
                Err(SplitError::Count(CountError::BadReduction { .. })) => ("-".into(), "skip:bad".into()),
                Err(SplitError::Count(CountError::BudgetExceeded { required, .. })) => {
                    code = combine(code, EXIT_BUDGET);
                    ("-".into(), format!("skip:budget={required}"))
                }
                Err(e) => return Err(e.into()),
            };
            match format {
                Format::Table => writeln!(out, "{p:>8}  {c:>6}  {s:>16}  {shape}").unwrap(),
                Format::Records => writeln!(out, "lemma62\t{p}\t{c}\t{s}\t{shape}").unwrap(),
            }
        }
    }
    Ok(code)
}

fn parse_exponents(text: &str) -> Result<Vec<u32>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse().map_err(|_| Failure::config(format!("bad exponent vector {text:?}"))))
        .collect()
}

fn cmd_stats(
    report: &ScanReport,
    moments: &[String],
    zero_coeff: Option<usize>,
    format: Format,
    out: &mut String,
) -> Result<i32, Failure> {
    let genus = report.first.genus();
    let exps: Vec<Vec<u32>> = if moments.is_empty() {
        vec![vec![1], vec![2], vec![0, 1], vec![4]]
    } else {
        moments.iter().map(|m| parse_exponents(m)).collect::<Result<_, _>>()?
    };
    let z = z20_statistic(report, zero_coeff.unwrap_or(genus))?;
    let table = moment_stats(report, &exps)?;
    match format {
        Format::Table => {
            writeln!(out, "{} primes with full L-polynomials", table.primes).unwrap();
            writeln!(out, "fraction with a_{} = 0: {} | {}", z.coeff_index, z.first, z.second).unwrap();
            writeln!(out, "{:<12}  {:>6}  {:>12}  {:>12}  {:>12}  even-weight exact", "e", "weight", "first", "second", "|diff|")
                .unwrap();
            for r in &table.rows {
                let exact = r.even_weight_exact.map_or("-".to_string(), |b| b.to_string());
                writeln!(
                    out,
                    "{:<12}  {:>6}  {:>12.6}  {:>12.6}  {:>12.6}  {exact}",
                    join(&r.exponents),
                    r.weight,
                    r.first,
                    r.second,
                    r.difference
                )
                .unwrap();
            }
        }
        Format::Records => {
            writeln!(out, "twistscope-stats\tv1").unwrap();
            writeln!(out, "zero\t{}\t{}\t{}\tfinite-range", z.coeff_index, z.first, z.second).unwrap();
            for r in &table.rows {
                let exact = r.even_weight_exact.map_or("-".to_string(), |b| b.to_string());
                writeln!(
                    out,
                    "moment\t{}\t{}\t{:.12e}\t{:.12e}\t{:.12e}\t{exact}",
                    join(&r.exponents),
                    r.weight,
                    r.first,
                    r.second,
                    r.difference
                )
                .unwrap();
            }
        }
    }
    let broken = table.rows.iter().any(|r| r.even_weight_exact == Some(false));
    Ok(if broken { EXIT_MATH } else { EXIT_OK })
}
