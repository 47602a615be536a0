// Writing a scan as text records, reading it back, and caching counts on
// disk so a later run only pays for what is missing.

use std::error::Error;

use twistscope::cli::{CachedCounter, DiskCache, parse_curve};
use twistscope::curvecount::{CountSource, Counter};
use twistscope::twistlab::{parse_report, scan_pair, write_report, Depth};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dir = tempfile::tempdir()?;
    let a = parse_curve("x^5 - x")?;
    let b = parse_curve("x^5 + 4x")?;

    let cold = CachedCounter::new(Counter::default(), Some(DiskCache::open(dir.path())?));
    let report = scan_pair(&cold, &a, &b, 3, 29, Depth::Full)?;
    let text = write_report(&report)?;
    print!("{text}");
    assert_eq!(parse_report(&text)?, report);

    // a second source over the same directory never enumerates: a budget of
    // one evaluation would fail otherwise
    let warm = CachedCounter::new(Counter::with_budget(1), Some(DiskCache::open(dir.path())?));
    assert_eq!(warm.lpoly(&a, 29)?, cold.lpoly(&a, 29)?);
    println!("cache files: {}", std::fs::read_dir(dir.path())?.count());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
