// y^2 = x^9 + x and y^2 = x^9 + 16x are local quadratic twists at every
// odd prime but not a global twist.

use std::error::Error;

use twistscope::algebra::{legendre, sqrt_mod};
use twistscope::cli::parse_curve;
use twistscope::curvecount::{CountSource, Counter};
use twistscope::twistlab::{character_search, enumerate_characters, scan_pair, Depth, SearchOutcome};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let a = parse_curve("x^9 + x")?;
    let b = parse_curve("x^9 + 16x")?;
    let counter = Counter::default();

    println!("a_17: {} and {}", counter.frobenius_trace(&a, 17)?, counter.frobenius_trace(&b, 17)?);

    let report = scan_pair(&counter, &a, &b, 3, 23, Depth::Full)?;
    for (p, _, _, verdict) in report.full_records() {
        let quartic = match p % 8 {
            1 | 7 => {
                let root = sqrt_mod(2, p)?.expect("2 is a square");
                format!("(sqrt 2 / p) = {}", legendre(root as i64, p)?)
            }
            _ => "L = L'".to_string(),
        };
        println!("{p:>3}  {verdict:<5}  {quartic}");
    }

    let candidates = enumerate_characters(&[], true, true)?;
    let primes = [3, 5, 7, 11, 13, 17, 19, 23];
    if let SearchOutcome::Refuted { witnesses } = character_search(&counter, &a, &b, &candidates, &primes)? {
        println!("every candidate refuted: {witnesses:?}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
