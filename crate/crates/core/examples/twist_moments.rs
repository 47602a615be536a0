// Moments of the normalised coefficients for a curve and its twist by -1.
// Odd-weight moments differ; even-weight ones agree prime by prime.

use std::error::Error;

use twistscope::cli::parse_curve;
use twistscope::curvecount::Counter;
use twistscope::twistlab::{moment_stats, scan_pair, z20_statistic, Depth};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let f = parse_curve("x^5 + x + 1")?;
    let twist = parse_curve("x^5 + x - 1")?;
    let report = scan_pair(&Counter::default(), &f, &twist, 3, 150, Depth::Full)?;
    let table = moment_stats(&report, &[vec![1], vec![2], vec![0, 1], vec![1, 1], vec![4]])?;
    println!("{} primes", table.primes);
    for row in &table.rows {
        println!(
            "e={:<8?} w={} {:>9.4} {:>9.4}  exact even agreement: {:?}",
            row.exponents, row.weight, row.first, row.second, row.even_weight_exact
        );
    }
    let z = z20_statistic(&report, 1)?;
    println!("a_1 = 0 at {} / {} of primes", z.first, z.second);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
