use std::error::Error;

use twistscope::cli::parse_curve;
use twistscope::curvecount::{log_derivative_counts, validate_weil, CountSource, Counter};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let counter = Counter::default();
    for expr in ["x^3 - x", "y^2 = x^5 + x + 1", "x^7 - 3x^2 + 1"] {
        let curve = parse_curve(expr)?;
        println!("{curve}  (genus {})", curve.genus());
        for p in [3u64, 5, 7, 11, 13] {
            if !curve.is_good_at(p)? {
                println!("  {p:>3}  bad reduction");
                continue;
            }
            let l = counter.lpoly(&curve, p)?;
            assert!(validate_weil(&l).is_empty());
            let counts = log_derivative_counts(&l, 2 * curve.genus());
            println!("  {p:>3}  {l}   N = {counts:?}");
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
