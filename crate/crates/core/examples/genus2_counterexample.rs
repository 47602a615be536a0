// y^2 = x^5 - x and y^2 = x^5 + 4x: traces agree up to sign at every odd
// prime, yet the full L-polynomials at 3 are not twists of each other.

use std::error::Error;

use twistscope::cli::parse_curve;
use twistscope::curvecount::Counter;
use twistscope::twistlab::{character_search, enumerate_characters, scan_pair, Depth, SearchOutcome};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let a = parse_curve("x^5 - x")?;
    let b = parse_curve("x^5 + 4x")?;
    let counter = Counter::default();

    let traces = scan_pair(&counter, &a, &b, 3, 1000, Depth::Traces)?;
    let agg = traces.aggregates();
    println!("traces up to 1000: plus {} minus {} both {} none {}", agg.plus, agg.minus, agg.both, agg.none);
    assert_eq!(agg.none, 0);

    let full = scan_pair(&counter, &a, &b, 3, 13, Depth::Full)?;
    for (p, l, l_prime, verdict) in full.full_records() {
        println!("{p:>3}  {verdict:<5}  {l}  |  {l_prime}");
    }

    let candidates = enumerate_characters(&[], true, true)?;
    match character_search(&counter, &a, &b, &candidates, &[3, 5, 7, 11, 13])? {
        SearchOutcome::Refuted { witnesses } => {
            for (chi, p) in witnesses {
                println!("twist by Q(sqrt {chi}) fails at {p}");
            }
        }
        SearchOutcome::Certified { survivors, .. } => return Err(format!("unexpected survivors {survivors:?}").into()),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
