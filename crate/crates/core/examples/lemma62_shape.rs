// For y^2 = x^9 + cx and p = 3, 5 mod 8 only a_4 survives in the middle of
// the L-polynomial.

use std::error::Error;

use twistscope::curvecount::Counter;
use twistscope::splitfield::{lemma62_check, Lemma62Outcome};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let counter = Counter::default();
    for p in [3u64, 5, 11, 13] {
        for c in [1, 16, -3] {
            match lemma62_check(&counter, c, p) {
                Ok(Lemma62Outcome::Holds { s, l, .. }) => println!("p={p:<3} c={c:<3} s={s:<5} L = {l}"),
                Ok(Lemma62Outcome::Violation { l, .. }) => return Err(format!("bad shape {l}").into()),
                Err(e) => println!("p={p:<3} c={c:<3} {e}"),
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
