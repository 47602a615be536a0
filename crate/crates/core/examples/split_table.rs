// Residue degrees of small primes in K = Q(sqrt 2, i), L = K(2^(1/4)) and
// L' = K(sqrt(2 + sqrt 2)).

use std::error::Error;

use twistscope::splitfield::{chebotarev_fraction, split_table, CaseCounts, FieldConfig, SplitEntry};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let fields = FieldConfig::default_fields();
    for f in fields.fields() {
        println!("{:<12} degree {}  {}", f.name, f.degree, f.provenance);
    }
    let table = split_table(&fields, 3, 60)?;
    println!("   p   r   s  s'  case");
    for e in &table {
        if let SplitEntry::Profile(pr) = e {
            println!("{:>4} {:>3} {:>3} {:>3}  {}", pr.p, pr.r, pr.s, pr.s_prime, pr.case);
        }
    }
    let counts = CaseCounts::tally(&split_table(&fields, 3, 1000)?);
    println!("p <= 1000: {counts:?}");
    println!("split fraction in K up to 20000: {}", chebotarev_fraction(fields.get("K")?, 20_000)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
