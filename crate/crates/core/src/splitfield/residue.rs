use num_integer::Integer;

use crate::algebra::{check_odd_prime, ddf_degrees, multiplicative_order, PolyModP};

use super::{NumberFieldSpec, Presentation, SplitError};

/// Residue degree of an unramified odd prime in a Galois field given by a
/// defining polynomial: the smallest `j` with `gcd(x^(p^j) - x, h)`
/// nonconstant, confirmed against the full distinct-degree factorization.
pub fn residue_degree_galois(field: &NumberFieldSpec, p: u64) -> Result<usize, SplitError> {
    if field.presentation != Presentation::Galois {
        return Err(SplitError::InvalidArgument(format!("{} is not given by a Galois presentation", field.name)));
    }
    let h = guarded(field, p)?;
    let x = PolyModP::x(p);
    let mut w = x.clone();
    let mut j = 0;
    loop {
        j += 1;
        w = w.pow_mod(p, &h)?;
        if w.sub(&x).gcd(&h).degree().unwrap_or(0) > 0 {
            break;
        }
    }
    let degrees: Vec<usize> = ddf_degrees(&h)?.into_iter().map(|(d, _)| d).collect();
    if degrees.iter().any(|&d| d != j) {
        return Err(SplitError::NotGaloisConsistent { field: field.name.clone(), p, degrees });
    }
    Ok(j)
}

/// Residue degree for either presentation. For a splitting-field
/// presentation this is the lcm of the factor degrees of the polynomial.
pub fn residue_degree(field: &NumberFieldSpec, p: u64) -> Result<usize, SplitError> {
    match field.presentation {
        Presentation::Galois => residue_degree_galois(field, p),
        Presentation::Splitting => {
            let h = guarded(field, p)?;
            Ok(ddf_degrees(&h)?.into_iter().fold(1, |acc, (d, _)| acc.lcm(&d)))
        }
    }
}

fn guarded(field: &NumberFieldSpec, p: u64) -> Result<PolyModP, SplitError> {
    check_odd_prime(p)?;
    if field.is_ramified_guard(p) {
        return Err(SplitError::Ramified { field: field.name.clone(), p });
    }
    Ok(field.reduce(p))
}

/// Residue degree of `p` in `Q(zeta_n)`: the order of `p` modulo `n`.
pub fn cyclotomic_residue_degree(n: u64, p: u64) -> Result<u64, SplitError> {
    check_odd_prime(p)?;
    if n < 2 {
        return Err(SplitError::InvalidArgument(format!("modulus {n} must be at least 2")));
    }
    multiplicative_order(p, n)
        .ok_or_else(|| SplitError::InvalidArgument(format!("{p} is not prime to {n}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::odd_primes_in;
    use crate::splitfield::FieldConfig;

    #[test]
    fn examples() {
        let c = FieldConfig::default_fields();
        let k = c.get("K").unwrap();
        assert_eq!(residue_degree_galois(k, 17).unwrap(), 1);
        assert_eq!(residue_degree_galois(k, 3).unwrap(), 2);
        assert_eq!(residue_degree_galois(k, 5).unwrap(), 2);
        assert!(matches!(residue_degree_galois(k, 2), Err(SplitError::Algebra(_))));
        assert!(residue_degree_galois(c.get("L").unwrap(), 5).is_err());
        assert_eq!(residue_degree(c.get("L").unwrap(), 3).unwrap(), 2);
        assert!(matches!(residue_degree(c.get("L-primitive").unwrap(), 3), Err(SplitError::Ramified { .. })));
        assert_eq!(cyclotomic_residue_degree(16, 3).unwrap(), 4);
        assert_eq!(cyclotomic_residue_degree(16, 5).unwrap(), 4);
        assert_eq!(cyclotomic_residue_degree(8, 17).unwrap(), 1);
        assert!(cyclotomic_residue_degree(15, 3).is_err());
    }

    #[test]
    fn cyclotomic_fields_match_orders() {
        let c = FieldConfig::default_fields();
        let (k, l_prime) = (c.get("K").unwrap(), c.get("L'").unwrap());
        for p in odd_primes_in(3, 10_000) {
            assert_eq!(residue_degree_galois(k, p).unwrap() as u64, cyclotomic_residue_degree(8, p).unwrap(), "p={p}");
            if p < 2000 {
                assert_eq!(residue_degree_galois(l_prime, p).unwrap() as u64, cyclotomic_residue_degree(16, p).unwrap());
            }
        }
    }

    #[test]
    fn presentations_of_l_agree() {
        let c = FieldConfig::default_fields();
        let (l, prim) = (c.get("L").unwrap(), c.get("L-primitive").unwrap());
        for p in odd_primes_in(5, 3000) {
            assert_eq!(residue_degree(l, p).unwrap(), residue_degree(prim, p).unwrap(), "p={p}");
        }
    }
}
