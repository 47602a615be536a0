use num_bigint::BigInt;
use num_rational::Ratio;

use super::{ScanReport, SignMatch, TwistError};

/// Fraction of full records whose coefficient `a_i` vanishes, per curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroFraction {
    pub coeff_index: usize,
    pub first: Ratio<u64>,
    pub second: Ratio<u64>,
}

/// Exact fraction of recorded primes at which `a_{coeff_index}` is zero,
/// for both curves of a full-depth report.
pub fn z20_statistic(report: &ScanReport, coeff_index: usize) -> Result<ZeroFraction, TwistError> {
    let mut total = 0u64;
    let mut zero = (0u64, 0u64);
    for (_, l, l_prime, _) in report.full_records() {
        if coeff_index == 0 || coeff_index > 2 * l.genus() {
            return Err(TwistError::InvalidArgument(format!(
                "coefficient index {coeff_index} outside 1..={}",
                2 * l.genus()
            )));
        }
        total += 1;
        zero.0 += (l.coeffs()[coeff_index] == 0) as u64;
        zero.1 += (l_prime.coeffs()[coeff_index] == 0) as u64;
    }
    if total == 0 {
        return Err(TwistError::InvalidArgument("report has no full-depth records".into()));
    }
    Ok(ZeroFraction { coeff_index, first: Ratio::new(zero.0, total), second: Ratio::new(zero.1, total) })
}

/// One monomial `a_1^{e_1} ... a_g^{e_g}` averaged over the recorded primes,
/// with `a_i` normalised by `p^{i/2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentRow {
    pub exponents: Vec<u32>,
    /// `sum i * e_i`; its parity decides the behaviour under `T -> -T`.
    pub weight: u32,
    pub first: f64,
    pub second: f64,
    pub difference: f64,
    /// For even weight: whether the unnormalised monomials agree exactly
    /// at every recorded prime with a matching verdict. `None` for odd
    /// weight.
    pub even_weight_exact: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentTable {
    pub primes: usize,
    pub rows: Vec<MomentRow>,
}

/// Empirical moments of the normalised L-coefficients of both curves.
///
/// Each exponent vector has length at most `g`; missing entries are zero.
/// Floating point is used only for the averages, never for the exact
/// even-weight check.
pub fn moment_stats(report: &ScanReport, exponents: &[Vec<u32>]) -> Result<MomentTable, TwistError> {
    let records: Vec<_> = report.full_records().collect();
    if records.is_empty() {
        return Err(TwistError::InvalidArgument("report has no full-depth records".into()));
    }
    let genus = records[0].1.genus();
    let mut rows = Vec::with_capacity(exponents.len());
    for e in exponents {
        if e.len() > genus {
            return Err(TwistError::InvalidArgument(format!(
                "exponent vector {e:?} longer than the genus {genus}"
            )));
        }
        let weight: u32 = e.iter().enumerate().map(|(i, &k)| (i as u32 + 1) * k).sum();
        let mut sums = (0f64, 0f64);
        let mut exact = true;
        for (p, l, l_prime, verdict) in &records {
            sums.0 += normalised_monomial(*p, l.coeffs(), e);
            sums.1 += normalised_monomial(*p, l_prime.coeffs(), e);
            if weight.is_multiple_of(2) && *verdict != SignMatch::Neither {
                exact &= exact_monomial(l.coeffs(), e) == exact_monomial(l_prime.coeffs(), e);
            }
        }
        let n = records.len() as f64;
        let (first, second) = (sums.0 / n, sums.1 / n);
        rows.push(MomentRow {
            exponents: e.clone(),
            weight,
            first,
            second,
            difference: (first - second).abs(),
            even_weight_exact: weight.is_multiple_of(2).then_some(exact),
        });
    }
    Ok(MomentTable { primes: records.len(), rows })
}

fn normalised_monomial(p: u64, coeffs: &[i128], e: &[u32]) -> f64 {
    let sqrt_p = (p as f64).sqrt();
    e.iter()
        .enumerate()
        .map(|(i, &k)| (coeffs[i + 1] as f64 / sqrt_p.powi(i as i32 + 1)).powi(k as i32))
        .product()
}

fn exact_monomial(coeffs: &[i128], e: &[u32]) -> BigInt {
    e.iter().enumerate().map(|(i, &k)| num_traits::pow(BigInt::from(coeffs[i + 1]), k as usize)).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvecount::{Counter, CurveModel};
    use crate::twistlab::{scan_pair, Depth};

    fn pair() -> (CurveModel, CurveModel) {
        // y^2 = x^5 + x + 1 and its twist by -1
        let f = CurveModel::new("f", vec![1, 1, 0, 0, 0, 1]).unwrap();
        let g = CurveModel::new("g", vec![-1, 1, 0, 0, 0, 1]).unwrap();
        (f, g)
    }

    #[test]
    fn z20_trivial_cases() {
        let x5 = CurveModel::new("x5-x", vec![0, -1, 0, 0, 0, 1]).unwrap();
        // p = 3 mod 4 primes give an even L-polynomial, so a_1 = 0 there
        let report = scan_pair(&Counter::default(), &x5, &x5, 3, 3, Depth::Full).unwrap();
        let z = z20_statistic(&report, 1).unwrap();
        assert_eq!(z.first, Ratio::from_integer(1));
        assert_eq!(z.first, z.second);
        assert!(z20_statistic(&report, 5).is_err());
        let traces = scan_pair(&Counter::default(), &x5, &x5, 3, 3, Depth::Traces).unwrap();
        assert!(z20_statistic(&traces, 1).is_err());
    }

    #[test]
    fn moments_of_a_twisted_pair() {
        let (f, g) = pair();
        let report = scan_pair(&Counter::default(), &f, &g, 3, 60, Depth::Full).unwrap();
        let table = moment_stats(&report, &[vec![], vec![1], vec![2], vec![0, 1], vec![2, 1], vec![1, 1]]).unwrap();
        assert_eq!(table.rows[0].first, 1.0);
        assert_eq!(table.rows[0].second, 1.0);
        for row in &table.rows {
            assert_eq!(row.even_weight_exact.is_some(), row.weight % 2 == 0);
            if let Some(exact) = row.even_weight_exact {
                assert!(exact, "{row:?}");
                assert!(row.difference < 1e-9, "{row:?}");
            }
        }
        assert!(moment_stats(&report, &[vec![1, 0, 0]]).is_err());
    }
}
