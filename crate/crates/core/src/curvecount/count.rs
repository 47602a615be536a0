use rayon::prelude::*;

use crate::algebra::{FieldElement, FieldSpec, PolyModP, SquareTable};

use super::{CountError, CurveModel, Reduction};

/// How the quadratic character is evaluated inside the counting kernel.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CharSumMethod {
    /// `e^((q-1)/2)` per element.
    Exponentiation,
    /// One pass squaring every element into a bitmap, then lookups.
    #[default]
    SquareTable,
}

/// Point counts `N_1..N_m` of a curve at a prime, `N_i = #C(F_{p^i})`
/// including the single point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CountVector {
    pub p: u64,
    pub counts: Vec<u64>,
}

impl CountVector {
    pub fn new(p: u64, counts: Vec<u64>) -> Self {
        CountVector { p, counts }
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn prefix(&self, m: usize) -> CountVector {
        CountVector { p: self.p, counts: self.counts[..m.min(self.counts.len())].to_vec() }
    }
}

/// Evaluates a fixed polynomial at field elements using the binary
/// expansion of each exponent: `x^(2^k)` is computed once per point and the
/// monomials are products of those squares.
struct PowerPlan {
    terms: Vec<(u32, u64)>,
    chain_len: usize,
}

impl PowerPlan {
    fn new(f: &PolyModP) -> Self {
        let terms: Vec<(u32, u64)> = f
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| (e as u32, c))
            .collect();
        let max = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let chain_len = (u32::BITS - max.leading_zeros()) as usize;
        PowerPlan { terms, chain_len }
    }

    fn eval(&self, spec: &FieldSpec, x: &FieldElement) -> FieldElement {
        let mut chain = [FieldElement::default(); 8];
        if self.chain_len > 0 {
            chain[0] = *x;
            for k in 1..self.chain_len {
                chain[k] = spec.square(&chain[k - 1]);
            }
        }
        let mut acc = spec.zero();
        for &(e, c) in &self.terms {
            let mut mono: Option<FieldElement> = None;
            for (k, sq) in chain.iter().enumerate().take(self.chain_len) {
                if e >> k & 1 == 1 {
                    mono = Some(match mono {
                        None => *sq,
                        Some(m) => spec.mul(&m, sq),
                    });
                }
            }
            let term = match mono {
                None => spec.from_base(c),
                Some(m) if c == 1 => m,
                Some(m) => spec.scale(&m, c),
            };
            acc = spec.add(&acc, &term);
        }
        acc
    }
}

const CHUNK: u64 = 1 << 13;

/// `sum_{x in F_q} chi(f(x))` for the quadratic character `chi` of
/// `F_q = spec`. Exact; lies in `[-q, q]`.
pub fn affine_char_sum(
    fbar: &PolyModP,
    spec: &FieldSpec,
    method: CharSumMethod,
) -> Result<i64, CountError> {
    if fbar.p() != spec.p() {
        return Err(CountError::InvalidArgument(format!(
            "polynomial over F_{} evaluated in a field of characteristic {}",
            fbar.p(),
            spec.p()
        )));
    }
    let plan = PowerPlan::new(fbar);
    let q = spec.order();
    let chunks = q.div_ceil(CHUNK);
    let sum = match method {
        CharSumMethod::Exponentiation => (0..chunks)
            .into_par_iter()
            .map(|c| {
                let start = c * CHUNK;
                spec.elements_from(start, CHUNK.min(q - start))
                    .map(|x| spec.quad_char(&plan.eval(spec, &x)) as i64)
                    .sum::<i64>()
            })
            .sum(),
        CharSumMethod::SquareTable => {
            let table = SquareTable::build(spec);
            (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let start = c * CHUNK;
                    spec.elements_from(start, CHUNK.min(q - start))
                        .map(|x| table.quad_char_at(spec.index(&plan.eval(spec, &x))) as i64)
                        .sum::<i64>()
                })
                .sum()
        }
    };
    Ok(sum)
}

/// `#C(F_{p^i}) = p^i + 1 + sum chi(f(x))` for an odd-degree model.
pub fn point_count(
    curve: &CurveModel,
    p: u64,
    i: usize,
    method: CharSumMethod,
) -> Result<u64, CountError> {
    let fbar = match curve.reduce(p)? {
        Reduction::Good(f) => f,
        Reduction::Bad => return Err(CountError::BadReduction { label: curve.label().into(), p }),
    };
    let spec = FieldSpec::build_extension(p, i)?;
    let s = affine_char_sum(&fbar, &spec, method)?;
    Ok((spec.order() as i128 + 1 + s as i128) as u64)
}

/// `#C(F_{p^i})` by listing affine points: every `y` is squared once to
/// tabulate how many square roots each element has, then `f(x)` is
/// evaluated by Horner's rule for every `x`. Sequential and memory-bound;
/// meant as a cross-check for [`point_count`] on small fields.
pub fn naive_point_count(curve: &CurveModel, p: u64, i: usize) -> Result<u64, CountError> {
    let fbar = match curve.reduce(p)? {
        Reduction::Good(f) => f,
        Reduction::Bad => return Err(CountError::BadReduction { label: curve.label().into(), p }),
    };
    let spec = FieldSpec::build_extension(p, i)?;
    let q = spec.order();
    if q > 1 << 26 {
        return Err(CountError::InvalidArgument(format!("field of order {q} is too large to list")));
    }
    let mut roots = vec![0u8; q as usize];
    for y in spec.elements() {
        roots[spec.index(&spec.square(&y)) as usize] += 1;
    }
    let coeffs: Vec<FieldElement> = fbar.coeffs().iter().map(|&c| spec.from_base(c)).collect();
    let mut affine = 0u64;
    for x in spec.elements() {
        let v = coeffs.iter().rev().fold(spec.zero(), |acc, c| spec.add(&spec.mul(&acc, &x), c));
        affine += roots[spec.index(&v) as usize] as u64;
    }
    Ok(affine + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(c: &[i64]) -> CurveModel {
        CurveModel::new("t", c.to_vec()).unwrap()
    }

    fn x9_plus(c: i64) -> CurveModel {
        let mut f = vec![0i64; 10];
        f[1] = c;
        f[9] = 1;
        curve(&f)
    }

    #[test]
    fn char_sum_examples() {
        for p in [3u64, 5, 7, 11] {
            let spec = FieldSpec::prime(p).unwrap();
            let f = PolyModP::x(p);
            assert_eq!(affine_char_sum(&f, &spec, CharSumMethod::Exponentiation).unwrap(), 0);
        }
        let f3 = FieldSpec::prime(3).unwrap();
        let f = PolyModP::new(3, vec![0, 2, 0, 0, 0, 1]);
        assert_eq!(affine_char_sum(&f, &f3, CharSumMethod::SquareTable).unwrap(), 0);
        let g = PolyModP::new(3, vec![0, 1, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(affine_char_sum(&g, &f3, CharSumMethod::SquareTable).unwrap(), 0);
        let wrong = FieldSpec::prime(5).unwrap();
        assert!(affine_char_sum(&g, &wrong, CharSumMethod::SquareTable).is_err());
    }

    #[test]
    fn point_count_examples() {
        let m = CharSumMethod::default();
        assert_eq!(point_count(&curve(&[0, -1, 0, 0, 0, 1]), 3, 1, m).unwrap(), 4);
        assert_eq!(point_count(&x9_plus(1), 3, 1, m).unwrap(), 4);
        assert_eq!(point_count(&x9_plus(1), 3, 2, m).unwrap(), 10);
        // frozen from an independent brute-force count
        let counts: Vec<u64> =
            (1..=4).map(|i| point_count(&curve(&[0, -1, 0, 0, 0, 1]), 3, i, m).unwrap()).collect();
        assert_eq!(counts, vec![4, 6, 28, 110]);
        assert!(matches!(
            point_count(&curve(&[1, 1, 0, 1]), 31, 1, m),
            Err(CountError::BadReduction { p: 31, .. })
        ));
    }

    #[test]
    fn methods_agree() {
        let curves = [curve(&[0, -1, 0, 0, 0, 1]), curve(&[1, 2, 3, 4, 5, 1]), x9_plus(16)];
        for c in &curves {
            for p in [3u64, 5, 7, 11, 13] {
                let Reduction::Good(f) = c.reduce(p).unwrap() else { continue };
                for i in 1..=3 {
                    let spec = FieldSpec::build_extension(p, i).unwrap();
                    let a = affine_char_sum(&f, &spec, CharSumMethod::Exponentiation).unwrap();
                    let b = affine_char_sum(&f, &spec, CharSumMethod::SquareTable).unwrap();
                    assert_eq!(a, b, "{c} p={p} i={i}");
                    assert!(a.unsigned_abs() <= spec.order());
                }
            }
        }
    }

    #[test]
    fn power_plan_matches_horner() {
        let spec = FieldSpec::build_extension(7, 3).unwrap();
        let f = PolyModP::new(7, vec![3, 0, 5, 1, 0, 0, 2, 0, 0, 1]);
        let plan = PowerPlan::new(&f);
        for x in spec.elements().step_by(3) {
            let horner = f.coeffs().iter().rev().fold(spec.zero(), |acc, &c| {
                spec.add(&spec.mul(&acc, &x), &spec.from_base(c))
            });
            assert_eq!(plan.eval(&spec, &x), horner);
        }
    }

    #[test]
    fn naive_listing_agrees() {
        let c = curve(&[0, -1, 0, 0, 0, 1]);
        let counts: Vec<u64> = (1..=4).map(|i| naive_point_count(&c, 3, i).unwrap()).collect();
        assert_eq!(counts, vec![4, 6, 28, 110]);
        for p in [5u64, 7] {
            for i in 1..=3 {
                let e = x9_plus(16);
                assert_eq!(naive_point_count(&e, p, i).unwrap(), point_count(&e, p, i, CharSumMethod::SquareTable).unwrap());
            }
        }
    }
}
