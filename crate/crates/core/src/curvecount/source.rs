use super::{lpoly_from_counts, point_count, CharSumMethod, CountError, CountVector, CurveModel, LPolynomial, Reduction};

/// Default cap on field evaluations per curve and prime.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

/// Anything that can produce point counts for a curve at a prime.
///
/// [`Counter`] enumerates directly; the CLI wraps it with an on-disk cache.
/// Implementations must be shareable across worker threads.
pub trait CountSource: Sync {
    /// `N_1..N_m` at `p`.
    fn counts(&self, curve: &CurveModel, p: u64, m: usize) -> Result<CountVector, CountError>;

    fn lpoly(&self, curve: &CurveModel, p: u64) -> Result<LPolynomial, CountError> {
        let counts = self.counts(curve, p, curve.genus())?;
        lpoly_from_counts(&counts, curve.genus())
    }

    /// `a_p = p + 1 - N_1`; needs only the count over `F_p`.
    fn frobenius_trace(&self, curve: &CurveModel, p: u64) -> Result<i64, CountError> {
        let counts = self.counts(curve, p, 1)?;
        Ok(p as i64 + 1 - counts.counts[0] as i64)
    }
}

/// Direct enumeration with a work budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Counter {
    pub budget: u64,
    pub method: CharSumMethod,
}

impl Default for Counter {
    fn default() -> Self {
        Counter { budget: DEFAULT_BUDGET, method: CharSumMethod::default() }
    }
}

impl Counter {
    pub fn with_budget(budget: u64) -> Self {
        Counter { budget, ..Counter::default() }
    }

    /// Field evaluations needed to go from `known` counts to `m` counts.
    pub fn required_work(p: u64, known: usize, m: usize) -> u128 {
        (known + 1..=m).map(|i| (p as u128).saturating_pow(i as u32)).sum()
    }

    /// Extends `known` (a prefix `N_1..N_k`) to `N_1..N_m`, enumerating only
    /// the missing extension degrees.
    pub fn extend(
        &self,
        curve: &CurveModel,
        known: &CountVector,
        m: usize,
    ) -> Result<CountVector, CountError> {
        let p = known.p;
        if known.len() >= m {
            return Ok(known.prefix(m));
        }
        if let Reduction::Bad = curve.reduce(p)? {
            return Err(CountError::BadReduction { label: curve.label().into(), p });
        }
        let required = Self::required_work(p, known.len(), m);
        if required > self.budget as u128 {
            return Err(CountError::BudgetExceeded { required, budget: self.budget });
        }
        let mut counts = known.counts.clone();
        for i in known.len() + 1..=m {
            counts.push(point_count(curve, p, i, self.method)?);
        }
        Ok(CountVector::new(p, counts))
    }
}

impl CountSource for Counter {
    fn counts(&self, curve: &CurveModel, p: u64, m: usize) -> Result<CountVector, CountError> {
        self.extend(curve, &CountVector::new(p, Vec::new()), m)
    }
}

/// [`CountSource::lpoly`] on a direct [`Counter`].
pub fn lpoly(curve: &CurveModel, p: u64, counter: &Counter) -> Result<LPolynomial, CountError> {
    counter.lpoly(curve, p)
}

pub fn frobenius_trace(curve: &CurveModel, p: u64, counter: &Counter) -> Result<i64, CountError> {
    counter.frobenius_trace(curve, p)
}
