use std::fmt;

use crate::algebra::{check_odd_prime, kronecker, MAX_PRIME};
use crate::curvecount::{CountSource, CurveModel};

use super::TwistError;

/// A quadratic character of `Gal(Qbar/Q)`, encoded by the squarefree integer
/// `d` of the field `Q(sqrt d)` it cuts out; `d = 1` is the trivial
/// character. Its value at an odd prime `p` is the Kronecker symbol `(d/p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistCharacter(i64);

impl TwistCharacter {
    pub fn new(d: i64) -> Result<Self, TwistError> {
        if d == 0 || !is_squarefree(d.unsigned_abs()) {
            return Err(TwistError::InvalidArgument(format!("{d} is not a squarefree nonzero integer")));
        }
        Ok(TwistCharacter(d))
    }

    pub fn d(&self) -> i64 {
        self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0 == 1
    }

    /// `(d/p)`; zero when `p` ramifies.
    pub fn value_at(&self, p: u64) -> Result<i8, TwistError> {
        Ok(kronecker(self.0, p)?)
    }

    fn sort_key(&self) -> (u64, bool) {
        (self.0.unsigned_abs(), self.0 < 0)
    }
}

impl fmt::Display for TwistCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_squarefree(n: u64) -> bool {
    let mut n = n;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return false;
            }
        }
        d += 1;
    }
    true
}

/// Every character unramified outside `support` (odd primes), optionally
/// also 2 and the infinite place: all `2^(|support| + include_2 +
/// include_sign)` products, ordered by `|d|` with `d` before `-d`.
pub fn enumerate_characters(
    support: &[u64],
    include_2: bool,
    include_sign: bool,
) -> Result<Vec<TwistCharacter>, TwistError> {
    let mut factors: Vec<i64> = Vec::new();
    for (i, &q) in support.iter().enumerate() {
        check_odd_prime(q)?;
        if support[..i].contains(&q) {
            return Err(TwistError::InvalidArgument(format!("support prime {q} listed twice")));
        }
        factors.push(q as i64);
    }
    if include_2 {
        factors.push(2);
    }
    if include_sign {
        factors.push(-1);
    }
    let mut out = Vec::with_capacity(1 << factors.len());
    for mask in 0u32..(1 << factors.len()) {
        let d = factors
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .try_fold(1i64, |acc, (_, &f)| acc.checked_mul(f))
            .ok_or_else(|| TwistError::InvalidArgument("character support too large".into()))?;
        out.push(TwistCharacter::new(d)?);
    }
    out.sort_by_key(TwistCharacter::sort_key);
    Ok(out)
}

/// Result of testing candidate twist characters against a finite list of
/// primes. Survival is only evidence: a twist relation needs every prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Certified {
        /// All candidates consistent at every tested prime, ordered by `|d|`.
        survivors: Vec<TwistCharacter>,
        /// Candidates ruled out, with the first prime that did it.
        refuted: Vec<(TwistCharacter, u64)>,
        primes_checked: Vec<u64>,
        /// Always true: the verdict rests on finitely many primes.
        finite_evidence: bool,
    },
    Refuted {
        witnesses: Vec<(TwistCharacter, u64)>,
    },
}

/// Tests `L'_p(T) = L_p(chi_d(p) T)` for each candidate `d` at each prime in
/// order, dropping a candidate at its first failure. Stops computing as soon
/// as no candidate is left. A prime where `chi_d` ramifies is skipped for
/// that candidate only.
pub fn character_search(
    source: &impl CountSource,
    first: &CurveModel,
    second: &CurveModel,
    candidates: &[TwistCharacter],
    primes: &[u64],
) -> Result<SearchOutcome, TwistError> {
    if candidates.is_empty() {
        return Err(TwistError::InvalidArgument("no candidate characters".into()));
    }
    if first.genus() != second.genus() {
        return Err(TwistError::InvalidArgument("curves of different genus cannot be twists".into()));
    }
    let mut alive: Vec<TwistCharacter> = candidates.to_vec();
    alive.sort_by_key(TwistCharacter::sort_key);
    alive.dedup();
    let mut refuted: Vec<(TwistCharacter, u64)> = Vec::new();
    let mut checked = Vec::new();
    for &p in primes {
        if alive.is_empty() {
            break;
        }
        if p >= MAX_PRIME {
            return Err(TwistError::InvalidArgument(format!("prime {p} above the supported cap")));
        }
        if !first.is_good_at(p)? || !second.is_good_at(p)? {
            return Err(TwistError::InvalidArgument(format!("{p} is a bad prime for the pair")));
        }
        let l = source.lpoly(first, p)?;
        let l_prime = source.lpoly(second, p)?;
        let mut still = Vec::with_capacity(alive.len());
        for chi in alive {
            let v = chi.value_at(p)?;
            if v != 0 && l_prime != l.twisted(v) {
                refuted.push((chi, p));
            } else {
                still.push(chi);
            }
        }
        alive = still;
        checked.push(p);
    }
    refuted.sort_by_key(|(chi, _)| chi.sort_key());
    Ok(if alive.is_empty() {
        SearchOutcome::Refuted { witnesses: refuted }
    } else {
        SearchOutcome::Certified { survivors: alive, refuted, primes_checked: checked, finite_evidence: true }
    })
}
