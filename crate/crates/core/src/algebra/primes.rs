/// Exclusive upper bound on the characteristic. With `p < 2^24` a product of
/// residues is below `2^48`, leaving 16 bits of headroom for accumulation.
pub const MAX_PRIME: u64 = 1 << 24;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Odd primes in the closed interval `[lo, hi]`, ascending.
pub fn odd_primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 3 || lo > hi {
        return Vec::new();
    }
    let n = hi as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    let mut i = 2usize;
    while i * i <= n {
        if !composite[i] {
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    for k in lo.max(3) as usize..=n {
        if !composite[k] && k % 2 == 1 {
            out.push(k as u64);
        }
    }
    out
}
