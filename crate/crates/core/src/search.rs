//! Wieferich-type prime searches: odd primes `p` with `base^(p-1) ≡ 1 (mod p^2)`.

use crate::arith::pow_mod_u128;

const SEGMENT: u64 = 1 << 18;

fn small_primes(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Primes in `[lo, hi)` by sieving with `base_primes` (all primes up to `sqrt(hi)`).
fn segment_primes(lo: u64, hi: u64, base_primes: &[u64]) -> Vec<u64> {
    let mut composite = vec![false; (hi - lo) as usize];
    for &q in base_primes {
        if q * q >= hi {
            break;
        }
        let mut start = (lo.div_ceil(q) * q).max(q * q);
        while start < hi {
            composite[(start - lo) as usize] = true;
            start += q;
        }
    }
    (lo.max(2)..hi)
        .filter(|&n| !composite[(n - lo) as usize])
        .collect()
}

fn is_wieferich(base: u64, p: u64) -> bool {
    if p == 2 || base.is_multiple_of(p) {
        return false;
    }
    let m = p as u128 * p as u128;
    pow_mod_u128(base as u128, p - 1, m) == 1
}

fn scan(lo: u64, hi: u64, base: u64, base_primes: &[u64]) -> Vec<u64> {
    segment_primes(lo, hi, base_primes)
        .into_iter()
        .filter(|&p| is_wieferich(base, p))
        .collect()
}

/// Ascending odd primes `p ≤ limit`, `p ∤ base`, with `base^(p-1) ≡ 1 (mod p^2)`.
///
/// Segments are scanned independently (in parallel with the `parallel` feature)
/// and concatenated in order, so the result does not depend on scheduling.
pub fn wieferich_search(base: u64, limit: u64) -> Vec<u64> {
    if limit < 3 || base < 2 {
        return Vec::new();
    }
    let end = limit + 1;
    let base_primes = small_primes((end as f64).sqrt() as u64 + 1);
    let starts: Vec<u64> = (0..end.div_ceil(SEGMENT)).map(|i| i * SEGMENT).collect();
    let run = |lo: &u64| scan(*lo, (*lo + SEGMENT).min(end), base, &base_primes);

    #[cfg(feature = "parallel")]
    let chunks: Vec<Vec<u64>> = {
        use rayon::prelude::*;
        starts.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let chunks: Vec<Vec<u64>> = starts.iter().map(run).collect();

    chunks.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_prime;

    fn direct_scan(base: u64, limit: u64) -> Vec<u64> {
        (3..=limit)
            .filter(|&p| is_prime(p) && !base.is_multiple_of(p))
            .filter(|&p| {
                let m = p * p;
                (0..p - 1).fold(1u64, |acc, _| acc * base % m) == 1
            })
            .collect()
    }

    #[test]
    fn base_two() {
        assert_eq!(wieferich_search(2, 10_000), vec![1093, 3511]);
        assert_eq!(wieferich_search(2, 1000), Vec::<u64>::new());
        assert_eq!(direct_scan(2, 4000), vec![1093, 3511]);
    }

    #[test]
    fn base_three() {
        assert_eq!(wieferich_search(3, 100), vec![11]);
        assert_eq!(direct_scan(3, 100), vec![11]);
    }

    #[test]
    fn matches_direct_scan_for_small_bases() {
        for base in 2..20 {
            assert_eq!(
                wieferich_search(base, 3000),
                direct_scan(base, 3000),
                "base {base}"
            );
        }
    }

    #[test]
    fn segments_agree_with_plain_sieve() {
        let plain = small_primes(600_000);
        let base = small_primes(800);
        let mut seg = Vec::new();
        for lo in (0..600_001).step_by(SEGMENT as usize) {
            seg.extend(segment_primes(lo, (lo + SEGMENT).min(600_001), &base));
        }
        assert_eq!(seg, plain);
    }

    #[test]
    fn degenerate_limits() {
        assert!(wieferich_search(2, 2).is_empty());
        assert!(wieferich_search(1, 10_000).is_empty());
    }
}
