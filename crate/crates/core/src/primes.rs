//! Prime enumeration: a segmented odd-only sieve of Eratosthenes.

use rayon::prelude::*;

/// Odd numbers covered by one sieve segment.
pub const DEFAULT_SEGMENT: usize = 1 << 18;

/// Streams the primes below `limit` one segment at a time.
///
/// Memory is `O(segment_size + sqrt(limit))` whatever the limit.
#[derive(Debug, Clone)]
pub struct PrimeStream {
    limit: u64,
    segment_size: usize,
    base: Vec<u64>,
    /// Next odd multiple to strike for each base prime.
    next: Vec<u64>,
    /// First odd number of the segment to sieve next.
    lo: u64,
    buffer: Vec<u64>,
    pos: usize,
    two_pending: bool,
}

impl PrimeStream {
    pub fn new(limit: u64) -> Self {
        Self::with_segment_size(limit, DEFAULT_SEGMENT)
    }

    pub fn with_segment_size(limit: u64, segment_size: usize) -> Self {
        let segment_size = segment_size.max(64);
        let base = base_primes(limit);
        let next = base.iter().map(|&q| q * q).collect();
        PrimeStream {
            limit,
            segment_size,
            base,
            next,
            lo: 3,
            buffer: Vec::new(),
            pos: 0,
            two_pending: limit > 2,
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn segment_size(&self) -> usize {
        self.segment_size
    }

    fn refill(&mut self) -> bool {
        self.buffer.clear();
        self.pos = 0;
        while self.buffer.is_empty() && self.lo < self.limit {
            let span = (self.segment_size as u64) * 2;
            let hi = (self.lo + span).min(self.limit);
            let mut composite = vec![false; ((hi - self.lo) as usize).div_ceil(2)];
            for (q, next) in self.base.iter().zip(self.next.iter_mut()) {
                let mut m = *next;
                while m < hi {
                    composite[((m - self.lo) / 2) as usize] = true;
                    m += 2 * q;
                }
                *next = m;
            }
            let lo = self.lo;
            self.buffer.extend(
                composite
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| !c)
                    .map(|(i, _)| lo + 2 * i as u64)
                    .filter(|&n| n < hi),
            );
            self.lo = hi + (hi % 2 == 0) as u64;
        }
        !self.buffer.is_empty()
    }
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.two_pending {
            self.two_pending = false;
            return Some(2);
        }
        if self.pos >= self.buffer.len() && !self.refill() {
            return None;
        }
        let p = self.buffer[self.pos];
        self.pos += 1;
        Some(p)
    }
}

/// Odd primes `q` with `q * q < limit`, by trial division.
fn base_primes(limit: u64) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    let mut n = 3u64;
    while n.saturating_mul(n) < limit {
        if out.iter().take_while(|&&q| q * q <= n).all(|&q| n % q != 0) {
            out.push(n);
        }
        n += 2;
    }
    out
}

/// All primes `< limit`, in increasing order.
///
/// Segments are sieved in parallel and concatenated in order.
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit <= 2 {
        return Vec::new();
    }
    let base = base_primes(limit);
    let span = 2 * DEFAULT_SEGMENT as u64;
    let segments = (limit - 3).div_ceil(span);
    let parts: Vec<Vec<u64>> = (0..segments)
        .into_par_iter()
        .map(|k| {
            let lo = 3 + k * span;
            let hi = (lo + span).min(limit);
            sieve_segment(lo, hi, &base)
        })
        .collect();
    let mut out = Vec::with_capacity(parts.iter().map(Vec::len).sum::<usize>() + 1);
    out.push(2);
    for part in parts {
        out.extend(part);
    }
    out
}

/// Odd primes in `[lo, hi)`, `lo` odd.
fn sieve_segment(lo: u64, hi: u64, base: &[u64]) -> Vec<u64> {
    let mut composite = vec![false; ((hi - lo) as usize).div_ceil(2)];
    for &q in base {
        if q * q >= hi {
            break;
        }
        let mut m = (q * q).max(lo.div_ceil(q) * q);
        if m % 2 == 0 {
            m += q;
        }
        while m < hi {
            composite[((m - lo) / 2) as usize] = true;
            m += 2 * q;
        }
    }
    composite
        .iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(i, _)| lo + 2 * i as u64)
        .filter(|&n| n < hi)
        .collect()
}

/// Plain unsegmented sieve over all integers below `limit`.
///
/// Kept deliberately simple; it serves as the reference for the segmented
/// implementation.
pub fn sieve_unsegmented(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    if n <= 2 {
        return Vec::new();
    }
    let mut is_prime = vec![true; n];
    is_prime[0] = false;
    is_prime[1] = false;
    let mut i = 2;
    while i * i < n {
        if is_prime[i] {
            for j in (i * i..n).step_by(i) {
                is_prime[j] = false;
            }
        }
        i += 1;
    }
    (0..n).filter(|&k| is_prime[k]).map(|k| k as u64).collect()
}
