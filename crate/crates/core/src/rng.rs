//! Seeded, splittable randomness.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Deterministic generator. `split` derives an independent child from the
/// parent's key and a tag without consuming parent state, so results do not
/// depend on the order in which children are used.
#[derive(Clone, Debug)]
pub struct SeededRng {
    key: [u8; 32],
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        let mut h = Sha256::new();
        h.update(b"seed");
        h.update(seed.to_le_bytes());
        Self::from_key(h.finalize().into())
    }

    fn from_key(key: [u8; 32]) -> Self {
        SeededRng { key, inner: ChaCha8Rng::from_seed(key) }
    }

    pub fn split(&self, tag: u64) -> SeededRng {
        let mut h = Sha256::new();
        h.update(self.key);
        h.update(tag.to_le_bytes());
        Self::from_key(h.finalize().into())
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform integer in [0, bound) by rejection.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    /// k distinct indices from [0, n), in the order drawn.
    pub fn sample_distinct(&mut self, n: usize, k: usize) -> Vec<usize> {
        assert!(k <= n, "cannot draw {k} of {n}");
        // partial Fisher-Yates over a sparse permutation
        let mut swapped = std::collections::HashMap::new();
        let mut out = Vec::with_capacity(k);
        for i in 0..k {
            let j = i + self.below((n - i) as u64) as usize;
            let vj = *swapped.get(&j).unwrap_or(&j);
            let vi = *swapped.get(&i).unwrap_or(&i);
            swapped.insert(j, vi);
            out.push(vj);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_order_free() {
        let a = SeededRng::new(1);
        let mut x = a.split(3);
        let mut b = SeededRng::new(1);
        b.next_u64();
        let mut y = b.split(3);
        assert_eq!(x.next_u64(), y.next_u64());
        assert_ne!(a.split(4).next_u64(), a.split(3).next_u64());
    }

    #[test]
    fn distinct_samples() {
        let mut r = SeededRng::new(9);
        let s = r.sample_distinct(50, 50);
        let mut t = s.clone();
        t.sort();
        assert_eq!(t, (0..50).collect::<Vec<_>>());
    }
}
