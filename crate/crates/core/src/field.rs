//! Prime field arithmetic for moduli below 2^62.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported modulus bound (exclusive).
pub const MAX_MODULUS: u64 = 1 << 62;

/// An element of a prime field, stored as its canonical residue.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct Fe(pub(crate) u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    /// A residue not yet checked against a field; constructors taking a
    /// field reject values at or above its modulus.
    pub const fn new(v: u64) -> Fe {
        Fe(v)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// GF(p) with a precomputed Barrett constant.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    p: u64,
    shift: u32,
    mu: u64,
    // number of products < p^2 that fit in a u128 accumulator
    lazy: usize,
    // 2^64 mod p
    r64: u64,
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl Eq for PrimeField {}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let s = 64 - p.leading_zeros();
        let mu = ((1u128 << (2 * s)) / p as u128) as u64;
        let sq = ((p - 1) as u128) * ((p - 1) as u128);
        let lazy = if sq == 0 { usize::MAX } else { (u128::MAX / sq).min(1 << 30) as usize };
        let r64 = ((1u128 << 64) % p as u128) as u64;
        Ok(PrimeField { p, shift: s, mu, lazy, r64 })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Field element from an integer already in `[0, p)`.
    pub fn elem(&self, v: u64) -> Result<Fe> {
        if v >= self.p {
            return Err(Error::NotInField { value: v, modulus: self.p });
        }
        Ok(Fe(v))
    }

    /// Reduce an arbitrary integer into the field.
    pub fn reduce(&self, v: u64) -> Fe {
        Fe(v % self.p)
    }

    pub fn from_i64(&self, v: i64) -> Fe {
        let r = v.rem_euclid(self.p as i64);
        Fe(r as u64)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.add_raw(a.0, b.0))
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.sub_raw(a.0, b.0))
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.mul_raw(a.0, b.0))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        Fe(self.pow_raw(a.0, e))
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Fe(self.inv_raw(a.0)))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    #[inline]
    pub(crate) fn add_raw(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u64, b: u64) -> u64 {
        self.reduce_wide(a as u128 * b as u128)
    }

    /// Any u128 modulo p, without 128-bit division.
    #[inline]
    pub(crate) fn reduce_u128(&self, x: u128) -> u64 {
        let hi = (x >> 64) as u64;
        let lo = x as u64 % self.p;
        if hi == 0 {
            return lo;
        }
        self.add_raw(self.mul_raw(hi % self.p, self.r64), lo)
    }

    /// floor(c 2^64 / p), for repeated products with the same c.
    #[inline]
    pub(crate) fn shoup(&self, c: u64) -> u64 {
        (((c as u128) << 64) / self.p as u128) as u64
    }

    /// c * b with cs = shoup(c) and b < p.
    #[inline]
    pub(crate) fn mul_shoup(&self, c: u64, cs: u64, b: u64) -> u64 {
        let q = ((cs as u128 * b as u128) >> 64) as u64;
        let r = c.wrapping_mul(b).wrapping_sub(q.wrapping_mul(self.p));
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    /// Barrett reduction of x < p^2.
    #[inline]
    pub(crate) fn reduce_wide(&self, x: u128) -> u64 {
        let q1 = (x >> (self.shift - 1)) as u64;
        let q3 = ((q1 as u128 * self.mu as u128) >> (self.shift + 1)) as u64;
        let mut r = (x as u64).wrapping_sub(q3.wrapping_mul(self.p));
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    pub(crate) fn pow_raw(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, a);
            }
            a = self.mul_raw(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse by the extended Euclidean algorithm. Caller guarantees a != 0.
    pub(crate) fn inv_raw(&self, a: u64) -> u64 {
        debug_assert!(a != 0 && a < self.p);
        let (mut r0, mut r1) = (self.p as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        t0.rem_euclid(self.p as i128) as u64
    }

    /// Inverts every entry in place with one field inversion. Entries must be nonzero.
    pub(crate) fn batch_inv_raw(&self, xs: &mut [u64]) {
        if xs.is_empty() {
            return;
        }
        let mut prefix = Vec::with_capacity(xs.len());
        let mut acc = 1u64;
        for &x in xs.iter() {
            prefix.push(acc);
            acc = self.mul_raw(acc, x);
        }
        let mut inv = self.inv_raw(acc);
        for i in (0..xs.len()).rev() {
            let x = xs[i];
            xs[i] = self.mul_raw(inv, prefix[i]);
            inv = self.mul_raw(inv, x);
        }
    }

    /// Sum of a[i]*b[i] with lazy reduction.
    #[inline]
    pub(crate) fn dot_raw(&self, a: &[u64], b: &[u64]) -> u64 {
        debug_assert_eq!(a.len(), b.len());
        let mut total = 0u64;
        for (ca, cb) in a.chunks(self.lazy).zip(b.chunks(self.lazy)) {
            let mut acc = 0u128;
            for (&x, &y) in ca.iter().zip(cb) {
                acc += x as u128 * y as u128;
            }
            total = self.add_raw(total, self.reduce_u128(acc));
        }
        total
    }

    /// Uniformly distributed element from a 64-bit source by rejection.
    pub fn sample(&self, mut next: impl FnMut() -> u64) -> Fe {
        let zone = u64::MAX - (u64::MAX % self.p);
        loop {
            let v = next();
            if v < zone {
                return Fe(v % self.p);
            }
        }
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powm = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulm(acc, a);
            }
            a = mulm(a, a);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mulm(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_moduli() {
        assert!(matches!(PrimeField::new(6), Err(Error::NotPrime(6))));
        assert!(matches!(PrimeField::new(1), Err(Error::NotPrime(1))));
        assert!(PrimeField::new(1 << 62).is_err());
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn elem_range() {
        let f = PrimeField::new(7).unwrap();
        assert!(f.elem(6).is_ok());
        assert!(matches!(f.elem(7), Err(Error::NotInField { .. })));
    }

    #[test]
    fn barrett_matches_naive() {
        let p = (1u64 << 61) - 1;
        let f = PrimeField::new(p).unwrap();
        let mut x = 0x9e3779b97f4a7c15u64;
        for _ in 0..10_000 {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            let a = x % p;
            let b = x.rotate_left(21) % p;
            let want = ((a as u128 * b as u128) % p as u128) as u64;
            assert_eq!(f.mul_raw(a, b), want);
        }
    }

    #[test]
    fn small_field_tables() {
        for p in [2u64, 3, 5, 7, 11, 257] {
            let f = PrimeField::new(p).unwrap();
            for a in 0..p {
                for b in 0..p {
                    assert_eq!(f.mul_raw(a, b), a * b % p);
                }
                if a != 0 {
                    assert_eq!(f.mul_raw(a, f.inv_raw(a)), 1);
                }
            }
        }
    }

    #[test]
    fn primality_against_trial_division() {
        let slow = |n: u64| n >= 2 && (2..n).take_while(|q| q * q <= n).all(|q| n % q != 0);
        for n in 0..5000 {
            assert_eq!(is_prime(n), slow(n), "{n}");
        }
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn shoup_matches_barrett() {
        for p in [2u64, 257, 65537, (1 << 61) - 1] {
            let f = PrimeField::new(p).unwrap();
            let mut x = 12345u64;
            for _ in 0..2000 {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let (a, b) = (x % p, (x >> 17) % p);
                assert_eq!(f.mul_shoup(a, f.shoup(a), b), f.mul_raw(a, b));
            }
        }
    }

    #[test]
    fn dot_is_reduced() {
        let p = (1u64 << 62) - 57;
        let f = PrimeField::new(p).unwrap();
        let a: Vec<u64> = (0..100).map(|i| p - 1 - i).collect();
        let b: Vec<u64> = (0..100).map(|i| p - 2 - i).collect();
        let mut want = 0u64;
        for i in 0..100 {
            want = f.add_raw(want, f.mul_raw(a[i], b[i]));
        }
        assert_eq!(f.dot_raw(&a, &b), want);
    }
}
