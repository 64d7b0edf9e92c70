//! Roots of univariate polynomials over GF(p).

use crate::field::PrimeField;
use crate::poly::raw;

/// Fields up to this size are searched exhaustively.
const BRUTE_LIMIT: u64 = 4096;

/// Distinct roots of a nonzero polynomial, ascending.
pub(crate) fn roots(f: &PrimeField, h: &[u64]) -> Vec<u64> {
    let mut h = h.to_vec();
    raw::trim(&mut h);
    if h.len() <= 1 {
        return Vec::new();
    }
    let p = f.modulus();
    let mut out = if p <= BRUTE_LIMIT {
        (0..p).filter(|&x| raw::eval(f, &h, x) == 0).collect()
    } else {
        // gcd with x^p - x keeps exactly the product of distinct linear factors
        let h = raw::monic(f, &h);
        let xp = raw::powmod(f, &[0, 1], p, &h);
        let g = raw::gcd(f, &raw::sub(f, &xp, &[0, 1]), &h);
        let mut acc = Vec::new();
        split(f, g, 1, &mut acc);
        acc
    };
    out.sort_unstable();
    out
}

/// Equal-degree splitting of a squarefree product of linear factors, with
/// shifts delta = 1, 2, ... in place of random ones.
fn split(f: &PrimeField, g: Vec<u64>, mut delta: u64, out: &mut Vec<u64>) {
    match g.len() {
        0 | 1 => return,
        2 => {
            // x + c
            out.push(f.neg_raw(f.mul_raw(g[0], f.inv_raw(g[1]))));
            return;
        }
        _ => {}
    }
    let p = f.modulus();
    loop {
        let shift = [delta % p, 1];
        delta += 1;
        let t = raw::powmod(f, &shift, (p - 1) / 2, &g);
        let h = raw::gcd(f, &raw::sub(f, &t, &[1]), &g);
        if h.len() > 1 && h.len() < g.len() {
            let rest = raw::divrem(f, &g, &h).0;
            split(f, h, delta, out);
            split(f, rest, delta, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_field_matches_planted_roots() {
        let f = PrimeField::new(1_000_000_007).unwrap();
        let planted = [3u64, 17, 999_999_999, 123_456_789, 42];
        let mut h = raw::from_roots(&f, &planted);
        // an irreducible quadratic factor contributes no roots
        h = raw::mul(&f, &h, &[5, 0, 1]);
        h = raw::mul(&f, &h, &raw::from_roots(&f, &[17]));
        let mut want = planted.to_vec();
        want.sort_unstable();
        let got = roots(&f, &h);
        // x^2 + 5 may split; accept its roots if they are genuine
        for r in &want {
            assert!(got.contains(r));
        }
        for r in &got {
            assert_eq!(raw::eval(&f, &h, *r), 0);
        }
    }

    #[test]
    fn small_field_brute_force() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(roots(&f, &raw::from_roots(&f, &[6, 1, 1])), vec![1, 6]);
        assert!(roots(&f, &[3]).is_empty());
    }
}
