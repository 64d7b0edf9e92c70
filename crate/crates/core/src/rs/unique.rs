//! Berlekamp-Welch decoding, solved as a key equation with the extended
//! Euclidean algorithm.

use crate::field::PrimeField;
use crate::poly::raw;

use super::RsContext;

/// Stops the remainder sequence of (g0, g1) once deg r < (npts + d + 1) / 2
/// and returns r / v when that division is exact and of degree <= d.
pub(crate) fn key_equation(f: &PrimeField, g0: &[u64], g1: Vec<u64>, npts: usize, d: usize) -> Option<Vec<u64>> {
    let done = |r: &[u64]| 2 * r.len() < npts + d + 3;
    let mut r0 = g0.to_vec();
    let mut r1 = g1;
    let mut v0: Vec<u64> = Vec::new();
    let mut v1: Vec<u64> = vec![1];
    while !done(&r1) {
        let (q, r) = raw::divrem(f, &r0, &r1);
        let v2 = raw::sub(f, &v0, &raw::mul(f, &q, &v1));
        r0 = r1;
        r1 = r;
        v0 = v1;
        v1 = v2;
    }
    let (p, rem) = raw::divrem(f, &r1, &v1);
    if !rem.is_empty() || p.len() > d + 1 {
        return None;
    }
    Some(p)
}

/// Errors-and-erasures decoding. Returns the polynomial and the number of
/// disagreements on unerased positions, only when 2E + F < n - d.
pub(crate) fn ee_raw(ctx: &RsContext, d: usize, vals: &[u64], erased: &[bool]) -> Option<(Vec<u64>, u64)> {
    let f = ctx.field();
    let n = ctx.len();
    let pts = ctx.points();
    let nf = erased.iter().filter(|&&e| e).count();
    if nf + d >= n {
        return None;
    }
    let npts = n - nf;
    let (g0, g1) = if nf == 0 {
        (ctx.vanishing().to_vec(), ctx.interpolate(vals))
    } else {
        let zeroed: Vec<u64> = vals.iter().zip(erased).map(|(&v, &e)| if e { 0 } else { v }).collect();
        let full = ctx.interpolate(&zeroed);
        let g0 = if 2 * nf < n {
            let gamma: Vec<u64> = pts.iter().zip(erased).filter(|(_, &e)| e).map(|(&a, _)| a).collect();
            raw::divrem(f, ctx.vanishing(), &raw::from_roots(f, &gamma)).0
        } else {
            let keep: Vec<u64> = pts.iter().zip(erased).filter(|(_, &e)| !e).map(|(&a, _)| a).collect();
            raw::from_roots(f, &keep)
        };
        let g1 = raw::rem(f, &full, &g0);
        (g0, g1)
    };
    if g1.len() <= d + 1 {
        // already a codeword on the unerased positions
        return Some((g1, 0));
    }
    let p = key_equation(f, &g0, g1, npts, d)?;
    let got = ctx.evaluate(&p);
    let errs = got
        .iter()
        .zip(vals)
        .zip(erased)
        .filter(|((a, b), &e)| !e && a != b)
        .count();
    if 2 * errs + nf < n - d {
        Some((p, errs as u64))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::EvalSet;

    fn ctx(p: u64, n: usize) -> RsContext {
        RsContext::new(EvalSet::prefix(PrimeField::new(p).unwrap(), n).unwrap())
    }

    #[test]
    fn corrects_up_to_half_distance() {
        let c = ctx(97, 20);
        let d = 7;
        let poly: Vec<u64> = (0..=d as u64).map(|i| (i * 13 + 2) % 97).collect();
        let clean = c.evaluate(&poly);
        // 2e < 13 allows 6 errors
        let mut r = clean.clone();
        for i in 0..6 {
            r[i * 3] = (r[i * 3] + 1 + i as u64) % 97;
        }
        let (got, e) = ee_raw(&c, d, &r, &vec![false; 20]).unwrap();
        assert_eq!(got, poly);
        assert_eq!(e, 6);
    }

    #[test]
    fn erasures_count_once() {
        let c = ctx(97, 20);
        let d = 7;
        let poly: Vec<u64> = (0..=d as u64).map(|i| (i * 29 + 1) % 97).collect();
        let mut r = c.evaluate(&poly);
        let mut erased = vec![false; 20];
        // 2 * 3 + 6 = 12 < 13
        for i in 0..6 {
            erased[19 - i] = true;
            r[19 - i] = 0;
        }
        for i in 0..3 {
            r[i] = (r[i] + 5) % 97;
        }
        let (got, e) = ee_raw(&c, d, &r, &erased).unwrap();
        assert_eq!(got, poly);
        assert_eq!(e, 3);
        // one more error breaks the bound
        r[4] = (r[4] + 1) % 97;
        if let Some((p, e)) = ee_raw(&c, d, &r, &erased) {
            assert!(2 * e as usize + 6 < 13);
            assert_ne!(p, poly);
        }
    }
}
