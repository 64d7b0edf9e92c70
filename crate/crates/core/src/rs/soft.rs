//! Soft decoding of weighted words: the deterministic erasure schedule and
//! the randomized one.

use crate::error::Result;
use crate::rational::{Distance, Rational};
use crate::rng::SeededRng;
use crate::weighted::{wdist_raw, WeightedSymbol};

use super::{ee_raw, RsContext};

/// Tries erasing the s most uncertain positions for s = 0, 1, ..., n-d-1
/// (ties broken by lower index) and returns the first candidate strictly
/// inside the radius.
///
/// Prefixes that split a run of equal uncertainties are skipped: a candidate
/// within the radius is unique, and some prefix ending at a run boundary
/// always finds it.
pub(crate) fn gmd_raw(
    ctx: &RsContext,
    d: usize,
    w: &[WeightedSymbol],
    radius: Distance,
) -> Result<Option<(Vec<u64>, Distance)>> {
    let n = ctx.len();
    let sigma: Vec<u64> = w.iter().map(|s| s.sigma.0).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| w[b].u.cmp(&w[a].u).then(a.cmp(&b)));
    let mut erased = vec![false; n];
    let mut tried: Vec<Vec<u64>> = Vec::new();
    for s in 0..n - d {
        if s > 0 {
            erased[order[s - 1]] = true;
            let boundary = w[order[s - 1]].u != w[order[s]].u;
            if !boundary {
                continue;
            }
        }
        let Some((p, _)) = ee_raw(ctx, d, &sigma, &erased) else { continue };
        if tried.contains(&p) {
            continue;
        }
        let dist = wdist_raw(w, &ctx.evaluate(&p))?;
        if dist < radius {
            return Ok(Some((p, dist)));
        }
        tried.push(p);
    }
    Ok(None)
}

/// Erases position i with probability u_i, independently, and decodes with
/// erasures; accepts the first candidate strictly inside the radius.
pub(crate) fn fast_raw(
    ctx: &RsContext,
    d: usize,
    w: &[WeightedSymbol],
    radius: Distance,
    rng: &mut SeededRng,
    repeats: u32,
    trials: &mut u64,
) -> Result<Option<(Vec<u64>, Distance)>> {
    let n = ctx.len();
    let sigma: Vec<u64> = w.iter().map(|s| s.sigma.0).collect();
    let mut erased = vec![false; n];
    let mut tried: Vec<Vec<u64>> = Vec::new();
    for _ in 0..repeats {
        *trials += 1;
        let mut nf = 0;
        for (slot, s) in erased.iter_mut().zip(w) {
            *slot = bernoulli(rng, s.u.value());
            nf += *slot as usize;
        }
        if nf + d >= n {
            continue;
        }
        let Some((p, _)) = ee_raw(ctx, d, &sigma, &erased) else { continue };
        if tried.contains(&p) {
            continue;
        }
        let dist = wdist_raw(w, &ctx.evaluate(&p))?;
        if dist < radius {
            return Ok(Some((p, dist)));
        }
        tried.push(p);
    }
    Ok(None)
}

/// True with probability exactly num/den, from one 64-bit draw.
pub(crate) fn bernoulli(rng: &mut SeededRng, q: Rational) -> bool {
    if q.is_zero() {
        return false;
    }
    if q == Rational::ONE {
        return true;
    }
    let rho = rng.next_u64() as u128;
    rho * (q.denom() as u128) < (q.numer() as u128) << 64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fe, PrimeField};
    use crate::multipoly::EvalSet;
    use crate::weighted::Uncertainty;

    #[test]
    fn bernoulli_frequency() {
        let mut rng = SeededRng::new(7);
        let q = Rational::new(3, 10).unwrap();
        let hits = (0..20_000).filter(|_| bernoulli(&mut rng, q)).count();
        assert!((5_600..6_400).contains(&hits), "{hits}");
    }

    #[test]
    fn gmd_uses_erasures() {
        let f = PrimeField::new(31).unwrap();
        let ctx = RsContext::new(EvalSet::prefix(f, 12).unwrap());
        let d = 3;
        let poly = vec![4, 0, 9, 1];
        let vals = ctx.evaluate(&poly);
        // five errors is beyond plain unique decoding (2 * 5 >= 9) but they
        // are flagged as unreliable
        let mut w: Vec<WeightedSymbol> = vals.iter().map(|&v| WeightedSymbol::certain(Fe(v))).collect();
        for i in 0..5 {
            w[i].sigma = Fe((vals[i] + 1) % 31);
            w[i].u = Uncertainty::from_ratio(9, 10).unwrap();
        }
        let radius = Rational::new(9, 2).unwrap();
        let (p, dist) = gmd_raw(&ctx, d, &w, radius).unwrap().unwrap();
        assert_eq!(p, poly);
        assert_eq!(dist, Rational::new(11, 4).unwrap());
    }
}
