//! Randomized decoders. Rows are list decoded (plain words) or soft decoded
//! (weighted words) once per epoch, and the row results are reused for a
//! whole epoch of coefficients by subtracting each recovered leading term.

use crate::error::Result;
use crate::field::Fe;
use crate::multipoly::MultiPoly;
use crate::poly::{raw, UniPoly};
use crate::rational::{Distance, Rational};
use crate::rng::SeededRng;
use crate::rs::{fast_raw, list_raw, Decoded, FailureReason};
use crate::weighted::{wdist_raw, WeightedSymbol};

use super::slow::{self, row_symbol};
use super::{
    assemble_parts, eval_part, subtract_layer, univariate_part, CodeParams, FastParams, Probe, RmDecodeOutcome,
    StepTrace,
};

const TAG_ROWS: u64 = 1;
const TAG_COEFFS: u64 = 2;

/// Epoch layout of the list-based decoders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ListSchedule {
    /// Coefficients per epoch.
    pub ell: usize,
    /// (row degree, list radius) per epoch.
    pub epochs: Vec<(usize, usize)>,
}

/// ell = max(1, floor(2cn)), t_j = floor((n - d + j ell) / 2 + cn), with
/// c = (1 - d/n)^2 / 8. None when cn < 1 or some radius is past the
/// Johnson bound.
pub(crate) fn list_schedule(n: usize, d: usize) -> Option<ListSchedule> {
    let gap = (n - d) as i128;
    let cn = Rational::new(gap * gap, 8 * n as i128).ok()?;
    if cn < Rational::ONE {
        return None;
    }
    let ell = ((cn * Rational::from_int(2)).floor() as usize).max(1);
    let count = (d + 1).div_ceil(ell);
    let mut epochs = Vec::with_capacity(count);
    for j in 0..count {
        let dj = d - j * ell;
        let t = (Rational::new((n - d + j * ell) as i128, 2).ok()? + cn).floor() as usize;
        if t >= n || (n - t) * (n - t) < n * (dj + 1) {
            return None;
        }
        let last = (j * ell + ell - 1).min(d);
        assert!((n - d + last).div_ceil(2) <= t, "list radius misses the epoch's last coefficient");
        epochs.push((dj, t));
    }
    Some(ListSchedule { ell, epochs })
}

/// Plain-word decoding with reused row lists: two variables use randomized
/// Reed-Solomon decoding for each coefficient, more variables use the
/// weighted fast decoder.
pub(crate) fn list_peeling(
    code: &CodeParams,
    r: &[u64],
    fp: &FastParams,
    rng: &SeededRng,
    probe: &mut Probe,
) -> Result<RmDecodeOutcome> {
    let ctx = code.context();
    let f = *code.field();
    let n = code.side();
    let d = code.degree();
    let m = code.num_vars();
    let s = fp.sqrt_loss(n);
    let radius = fp.fast_radius(code);
    let schedule = list_schedule(n, d).filter(|_| n > d + (m - 1) * s);
    let Some(schedule) = schedule else {
        probe.stats.at(0).fallbacks += 1;
        let found = if m == 2 {
            slow::bivariate(code, r, probe, 0)?.map(|(p, h)| (p, Rational::from(h)))
        } else {
            let w: Vec<WeightedSymbol> = r.iter().map(|&v| WeightedSymbol::certain(Fe(v))).collect();
            slow::soft_recursive(code, &w, probe, 0)?
        };
        return Ok(match found {
            Some((poly, dist)) if dist < radius => Decoded::Unique { poly, dist },
            _ => Decoded::Failure(FailureReason::NoCodewordInRadius),
        });
    };
    probe.stats.at(0).calls += 1;
    let repeats = fp.repeats_for(n);
    let coeff_rng = rng.split(TAG_COEFFS);
    let mut cur = r.to_vec();
    let mut parts = Vec::with_capacity(d + 1);
    for (j, &(dj, t)) in schedule.epochs.iter().enumerate() {
        let mut lists = Vec::with_capacity(cur.len() / n);
        for row in cur.chunks(n) {
            lists.push(list_raw(ctx, dj, row, Rational::from(t))?);
        }
        let lvl = probe.stats.at(0);
        lvl.epochs += 1;
        lvl.row_list_decodes += lists.len() as u64;
        let mut layers = Vec::new();
        for i in j * schedule.ell..((j + 1) * schedule.ell).min(d + 1) {
            let pos = d - i;
            let word: Vec<WeightedSymbol> = lists
                .iter()
                .map(|list| match list.iter().find(|(_, e)| 2 * (*e as usize) < n - d + i) {
                    Some((p, e)) => row_symbol(p, pos, Rational::from(*e), n - d + i),
                    None => WeightedSymbol::erased(),
                })
                .collect();
            let lvl = probe.stats.at(0);
            lvl.iterations += 1;
            lvl.coeff_decodes += 1;
            let mut crng = coeff_rng.split(i as u64);
            let q = if m == 2 {
                let rad = Rational::new((n - i - s) as i128, 2)?;
                let found = fast_raw(ctx, i, &word, rad, &mut crng, repeats, &mut probe.stats.rs_trials)?;
                found.map(|(q, _)| univariate_part(&f, &q, i))
            } else {
                soft_fast_coefficient(&code.child(m - 1, i), n - d + i, &word, fp, &crng, probe, 1)?.map(|(q, _)| q)
            };
            let Some(q) = q else { return Ok(Decoded::Failure(FailureReason::RandomizedMiss)) };
            let qvals = eval_part(&code.child(m - 1, i), &q)?;
            probe.record(0, || StepTrace {
                index: i,
                word,
                recovered: q.clone(),
                lists: Some(
                    lists
                        .iter()
                        .map(|l| l.iter().map(|(p, e)| (UniPoly::from_raw(f, p.clone()), *e)).collect())
                        .collect(),
                ),
            });
            for (list, &qx) in lists.iter_mut().zip(&qvals) {
                list.retain(|(p, _)| p.get(pos).copied().unwrap_or(0) == qx);
                for (p, _) in list.iter_mut() {
                    if pos < p.len() {
                        p[pos] = 0;
                        raw::trim(p);
                    }
                }
            }
            layers.push((pos, qvals));
            parts.push(q);
        }
        for (pos, qvals) in layers {
            subtract_layer(&f, &mut cur, &qvals, &ctx.powers_of(pos));
        }
    }
    let h = cur.iter().filter(|&&v| v != 0).count();
    let dist = Rational::from(h);
    if dist < radius {
        Ok(Decoded::Unique { poly: assemble_parts(code, &parts)?, dist })
    } else {
        Ok(Decoded::Failure(FailureReason::NoCodewordInRadius))
    }
}

/// Recovers a coefficient polynomial in m' >= 2 variables and degree i from
/// its weighted word at radius (n^m' / 2)(1 - (i + m' s) / (n - d + i)),
/// using slack e_i = floor((i + m' s)(d - i) / (n - d + i)) clamped to the
/// valid range. Falls back to the deterministic decoder when no slack is
/// valid.
fn soft_fast_coefficient(
    sub: &CodeParams,
    outer_gap: usize,
    word: &[WeightedSymbol],
    fp: &FastParams,
    rng: &SeededRng,
    probe: &mut Probe,
    depth: usize,
) -> Result<Option<(MultiPoly, Distance)>> {
    let n = sub.side();
    let i = sub.degree();
    let mp = sub.num_vars();
    let s = fp.sqrt_loss(n);
    let loss = i + mp * s;
    if loss >= n {
        probe.stats.at(depth).fallbacks += 1;
        return slow::soft_recursive(sub, word, probe, depth);
    }
    // outer_gap = n - d + i, so d - i = n - outer_gap
    let ideal = loss * (n - outer_gap) / outer_gap;
    let e = ideal.min(n - loss - 1);
    soft_fast(sub, word, fp, e, rng, probe, depth)
}

/// Weighted decoding with slack e for m >= 2 variables at radius
/// n^(m-1) (n - d - m s - e) / 2, which the caller guarantees is positive.
pub(crate) fn soft_fast(
    code: &CodeParams,
    w: &[WeightedSymbol],
    fp: &FastParams,
    e: usize,
    rng: &SeededRng,
    probe: &mut Probe,
    depth: usize,
) -> Result<Option<(MultiPoly, Distance)>> {
    let ctx = code.context();
    let f = *code.field();
    let n = code.side();
    let d = code.degree();
    let m = code.num_vars();
    let s = fp.sqrt_loss(n);
    let radius = fp.soft_radius(code, e);
    debug_assert!(radius > Rational::ZERO);
    probe.stats.at(depth).calls += 1;
    let repeats = fp.repeats_for(n);
    let row_rng = rng.split(TAG_ROWS);
    let coeff_rng = rng.split(TAG_COEFFS);
    let mut cur: Vec<u64> = w.iter().map(|x| x.sigma.value()).collect();
    let mut parts = Vec::with_capacity(d + 1);
    let mut row = Vec::with_capacity(n);
    for j in 0..(d + 1).div_ceil(e + 1) {
        let base = j * (e + 1);
        let dj = d - base;
        let t = Rational::new((n - dj - s) as i128, 2)?;
        let epoch_rng = row_rng.split(j as u64);
        let mut decoded = Vec::with_capacity(cur.len() / n);
        for (x, vals) in cur.chunks(n).enumerate() {
            row.clear();
            row.extend(vals.iter().zip(&w[x * n..(x + 1) * n]).map(|(&v, sym)| WeightedSymbol { sigma: Fe(v), u: sym.u }));
            let mut xr = epoch_rng.split(x as u64);
            decoded.push(fast_raw(ctx, dj, &row, t, &mut xr, repeats, &mut probe.stats.rs_trials)?);
        }
        let lvl = probe.stats.at(depth);
        lvl.epochs += 1;
        lvl.row_soft_decodes += decoded.len() as u64;
        let mut layers = Vec::new();
        for i in base..(base + e + 1).min(d + 1) {
            let pos = d - i;
            let den = n - d + i - s - e;
            let word: Vec<WeightedSymbol> = decoded
                .iter()
                .map(|dx| match dx {
                    Some((p, dist)) => {
                        let mut sym = row_symbol(p, pos, *dist, den);
                        if p.len() > pos + 1 {
                            sym.sigma = Fe::ZERO;
                        }
                        sym
                    }
                    None => WeightedSymbol::erased(),
                })
                .collect();
            let lvl = probe.stats.at(depth);
            lvl.iterations += 1;
            lvl.coeff_decodes += 1;
            let mut crng = coeff_rng.split(i as u64);
            let sub = code.child(m - 1, i);
            let q = if m == 2 {
                let rad = Rational::new((n - i - s) as i128, 2)?;
                let found = fast_raw(ctx, i, &word, rad, &mut crng, repeats, &mut probe.stats.rs_trials)?;
                found.map(|(q, _)| univariate_part(&f, &q, i))
            } else {
                soft_fast_coefficient(&sub, n - d + i, &word, fp, &crng, probe, depth + 1)?.map(|(q, _)| q)
            };
            let Some(q) = q else { return Ok(None) };
            let qvals = eval_part(&sub, &q)?;
            probe.record(depth, || StepTrace { index: i, word, recovered: q.clone(), lists: None });
            for (dx, &qx) in decoded.iter_mut().zip(&qvals) {
                if let Some((p, _)) = dx {
                    if p.len() <= pos {
                        p.resize(pos + 1, 0);
                    }
                    p[pos] = f.sub_raw(p[pos], qx);
                    raw::trim(p);
                }
            }
            layers.push((pos, qvals));
            parts.push(q);
        }
        for (pos, qvals) in layers {
            subtract_layer(&f, &mut cur, &qvals, &ctx.powers_of(pos));
        }
    }
    let enc: Vec<u64> = w.iter().zip(&cur).map(|(x, &res)| f.sub_raw(x.sigma.value(), res)).collect();
    let dist = wdist_raw(w, &enc)?;
    if dist < radius {
        Ok(Some((assemble_parts(code, &parts)?, dist)))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_for_half_rate() {
        // n = 64, d = 32: cn = 2, ell = 4, nine epochs
        let s = list_schedule(64, 32).unwrap();
        assert_eq!(s.ell, 4);
        assert_eq!(s.epochs.len(), 9);
        assert_eq!(s.epochs[0], (32, 18));
        assert_eq!(s.epochs[8], (0, 34));
    }

    #[test]
    fn schedule_refuses_tiny_cases() {
        assert!(list_schedule(16, 8).is_none());
    }
}
