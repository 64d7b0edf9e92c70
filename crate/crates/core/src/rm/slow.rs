//! Deterministic decoders: row-wise unique decoding for two variables and
//! row-wise soft decoding with recursion on the number of variables.

use crate::error::Result;
use crate::field::Fe;
use crate::multipoly::MultiPoly;
use crate::rational::{Distance, Rational};
use crate::rs::{ee_raw, gmd_raw};
use crate::weighted::{wdist_raw, Uncertainty, WeightedSymbol};

use super::{assemble_parts, eval_part, subtract_layer, univariate_part, CodeParams, Probe, StepTrace};

/// The decoded row's coefficient at `pos`, with uncertainty
/// min(1, dist / (den / 2)).
pub(super) fn row_symbol(coeffs: &[u64], pos: usize, dist: Distance, den: usize) -> WeightedSymbol {
    let u = (dist * Rational::from_int(2) / Rational::from(den)).min(Rational::ONE);
    WeightedSymbol { sigma: Fe(coeffs.get(pos).copied().unwrap_or(0)), u: Uncertainty::new(u).expect("clamped") }
}

pub(crate) fn bivariate(code: &CodeParams, r: &[u64], probe: &mut Probe, depth: usize) -> Result<Option<(MultiPoly, u64)>> {
    let ctx = code.context();
    let f = *code.field();
    let n = code.side();
    let d = code.degree();
    probe.stats.at(depth).calls += 1;
    let mut cur = r.to_vec();
    let clean = vec![false; n];
    let mut parts = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let deg = d - i;
        let mut word = Vec::with_capacity(n);
        for row in cur.chunks(n) {
            word.push(match ee_raw(ctx, deg, row, &clean) {
                Some((p, e)) => row_symbol(&p, deg, Rational::from(e), n - d + i),
                None => WeightedSymbol::erased(),
            });
        }
        let lvl = probe.stats.at(depth);
        lvl.iterations += 1;
        lvl.row_unique_decodes += n as u64;
        lvl.coeff_decodes += 1;
        let radius = Rational::new((n - i) as i128, 2)?;
        let Some((q, _)) = gmd_raw(ctx, i, &word, radius)? else { return Ok(None) };
        subtract_layer(&f, &mut cur, &ctx.evaluate(&q), &ctx.powers_of(deg));
        let part = univariate_part(&f, &q, i);
        probe.record(depth, || StepTrace { index: i, word, recovered: part.clone(), lists: None });
        parts.push(part);
    }
    // what is left of the word is r - encode(C)
    let h = cur.iter().filter(|&&v| v != 0).count() as u64;
    if 2 * h < code.min_distance() {
        Ok(Some((assemble_parts(code, &parts)?, h)))
    } else {
        Ok(None)
    }
}

pub(crate) fn soft_recursive(
    code: &CodeParams,
    w: &[WeightedSymbol],
    probe: &mut Probe,
    depth: usize,
) -> Result<Option<(MultiPoly, Distance)>> {
    let ctx = code.context();
    let f = *code.field();
    let n = code.side();
    let d = code.degree();
    let m = code.num_vars();
    probe.stats.at(depth).calls += 1;
    if m == 1 {
        probe.stats.at(depth).coeff_decodes += 1;
        let found = gmd_raw(ctx, d, w, code.half_distance())?;
        return Ok(found.map(|(p, dist)| (univariate_part(&f, &p, d), dist)));
    }
    let mut cur: Vec<u64> = w.iter().map(|s| s.sigma.value()).collect();
    let mut parts = Vec::with_capacity(d + 1);
    let mut row = Vec::with_capacity(n);
    for i in 0..=d {
        let deg = d - i;
        let row_radius = Rational::new((n - deg) as i128, 2)?;
        let mut word = Vec::with_capacity(cur.len() / n);
        for (x, vals) in cur.chunks(n).enumerate() {
            row.clear();
            row.extend(vals.iter().zip(&w[x * n..(x + 1) * n]).map(|(&v, s)| WeightedSymbol { sigma: Fe(v), u: s.u }));
            word.push(match gmd_raw(ctx, deg, &row, row_radius)? {
                Some((p, dist)) => row_symbol(&p, deg, dist, n - d + i),
                None => WeightedSymbol::erased(),
            });
        }
        let lvl = probe.stats.at(depth);
        lvl.iterations += 1;
        lvl.row_soft_decodes += word.len() as u64;
        lvl.coeff_decodes += 1;
        let sub = code.child(m - 1, i);
        let Some((q, _)) = soft_recursive(&sub, &word, probe, depth + 1)? else { return Ok(None) };
        subtract_layer(&f, &mut cur, &eval_part(&sub, &q)?, &ctx.powers_of(deg));
        probe.record(depth, || StepTrace { index: i, word, recovered: q.clone(), lists: None });
        parts.push(q);
    }
    let enc: Vec<u64> = w.iter().zip(&cur).map(|(s, &res)| f.sub_raw(s.sigma.value(), res)).collect();
    let dist = wdist_raw(w, &enc)?;
    if dist < code.half_distance() {
        Ok(Some((assemble_parts(code, &parts)?, dist)))
    } else {
        Ok(None)
    }
}
