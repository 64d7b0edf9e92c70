//! Guruswami-Sudan list decoding.
//!
//! The interpolation polynomial is the minimal row of the module generated by
//! G^(s-t) (y - R)^t and y^(t-s) (y - R)^s, reduced to weak Popov form under
//! the (1, d) weighting. Its y-roots come from Roth-Ruckenstein.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::raw;
use crate::rational::{Distance, Rational};
use crate::weighted::hdist_raw;

use super::roots::roots;
use super::{ee_raw, RsContext};

/// Interpolation parameters: multiplicity s, y-degree bound L, and the
/// agreement every listed codeword is guaranteed to have.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ListParams {
    pub multiplicity: usize,
    pub list_size: usize,
    pub agreement: usize,
}

/// Whether the list radius is within n - sqrt(n (d + 1)). Listed codewords
/// sit strictly below t, so the largest distance that matters is ceil(t) - 1.
pub fn johnson_ok(n: usize, d: usize, t: Distance) -> bool {
    let worst = (t.ceil() - 1).max(0);
    let gap = n as i128 - worst;
    gap >= 0 && (gap * gap) as u128 >= (n * (d + 1)) as u128
}

/// Smallest multiplicity (then list size) whose guaranteed radius reaches t.
pub fn list_params(n: usize, d: usize, t: Distance) -> Result<ListParams> {
    if !johnson_ok(n, d, t) {
        return Err(Error::Precondition(format!(
            "list radius {t} reaches past n - sqrt(n (d + 1)) for n = {n}, d = {d}"
        )));
    }
    let ceil_t = t.ceil().max(0) as usize;
    let a = (n + 1).saturating_sub(ceil_t).max(1) as u128;
    let (n128, k) = (n as u128, d as u128);
    for s in 1..=4 * n + 4 {
        let s128 = s as u128;
        let top = if k == 0 {
            (n128 * (s128 + 1)) / (2 * a) + 2
        } else {
            isqrt(n128 * s128 * (s128 + 1) / k) + 2
        };
        for l in s..=(s as u128).max(top) as usize {
            let l128 = l as u128;
            let bound = (n128 * s128 * (s128 + 1) / 2 + k * l128 * (l128 + 1) / 2) / (l128 + 1);
            if a * s128 > bound {
                return Ok(ListParams { multiplicity: s, list_size: l, agreement: a as usize });
            }
        }
    }
    Err(Error::Precondition(format!("no interpolation parameters for radius {t}")))
}

fn isqrt(x: u128) -> u128 {
    if x < 2 {
        return x;
    }
    let mut r = (x as f64).sqrt() as u128;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// ceil(16 / (3 (1 - d/n)^3)) = ceil(16 n^3 / (3 (n - d)^3)).
fn regime_bound(n: usize, d: usize) -> usize {
    let (n, g) = (n as u128, (n - d) as u128);
    (16 * n * n * n).div_ceil(3 * g * g * g) as usize
}

pub(crate) fn list_raw(ctx: &RsContext, d: usize, vals: &[u64], t: Distance) -> Result<Vec<(Vec<u64>, u64)>> {
    let n = ctx.len();
    if !johnson_ok(n, d, t) {
        return Err(Error::Precondition(format!(
            "list radius {t} reaches past n - sqrt(n (d + 1)) for n = {n}, d = {d}"
        )));
    }
    if t <= Rational::ZERO {
        return Ok(Vec::new());
    }
    let nd = Rational::from(n - d);
    let list = match ee_raw(ctx, d, vals, &vec![false; n]) {
        // a codeword at distance e leaves no room for another one within t
        // once e + t <= n - d
        Some((p, e)) if Rational::from(e) + t <= nd => {
            if Rational::from(e) < t {
                vec![(p, e)]
            } else {
                Vec::new()
            }
        }
        None if t * Rational::from_int(2) <= nd => Vec::new(),
        _ => guruswami_sudan(ctx, d, vals, t)?,
    };
    let regime = Rational::new((n - d) as i128, 2)? + Rational::new(((n - d) * (n - d)) as i128, 8 * n as i128)?;
    if t <= regime {
        assert!(list.len() <= regime_bound(n, d), "list of {} exceeds the constant bound", list.len());
    }
    Ok(list)
}

type Bivariate = Vec<Vec<u64>>;

fn guruswami_sudan(ctx: &RsContext, d: usize, vals: &[u64], t: Distance) -> Result<Vec<(Vec<u64>, u64)>> {
    let f = ctx.field();
    let n = ctx.len();
    let params = list_params(n, d, t)?;
    let q = interpolation_poly(ctx, d, vals, &params);
    let mut cands = Vec::new();
    roth_ruckenstein(f, normalize(q), d, 0, &mut Vec::new(), &mut cands);
    let mut out: Vec<(Vec<u64>, u64)> = Vec::new();
    for mut c in cands {
        raw::trim(&mut c);
        if out.iter().any(|(p, _)| *p == c) {
            continue;
        }
        let e = hdist_raw(&ctx.evaluate(&c), vals);
        if Rational::from(e) < t {
            out.push((c, e));
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

fn binomials(f: &PrimeField, up_to: usize) -> Vec<Vec<u64>> {
    let mut c = vec![vec![1 % f.modulus()]];
    for i in 1..=up_to {
        let prev = &c[i - 1];
        let mut row = vec![1 % f.modulus(); i + 1];
        for j in 1..i {
            row[j] = f.add_raw(prev[j - 1], prev[j]);
        }
        c.push(row);
    }
    c
}

fn interpolation_poly(ctx: &RsContext, k: usize, vals: &[u64], params: &ListParams) -> Bivariate {
    let f = ctx.field();
    let (s, l) = (params.multiplicity, params.list_size);
    let r = ctx.interpolate(vals);
    let neg_r: Vec<u64> = r.iter().map(|&c| f.neg_raw(c)).collect();
    let mut rp = vec![vec![1u64]];
    for i in 1..=s {
        rp.push(raw::mul(f, &rp[i - 1], &neg_r));
    }
    let mut gp = vec![vec![1u64]];
    for i in 1..=s {
        gp.push(raw::mul(f, &gp[i - 1], ctx.vanishing()));
    }
    let binom = binomials(f, s.max(l));
    let mut rows: Vec<Bivariate> = Vec::with_capacity(l + 1);
    for t in 0..=l {
        let mut row = vec![Vec::new(); l + 1];
        if t <= s {
            for j in 0..=t {
                let term = raw::mul(f, &rp[t - j], &gp[s - t]);
                row[j] = raw::scale(f, &term, binom[t][j]);
            }
        } else {
            for j in 0..=s {
                row[j + t - s] = raw::scale(f, &rp[s - j], binom[s][j]);
            }
        }
        rows.push(row);
    }
    weak_popov(f, &mut rows, k);
    rows.into_iter()
        .min_by_key(|row| leading(row, k).map(|x| x.1))
        .expect("module has rows")
}

/// (position, shifted degree) of the leading entry; ties go right.
fn leading(row: &Bivariate, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (j, q) in row.iter().enumerate() {
        if let Some(dq) = raw::deg(q) {
            let w = dq + j * k;
            if best.is_none_or(|(_, bw)| w >= bw) {
                best = Some((j, w));
            }
        }
    }
    best
}

/// Mulders-Storjohann: cancel leading terms until leading positions differ.
fn weak_popov(f: &PrimeField, rows: &mut [Bivariate], k: usize) {
    let mut lead: Vec<Option<(usize, usize)>> = rows.iter().map(|r| leading(r, k)).collect();
    loop {
        let mut clash = None;
        'outer: for a in 0..rows.len() {
            for b in a + 1..rows.len() {
                if let (Some((pa, _)), Some((pb, _))) = (lead[a], lead[b]) {
                    if pa == pb {
                        clash = Some((a, b));
                        break 'outer;
                    }
                }
            }
        }
        let Some((a, b)) = clash else { break };
        let (hi, lo) = if lead[a].unwrap().1 >= lead[b].unwrap().1 { (a, b) } else { (b, a) };
        let (pos, dh) = lead[hi].unwrap();
        let dl = lead[lo].unwrap().1;
        let c = f.mul_raw(*rows[hi][pos].last().unwrap(), f.inv_raw(*rows[lo][pos].last().unwrap()));
        let src = rows[lo].clone();
        for (dst, sj) in rows[hi].iter_mut().zip(&src) {
            raw::sub_scaled_shifted(f, dst, sj, c, dh - dl);
        }
        lead[hi] = leading(&rows[hi], k);
    }
}

/// Divides out the largest power of x shared by every coefficient.
fn normalize(mut q: Bivariate) -> Bivariate {
    let v = q
        .iter()
        .filter(|c| !c.is_empty())
        .map(|c| c.iter().position(|&x| x != 0).unwrap())
        .min()
        .unwrap_or(0);
    if v > 0 {
        for c in q.iter_mut() {
            if !c.is_empty() {
                c.drain(..v);
            }
        }
    }
    while q.last().is_some_and(|c| c.is_empty()) {
        q.pop();
    }
    q
}

/// Every f of degree <= k with y - f(x) | Q, coefficient by coefficient.
fn roth_ruckenstein(f: &PrimeField, q: Bivariate, k: usize, depth: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if q.is_empty() {
        return;
    }
    let h: Vec<u64> = q.iter().map(|c| c.first().copied().unwrap_or(0)).collect();
    for g in roots(f, &h) {
        prefix.push(g);
        if depth == k {
            out.push(prefix.clone());
        } else {
            let next = normalize(shift_substitute(f, &q, g));
            roth_ruckenstein(f, next, k, depth + 1, prefix, out);
        }
        prefix.pop();
    }
}

/// Q(x, x y + g).
fn shift_substitute(f: &PrimeField, q: &Bivariate, g: u64) -> Bivariate {
    let l = q.len();
    let binom = binomials(f, l);
    let mut gpow = vec![1 % f.modulus(); l + 1];
    for i in 1..=l {
        gpow[i] = f.mul_raw(gpow[i - 1], g);
    }
    let mut out = Vec::with_capacity(l);
    for i in 0..l {
        let mut acc: Vec<u64> = Vec::new();
        for j in i..l {
            let c = f.mul_raw(binom[j][i], gpow[j - i]);
            if c != 0 && !q[j].is_empty() {
                acc = raw::add(f, &acc, &raw::scale(f, &q[j], c));
            }
        }
        if !acc.is_empty() {
            let mut shifted = vec![0; i];
            shifted.extend_from_slice(&acc);
            acc = shifted;
        }
        out.push(acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::EvalSet;

    #[test]
    fn params_for_moderate_radius() {
        // n = 64, d = 32, t = 18 needs multiplicity 3
        let p = list_params(64, 32, Rational::from_int(18)).unwrap();
        assert_eq!(p.agreement, 47);
        assert_eq!(p.multiplicity, 3);
        assert!(list_params(64, 32, Rational::from_int(20)).is_err());
    }

    #[test]
    fn finds_two_close_codewords() {
        let f = PrimeField::new(101).unwrap();
        let n = 30;
        let ctx = RsContext::new(EvalSet::prefix(f, n).unwrap());
        let d = 2;
        // two parabolas agreeing at x = 0, 1
        let a = vec![5, 7, 11];
        let b = raw::add(&f, &a, &raw::from_roots(&f, &[0, 1]));
        let va = ctx.evaluate(&a);
        let vb = ctx.evaluate(&b);
        let mut word = va.clone();
        word[15..].copy_from_slice(&vb[15..]);
        // distance 14 or 15 from each; below n - sqrt(3n) = 20.5
        let t = Rational::from_int(17);
        let list = list_raw(&ctx, d, &word, t).unwrap();
        let polys: Vec<&Vec<u64>> = list.iter().map(|(p, _)| p).collect();
        assert!(polys.contains(&&a));
        assert!(polys.contains(&&b));
    }
}
