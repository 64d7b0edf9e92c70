//! Reed-Muller codes on product sets and their decoders.
//!
//! All decoders peel the last variable: a codeword C is written as
//! sum_i Q_i(X) Y^(d-i) with deg Q_i <= i, every row (X fixed) is a
//! Reed-Solomon word in Y, and Q_i is recovered from the row decodings of
//! the i-th leading coefficient.

mod fast;
mod slow;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::multipoly::{checked_pow, EvalSet, MultiPoly};
use crate::poly::UniPoly;
use crate::rational::{Distance, Rational};
use crate::rng::SeededRng;
use crate::rs::{Decoded, RsContext};
use crate::weighted::{GridWord, WeightedGridWord, WeightedSymbol};

pub use crate::rs::FailureReason;

/// Largest grid the decoders accept.
pub const MAX_GRID: usize = 1 << 34;

pub type RmDecodeOutcome = Decoded<MultiPoly>;

/// Reed-Muller code: polynomials in m variables of total degree at most d,
/// evaluated on S^m.
#[derive(Clone, Debug)]
pub struct CodeParams {
    ctx: Arc<RsContext>,
    m: usize,
    d: usize,
    len: usize,
}

impl CodeParams {
    pub fn new(set: EvalSet, m: usize, d: usize) -> Result<Self> {
        Self::with_context(Arc::new(RsContext::new(set)), m, d)
    }

    pub fn with_context(ctx: Arc<RsContext>, m: usize, d: usize) -> Result<Self> {
        let n = ctx.len();
        if m == 0 {
            return Err(Error::InvalidParams("at least one variable is required".into()));
        }
        if d >= n {
            return Err(Error::InvalidParams(format!("degree {d} must be below |S| = {n}")));
        }
        let len = checked_pow(n, m)?;
        if len > MAX_GRID {
            return Err(Error::InvalidParams(format!("grid {n}^{m} exceeds 2^34 entries")));
        }
        Ok(CodeParams { ctx, m, d, len })
    }

    /// Same evaluation set, other arity and degree.
    pub(crate) fn child(&self, m: usize, d: usize) -> CodeParams {
        CodeParams { ctx: self.ctx.clone(), m, d, len: self.side().pow(m as u32) }
    }

    pub fn context(&self) -> &Arc<RsContext> {
        &self.ctx
    }

    pub fn field(&self) -> &PrimeField {
        self.ctx.field()
    }

    pub fn set(&self) -> &EvalSet {
        self.ctx.set()
    }

    /// n = |S|.
    pub fn side(&self) -> usize {
        self.ctx.len()
    }

    pub fn num_vars(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    /// n^m.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// n^(m-1) (n - d).
    pub fn min_distance(&self) -> u64 {
        (self.len / self.side() * (self.side() - self.d)) as u64
    }

    /// n^(m-1) (n - d) / 2.
    pub fn half_distance(&self) -> Distance {
        Rational::new(self.min_distance() as i128, 2).expect("grid size is bounded")
    }

    fn check_grid(&self, field: &PrimeField, n: usize, m: usize) -> Result<()> {
        if field != self.field() {
            return Err(Error::FieldMismatch);
        }
        if n != self.side() || m != self.m {
            return Err(Error::ShapeMismatch(format!(
                "word on a {n}^{m} grid, code on a {}^{} grid",
                self.side(),
                self.m
            )));
        }
        Ok(())
    }

    fn require_vars(&self, want: usize) -> Result<()> {
        if self.m != want {
            return Err(Error::InvalidParams(format!("decoder needs m = {want}, code has m = {}", self.m)));
        }
        Ok(())
    }
}

/// Parameters of the randomized decoders.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FastParams {
    /// Multiplier of sqrt(n) in the radius loss; must exceed 1/2.
    pub beta: Rational,
    /// Trials per randomized Reed-Solomon decode; default 8 ceil(log2(n + 1)).
    pub repeats: Option<u32>,
}

impl Default for FastParams {
    fn default() -> Self {
        FastParams { beta: Rational::ONE, repeats: None }
    }
}

impl FastParams {
    pub fn validate(&self) -> Result<()> {
        if self.beta <= Rational::new(1, 2)? {
            return Err(Error::InvalidParams(format!("beta = {} must exceed 1/2", self.beta)));
        }
        if self.repeats == Some(0) {
            return Err(Error::InvalidParams("repeats must be positive".into()));
        }
        Ok(())
    }

    /// d / n.
    pub fn alpha(code: &CodeParams) -> Rational {
        Rational::new(code.degree() as i128, code.side() as i128).expect("small")
    }

    /// (1 - alpha)^2 / 8.
    pub fn c(code: &CodeParams) -> Rational {
        let g = Rational::ONE - Self::alpha(code);
        g * g / Rational::from_int(8)
    }

    /// s = ceil(beta sqrt(n)), computed exactly.
    pub fn sqrt_loss(&self, n: usize) -> usize {
        // smallest s >= 0 with s^2 >= beta^2 n
        let b2n = self.beta * self.beta * Rational::from(n);
        let mut s = b2n.to_f64().sqrt().floor().max(0.0) as usize;
        while Rational::from(s * s) < b2n {
            s += 1;
        }
        while s > 0 && Rational::from((s - 1) * (s - 1)) >= b2n {
            s -= 1;
        }
        s
    }

    pub(crate) fn repeats_for(&self, n: usize) -> u32 {
        self.repeats.unwrap_or_else(|| crate::rs::default_repeats(n))
    }

    /// Radius of the fast decoders on plain words:
    /// n^(m-1) (n - d - (m-1) s) / 2, with s = ceil(beta sqrt(n)).
    pub fn fast_radius(&self, code: &CodeParams) -> Rational {
        let n = code.side() as i128;
        let s = self.sqrt_loss(code.side()) as i128;
        let rows = (code.len() / code.side()) as i128;
        let slack = n - code.degree() as i128 - (code.num_vars() as i128 - 1) * s;
        Rational::new(rows * slack, 2).expect("grid size is bounded")
    }

    /// Radius of the weighted fast decoder with slack e:
    /// n^(m-1) (n - d - m s - e) / 2.
    pub fn soft_radius(&self, code: &CodeParams, e: usize) -> Rational {
        let n = code.side() as i128;
        let s = self.sqrt_loss(code.side()) as i128;
        let rows = (code.len() / code.side()) as i128;
        let slack = n - code.degree() as i128 - code.num_vars() as i128 * s - e as i128;
        Rational::new(rows * slack, 2).expect("grid size is bounded")
    }
}

/// Call counts at one recursion depth (0 is the outermost call).
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct LevelStats {
    pub calls: u64,
    pub iterations: u64,
    pub epochs: u64,
    pub row_unique_decodes: u64,
    pub row_soft_decodes: u64,
    pub row_list_decodes: u64,
    pub coeff_decodes: u64,
    pub fallbacks: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecodeStats {
    pub levels: Vec<LevelStats>,
    /// Randomized Reed-Solomon trials, all depths.
    pub rs_trials: u64,
}

impl DecodeStats {
    pub fn level(&self, depth: usize) -> LevelStats {
        self.levels.get(depth).cloned().unwrap_or_default()
    }

    pub(crate) fn at(&mut self, depth: usize) -> &mut LevelStats {
        if self.levels.len() <= depth {
            self.levels.resize(depth + 1, LevelStats::default());
        }
        &mut self.levels[depth]
    }

    /// Total row decodes of any kind across depths.
    pub fn row_decodes(&self) -> u64 {
        self.levels.iter().map(|l| l.row_unique_decodes + l.row_soft_decodes + l.row_list_decodes).sum()
    }
}

/// One coefficient step of an outermost decode.
#[derive(Clone, Debug)]
pub struct StepTrace {
    pub index: usize,
    /// The weighted word built from the row decodings.
    pub word: Vec<WeightedSymbol>,
    pub recovered: MultiPoly,
    /// Row lists in force at this step (list-based decoders only).
    pub lists: Option<Vec<Vec<(UniPoly, u64)>>>,
}

/// Collects call counts and, optionally, a per-step trace.
#[derive(Clone, Debug, Default)]
pub struct Probe {
    pub stats: DecodeStats,
    pub trace: Option<Vec<StepTrace>>,
}

impl Probe {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tracing() -> Self {
        Probe { stats: DecodeStats::default(), trace: Some(Vec::new()) }
    }

    pub(crate) fn record(&mut self, depth: usize, step: impl FnOnce() -> StepTrace) {
        if depth == 0 {
            if let Some(t) = self.trace.as_mut() {
                t.push(step());
            }
        }
    }
}

/// Evaluations of P on S^m in canonical order.
pub fn rm_encode(p: &MultiPoly, code: &CodeParams) -> Result<GridWord> {
    if p.field() != code.field() {
        return Err(Error::FieldMismatch);
    }
    if p.num_vars() != code.m {
        return Err(Error::ShapeMismatch(format!("{} variables, code has {}", p.num_vars(), code.m)));
    }
    if let Some(t) = p.total_degree() {
        if t > code.d {
            return Err(Error::DegreeOverflow { degree: t, bound: code.d });
        }
    }
    let vals = p.eval_grid_raw(code.set())?;
    Ok(GridWord::from_raw(*code.field(), code.side(), code.m, vals))
}

/// P_i = coefficient of X_m^(d-i), for i = 0..=d.
pub fn peel_coefficients(p: &MultiPoly, d: usize) -> Result<Vec<MultiPoly>> {
    if let Some(t) = p.total_degree() {
        if t > d {
            return Err(Error::DegreeOverflow { degree: t, bound: d });
        }
    }
    let p = p.with_bound(d)?;
    (0..=d).map(|i| p.peel(d - i)).collect()
}

fn unique(found: Option<(MultiPoly, Distance)>, miss: FailureReason) -> RmDecodeOutcome {
    match found {
        Some((poly, dist)) => Decoded::Unique { poly, dist },
        None => Decoded::Failure(miss),
    }
}

/// Bivariate decoding up to half the minimum distance by row-wise unique
/// decoding and soft recovery of each coefficient.
pub fn decode_bivariate(r: &GridWord, code: &CodeParams) -> Result<RmDecodeOutcome> {
    decode_bivariate_probed(r, code, &mut Probe::new())
}

pub fn decode_bivariate_probed(r: &GridWord, code: &CodeParams, probe: &mut Probe) -> Result<RmDecodeOutcome> {
    code.require_vars(2)?;
    code.check_grid(r.field(), r.side(), r.num_vars())?;
    let vals: Vec<u64> = r.values().iter().map(|v| v.value()).collect();
    let found = slow::bivariate(code, &vals, probe, 0)?;
    Ok(unique(found.map(|(p, h)| (p, Rational::from(h))), FailureReason::NoCodewordInRadius))
}

/// Weighted decoding in any number of variables up to half the minimum
/// distance, recursing on the number of variables.
pub fn decode_soft_recursive(r: &WeightedGridWord, code: &CodeParams) -> Result<RmDecodeOutcome> {
    decode_soft_recursive_probed(r, code, &mut Probe::new())
}

pub fn decode_soft_recursive_probed(
    r: &WeightedGridWord,
    code: &CodeParams,
    probe: &mut Probe,
) -> Result<RmDecodeOutcome> {
    code.check_grid(r.field(), r.side(), r.num_vars())?;
    let found = slow::soft_recursive(code, r.symbols(), probe, 0)?;
    Ok(unique(found, FailureReason::NoCodewordInRadius))
}

/// Randomized bivariate decoding with row lists reused across epochs.
pub fn decode_bivariate_fast(
    r: &GridWord,
    code: &CodeParams,
    fp: &FastParams,
    rng: &SeededRng,
) -> Result<RmDecodeOutcome> {
    decode_bivariate_fast_probed(r, code, fp, rng, &mut Probe::new())
}

pub fn decode_bivariate_fast_probed(
    r: &GridWord,
    code: &CodeParams,
    fp: &FastParams,
    rng: &SeededRng,
    probe: &mut Probe,
) -> Result<RmDecodeOutcome> {
    code.require_vars(2)?;
    code.check_grid(r.field(), r.side(), r.num_vars())?;
    fp.validate()?;
    let vals: Vec<u64> = r.values().iter().map(|v| v.value()).collect();
    fast::list_peeling(code, &vals, fp, rng, probe)
}

/// Randomized weighted decoding with slack e, for m >= 2. The radius must
/// equal `fp.soft_radius(code, e)` for some integer e >= 0.
pub fn decode_soft_fast(
    r: &WeightedGridWord,
    code: &CodeParams,
    fp: &FastParams,
    radius: Distance,
    rng: &SeededRng,
) -> Result<RmDecodeOutcome> {
    decode_soft_fast_probed(r, code, fp, radius, rng, &mut Probe::new())
}

pub fn decode_soft_fast_probed(
    r: &WeightedGridWord,
    code: &CodeParams,
    fp: &FastParams,
    radius: Distance,
    rng: &SeededRng,
    probe: &mut Probe,
) -> Result<RmDecodeOutcome> {
    code.check_grid(r.field(), r.side(), r.num_vars())?;
    fp.validate()?;
    if code.m < 2 {
        return Err(Error::InvalidParams("weighted fast decoding needs m >= 2".into()));
    }
    let e = slack_from_radius(code, fp, radius)?;
    let found = fast::soft_fast(code, r.symbols(), fp, e, rng, probe, 0)?;
    Ok(unique(found, FailureReason::RandomizedMiss))
}

/// e = n - d - m s - 2 radius / n^(m-1), which must be a nonnegative integer
/// leaving a positive radius.
fn slack_from_radius(code: &CodeParams, fp: &FastParams, radius: Distance) -> Result<usize> {
    let n = code.side() as i128;
    let s = fp.sqrt_loss(code.side()) as i128;
    let rows = (code.len() / code.side()) as i128;
    let top = n - code.degree() as i128 - code.m as i128 * s;
    let e = Rational::from_int(top) - radius * Rational::from_int(2) / Rational::from_int(rows);
    if !e.is_integer() || e < Rational::ZERO || radius <= Rational::ZERO {
        return Err(Error::Precondition(format!(
            "radius {radius} is not n^(m-1) (n - d - m s - e) / 2 for an integer 0 <= e < {top}"
        )));
    }
    Ok(e.numer() as usize)
}

/// Randomized decoding of plain words for m >= 2; m = 2 is exactly
/// [`decode_bivariate_fast`].
pub fn decode_fast(r: &GridWord, code: &CodeParams, fp: &FastParams, rng: &SeededRng) -> Result<RmDecodeOutcome> {
    decode_fast_probed(r, code, fp, rng, &mut Probe::new())
}

pub fn decode_fast_probed(
    r: &GridWord,
    code: &CodeParams,
    fp: &FastParams,
    rng: &SeededRng,
    probe: &mut Probe,
) -> Result<RmDecodeOutcome> {
    code.check_grid(r.field(), r.side(), r.num_vars())?;
    fp.validate()?;
    if code.m < 2 {
        return Err(Error::InvalidParams("fast decoding needs m >= 2".into()));
    }
    let vals: Vec<u64> = r.values().iter().map(|v| v.value()).collect();
    fast::list_peeling(code, &vals, fp, rng, probe)
}

/// (ell, epoch count) of the list-reuse schedule, or None when the fast
/// decoder falls back to row-wise decoding.
pub fn list_epochs(n: usize, d: usize) -> Option<(usize, usize)> {
    if d >= n {
        return None;
    }
    fast::list_schedule(n, d).map(|s| (s.ell, s.epochs.len()))
}

/// cur[x n + y] -= q[x] * pw[y] for every row x.
pub(crate) fn subtract_layer(f: &PrimeField, cur: &mut [u64], q: &[u64], pw: &[u64]) {
    let n = pw.len();
    for (row, &qx) in cur.chunks_mut(n).zip(q) {
        if qx == 0 {
            continue;
        }
        let qs = f.shoup(qx);
        for (v, &p) in row.iter_mut().zip(pw) {
            *v = f.sub_raw(*v, f.mul_shoup(qx, qs, p));
        }
    }
}

/// Q_i on S^(m-1) as raw values, for a Q_i with m-1 variables.
pub(crate) fn eval_part(code: &CodeParams, q: &MultiPoly) -> Result<Vec<u64>> {
    if q.num_vars() == 1 {
        let u = q.to_univariate()?;
        return Ok(code.context().evaluate(u.raw()));
    }
    q.eval_grid_raw(code.set())
}

pub(crate) fn univariate_part(f: &PrimeField, coeffs: &[u64], bound: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(*f, 1, bound);
    for (k, &c) in coeffs.iter().enumerate() {
        out.add_raw_term(vec![k as u32], c);
    }
    out
}

/// sum_i parts[i] Y^(d-i) with parts in m-1 variables.
pub(crate) fn assemble_parts(code: &CodeParams, parts: &[MultiPoly]) -> Result<MultiPoly> {
    let d = code.degree();
    let indexed: Vec<(usize, MultiPoly)> = parts.iter().enumerate().map(|(i, q)| (d - i, q.clone())).collect();
    MultiPoly::assemble(*code.field(), code.num_vars(), d, &indexed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fe;

    fn code(p: u64, pts: &[u64], m: usize, d: usize) -> CodeParams {
        let f = PrimeField::new(p).unwrap();
        CodeParams::new(EvalSet::new(f, pts).unwrap(), m, d).unwrap()
    }

    fn poly(p: u64, m: usize, d: usize, terms: &[(&[u32], u64)]) -> MultiPoly {
        let f = PrimeField::new(p).unwrap();
        MultiPoly::from_terms(f, m, d, terms.iter().map(|(e, c)| (e.to_vec(), Fe(*c)))).unwrap()
    }

    fn vals(w: &GridWord) -> Vec<u64> {
        w.values().iter().map(|v| v.value()).collect()
    }

    #[test]
    fn encode_examples() {
        let c = code(3, &[0, 1, 2], 2, 1);
        let p = poly(3, 2, 1, &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(vals(&rm_encode(&p, &c).unwrap()), vec![0, 1, 2, 1, 2, 0, 2, 0, 1]);

        let c = code(5, &[0, 1], 3, 0);
        let p = poly(5, 3, 0, &[(&[0, 0, 0], 4)]);
        assert_eq!(vals(&rm_encode(&p, &c).unwrap()), vec![4; 8]);

        let c = code(5, &[0, 1, 2, 3, 4], 2, 2);
        let p = poly(5, 2, 2, &[(&[1, 1], 1)]);
        assert_eq!(vals(&rm_encode(&p, &c).unwrap()).iter().filter(|&&v| v == 0).count(), 9);
    }

    #[test]
    fn encode_rejects_high_degree() {
        let c = code(5, &[0, 1, 2], 2, 1);
        let p = poly(5, 2, 2, &[(&[1, 1], 1)]);
        assert!(matches!(rm_encode(&p, &c), Err(Error::DegreeOverflow { .. })));
    }

    #[test]
    fn sqrt_loss_is_exact_ceiling() {
        let fp = FastParams::default();
        assert_eq!(fp.sqrt_loss(64), 8);
        assert_eq!(fp.sqrt_loss(65), 9);
        assert_eq!(fp.sqrt_loss(32), 6);
        let half = FastParams { beta: Rational::new(3, 4).unwrap(), repeats: None };
        // 9/16 * 64 = 36
        assert_eq!(half.sqrt_loss(64), 6);
    }

    #[test]
    fn fast_params_validation() {
        let bad = FastParams { beta: Rational::new(1, 2).unwrap(), repeats: None };
        assert!(bad.validate().is_err());
        let zero = FastParams { beta: Rational::ONE, repeats: Some(0) };
        assert!(zero.validate().is_err());
    }

    #[test]
    fn slack_roundtrip() {
        let c = code(101, &(0..64).collect::<Vec<_>>(), 2, 16);
        let fp = FastParams::default();
        for e in [0usize, 4, 23] {
            assert_eq!(slack_from_radius(&c, &fp, fp.soft_radius(&c, e)).unwrap(), e);
        }
        assert!(slack_from_radius(&c, &fp, fp.soft_radius(&c, 0) + Rational::from_int(32)).is_err());
        assert!(slack_from_radius(&c, &fp, Rational::new(1, 3).unwrap()).is_err());
    }
}
