//! Reed-Solomon codes on an arbitrary evaluation set: encoding, unique and
//! errors-and-erasures decoding, soft decoding and list decoding.

mod list;
mod roots;
mod soft;
mod unique;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField};
use crate::multipoly::EvalSet;
use crate::poly::{raw, UniPoly};
use crate::rational::{Distance, Rational};
use crate::rng::SeededRng;
use crate::weighted::WeightedSymbol;

pub use list::{johnson_ok, list_params, ListParams};
pub(crate) use list::list_raw;
pub(crate) use soft::{bernoulli, fast_raw, gmd_raw};
pub(crate) use unique::ee_raw;

/// Evaluation sets up to this size get dense interpolation/evaluation tables.
const TABLE_LIMIT: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FailureReason {
    NoCodewordInRadius,
    DegreeOverflow,
    RandomizedMiss,
}

impl FailureReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            FailureReason::NoCodewordInRadius => "no-codeword-in-radius",
            FailureReason::DegreeOverflow => "degree-overflow",
            FailureReason::RandomizedMiss => "randomized-miss",
        }
    }
}

/// Result of a decoder: one polynomial with its distance, or a failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decoded<P> {
    Unique { poly: P, dist: Distance },
    Failure(FailureReason),
}

impl<P> Decoded<P> {
    pub fn poly(&self) -> Option<&P> {
        match self {
            Decoded::Unique { poly, .. } => Some(poly),
            Decoded::Failure(_) => None,
        }
    }

    pub fn is_unique(&self) -> bool {
        matches!(self, Decoded::Unique { .. })
    }
}

pub type DecodeOutcome = Decoded<UniPoly>;

/// Everything about an evaluation set that the decoders reuse across calls.
#[derive(Debug)]
pub struct RsContext {
    set: EvalSet,
    g0: Vec<u64>,
    weights: Vec<u64>,
    tables: Option<Tables>,
}

#[derive(Debug)]
struct Tables {
    // coefficient j of the interpolant is row j dotted with the values
    inv_vander: Vec<u64>,
    // powers[i * n + k] = a_i^k
    powers: Vec<u64>,
}

impl RsContext {
    pub fn new(set: EvalSet) -> Self {
        let f = *set.field();
        let n = set.len();
        let pts = set.raw();
        let g0 = raw::from_roots(&f, pts);
        let mut weights: Vec<u64> = pts
            .iter()
            .map(|&a| {
                let mut prod = 1;
                for &b in pts {
                    if b != a {
                        prod = f.mul_raw(prod, f.sub_raw(a, b));
                    }
                }
                prod
            })
            .collect();
        f.batch_inv_raw(&mut weights);
        let tables = (n <= TABLE_LIMIT).then(|| {
            let mut inv_vander = vec![0u64; n * n];
            for (i, &a) in pts.iter().enumerate() {
                let basis = raw::div_linear(&f, &g0, a);
                for (j, &c) in basis.iter().enumerate() {
                    inv_vander[j * n + i] = f.mul_raw(c, weights[i]);
                }
            }
            Tables { inv_vander, powers: set.power_table(n - 1) }
        });
        RsContext { set, g0, weights, tables }
    }

    pub fn set(&self) -> &EvalSet {
        &self.set
    }

    pub fn field(&self) -> &PrimeField {
        self.set.field()
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub(crate) fn points(&self) -> &[u64] {
        self.set.raw()
    }

    pub(crate) fn vanishing(&self) -> &[u64] {
        &self.g0
    }

    /// Interpolant of degree < n through (a_i, vals[i]).
    pub(crate) fn interpolate(&self, vals: &[u64]) -> Vec<u64> {
        let f = self.field();
        let n = self.len();
        debug_assert_eq!(vals.len(), n);
        let mut out = match &self.tables {
            Some(t) => (0..n).map(|j| f.dot_raw(&t.inv_vander[j * n..(j + 1) * n], vals)).collect(),
            None => {
                let mut acc = vec![0u64; n];
                for (i, &a) in self.points().iter().enumerate() {
                    let c = f.mul_raw(vals[i], self.weights[i]);
                    if c == 0 {
                        continue;
                    }
                    let basis = raw::div_linear(f, &self.g0, a);
                    for (slot, &b) in acc.iter_mut().zip(&basis) {
                        *slot = f.add_raw(*slot, f.mul_raw(c, b));
                    }
                }
                acc
            }
        };
        raw::trim(&mut out);
        out
    }

    /// Values of a polynomial of degree < n at every point of the set.
    pub(crate) fn evaluate(&self, poly: &[u64]) -> Vec<u64> {
        let f = self.field();
        let n = self.len();
        match &self.tables {
            Some(t) if poly.len() <= n => {
                (0..n).map(|i| f.dot_raw(poly, &t.powers[i * n..i * n + poly.len()])).collect()
            }
            _ => self.points().iter().map(|&a| raw::eval(f, poly, a)).collect(),
        }
    }

    /// a_i^k for every point.
    pub(crate) fn powers_of(&self, k: usize) -> Vec<u64> {
        let f = self.field();
        let n = self.len();
        match &self.tables {
            Some(t) if k < n => (0..n).map(|i| t.powers[i * n + k]).collect(),
            _ => self.points().iter().map(|&a| f.pow_raw(a, k as u64)).collect(),
        }
    }
}

/// A Reed-Solomon code: polynomials of degree at most d evaluated on S.
#[derive(Clone, Debug)]
pub struct RsCode {
    ctx: Arc<RsContext>,
    d: usize,
}

impl RsCode {
    pub fn new(set: EvalSet, d: usize) -> Result<Self> {
        Self::with_context(Arc::new(RsContext::new(set)), d)
    }

    pub fn with_context(ctx: Arc<RsContext>, d: usize) -> Result<Self> {
        if d >= ctx.len() {
            return Err(Error::InvalidParams(format!("degree {d} must be below |S| = {}", ctx.len())));
        }
        Ok(RsCode { ctx, d })
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

    pub fn len(&self) -> usize {
        self.ctx.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ctx.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    /// Unique decoding radius (n - d) / 2.
    pub fn half_distance(&self) -> Distance {
        Rational::new((self.len() - self.d) as i128, 2).expect("small")
    }

    fn check_poly(&self, p: &UniPoly) -> Result<()> {
        if p.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        if let Some(deg) = p.degree() {
            if deg > self.d {
                return Err(Error::DegreeOverflow { degree: deg, bound: self.d });
            }
        }
        Ok(())
    }

    fn check_word_len(&self, len: usize) -> Result<()> {
        if len != self.len() {
            return Err(Error::ShapeMismatch(format!("word of length {len}, code length {}", self.len())));
        }
        Ok(())
    }

    fn check_values(&self, r: &[Fe]) -> Result<Vec<u64>> {
        self.check_word_len(r.len())?;
        r.iter().map(|v| self.field().elem(v.0).map(|e| e.0)).collect()
    }

    fn check_weighted(&self, w: &[WeightedSymbol]) -> Result<()> {
        self.check_word_len(w.len())?;
        for s in w {
            self.field().elem(s.sigma.0)?;
        }
        Ok(())
    }
}

/// Evaluations of f on S.
pub fn rs_encode(code: &RsCode, f: &UniPoly) -> Result<Vec<Fe>> {
    code.check_poly(f)?;
    Ok(code.ctx.evaluate(f.raw()).into_iter().map(Fe).collect())
}

/// The unique polynomial within Hamming distance strictly below (n - d) / 2.
pub fn rs_unique_decode(code: &RsCode, r: &[Fe]) -> Result<DecodeOutcome> {
    let vals = code.check_values(r)?;
    let erased = vec![false; vals.len()];
    Ok(wrap(code, ee_raw(&code.ctx, code.d, &vals, &erased)))
}

/// Decoding with erasures: succeeds iff some f has 2E + F < n - d, where F
/// counts erasures and E disagreements on the remaining positions.
pub fn rs_ee_decode(code: &RsCode, r: &[Fe], erased: &[bool]) -> Result<DecodeOutcome> {
    let vals = code.check_values(r)?;
    code.check_word_len(erased.len())?;
    Ok(wrap(code, ee_raw(&code.ctx, code.d, &vals, erased)))
}

fn wrap(code: &RsCode, res: Option<(Vec<u64>, u64)>) -> DecodeOutcome {
    match res {
        Some((p, e)) => Decoded::Unique { poly: UniPoly::from_raw(*code.field(), p), dist: Rational::from(e) },
        None => Decoded::Failure(FailureReason::NoCodewordInRadius),
    }
}

/// Deterministic soft decoding by trying every erasure prefix in order of
/// decreasing uncertainty.
pub fn rs_gmd_decode(code: &RsCode, w: &[WeightedSymbol], radius: Distance) -> Result<DecodeOutcome> {
    code.check_weighted(w)?;
    if radius > code.half_distance() {
        return Err(Error::Precondition(format!(
            "radius {radius} exceeds the half distance {}",
            code.half_distance()
        )));
    }
    Ok(match gmd_raw(&code.ctx, code.d, w, radius)? {
        Some((p, dist)) => Decoded::Unique { poly: UniPoly::from_raw(*code.field(), p), dist },
        None => Decoded::Failure(FailureReason::NoCodewordInRadius),
    })
}

/// Default number of randomized trials: 8 * ceil(log2(n + 1)).
pub fn default_repeats(n: usize) -> u32 {
    let bits = usize::BITS - n.leading_zeros();
    8 * bits.max(1)
}

/// Randomized soft decoding: erase each position with probability equal to
/// its uncertainty, then decode with erasures; repeat.
pub fn rs_fast_soft_decode(
    code: &RsCode,
    w: &[WeightedSymbol],
    radius: Distance,
    rng: &mut SeededRng,
    repeats: Option<u32>,
) -> Result<DecodeOutcome> {
    code.check_weighted(w)?;
    check_fast_radius(code.len(), code.d, radius)?;
    let repeats = repeats.unwrap_or_else(|| default_repeats(code.len()));
    if repeats == 0 {
        return Err(Error::InvalidParams("repeats must be positive".into()));
    }
    let mut trials = 0;
    Ok(match fast_raw(&code.ctx, code.d, w, radius, rng, repeats, &mut trials)? {
        Some((p, dist)) => Decoded::Unique { poly: UniPoly::from_raw(*code.field(), p), dist },
        None => Decoded::Failure(FailureReason::RandomizedMiss),
    })
}

/// Radius must leave more than sqrt(n)/2 of slack below the half distance.
pub(crate) fn check_fast_radius(n: usize, d: usize, radius: Distance) -> Result<()> {
    let slack = Rational::from(n - d).checked_sub(&(radius * Rational::from_int(2)))?;
    let ok = slack > Rational::ZERO && slack * slack * Rational::from_int(4) > Rational::from(n);
    if !ok || radius < Rational::ZERO {
        return Err(Error::Precondition(format!(
            "radius {radius} too close to the half distance for randomized decoding (n = {n}, d = {d})"
        )));
    }
    Ok(())
}

/// Every polynomial of degree at most d within Hamming distance strictly
/// below t, with its distance. Requires (n - t)^2 >= n (d + 1).
pub fn rs_list_decode(code: &RsCode, r: &[Fe], t: Distance) -> Result<Vec<(UniPoly, u64)>> {
    let vals = code.check_values(r)?;
    let list = list_raw(&code.ctx, code.d, &vals, t)?;
    Ok(list.into_iter().map(|(p, e)| (UniPoly::from_raw(*code.field(), p), e)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_roundtrip_with_and_without_tables() {
        let f = PrimeField::new(10007).unwrap();
        let pts: Vec<u64> = (0..40).map(|i| (i * 37 + 5) % 10007).collect();
        let ctx = RsContext::new(EvalSet::new(f, &pts).unwrap());
        let poly: Vec<u64> = (0..25).map(|i| (i * i * 7 + 3) % 10007).collect();
        let vals = ctx.evaluate(&poly);
        assert_eq!(ctx.interpolate(&vals), poly);
        let bare = RsContext { tables: None, ..RsContext::new(EvalSet::new(f, &pts).unwrap()) };
        assert_eq!(bare.evaluate(&poly), vals);
        assert_eq!(bare.interpolate(&vals), poly);
    }

    #[test]
    fn repeats_default() {
        assert_eq!(default_repeats(64), 56);
        assert_eq!(default_repeats(63), 48);
        assert_eq!(default_repeats(1), 8);
    }
}
