//! Channels, brute-force oracles and experiment drivers for planted-codeword
//! trials.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField};
use crate::multipoly::{EvalSet, MultiPoly};
use crate::rational::{Distance, Rational};
use crate::rm::{self, CodeParams, DecodeStats, FastParams, LevelStats, Probe, RmDecodeOutcome};
use crate::rng::SeededRng;
use crate::rs::{self, Decoded, RsCode};
use crate::weighted::{GridWord, Uncertainty, WeightedGridWord, WeightedSymbol};

/// All exponent vectors in m variables with total degree at most d, in
/// lexicographic order.
pub fn monomials(m: usize, d: usize) -> Vec<Vec<u32>> {
    fn go(m: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            go(m, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, d as u32, &mut Vec::with_capacity(m), &mut out);
    out
}

/// Every monomial coefficient uniform in the field.
pub fn random_poly(field: &PrimeField, m: usize, d: usize, rng: &mut SeededRng) -> MultiPoly {
    let mut p = MultiPoly::zero(*field, m, d);
    for e in monomials(m, d) {
        p.add_raw_term(e, rng.below(field.modulus()));
    }
    p
}

/// Short stable fingerprint of a polynomial.
pub fn poly_digest(p: &MultiPoly) -> String {
    let mut h = Sha256::new();
    h.update(format!("{} {} {}", p.field().modulus(), p.num_vars(), p.degree_bound()));
    for (e, c) in p.terms() {
        h.update(format!(";{e:?}:{}", c.value()));
    }
    h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Noise models applied to an encoded word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChannelSpec {
    /// `weight` positions set to random different values.
    RandomErrors { weight: usize },
    /// `weight` positions set to random different values and marked with
    /// uncertainty one.
    RandomErasuresToUncertainty { weight: usize },
    /// `rows` random rows with `per_row` errors each.
    BurstRows { rows: usize, per_row: usize },
    /// Random errors and uncertainties with weighted distance to the sent
    /// word strictly below `budget`.
    WeightedBudget { budget: Distance },
}

impl fmt::Display for ChannelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChannelSpec::RandomErrors { weight } => write!(f, "errors:{weight}"),
            ChannelSpec::RandomErasuresToUncertainty { weight } => write!(f, "erasures:{weight}"),
            ChannelSpec::BurstRows { rows, per_row } => write!(f, "burst:{rows}x{per_row}"),
            ChannelSpec::WeightedBudget { budget } => write!(f, "weighted:{budget}"),
        }
    }
}

/// Parses the forms printed by `Display`: `errors:W`, `erasures:W`,
/// `burst:RxK` and `weighted:B` with B an integer or fraction.
impl FromStr for ChannelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Format(format!("bad channel {s:?}; expected errors:W, erasures:W, burst:RxK or weighted:B"));
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        let count = |a: &str| a.trim().parse::<usize>().map_err(|_| bad());
        Ok(match kind {
            "errors" => ChannelSpec::RandomErrors { weight: count(arg)? },
            "erasures" => ChannelSpec::RandomErasuresToUncertainty { weight: count(arg)? },
            "burst" => {
                let (r, k) = arg.split_once('x').ok_or_else(bad)?;
                ChannelSpec::BurstRows { rows: count(r)?, per_row: count(k)? }
            }
            "weighted" => ChannelSpec::WeightedBudget { budget: arg.parse().map_err(|_| bad())? },
            _ => return Err(bad()),
        })
    }
}

fn other_value(f: &PrimeField, v: u64, rng: &mut SeededRng) -> u64 {
    f.add_raw(v, 1 + rng.below(f.modulus() - 1))
}

/// Applies a channel to a plain word. Positions are drawn without
/// replacement and every altered position takes a different value.
pub fn corrupt(w: &GridWord, spec: &ChannelSpec, rng: &mut SeededRng) -> Result<GridWord> {
    Ok(corrupt_weighted(w, spec, rng)?.sigmas())
}

/// Applies a channel and keeps the uncertainties it produces.
pub fn corrupt_weighted(w: &GridWord, spec: &ChannelSpec, rng: &mut SeededRng) -> Result<WeightedGridWord> {
    let f = *w.field();
    let len = w.len();
    let n = w.side();
    let mut out: Vec<WeightedSymbol> = w.values().iter().map(|&v| WeightedSymbol::certain(v)).collect();
    match *spec {
        ChannelSpec::RandomErrors { weight } | ChannelSpec::RandomErasuresToUncertainty { weight } => {
            if weight > len {
                return Err(Error::InvalidParams(format!("weight {weight} exceeds the grid size {len}")));
            }
            let erase = matches!(spec, ChannelSpec::RandomErasuresToUncertainty { .. });
            for i in rng.sample_distinct(len, weight) {
                out[i].sigma = Fe(other_value(&f, out[i].sigma.0, rng));
                if erase {
                    out[i].u = Uncertainty::ERASED;
                }
            }
        }
        ChannelSpec::BurstRows { rows, per_row } => {
            if rows > len / n || per_row > n {
                return Err(Error::InvalidParams(format!("burst {rows}x{per_row} does not fit a {n}-wide grid")));
            }
            for r in rng.sample_distinct(len / n, rows) {
                for y in rng.sample_distinct(n, per_row) {
                    let i = r * n + y;
                    out[i].sigma = Fe(other_value(&f, out[i].sigma.0, rng));
                }
            }
        }
        ChannelSpec::WeightedBudget { budget } => {
            // costs are in units of 1/16: u = k/8, a kept symbol costs k,
            // a changed one 16 - k
            let limit = budget * Rational::from_int(16);
            let mut spent = 0i128;
            for i in rng.sample_distinct(len, len) {
                let k = rng.below(9) as i128;
                let wrong = rng.below(2) == 1;
                let cost = if wrong { 16 - k } else { k };
                if Rational::from_int(spent + cost) >= limit {
                    continue;
                }
                spent += cost;
                out[i].u = Uncertainty::from_ratio(k, 8)?;
                if wrong {
                    out[i].sigma = Fe(other_value(&f, out[i].sigma.0, rng));
                }
            }
        }
    }
    WeightedGridWord::new(f, n, w.num_vars(), out)
}

/// Nearest codeword found by exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub poly: MultiPoly,
    pub dist: Distance,
    /// Another codeword is at the same distance.
    pub ambiguous: bool,
}

/// Largest codebook the oracle enumerates.
pub const ORACLE_LIMIT: u64 = 10_000_000;

/// Nearest codeword in Hamming distance.
pub fn oracle_nearest(code: &CodeParams, r: &GridWord) -> Result<OracleResult> {
    oracle_nearest_weighted(code, &r.to_weighted())
}

/// Nearest codeword in weighted distance, by enumerating every coefficient
/// vector.
pub fn oracle_nearest_weighted(code: &CodeParams, r: &WeightedGridWord) -> Result<OracleResult> {
    let f = *code.field();
    let p = f.modulus();
    let mons = monomials(code.num_vars(), code.degree());
    let size = (p as u128).checked_pow(mons.len() as u32).unwrap_or(u128::MAX);
    if mons.len() > 12 || size > ORACLE_LIMIT as u128 {
        return Err(Error::InvalidParams(format!("{size} codewords are too many to enumerate")));
    }
    if r.side() != code.side() || r.num_vars() != code.num_vars() {
        return Err(Error::ShapeMismatch("word and code grids differ".into()));
    }
    // integer costs with denominator 2 lcm(uncertainty denominators)
    let mut scale: i128 = 1;
    for s in r.symbols() {
        scale = num_integer::Integer::lcm(&scale, &s.u.value().denom());
        if scale > 1 << 40 {
            return Err(Error::Overflow);
        }
    }
    scale *= 2;
    let sig: Vec<u64> = r.symbols().iter().map(|s| s.sigma.0).collect();
    let keep: Vec<i128> = r.symbols().iter().map(|s| (s.u.value() * Rational::from_int(scale / 2)).numer()).collect();
    let diff: Vec<i128> = keep.iter().map(|&k| scale - 2 * k).collect();
    let worst: i128 = keep.iter().map(|&k| scale - k).sum();
    let cols: Vec<Vec<u64>> = mons
        .iter()
        .map(|e| MultiPoly::from_terms(f, code.num_vars(), code.degree(), [(e.clone(), Fe::ONE)]).and_then(|m| m.eval_grid_raw(code.set())))
        .collect::<Result<_>>()?;
    let mut digits = vec![0u64; mons.len()];
    let mut cw = vec![0u64; r.len()];
    let mut best = (i128::MAX, digits.clone());
    let mut ties = 0usize;
    loop {
        let mut cost = worst;
        for i in 0..cw.len() {
            if cw[i] == sig[i] {
                cost -= diff[i];
            }
        }
        if cost < best.0 {
            best = (cost, digits.clone());
            ties = 0;
        } else if cost == best.0 {
            ties += 1;
        }
        // odometer step
        let mut k = 0;
        loop {
            if k == digits.len() {
                let mut poly = MultiPoly::zero(f, code.num_vars(), code.degree());
                for (e, &c) in mons.iter().zip(&best.1) {
                    poly.add_raw_term(e.clone(), c);
                }
                return Ok(OracleResult { poly, dist: Rational::new(best.0, scale)?, ambiguous: ties > 0 });
            }
            digits[k] = (digits[k] + 1) % p;
            for (v, &c) in cw.iter_mut().zip(&cols[k]) {
                *v = f.add_raw(*v, c);
            }
            if digits[k] != 0 {
                break;
            }
            k += 1;
        }
    }
}

/// Every codeword strictly within Hamming distance t of r, with its
/// distance, sorted by distance then polynomial.
pub fn oracle_list(code: &CodeParams, r: &GridWord, t: Distance) -> Result<Vec<(MultiPoly, u64)>> {
    let f = *code.field();
    let p = f.modulus();
    let mons = monomials(code.num_vars(), code.degree());
    let size = (p as u128).checked_pow(mons.len() as u32).unwrap_or(u128::MAX);
    if size > ORACLE_LIMIT as u128 {
        return Err(Error::InvalidParams(format!("{size} codewords are too many to enumerate")));
    }
    let mut out = Vec::new();
    for idx in 0..size as u64 {
        let mut poly = MultiPoly::zero(f, code.num_vars(), code.degree());
        let mut rest = idx;
        for e in &mons {
            poly.add_raw_term(e.clone(), rest % p);
            rest /= p;
        }
        let h = crate::weighted::hdist(&rm::rm_encode(&poly, code)?, r)?;
        if Rational::from(h) < t {
            out.push((poly, h));
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| poly_key(&a.0).cmp(&poly_key(&b.0))));
    Ok(out)
}

fn poly_key(p: &MultiPoly) -> Vec<(Vec<u32>, u64)> {
    p.terms().map(|(e, c)| (e.to_vec(), c.value())).collect()
}

/// Whether two distinct codewords disagree on at least n^(m-1)(n - d)
/// points of the grid.
pub fn schwartz_zippel_check(p: &MultiPoly, q: &MultiPoly, code: &CodeParams) -> Result<bool> {
    if p == q {
        return Err(Error::Precondition("the polynomials must differ".into()));
    }
    let a = rm::rm_encode(p, code)?;
    let b = rm::rm_encode(q, code)?;
    Ok(crate::weighted::hdist(&a, &b)? >= code.min_distance())
}

/// Decoders reachable from the experiment drivers and the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecoderId {
    Rs,
    RsGmd,
    RsFast,
    RsList,
    Bivariate,
    Soft,
    FastBivariate,
    SoftFast,
    Fast,
}

impl DecoderId {
    pub const ALL: [DecoderId; 9] = [
        DecoderId::Rs,
        DecoderId::RsGmd,
        DecoderId::RsFast,
        DecoderId::RsList,
        DecoderId::Bivariate,
        DecoderId::Soft,
        DecoderId::FastBivariate,
        DecoderId::SoftFast,
        DecoderId::Fast,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            DecoderId::Rs => "rs",
            DecoderId::RsGmd => "rs-gmd",
            DecoderId::RsFast => "rs-fast",
            DecoderId::RsList => "rs-list",
            DecoderId::Bivariate => "bivariate",
            DecoderId::Soft => "soft",
            DecoderId::FastBivariate => "fast-bivariate",
            DecoderId::SoftFast => "soft-fast",
            DecoderId::Fast => "fast",
        }
    }

    /// Reed-Solomon decoders work on m = 1 words.
    pub fn is_rs(&self) -> bool {
        matches!(self, DecoderId::Rs | DecoderId::RsGmd | DecoderId::RsFast | DecoderId::RsList)
    }

    /// Decoders that read uncertainties.
    pub fn is_soft(&self) -> bool {
        matches!(self, DecoderId::RsGmd | DecoderId::RsFast | DecoderId::Soft | DecoderId::SoftFast)
    }

    pub fn is_randomized(&self) -> bool {
        matches!(self, DecoderId::RsFast | DecoderId::FastBivariate | DecoderId::SoftFast | DecoderId::Fast)
    }

    /// The radius a decoder uses when none is given.
    pub fn default_radius(&self, code: &CodeParams, fp: &FastParams) -> Result<Distance> {
        let n = code.side() as i128;
        let d = code.degree() as i128;
        Ok(match self {
            DecoderId::Rs | DecoderId::RsGmd | DecoderId::Bivariate | DecoderId::Soft => code.half_distance(),
            DecoderId::RsFast => Rational::new(n - d - fp.sqrt_loss(code.side()) as i128, 2)?,
            DecoderId::RsList => Rational::new(n - d, 2)? + Rational::new((n - d) * (n - d), 8 * n)?,
            DecoderId::FastBivariate | DecoderId::Fast => fp.fast_radius(code),
            DecoderId::SoftFast => fp.soft_radius(code, 0),
        })
    }
}

impl fmt::Display for DecoderId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DecoderId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown decoder {s:?}")))
    }
}

/// Options shared by all decoders.
#[derive(Clone, Copy, Debug, Default)]
pub struct DecodeRequest {
    /// Overrides the decoder's default radius where it takes one.
    pub radius: Option<Distance>,
    pub fast: FastParams,
    /// Test hook: perturbs every unique answer so that checks downstream
    /// must notice.
    pub inject_fault: bool,
}

/// A unique answer or failure, or a list for the list decoder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecoderOutput {
    Outcome(RmDecodeOutcome),
    List(Vec<(MultiPoly, Distance)>),
}

fn lift(out: rs::DecodeOutcome, d: usize) -> Result<RmDecodeOutcome> {
    Ok(match out {
        Decoded::Unique { poly, dist } => Decoded::Unique { poly: MultiPoly::from_univariate(&poly, d)?, dist },
        Decoded::Failure(r) => Decoded::Failure(r),
    })
}

/// Adds one to the constant term of a unique answer.
pub fn perturb(out: RmDecodeOutcome) -> RmDecodeOutcome {
    match out {
        Decoded::Unique { mut poly, dist } => {
            poly.add_raw_term(vec![0; poly.num_vars()], 1);
            Decoded::Unique { poly, dist }
        }
        other => other,
    }
}

fn is_plain(w: &WeightedGridWord) -> bool {
    w.symbols().iter().all(|s| s.u == Uncertainty::CERTAIN)
}

/// Runs one decoder. Plain-word decoders reject words carrying nonzero
/// uncertainties.
pub fn decode_with(
    id: DecoderId,
    code: &CodeParams,
    word: &WeightedGridWord,
    req: &DecodeRequest,
    rng: &SeededRng,
    probe: &mut Probe,
) -> Result<DecoderOutput> {
    if !id.is_soft() && !is_plain(word) {
        return Err(Error::InvalidParams(format!("decoder {id} takes words without uncertainties")));
    }
    // the recursive weighted decoder bottoms out in GMD, so m = 1 is fine
    let applies = if id.is_rs() { code.num_vars() == 1 } else { id == DecoderId::Soft || code.num_vars() >= 2 };
    if !applies {
        return Err(Error::InvalidParams(format!("decoder {id} does not apply to m = {}", code.num_vars())));
    }
    let radius = match req.radius {
        Some(r) => r,
        None => id.default_radius(code, &req.fast)?,
    };
    let d = code.degree();
    let plain = word.sigmas();
    let out = match id {
        DecoderId::Rs | DecoderId::RsGmd | DecoderId::RsFast | DecoderId::RsList => {
            let rsc = RsCode::with_context(code.context().clone(), d)?;
            let syms = word.symbols();
            match id {
                DecoderId::Rs => lift(rs::rs_unique_decode(&rsc, plain.values())?, d)?,
                DecoderId::RsGmd => lift(rs::rs_gmd_decode(&rsc, syms, radius)?, d)?,
                DecoderId::RsFast => {
                    let mut r = rng.clone();
                    lift(rs::rs_fast_soft_decode(&rsc, syms, radius, &mut r, req.fast.repeats)?, d)?
                }
                _ => {
                    let list = rs::rs_list_decode(&rsc, plain.values(), radius)?;
                    let list = list
                        .into_iter()
                        .map(|(p, e)| Ok((MultiPoly::from_univariate(&p, d)?, Rational::from(e))))
                        .collect::<Result<_>>()?;
                    return Ok(DecoderOutput::List(list));
                }
            }
        }
        DecoderId::Bivariate => rm::decode_bivariate_probed(&plain, code, probe)?,
        DecoderId::Soft => rm::decode_soft_recursive_probed(word, code, probe)?,
        DecoderId::FastBivariate => rm::decode_bivariate_fast_probed(&plain, code, &req.fast, rng, probe)?,
        DecoderId::SoftFast => rm::decode_soft_fast_probed(word, code, &req.fast, radius, rng, probe)?,
        DecoderId::Fast => rm::decode_fast_probed(&plain, code, &req.fast, rng, probe)?,
    };
    Ok(DecoderOutput::Outcome(if req.inject_fault { perturb(out) } else { out }))
}

/// One planted-codeword trial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialReport {
    pub trial: u64,
    pub seed: u64,
    pub decoder: String,
    pub p: u64,
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub channel: String,
    pub planted: String,
    /// "unique", "list" or the failure reason.
    pub outcome: String,
    pub correct: bool,
    pub dist: Option<String>,
    pub levels: Vec<LevelStats>,
    pub rs_trials: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ns: Option<u64>,
}

impl TrialReport {
    pub fn to_record(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// A batch of trials with one decoder on one code.
#[derive(Clone, Debug)]
pub struct Experiment {
    pub decoder: DecoderId,
    pub code: CodeParams,
    pub channel: ChannelSpec,
    pub request: DecodeRequest,
    pub trials: usize,
    pub seed: u64,
    /// Record wall time in the reports. Timed reports are not reproducible.
    pub timed: bool,
}

#[derive(Clone, Debug, Default)]
pub struct ExperimentResult {
    pub trials: usize,
    pub successes: usize,
    /// Unique answers other than the planted codeword.
    pub wrong: usize,
    pub failures: usize,
    pub reports: Vec<TrialReport>,
}

impl ExperimentResult {
    pub fn success_rate(&self) -> Rational {
        Rational::new(self.successes as i128, self.trials.max(1) as i128).expect("small")
    }

    /// One JSON record per line.
    pub fn records(&self) -> String {
        self.reports.iter().map(|r| r.to_record() + "\n").collect()
    }
}

/// A planted codeword and its corrupted word.
#[derive(Clone, Debug)]
pub struct Instance {
    pub planted: MultiPoly,
    pub sent: GridWord,
    pub word: WeightedGridWord,
}

/// Plants a uniformly random codeword and passes it through the channel.
pub fn plant(code: &CodeParams, channel: &ChannelSpec, rng: &SeededRng) -> Result<Instance> {
    let planted = random_poly(code.field(), code.num_vars(), code.degree(), &mut rng.split(0));
    let sent = rm::rm_encode(&planted, code)?;
    let word = corrupt_weighted(&sent, channel, &mut rng.split(1))?;
    Ok(Instance { planted, sent, word })
}

/// Runs any number of trials; trial t uses the stream split(seed, t).
pub fn run_trials(exp: &Experiment) -> Result<ExperimentResult> {
    let root = SeededRng::new(exp.seed);
    let mut res = ExperimentResult { trials: exp.trials, ..Default::default() };
    for t in 0..exp.trials {
        let trng = root.split(t as u64);
        let inst = plant(&exp.code, &exp.channel, &trng)?;
        let mut probe = Probe::new();
        let start = Instant::now();
        let out = decode_with(exp.decoder, &exp.code, &inst.word, &exp.request, &trng.split(2), &mut probe)?;
        let wall = start.elapsed().as_nanos() as u64;
        let (outcome, correct, dist) = match &out {
            DecoderOutput::Outcome(Decoded::Unique { poly, dist }) => {
                ("unique".to_string(), *poly == inst.planted, Some(dist.to_string()))
            }
            DecoderOutput::Outcome(Decoded::Failure(r)) => (r.as_str().to_string(), false, None),
            DecoderOutput::List(l) => {
                let hit = l.iter().find(|(p, _)| *p == inst.planted);
                ("list".to_string(), hit.is_some(), hit.map(|(_, e)| e.to_string()))
            }
        };
        match (&out, correct) {
            (_, true) => res.successes += 1,
            (DecoderOutput::Outcome(Decoded::Unique { .. }), false) => res.wrong += 1,
            _ => res.failures += 1,
        }
        let DecodeStats { levels, rs_trials } = probe.stats;
        res.reports.push(TrialReport {
            trial: t as u64,
            seed: exp.seed,
            decoder: exp.decoder.name().to_string(),
            p: exp.code.field().modulus(),
            n: exp.code.side(),
            m: exp.code.num_vars(),
            d: exp.code.degree(),
            channel: exp.channel.to_string(),
            planted: poly_digest(&inst.planted),
            outcome,
            correct,
            dist,
            levels,
            rs_trials,
            wall_ns: exp.timed.then_some(wall),
        });
    }
    Ok(res)
}

/// Fraction of trials returning the planted codeword. Needs at least 100
/// trials.
pub fn success_rate_experiment(exp: &Experiment) -> Result<ExperimentResult> {
    if exp.trials < 100 {
        return Err(Error::InvalidParams(format!("{} trials; at least 100 are required", exp.trials)));
    }
    run_trials(exp)
}

/// Smallest prime at least max(n, 257); benchmark fields.
pub fn bench_prime(n: usize) -> u64 {
    let mut p = n.max(257) as u64;
    while !crate::field::is_prime(p) {
        p += 1;
    }
    p
}

/// Per-size row of a scaling run.
#[derive(Clone, Debug)]
pub struct ScalingRow {
    pub n: usize,
    pub d: usize,
    pub p: u64,
    pub errors: usize,
    pub median_ns: u64,
    pub successes: usize,
    /// Call counts of the first trial.
    pub stats: DecodeStats,
}

#[derive(Clone, Debug)]
pub struct ScalingResult {
    pub rows: Vec<ScalingRow>,
    pub reports: Vec<TrialReport>,
}

impl ScalingResult {
    /// Least-squares slope of log(median time) against log(n^m).
    pub fn slope(&self, m: usize) -> f64 {
        let pts: Vec<(f64, f64)> =
            self.rows.iter().map(|r| ((r.n as f64).powi(m as i32).ln(), (r.median_ns.max(1) as f64).ln())).collect();
        loglog_slope(&pts)
    }
}

/// Least-squares slope of y against x.
pub fn loglog_slope(pts: &[(f64, f64)]) -> f64 {
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Times a decoder on planted instances with errors at three quarters of
/// its radius, d = floor(alpha n), S = {0, ..., n-1} over [`bench_prime`].
pub fn scaling_benchmark(
    decoder: DecoderId,
    m: usize,
    sizes: &[usize],
    alpha: Rational,
    trials: usize,
    seed: u64,
    fast: FastParams,
) -> Result<ScalingResult> {
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParams("sizes must be strictly ascending".into()));
    }
    if alpha < Rational::ZERO || alpha >= Rational::ONE {
        return Err(Error::InvalidParams(format!("alpha = {alpha} must lie in [0, 1)")));
    }
    let mut rows = Vec::new();
    let mut reports = Vec::new();
    for (k, &n) in sizes.iter().enumerate() {
        let p = bench_prime(n);
        let d = (alpha * Rational::from(n)).floor() as usize;
        let f = PrimeField::new(p)?;
        let code = CodeParams::new(EvalSet::prefix(f, n)?, if decoder.is_rs() { 1 } else { m }, d)?;
        let request = DecodeRequest { radius: None, fast, inject_fault: false };
        let radius = decoder.default_radius(&code, &fast)?;
        let errors = ((radius * Rational::from_int(3) / Rational::from_int(4)).ceil() - 1).max(0) as usize;
        let exp = Experiment {
            decoder,
            code,
            channel: ChannelSpec::RandomErrors { weight: errors },
            request,
            trials,
            seed: seed.wrapping_add(k as u64),
            timed: true,
        };
        let res = run_trials(&exp)?;
        let mut times: Vec<u64> = res.reports.iter().filter_map(|r| r.wall_ns).collect();
        times.sort_unstable();
        let first = res.reports.first();
        rows.push(ScalingRow {
            n,
            d,
            p,
            errors,
            median_ns: times.get(times.len() / 2).copied().unwrap_or(0),
            successes: res.successes,
            stats: DecodeStats {
                levels: first.map(|r| r.levels.clone()).unwrap_or_default(),
                rs_trials: first.map_or(0, |r| r.rs_trials),
            },
        });
        reports.extend(res.reports);
    }
    Ok(ScalingResult { rows, reports })
}

/// Sample mean and variance of 2E + F over independent erasure steps on a
/// weighted word against a fixed codeword: each position is erased with
/// probability equal to its uncertainty, E counts remaining disagreements
/// and F erasures.
pub fn erasure_moments(w: &[WeightedSymbol], c: &[Fe], samples: usize, rng: &mut SeededRng) -> (f64, f64) {
    let mut sum = 0f64;
    let mut sq = 0f64;
    for _ in 0..samples {
        let mut v = 0u64;
        for (s, &y) in w.iter().zip(c) {
            if crate::rs::bernoulli(rng, s.u.value()) {
                v += 1;
            } else if s.sigma != y {
                v += 2;
            }
        }
        sum += v as f64;
        sq += (v * v) as f64;
    }
    let k = samples as f64;
    let mean = sum / k;
    (mean, (sq - k * mean * mean) / (k - 1.0))
}
