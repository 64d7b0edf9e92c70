//! The acceptance suite. Each criterion returns a verdict with a one-line
//! summary; the integration tests and the `selftest` command share it.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use crate::error::Result;
use crate::field::{Fe, PrimeField};
use crate::harness::{
    corrupt, decode_with, erasure_moments, monomials, oracle_list, oracle_nearest_weighted,
    plant, random_poly, run_trials, scaling_benchmark, schwartz_zippel_check, ChannelSpec, DecodeRequest,
    DecoderId, DecoderOutput, Experiment,
};
use crate::multipoly::{EvalSet, MultiPoly};
use crate::rational::Rational;
use crate::rm::{self, CodeParams, FastParams, Probe};
use crate::rng::SeededRng;
use crate::rs::{self, Decoded, RsCode};
use crate::weighted::{hdist, wdist, GridWord, Uncertainty, WeightedGridWord, WeightedSymbol};

pub const TITLES: [&str; 12] = [
    "half-distance exhaustive",
    "soft decoder vs oracle",
    "triangle inequality",
    "schwartz-zippel sweep",
    "list decoder completeness",
    "randomized soft rs success",
    "erasure moments",
    "fast bivariate success",
    "general fast decoder",
    "call-count accounting",
    "scaling slope",
    "determinism",
];

#[derive(Clone, Debug)]
pub struct Options {
    /// Smaller sample sizes; same thresholds.
    pub quick: bool,
    /// Perturb decoder answers; every decoder-based criterion must fail.
    pub inject_fault: bool,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { quick: false, inject_fault: false, seed: 20240601 }
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Verdict {
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {:<28} {:>8.2}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

/// Runs the chosen criteria in order.
pub fn run(ids: &[usize], opts: &Options) -> Vec<Verdict> {
    run_with(ids, opts, |_| {})
}

/// Like [`run`], calling `each` as soon as a criterion finishes.
pub fn run_with(ids: &[usize], opts: &Options, mut each: impl FnMut(&Verdict)) -> Vec<Verdict> {
    let mut suite = Suite { opts: opts.clone(), records: BTreeMap::new() };
    ids.iter()
        .map(|&id| {
            let v = suite.verdict(id);
            each(&v);
            v
        })
        .collect()
}

pub fn run_all(opts: &Options) -> Vec<Verdict> {
    run(&(1..=12).collect::<Vec<_>>(), opts)
}

struct Suite {
    opts: Options,
    // reproducible output of the randomized criteria, for the determinism check
    records: BTreeMap<usize, String>,
}

type Outcome = Result<(bool, String)>;

fn code(p: u64, n: usize, m: usize, d: usize) -> Result<CodeParams> {
    CodeParams::new(EvalSet::prefix(PrimeField::new(p)?, n)?, m, d)
}

fn returned(out: &DecoderOutput) -> Option<&MultiPoly> {
    match out {
        DecoderOutput::Outcome(Decoded::Unique { poly, .. }) => Some(poly),
        _ => None,
    }
}

impl Suite {
    fn scale(&self, full: usize, quick: usize) -> usize {
        if self.opts.quick {
            quick
        } else {
            full
        }
    }

    fn request(&self) -> DecodeRequest {
        DecodeRequest { inject_fault: self.opts.inject_fault, ..Default::default() }
    }

    fn rng(&self, id: usize) -> SeededRng {
        SeededRng::new(self.opts.seed).split(id as u64)
    }

    fn verdict(&mut self, id: usize) -> Verdict {
        let start = Instant::now();
        let res = match id {
            1 => self.half_distance(),
            2 => self.soft_oracle(),
            3 => self.triangle(),
            4 => self.schwartz_zippel(),
            5 => self.list_completeness(),
            6 => self.fast_rs_rate(),
            7 => self.moments(),
            8 => self.fast_bivariate(),
            9 => self.general_fast(),
            10 => self.call_counts(),
            11 => self.scaling(),
            12 => self.determinism(),
            _ => Ok((false, format!("no criterion {id}"))),
        };
        let (passed, detail) = res.unwrap_or_else(|e| (false, format!("error: {e}")));
        Verdict { id, title: TITLES.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"), passed, detail, elapsed: start.elapsed() }
    }

    /// Every codeword of the d = 1 code on {0..3}^2 over GF(5), every error
    /// pattern of weight <= 2 and random ones of weight 3..=5.
    fn half_distance(&mut self) -> Outcome {
        let c = code(5, 4, 2, 1)?;
        let f = *c.field();
        let req = self.request();
        let mons = monomials(2, 1);
        let mut rng = self.rng(1);
        let mut bad = 0usize;
        let mut total = 0usize;
        let step = self.scale(1, 5);
        let mut check = |word: &GridWord, want: &MultiPoly, rng: &mut SeededRng| -> Result<()> {
            let out = decode_with(DecoderId::Bivariate, &c, &word.to_weighted(), &req, &rng.split(0), &mut Probe::new())?;
            total += 1;
            if returned(&out) != Some(want) {
                bad += 1;
            }
            Ok(())
        };
        for idx in (0..125u64).step_by(step) {
            let mut poly = MultiPoly::zero(f, 2, 1);
            for (k, e) in mons.iter().enumerate() {
                poly.add_raw_term(e.clone(), idx / 5u64.pow(k as u32) % 5);
            }
            let sent = rm::rm_encode(&poly, &c)?;
            check(&sent, &poly, &mut rng)?;
            for i in 0..16 {
                for a in 1..5 {
                    let mut w = sent.clone();
                    w.values_mut()[i] = Fe((w.values()[i].value() + a) % 5);
                    check(&w, &poly, &mut rng)?;
                    for j in i + 1..16 {
                        for b in 1..5 {
                            let mut w2 = w.clone();
                            w2.values_mut()[j] = Fe((w2.values()[j].value() + b) % 5);
                            check(&w2, &poly, &mut rng)?;
                        }
                    }
                }
            }
        }
        let per = self.scale(10_000, 1_000);
        for weight in 3..=5 {
            for t in 0..per {
                let mut tr = rng.split(100 * weight as u64 + 1).split(t as u64);
                let poly = random_poly(&f, 2, 1, &mut tr);
                let sent = rm::rm_encode(&poly, &c)?;
                let w = corrupt(&sent, &ChannelSpec::RandomErrors { weight }, &mut tr)?;
                check(&w, &poly, &mut tr)?;
            }
        }
        Ok((bad == 0, format!("{bad} wrong of {total} decodes")))
    }

    /// Weighted decoding against exhaustive weighted-nearest search.
    fn soft_oracle(&mut self) -> Outcome {
        let req = self.request();
        let per = self.scale(1000, 150);
        let (mut bad, mut inside, mut total) = (0, 0, 0);
        for (k, (p, m)) in [(5u64, 1usize), (5, 2), (7, 1), (7, 2)].into_iter().enumerate() {
            for t in 0..per {
                let tr = self.rng(2).split(k as u64).split(t as u64);
                let mut pr = tr.split(0);
                let d = pr.below(3) as usize;
                let c = code(p, p as usize, m, d)?;
                let half = c.half_distance();
                let budget = half * Rational::new(1 + pr.below(12) as i128, 8)?;
                let inst = plant(&c, &ChannelSpec::WeightedBudget { budget }, &tr)?;
                let oracle = oracle_nearest_weighted(&c, &inst.word)?;
                let out = decode_with(DecoderId::Soft, &c, &inst.word, &req, &tr.split(2), &mut Probe::new())?;
                total += 1;
                let ok = if oracle.dist < half {
                    inside += 1;
                    matches!(&out, DecoderOutput::Outcome(Decoded::Unique { poly, dist }) if *poly == oracle.poly && *dist == oracle.dist)
                } else {
                    returned(&out).is_none()
                };
                if !ok {
                    bad += 1;
                }
            }
        }
        Ok((bad == 0, format!("{bad} mismatches of {total} words ({inside} within half distance)")))
    }

    fn triangle(&mut self) -> Outcome {
        let c = code(7, 7, 2, 1)?;
        let f = *c.field();
        let trials = self.scale(10_000, 2_000);
        let mut bad = 0;
        let mut tight = 0;
        for t in 0..trials {
            let mut r = self.rng(3).split(t as u64);
            let syms: Vec<WeightedSymbol> = (0..49)
                .map(|_| {
                    let sigma = Fe(r.below(7));
                    let u = Uncertainty::from_ratio(r.below(9) as i128, 8).expect("in range");
                    WeightedSymbol { sigma, u }
                })
                .collect();
            let w = WeightedGridWord::new(f, 7, 2, syms.clone())?;
            let near = |r: &mut SeededRng| -> Result<GridWord> {
                let flips = r.below(50) as usize;
                let base = GridWord::new(f, 7, 2, syms.iter().map(|s| s.sigma).collect())?;
                corrupt(&base, &ChannelSpec::RandomErrors { weight: flips }, r)
            };
            let a = near(&mut r)?;
            let b = near(&mut r)?;
            let lhs = wdist(&w, &a)? + wdist(&w, &b)?;
            let rhs = Rational::from(hdist(&a, &b)?);
            if lhs < rhs {
                bad += 1;
            }
            if lhs == rhs {
                tight += 1;
            }
        }
        Ok((bad == 0, format!("{bad} violations of {trials} ({tight} with equality)")))
    }

    fn schwartz_zippel(&mut self) -> Outcome {
        let trials = self.scale(10_000, 2_000);
        let f = PrimeField::new(11)?;
        let mut bad = 0;
        let mut worst = Rational::ZERO;
        for t in 0..trials {
            let mut r = self.rng(4).split(t as u64);
            let m = 2 + r.below(2) as usize;
            let d = 1 + r.below(5) as usize;
            let c = code(11, 11, m, d)?;
            let a = random_poly(&f, m, d, &mut r);
            let mut b = random_poly(&f, m, d, &mut r);
            while b == a {
                b = random_poly(&f, m, d, &mut r);
            }
            if !schwartz_zippel_check(&a, &b, &c)? {
                bad += 1;
            }
            let agree = c.len() as u64 - hdist(&rm::rm_encode(&a, &c)?, &rm::rm_encode(&b, &c)?)?;
            // agreement fraction relative to its bound d/n
            let ratio = Rational::new(agree as i128 * 11, c.len() as i128 * d as i128)?;
            worst = worst.max(ratio);
        }
        Ok((bad == 0, format!("{bad} violations of {trials}; max agreement / (d/n) = {worst}")))
    }

    fn list_completeness(&mut self) -> Outcome {
        let per = self.scale(1000, 200);
        let (mut bad, mut total, mut nonempty, mut regime) = (0, 0, 0, 0);
        for (k, p) in [5u64, 7].into_iter().enumerate() {
            let n = p as usize;
            for t in 0..per {
                let mut r = self.rng(5).split(k as u64).split(t as u64);
                let d = r.below(3) as usize;
                let c = code(p, n, 1, d)?;
                let f = *c.field();
                let word = if r.below(2) == 0 {
                    GridWord::new(f, n, 1, (0..n).map(|_| Fe(r.below(p))).collect())?
                } else {
                    let poly = random_poly(&f, 1, d, &mut r);
                    let w = r.below(n as u64 / 2 + 1) as usize;
                    corrupt(&rm::rm_encode(&poly, &c)?, &ChannelSpec::RandomErrors { weight: w }, &mut r)?
                };
                let special = Rational::new((n - d) as i128, 2)? + Rational::new(((n - d) * (n - d)) as i128, 8 * n as i128)?;
                let mut radii: Vec<Rational> =
                    (1..=2 * n as i128).map(|h| Rational::new(h, 2)).collect::<Result<Vec<_>>>()?;
                radii.push(special);
                radii.retain(|&t| rs::johnson_ok(n, d, t));
                if radii.is_empty() {
                    continue;
                }
                let rad = radii[r.below(radii.len() as u64) as usize];
                let rsc = RsCode::with_context(c.context().clone(), d)?;
                let got: Vec<(MultiPoly, u64)> = rs::rs_list_decode(&rsc, word.values(), rad)?
                    .into_iter()
                    .map(|(q, e)| Ok((MultiPoly::from_univariate(&q, d)?, e)))
                    .collect::<Result<_>>()?;
                let want = oracle_list(&c, &word, rad)?;
                total += 1;
                let mut g = got.clone();
                let mut w = want.clone();
                g.sort_by_key(|x| format!("{:?}", x));
                w.sort_by_key(|x| format!("{:?}", x));
                if g != w {
                    bad += 1;
                }
                if !got.is_empty() {
                    nonempty += 1;
                }
                if rad <= special {
                    regime += 1;
                    let g3 = ((n - d) * (n - d) * (n - d)) as u64;
                    if got.len() as u64 > (16 * (n * n * n) as u64).div_ceil(3 * g3) {
                        bad += 1;
                    }
                }
            }
        }
        Ok((bad == 0, format!("{bad} violations of {total} words ({nonempty} nonempty lists, {regime} in the constant-size regime)")))
    }

    fn fast_rs_rate(&mut self) -> Outcome {
        let c = code(257, 64, 1, 16)?;
        let radius = Rational::from_int(20);
        let exp = Experiment {
            decoder: DecoderId::RsFast,
            code: c,
            channel: ChannelSpec::WeightedBudget { budget: radius },
            request: DecodeRequest {
                radius: Some(radius),
                fast: FastParams { repeats: Some(1), ..Default::default() },
                inject_fault: self.opts.inject_fault,
            },
            trials: self.scale(2000, 300),
            seed: self.opts.seed.wrapping_add(6),
            timed: false,
        };
        let res = run_trials(&exp)?;
        self.records.insert(6, res.records());
        let rate = res.success_rate();
        let ok = rate >= Rational::new(7, 10)? && res.wrong == 0;
        Ok((ok, format!("single-trial success {}/{} = {:.3}, wrong {}", res.successes, res.trials, rate.to_f64(), res.wrong)))
    }

    fn moments(&mut self) -> Outcome {
        let c = code(257, 64, 1, 16)?;
        let samples = self.scale(10_000, 2_000);
        let mut ok = true;
        let mut rec = String::new();
        let mut worst_z = 0f64;
        let mut worst_var = 0f64;
        for k in 0..5u64 {
            let tr = self.rng(7).split(k);
            let budget = Rational::from_int(5 + 6 * k as i128);
            let inst = plant(&c, &ChannelSpec::WeightedBudget { budget }, &tr)?;
            let target = 2.0 * wdist(&inst.word, &inst.sent)?.to_f64();
            let (mean, var) = erasure_moments(inst.word.symbols(), inst.sent.values(), samples, &mut tr.split(3));
            let se = (var / samples as f64).sqrt();
            let z = if se > 0.0 { (mean - target).abs() / se } else { (mean - target).abs() * f64::INFINITY };
            worst_z = worst_z.max(if z.is_nan() { 0.0 } else { z });
            worst_var = worst_var.max(var);
            ok &= (mean - target).abs() <= 3.0 * se && var <= 64.0 / 4.0 * 1.15;
            rec.push_str(&format!("{k} {target} {mean} {var}\n"));
        }
        self.records.insert(7, rec);
        Ok((ok, format!("max |mean - 2 wdist| = {worst_z:.2} standard errors, max variance {worst_var:.2} (bound 16)")))
    }

    fn planted_experiment(&mut self, id: usize, decoder: DecoderId, c: CodeParams, weight: usize, trials: usize) -> Outcome {
        let exp = Experiment {
            decoder,
            code: c,
            channel: ChannelSpec::RandomErrors { weight },
            request: self.request(),
            trials,
            seed: self.opts.seed.wrapping_add(id as u64),
            timed: false,
        };
        let res = run_trials(&exp)?;
        self.records.insert(id, res.records());
        let rate = res.success_rate();
        let ok = rate >= Rational::new(97, 100)? && res.wrong == 0;
        Ok((ok, format!("{weight} errors: success {}/{}, wrong {}", res.successes, res.trials, res.wrong)))
    }

    /// Errors one below (n^2 / 2)(1 - d/n - 1/sqrt(n)) = 768.
    fn fast_bivariate(&mut self) -> Outcome {
        let trials = self.scale(500, 60);
        self.planted_experiment(8, DecoderId::FastBivariate, code(257, 64, 2, 32)?, 767, trials)
    }

    /// Errors one below (n^3 / 2)(1 - (d + 2 ceil(sqrt(n))) / n) = 6144.
    fn general_fast(&mut self) -> Outcome {
        let trials = self.scale(100, 20);
        self.planted_experiment(9, DecoderId::Fast, code(101, 32, 3, 8)?, 6143, trials)
    }

    fn call_counts(&mut self) -> Outcome {
        let settings = self.scale(10, 4);
        let fp = FastParams::default();
        let mut bad = Vec::new();
        let mut r = self.rng(10);
        // row-wise unique decoding: (d + 1) n row decodes, d + 1 soft decodes
        for k in 0..settings {
            let n = 4 + r.below(21) as usize;
            let d = r.below(n as u64) as usize;
            let c = code(257, n, 2, d)?;
            let weight = ((c.half_distance().ceil() - 1).max(0) as u64 / 2) as usize;
            let inst = plant(&c, &ChannelSpec::RandomErrors { weight }, &r.split(k as u64))?;
            let mut probe = Probe::new();
            let out = rm::decode_bivariate_probed(&inst.word.sigmas(), &c, &mut probe)?;
            let l = probe.stats.level(0);
            if l.row_unique_decodes != ((d + 1) * n) as u64 || l.coeff_decodes != (d + 1) as u64 || !out.is_unique() {
                bad.push(format!("alg1 n={n} d={d}"));
            }
        }
        // list reuse: n ceil((d + 1) / ell) list decodes
        let mut done = 0;
        while done < settings {
            let n = 32 + r.below(65) as usize;
            let d = r.below(n as u64 / 2) as usize;
            let gap = n - d;
            if gap * gap < 8 * n || rm::list_epochs(n, d).is_none() || n <= d + fp.sqrt_loss(n) {
                continue;
            }
            let ell = (gap * gap / (4 * n)).max(1);
            let c = code(257, n, 2, d)?;
            let weight = (fp.fast_radius(&c).floor() / 2) as usize;
            let tr = r.split(1000 + done as u64);
            let inst = plant(&c, &ChannelSpec::RandomErrors { weight }, &tr)?;
            let mut probe = Probe::new();
            let out = rm::decode_bivariate_fast_probed(&inst.word.sigmas(), &c, &fp, &tr.split(2), &mut probe)?;
            let l = probe.stats.level(0);
            let epochs = (d + 1).div_ceil(ell);
            if l.row_list_decodes != (n * epochs) as u64
                || l.epochs != epochs as u64
                || l.coeff_decodes != (d + 1) as u64
                || l.fallbacks != 0
                || !out.is_unique()
            {
                bad.push(format!("alg3 n={n} d={d}"));
            }
            done += 1;
        }
        // weighted rows: ceil((d + 1) / (e + 1)) decodes of each of n^(m-1) rows
        let mut done = 0;
        while done < settings {
            let m = 2 + r.below(2) as usize;
            let n = 16 + r.below(33) as usize;
            let d = r.below(n as u64 / 4 + 1) as usize;
            let s = fp.sqrt_loss(n);
            if n <= d + m * s + 1 {
                continue;
            }
            let e = r.below((n - d - m * s) as u64) as usize;
            let c = code(257, n, m, d)?;
            let radius = fp.soft_radius(&c, e);
            let tr = r.split(2000 + done as u64);
            let inst = plant(&c, &ChannelSpec::WeightedBudget { budget: radius / Rational::from_int(2) }, &tr)?;
            let mut probe = Probe::new();
            let out = rm::decode_soft_fast_probed(&inst.word, &c, &fp, radius, &tr.split(2), &mut probe)?;
            let l = probe.stats.level(0);
            let epochs = (d + 1).div_ceil(e + 1);
            let rows = c.len() / n;
            if l.row_soft_decodes != (epochs * rows) as u64 || l.epochs != epochs as u64 || !out.is_unique() {
                bad.push(format!("alg4 m={m} n={n} d={d} e={e}"));
            }
            done += 1;
        }
        Ok((bad.is_empty(), if bad.is_empty() { format!("{} settings per decoder match", settings) } else { bad.join(", ") }))
    }

    fn scaling(&mut self) -> Outcome {
        let alpha = Rational::new(1, 2)?;
        let fp = FastParams::default();
        let sizes: Vec<usize> = if self.opts.quick { vec![32, 64, 128] } else { vec![64, 128, 256, 512] };
        let fast = scaling_benchmark(DecoderId::FastBivariate, 2, &sizes, alpha, self.scale(5, 3), self.opts.seed, fp)?;
        let slow = scaling_benchmark(DecoderId::Bivariate, 2, &sizes, alpha, 1, self.opts.seed, fp)?;
        let (fs, ss) = (fast.slope(2), slow.slope(2));
        let ok = (0.9..=1.4).contains(&fs) && ss >= 1.3;
        let ms = |r: &crate::harness::ScalingResult| {
            r.rows.iter().map(|x| format!("{}:{:.3}s", x.n, x.median_ns as f64 / 1e9)).collect::<Vec<_>>().join(" ")
        };
        Ok((ok, format!("fast slope {fs:.2} [{}], bivariate slope {ss:.2} [{}]", ms(&fast), ms(&slow))))
    }

    fn determinism(&mut self) -> Outcome {
        let mut same = Vec::new();
        for id in 6..=9 {
            if !self.records.contains_key(&id) {
                self.verdict(id);
            }
            let first = self.records.remove(&id).unwrap_or_default();
            self.verdict(id);
            let second = self.records.get(&id).cloned().unwrap_or_default();
            if first.is_empty() || first != second {
                return Ok((false, format!("criterion {id} records differ between runs")));
            }
            same.push(format!("{id}:{}B", first.len()));
        }
        Ok((true, format!("identical records ({})", same.join(" "))))
    }
}
