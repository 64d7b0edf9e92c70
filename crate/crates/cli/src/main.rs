use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use rmdecode::acceptance;
use rmdecode::harness::{self, ChannelSpec, DecodeRequest, DecoderId, DecoderOutput};
use rmdecode::io::{PolyFile, WordFile};
use rmdecode::rm::LevelStats;
use rmdecode::{rm_encode, CodeParams, Decoded, EvalSet, FastParams, PrimeField, Probe, Rational, SeededRng};

#[derive(Parser)]
#[command(name = "rmdecode", version, about = "Encode, corrupt, decode and benchmark Reed-Muller codes over product sets")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a polynomial file on S^m and write a word file.
    Encode {
        /// Polynomial file, or - for standard input.
        poly: PathBuf,
        /// Evaluation set S, comma separated. Defaults to the whole field.
        #[arg(long, value_delimiter = ',', conflicts_with = "n")]
        set: Option<Vec<u64>>,
        /// Use S = {0, ..., n-1}.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Pass a word through a channel: errors:W, erasures:W, burst:RxK or weighted:B.
    Corrupt {
        word: PathBuf,
        #[arg(long)]
        channel: ChannelSpec,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Decode a word file; writes a polynomial file (a list for rs-list).
    Decode {
        word: PathBuf,
        /// bivariate, soft, fast-bivariate, soft-fast, fast, rs, rs-gmd, rs-fast or rs-list.
        #[arg(long)]
        algo: DecoderId,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Decoding radius as num/den; defaults to the decoder's own.
        #[arg(long)]
        radius: Option<Rational>,
        /// Trials per randomized Reed-Solomon decode.
        #[arg(long)]
        repeats: Option<u32>,
        /// Multiplier of sqrt(n) in the fast decoders' radius loss.
        #[arg(long, default_value = "1")]
        beta: Rational,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Time a decoder on planted instances over growing n.
    Bench {
        #[arg(long)]
        decoder: DecoderId,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// d = floor(alpha n).
        #[arg(long, default_value = "1/2")]
        alpha: Rational,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Where to write one JSON record per trial; standard error if absent.
        #[arg(long)]
        records: Option<PathBuf>,
    },
    /// Run the acceptance criteria.
    Selftest {
        /// Smaller samples, same thresholds.
        #[arg(long)]
        quick: bool,
        /// Perturb every decoder answer; the run must then fail.
        #[arg(long)]
        inject_fault: bool,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<usize>>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Input problems exit with 2, decoding failures with 1.
enum Fail {
    Input(String),
    Decode,
}

impl From<rmdecode::Error> for Fail {
    fn from(e: rmdecode::Error) -> Self {
        Fail::Input(e.to_string())
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Self {
        Fail::Input(e.to_string())
    }
}

type Res = Result<(), Fail>;

fn read_input(path: &Path) -> Result<String, Fail> {
    let mut s = String::new();
    if path == Path::new("-") {
        io::stdin().read_to_string(&mut s)?;
    } else {
        s = fs::read_to_string(path).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(s)
}

fn parse_with<T>(path: &Path, f: impl FnOnce(&str) -> rmdecode::Result<T>) -> Result<T, Fail> {
    f(&read_input(path)?).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))
}

/// Writes through a sibling temporary file so readers never see half a file.
fn write_output(out: Option<&Path>, text: &str) -> Res {
    match out {
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
        Some(path) => {
            let mut tmp = path.as_os_str().to_owned();
            tmp.push(".tmp");
            fs::write(&tmp, text)?;
            fs::rename(&tmp, path)?;
            Ok(())
        }
    }
}

fn report(pairs: &[(&str, String)]) {
    let line: Vec<String> = pairs.iter().map(|(k, v)| format!("{k}={v}")).collect();
    eprintln!("{}", line.join(" "));
}

fn stat_pairs(l: &LevelStats) -> Vec<(&'static str, String)> {
    vec![
        ("calls", l.calls.to_string()),
        ("iterations", l.iterations.to_string()),
        ("epochs", l.epochs.to_string()),
        ("row_unique_decodes", l.row_unique_decodes.to_string()),
        ("row_soft_decodes", l.row_soft_decodes.to_string()),
        ("row_list_decodes", l.row_list_decodes.to_string()),
        ("coeff_decodes", l.coeff_decodes.to_string()),
        ("fallbacks", l.fallbacks.to_string()),
    ]
}

fn encode(poly: &Path, set: Option<Vec<u64>>, n: Option<usize>, out: Option<&Path>) -> Res {
    let pf = parse_with(poly, PolyFile::parse)?;
    let f = PrimeField::new(pf.p)?;
    let set = match (set, n) {
        (Some(s), _) => EvalSet::new(f, &s)?,
        (None, Some(n)) => EvalSet::prefix(f, n)?,
        (None, None) => EvalSet::prefix(f, usize::try_from(pf.p).map_err(|_| Fail::Input("field too large for a default set".into()))?)?,
    };
    let code = CodeParams::new(set, pf.m, pf.d)?;
    let word = rm_encode(&pf.poly()?, &code)?;
    write_output(out, &WordFile::from_grid(&code, &word).render())
}

fn corrupt(word: &Path, channel: &ChannelSpec, seed: u64, out: Option<&Path>) -> Res {
    let wf = parse_with(word, WordFile::parse)?;
    let code = wf.code()?;
    let w = wf.word()?;
    let mut rng = SeededRng::new(seed);
    let mut noisy = harness::corrupt_weighted(&w.sigmas(), channel, &mut rng)?;
    // uncertainties already present survive on untouched positions
    for (new, old) in noisy.symbols_mut().iter_mut().zip(w.symbols()) {
        if new.sigma == old.sigma && new.u.value().is_zero() {
            new.u = old.u;
        }
    }
    report(&[("channel", channel.to_string()), ("seed", seed.to_string()), ("hdist", rmdecode::hdist(&w.sigmas(), &noisy.sigmas())?.to_string())]);
    write_output(out, &WordFile::from_word(&code, &noisy).render())
}

#[derive(Serialize)]
struct ListEntry {
    dist: u64,
    poly: PolyFile,
}

#[allow(clippy::too_many_arguments)]
fn decode(
    word: &Path,
    algo: DecoderId,
    seed: u64,
    radius: Option<Rational>,
    repeats: Option<u32>,
    beta: Rational,
    out: Option<&Path>,
) -> Res {
    let wf = parse_with(word, WordFile::parse)?;
    let code = wf.code()?;
    let w = wf.word()?;
    let fast = FastParams { beta, repeats };
    fast.validate()?;
    let takes_radius = matches!(algo, DecoderId::RsGmd | DecoderId::RsFast | DecoderId::RsList | DecoderId::SoftFast);
    if radius.is_some() && !takes_radius {
        return Err(Fail::Input(format!("decoder {algo} has a fixed radius; drop --radius")));
    }
    let req = DecodeRequest { radius, fast, inject_fault: false };
    let used = match radius {
        Some(r) => r,
        None => algo.default_radius(&code, &fast)?,
    };
    let mut probe = Probe::new();
    let res = harness::decode_with(algo, &code, &w, &req, &SeededRng::new(seed), &mut probe)?;
    let mut pairs = vec![("algo", algo.to_string()), ("seed", seed.to_string()), ("radius", used.to_string())];
    let ok = match &res {
        DecoderOutput::Outcome(Decoded::Unique { poly, dist }) => {
            pairs.push(("outcome", "unique".into()));
            pairs.push(("dist", dist.to_string()));
            write_output(out, &PolyFile::from_poly(poly).render())?;
            true
        }
        DecoderOutput::Outcome(Decoded::Failure(r)) => {
            pairs.push(("outcome", r.as_str().into()));
            false
        }
        DecoderOutput::List(list) => {
            pairs.push(("outcome", "list".into()));
            pairs.push(("size", list.len().to_string()));
            let entries: Vec<ListEntry> = list
                .iter()
                .map(|(p, d)| ListEntry { dist: d.numer() as u64, poly: PolyFile::from_poly(p) })
                .collect();
            write_output(out, &(serde_json::to_string_pretty(&entries).expect("plain data") + "\n"))?;
            !list.is_empty()
        }
    };
    pairs.extend(stat_pairs(&probe.stats.level(0)));
    pairs.push(("levels", probe.stats.levels.len().to_string()));
    pairs.push(("row_decodes_total", probe.stats.row_decodes().to_string()));
    pairs.push(("rs_trials", probe.stats.rs_trials.to_string()));
    report(&pairs);
    if ok {
        Ok(())
    } else {
        Err(Fail::Decode)
    }
}

#[allow(clippy::too_many_arguments)]
fn bench(
    decoder: DecoderId,
    sizes: &[usize],
    m: usize,
    alpha: Rational,
    trials: usize,
    seed: u64,
    records: Option<&Path>,
) -> Res {
    if trials == 0 {
        return Err(Fail::Input("trials must be positive".into()));
    }
    let res = harness::scaling_benchmark(decoder, m, sizes, alpha, trials, seed, FastParams::default())?;
    let mut table = format!(
        "{:>6} {:>6} {:>8} {:>8} {:>8} {:>12} {:>12} {:>10} {:>10}\n",
        "n", "d", "p", "errors", "success", "median_ms", "row_decodes", "list_rows", "coeffs"
    );
    for r in &res.rows {
        let l = r.stats.level(0);
        table.push_str(&format!(
            "{:>6} {:>6} {:>8} {:>8} {:>8} {:>12.3} {:>12} {:>10} {:>10}\n",
            r.n,
            r.d,
            r.p,
            r.errors,
            format!("{}/{trials}", r.successes),
            r.median_ns as f64 / 1e6,
            r.stats.row_decodes(),
            l.row_list_decodes,
            l.coeff_decodes
        ));
    }
    if res.rows.len() >= 2 {
        table.push_str(&format!("slope vs n^{m}: {:.3}\n", res.slope(if decoder.is_rs() { 1 } else { m })));
    }
    // wall time stays in the table so that records are reproducible
    let recs: String = res
        .reports
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.wall_ns = None;
            r.to_record() + "\n"
        })
        .collect();
    io::stdout().write_all(table.as_bytes())?;
    match records {
        Some(path) => write_output(Some(path), &recs),
        None => {
            io::stderr().write_all(recs.as_bytes())?;
            Ok(())
        }
    }
}

fn selftest(quick: bool, inject_fault: bool, only: Option<Vec<usize>>, seed: Option<u64>) -> Res {
    let mut opts = acceptance::Options { quick, inject_fault, ..Default::default() };
    if let Some(s) = seed {
        opts.seed = s;
    }
    let ids = only.unwrap_or_else(|| (1..=12).collect());
    if let Some(bad) = ids.iter().find(|&&i| !(1..=12).contains(&i)) {
        return Err(Fail::Input(format!("no criterion {bad}")));
    }
    let verdicts = acceptance::run_with(&ids, &opts, |v| println!("{}", v.line()));
    let failed = verdicts.iter().filter(|v| !v.passed).count();
    println!("{} of {} criteria passed", ids.len() - failed, ids.len());
    if failed == 0 {
        Ok(())
    } else {
        Err(Fail::Decode)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Encode { poly, set, n, out } => encode(&poly, set, n, out.as_deref()),
        Cmd::Corrupt { word, channel, seed, out } => corrupt(&word, &channel, seed, out.as_deref()),
        Cmd::Decode { word, algo, seed, radius, repeats, beta, out } => {
            decode(&word, algo, seed, radius, repeats, beta, out.as_deref())
        }
        Cmd::Bench { decoder, sizes, m, alpha, trials, seed, records } => {
            bench(decoder, &sizes, m, alpha, trials, seed, records.as_deref())
        }
        Cmd::Selftest { quick, inject_fault, only, seed } => selftest(quick, inject_fault, only, seed),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Decode) => ExitCode::from(1),
        Err(Fail::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
