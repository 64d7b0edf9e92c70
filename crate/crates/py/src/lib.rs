use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use rmdecode::acceptance;
use rmdecode::harness::{self, ChannelSpec, DecodeRequest, DecoderId, DecoderOutput};
use rmdecode::io::{PolyFile, Term, WordFile};
use rmdecode::{rm_encode, CodeParams, Decoded, EvalSet, FastParams, MultiPoly, PrimeField, Probe, Rational, SeededRng};

type Terms = Vec<(Vec<u32>, u64)>;

fn err(e: rmdecode::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn word_file(p: u64, s: Vec<u64>, m: usize, d: usize, values: Vec<u64>, unc: Option<Vec<(u64, u64)>>) -> PyResult<WordFile> {
    let wf = WordFile { p, s, m, d, values, uncertainties: unc.map(|u| u.into_iter().map(|(a, b)| [a, b]).collect()) };
    wf.validate().map_err(err)?;
    Ok(wf)
}

fn terms_of(poly: &MultiPoly) -> Terms {
    PolyFile::from_poly(poly).terms.into_iter().map(|t| (t.exps, t.coeff)).collect()
}

fn ratio(r: Rational) -> (i128, i128) {
    (r.numer(), r.denom())
}

/// Evaluations of sum(coeff * x^exps) on S^m, first coordinate slowest.
#[pyfunction]
fn encode(p: u64, s: Vec<u64>, m: usize, d: usize, terms: Terms) -> PyResult<Vec<u64>> {
    let pf = PolyFile { p, m, d, terms: terms.into_iter().map(|(exps, coeff)| Term { exps, coeff }).collect() };
    pf.validate().map_err(err)?;
    let field = PrimeField::new(p).map_err(err)?;
    let code = CodeParams::new(EvalSet::new(field, &s).map_err(err)?, m, d).map_err(err)?;
    let word = rm_encode(&pf.poly().map_err(err)?, &code).map_err(err)?;
    Ok(word.values().iter().map(|v| v.value()).collect())
}

/// Applies a channel such as "errors:5" or "weighted:7/2". Returns the new
/// values and uncertainties as (num, den) pairs.
#[pyfunction]
#[pyo3(signature = (p, s, m, d, values, channel, seed=0))]
fn corrupt(
    p: u64,
    s: Vec<u64>,
    m: usize,
    d: usize,
    values: Vec<u64>,
    channel: &str,
    seed: u64,
) -> PyResult<(Vec<u64>, Vec<(i128, i128)>)> {
    let wf = word_file(p, s, m, d, values, None)?;
    let spec: ChannelSpec = channel.parse().map_err(err)?;
    let w = wf.word().map_err(err)?.sigmas();
    let out = harness::corrupt_weighted(&w, &spec, &mut SeededRng::new(seed)).map_err(err)?;
    Ok((
        out.symbols().iter().map(|x| x.sigma.value()).collect(),
        out.symbols().iter().map(|x| ratio(x.u.value())).collect(),
    ))
}

/// Decodes a word. Unique decoders return (terms, (num, den)) or None;
/// "rs-list" returns a list of (terms, distance).
#[pyfunction]
#[pyo3(signature = (p, s, m, d, values, algo="bivariate", uncertainties=None, seed=0, radius=None, repeats=None))]
#[allow(clippy::too_many_arguments)]
fn decode(
    py: Python<'_>,
    p: u64,
    s: Vec<u64>,
    m: usize,
    d: usize,
    values: Vec<u64>,
    algo: &str,
    uncertainties: Option<Vec<(u64, u64)>>,
    seed: u64,
    radius: Option<&str>,
    repeats: Option<u32>,
) -> PyResult<Py<PyAny>> {
    let wf = word_file(p, s, m, d, values, uncertainties)?;
    let id: DecoderId = algo.parse().map_err(err)?;
    let radius = radius.map(|r| r.parse::<Rational>()).transpose().map_err(err)?;
    let req = DecodeRequest { radius, fast: FastParams { repeats, ..Default::default() }, inject_fault: false };
    let code = wf.code().map_err(err)?;
    let word = wf.word().map_err(err)?;
    let out = py
        .detach(|| harness::decode_with(id, &code, &word, &req, &SeededRng::new(seed), &mut Probe::new()))
        .map_err(err)?;
    Ok(match out {
        DecoderOutput::Outcome(Decoded::Unique { poly, dist }) => (terms_of(&poly), ratio(dist)).into_pyobject(py)?.into_any().unbind(),
        DecoderOutput::Outcome(Decoded::Failure(_)) => py.None(),
        DecoderOutput::List(list) => list
            .iter()
            .map(|(q, e)| (terms_of(q), e.numer() as u64))
            .collect::<Vec<_>>()
            .into_pyobject(py)?
            .into_any()
            .unbind(),
    })
}

/// Runs acceptance criteria; returns (id, passed, detail) per criterion.
#[pyfunction]
#[pyo3(signature = (ids=None, quick=true))]
fn selftest(py: Python<'_>, ids: Option<Vec<usize>>, quick: bool) -> PyResult<Vec<(usize, bool, String)>> {
    let ids = ids.unwrap_or_else(|| (1..=12).collect());
    if ids.iter().any(|i| !(1..=12).contains(i)) {
        return Err(PyValueError::new_err("criteria are numbered 1 to 12"));
    }
    let opts = acceptance::Options { quick, ..Default::default() };
    let verdicts = py.detach(|| acceptance::run(&ids, &opts));
    Ok(verdicts.into_iter().map(|v| (v.id, v.passed, v.detail)).collect())
}

#[pymodule]
#[pyo3(name = "rmdecode")]
fn rmdecode_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(encode, m)?)?;
    m.add_function(wrap_pyfunction!(corrupt, m)?)?;
    m.add_function(wrap_pyfunction!(decode, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
