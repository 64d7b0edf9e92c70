//! JSON word and polynomial files. Rationals are integer pairs; unknown
//! keys are rejected.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField};
use crate::multipoly::{checked_pow, EvalSet, MultiPoly};
use crate::rm::CodeParams;
use crate::weighted::{GridWord, Uncertainty, WeightedGridWord, WeightedSymbol};

/// A word on S^m, with optional per-position uncertainties [num, den].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordFile {
    pub p: u64,
    pub s: Vec<u64>,
    pub m: usize,
    pub d: usize,
    pub values: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uncertainties: Option<Vec<[u64; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub exps: Vec<u32>,
    pub coeff: u64,
}

/// A polynomial in m variables of total degree at most d.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyFile {
    pub p: u64,
    pub m: usize,
    pub d: usize,
    pub terms: Vec<Term>,
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(format!("line {}: {e}", e.line())))
}

fn render<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes") + "\n"
}

impl WordFile {
    pub fn parse(text: &str) -> Result<Self> {
        let w: WordFile = parse(text)?;
        w.validate()?;
        Ok(w)
    }

    pub fn render(&self) -> String {
        render(self)
    }

    pub fn validate(&self) -> Result<()> {
        let f = PrimeField::new(self.p)?;
        EvalSet::new(f, &self.s)?;
        let want = checked_pow(self.s.len(), self.m)?;
        if self.values.len() != want {
            return Err(Error::Format(format!("{} values, expected {}^{} = {want}", self.values.len(), self.s.len(), self.m)));
        }
        for &v in &self.values {
            f.elem(v)?;
        }
        if let Some(us) = &self.uncertainties {
            if us.len() != want {
                return Err(Error::Format(format!("{} uncertainties, expected {want}", us.len())));
            }
            for &[num, den] in us {
                if den == 0 || num > den {
                    return Err(Error::InvalidUncertainty(format!("{num}/{den}")));
                }
            }
        }
        Ok(())
    }

    pub fn from_word(code: &CodeParams, w: &WeightedGridWord) -> Self {
        let plain = w.symbols().iter().all(|s| s.u == Uncertainty::CERTAIN);
        WordFile {
            p: code.field().modulus(),
            s: code.set().points().iter().map(|x| x.value()).collect(),
            m: code.num_vars(),
            d: code.degree(),
            values: w.symbols().iter().map(|s| s.sigma.value()).collect(),
            uncertainties: (!plain).then(|| {
                w.symbols().iter().map(|s| [s.u.value().numer() as u64, s.u.value().denom() as u64]).collect()
            }),
        }
    }

    pub fn from_grid(code: &CodeParams, w: &GridWord) -> Self {
        Self::from_word(code, &w.to_weighted())
    }

    pub fn code(&self) -> Result<CodeParams> {
        let f = PrimeField::new(self.p)?;
        CodeParams::new(EvalSet::new(f, &self.s)?, self.m, self.d)
    }

    /// The word; missing uncertainties mean every symbol is certain.
    pub fn word(&self) -> Result<WeightedGridWord> {
        let f = PrimeField::new(self.p)?;
        let syms = match &self.uncertainties {
            None => self.values.iter().map(|&v| WeightedSymbol::certain(Fe(v))).collect(),
            Some(us) => self
                .values
                .iter()
                .zip(us)
                .map(|(&v, &[num, den])| Ok(WeightedSymbol { sigma: Fe(v), u: Uncertainty::from_ratio(num as i128, den as i128)? }))
                .collect::<Result<Vec<_>>>()?,
        };
        WeightedGridWord::new(f, self.s.len(), self.m, syms)
    }
}

impl PolyFile {
    pub fn parse(text: &str) -> Result<Self> {
        let p: PolyFile = parse(text)?;
        p.validate()?;
        Ok(p)
    }

    pub fn render(&self) -> String {
        render(self)
    }

    pub fn validate(&self) -> Result<()> {
        PrimeField::new(self.p)?;
        let mut seen = BTreeSet::new();
        for t in &self.terms {
            if t.exps.len() != self.m {
                return Err(Error::Format(format!("term {:?} has {} exponents, expected {}", t.exps, t.exps.len(), self.m)));
            }
            let deg: usize = t.exps.iter().map(|&e| e as usize).sum();
            if deg > self.d {
                return Err(Error::DegreeOverflow { degree: deg, bound: self.d });
            }
            if t.coeff == 0 || t.coeff >= self.p {
                return Err(Error::Format(format!("coefficient {} is not in [1, {})", t.coeff, self.p)));
            }
            if !seen.insert(&t.exps) {
                return Err(Error::Format(format!("monomial {:?} appears twice", t.exps)));
            }
        }
        Ok(())
    }

    /// Terms sorted by exponent vector.
    pub fn from_poly(p: &MultiPoly) -> Self {
        PolyFile {
            p: p.field().modulus(),
            m: p.num_vars(),
            d: p.degree_bound(),
            terms: p.terms().map(|(e, c)| Term { exps: e.to_vec(), coeff: c.value() }).collect(),
        }
    }

    pub fn poly(&self) -> Result<MultiPoly> {
        let f = PrimeField::new(self.p)?;
        MultiPoly::from_terms(f, self.m, self.d, self.terms.iter().map(|t| (t.exps.clone(), Fe(t.coeff))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unknown_keys() {
        let e = PolyFile::parse(r#"{"p": 5, "m": 1, "d": 1, "terms": [], "x": 1}"#).unwrap_err();
        assert!(matches!(e, Error::Format(_)));
    }

    #[test]
    fn error_names_the_line() {
        let e = WordFile::parse("{\n\"p\": 5,\n\"s\": [0, 1],\n\"m\": 1,\n\"d\": x\n}").unwrap_err();
        assert!(e.to_string().contains("line 5"), "{e}");
    }

    #[test]
    fn validates_contents() {
        let ok = r#"{"p": 5, "s": [0, 1], "m": 2, "d": 1, "values": [0, 1, 2, 3]}"#;
        assert!(WordFile::parse(ok).is_ok());
        let dup = r#"{"p": 5, "s": [1, 1], "m": 1, "d": 0, "values": [0, 1]}"#;
        assert!(WordFile::parse(dup).is_err());
        let short = r#"{"p": 5, "s": [0, 1], "m": 2, "d": 1, "values": [0, 1, 2]}"#;
        assert!(WordFile::parse(short).is_err());
        let bad_u = r#"{"p": 5, "s": [0, 1], "m": 1, "d": 0, "values": [0, 1], "uncertainties": [[0, 1], [3, 2]]}"#;
        assert!(WordFile::parse(bad_u).is_err());
        let zero = r#"{"p": 5, "m": 1, "d": 1, "terms": [{"exps": [1], "coeff": 0}]}"#;
        assert!(PolyFile::parse(zero).is_err());
        let high = r#"{"p": 5, "m": 2, "d": 1, "terms": [{"exps": [1, 1], "coeff": 2}]}"#;
        assert!(matches!(PolyFile::parse(high), Err(Error::DegreeOverflow { .. })));
    }
}
