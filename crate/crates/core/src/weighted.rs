//! Weighted symbols and the distances between words on a grid.

use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField};
use crate::multipoly::checked_pow;
use crate::rational::{Distance, Rational, RationalSum};

/// Exact rational in [0, 1]. Zero means certain, one means erased.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Uncertainty(Rational);

impl Uncertainty {
    pub const CERTAIN: Uncertainty = Uncertainty(Rational::ZERO);
    pub const ERASED: Uncertainty = Uncertainty(Rational::ONE);

    pub fn new(r: Rational) -> Result<Self> {
        if r < Rational::ZERO || r > Rational::ONE {
            return Err(Error::InvalidUncertainty(r.to_string()));
        }
        Ok(Uncertainty(r))
    }

    pub fn from_ratio(num: i128, den: i128) -> Result<Self> {
        Self::new(Rational::new(num, den).map_err(|_| Error::InvalidUncertainty(format!("{num}/{den}")))?)
    }

    pub fn value(&self) -> Rational {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeightedSymbol {
    pub sigma: Fe,
    pub u: Uncertainty,
}

impl WeightedSymbol {
    pub fn certain(sigma: Fe) -> Self {
        WeightedSymbol { sigma, u: Uncertainty::CERTAIN }
    }

    pub fn erased() -> Self {
        WeightedSymbol { sigma: Fe::ZERO, u: Uncertainty::ERASED }
    }
}

/// Distance of one weighted symbol to a field element.
pub fn wdist_symbol(w: &WeightedSymbol, y: Fe) -> Distance {
    let half = w.u.0 / Rational::from_int(2);
    if w.sigma == y {
        half
    } else {
        Rational::ONE - half
    }
}

/// Field values on S^m in canonical grid order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridWord {
    field: PrimeField,
    n: usize,
    m: usize,
    values: Vec<Fe>,
}

impl GridWord {
    pub fn new(field: PrimeField, n: usize, m: usize, values: Vec<Fe>) -> Result<Self> {
        let want = checked_pow(n, m)?;
        if values.len() != want {
            return Err(Error::ShapeMismatch(format!("{} entries, expected {n}^{m} = {want}", values.len())));
        }
        for v in &values {
            field.elem(v.0)?;
        }
        Ok(GridWord { field, n, m, values })
    }

    pub(crate) fn from_raw(field: PrimeField, n: usize, m: usize, values: Vec<u64>) -> Self {
        debug_assert_eq!(values.len(), n.pow(m as u32));
        GridWord { field, n, m, values: values.into_iter().map(Fe).collect() }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn side(&self) -> usize {
        self.n
    }

    pub fn num_vars(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[Fe] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Fe] {
        &mut self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Every entry certain.
    pub fn to_weighted(&self) -> WeightedGridWord {
        WeightedGridWord {
            field: self.field,
            n: self.n,
            m: self.m,
            symbols: self.values.iter().map(|&v| WeightedSymbol::certain(v)).collect(),
        }
    }

    fn same_shape(&self, field: &PrimeField, n: usize, m: usize) -> Result<()> {
        if self.field != *field {
            return Err(Error::FieldMismatch);
        }
        if self.n != n || self.m != m {
            return Err(Error::ShapeMismatch(format!("{}^{} grid vs {n}^{m} grid", self.n, self.m)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGridWord {
    field: PrimeField,
    n: usize,
    m: usize,
    symbols: Vec<WeightedSymbol>,
}

impl WeightedGridWord {
    pub fn new(field: PrimeField, n: usize, m: usize, symbols: Vec<WeightedSymbol>) -> Result<Self> {
        let want = checked_pow(n, m)?;
        if symbols.len() != want {
            return Err(Error::ShapeMismatch(format!("{} entries, expected {n}^{m} = {want}", symbols.len())));
        }
        for s in &symbols {
            field.elem(s.sigma.0)?;
            Uncertainty::new(s.u.0)?;
        }
        Ok(WeightedGridWord { field, n, m, symbols })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn side(&self) -> usize {
        self.n
    }

    pub fn num_vars(&self) -> usize {
        self.m
    }

    pub fn symbols(&self) -> &[WeightedSymbol] {
        &self.symbols
    }

    pub fn symbols_mut(&mut self) -> &mut [WeightedSymbol] {
        &mut self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn sigmas(&self) -> GridWord {
        GridWord { field: self.field, n: self.n, m: self.m, values: self.symbols.iter().map(|s| s.sigma).collect() }
    }
}

/// Weighted distance between a weighted word and a plain word.
pub fn wdist(r: &WeightedGridWord, c: &GridWord) -> Result<Distance> {
    c.same_shape(&r.field, r.n, r.m)?;
    wdist_slice(&r.symbols, &c.values)
}

/// Hamming distance between two plain words.
pub fn hdist(a: &GridWord, b: &GridWord) -> Result<u64> {
    b.same_shape(&a.field, a.n, a.m)?;
    Ok(a.values.iter().zip(&b.values).filter(|(x, y)| x != y).count() as u64)
}

pub(crate) fn wdist_slice(r: &[WeightedSymbol], c: &[Fe]) -> Result<Distance> {
    debug_assert_eq!(r.len(), c.len());
    wdist_iter(r, c.iter().map(|y| y.0))
}

pub(crate) fn wdist_raw(r: &[WeightedSymbol], c: &[u64]) -> Result<Distance> {
    debug_assert_eq!(r.len(), c.len());
    wdist_iter(r, c.iter().copied())
}

fn wdist_iter(r: &[WeightedSymbol], c: impl Iterator<Item = u64>) -> Result<Distance> {
    let mut sum = RationalSum::new();
    let mut mismatches: i128 = 0;
    for (w, y) in r.iter().zip(c) {
        // 1 - u/2 = 1 + (-u)/2, so count the ones separately
        if w.sigma.0 != y {
            mismatches += 1;
            if !w.u.0.is_zero() {
                sum.add(-w.u.0)?;
            }
        } else if !w.u.0.is_zero() {
            sum.add(w.u.0)?;
        }
    }
    let halves = sum.finish()?.checked_div(&Rational::from_int(2))?;
    Rational::from_int(mismatches).checked_add(&halves)
}

pub(crate) fn hdist_raw(a: &[u64], b: &[u64]) -> u64 {
    a.iter().zip(b).filter(|(x, y)| x != y).count() as u64
}
