//! Evaluation sets, product grids and multivariate polynomials.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField};
use crate::poly::UniPoly;

/// Ordered set of distinct field elements. Position in the list is the
/// element's index in grid coordinates.
#[derive(Clone, Debug)]
pub struct EvalSet {
    field: PrimeField,
    points: Vec<u64>,
    index: HashMap<u64, usize>,
}

impl PartialEq for EvalSet {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field && self.points == o.points
    }
}

impl Eq for EvalSet {}

impl EvalSet {
    pub fn new(field: PrimeField, points: &[u64]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut index = HashMap::with_capacity(points.len());
        for (i, &a) in points.iter().enumerate() {
            field.elem(a)?;
            if index.insert(a, i).is_some() {
                return Err(Error::DuplicatePoint(a));
            }
        }
        Ok(EvalSet { field, points: points.to_vec(), index })
    }

    /// The first n field elements 0, 1, ..., n-1.
    pub fn prefix(field: PrimeField, n: usize) -> Result<Self> {
        if n as u64 > field.modulus() {
            return Err(Error::InvalidParams(format!(
                "GF({}) has fewer than {n} elements",
                field.modulus()
            )));
        }
        let pts: Vec<u64> = (0..n as u64).collect();
        Self::new(field, &pts)
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> Fe {
        Fe(self.points[i])
    }

    pub fn points(&self) -> Vec<Fe> {
        self.points.iter().map(|&a| Fe(a)).collect()
    }

    pub(crate) fn raw(&self) -> &[u64] {
        &self.points
    }

    pub fn index_of(&self, a: Fe) -> Option<usize> {
        self.index.get(&a.0).copied()
    }

    /// Table t[i * (e + 1) + k] = a_i^k for k <= e.
    pub(crate) fn power_table(&self, e: usize) -> Vec<u64> {
        let f = &self.field;
        let mut t = Vec::with_capacity(self.len() * (e + 1));
        for &a in &self.points {
            let mut acc = 1 % f.modulus();
            for _ in 0..=e {
                t.push(acc);
                acc = f.mul_raw(acc, a);
            }
        }
        t
    }
}

/// Canonical index of a grid point: the first coordinate is most significant.
pub fn grid_index(coords: &[usize], n: usize) -> usize {
    coords.iter().fold(0, |acc, &c| acc * n + c)
}

/// Inverse of [`grid_index`].
pub fn grid_coords(mut idx: usize, n: usize, m: usize) -> Vec<usize> {
    let mut out = vec![0; m];
    for k in (0..m).rev() {
        out[k] = idx % n;
        idx /= n;
    }
    out
}

pub(crate) fn checked_pow(n: usize, m: usize) -> Result<usize> {
    let mut acc: usize = 1;
    for _ in 0..m {
        acc = acc
            .checked_mul(n)
            .ok_or_else(|| Error::InvalidParams(format!("grid {n}^{m} is too large")))?;
    }
    Ok(acc)
}

/// Polynomial in m variables with total degree at most `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    field: PrimeField,
    m: usize,
    bound: usize,
    terms: BTreeMap<Vec<u32>, u64>,
}

impl MultiPoly {
    pub fn zero(field: PrimeField, m: usize, bound: usize) -> Self {
        MultiPoly { field, m, bound, terms: BTreeMap::new() }
    }

    pub fn from_terms(
        field: PrimeField,
        m: usize,
        bound: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Fe)>,
    ) -> Result<Self> {
        let mut p = Self::zero(field, m, bound);
        for (e, c) in terms {
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    /// Adds c * X^e to the polynomial.
    pub fn add_term(&mut self, exps: Vec<u32>, c: Fe) -> Result<()> {
        if exps.len() != self.m {
            return Err(Error::ShapeMismatch(format!(
                "monomial has {} exponents, expected {}",
                exps.len(),
                self.m
            )));
        }
        let deg: usize = exps.iter().map(|&e| e as usize).sum();
        if deg > self.bound {
            return Err(Error::DegreeOverflow { degree: deg, bound: self.bound });
        }
        self.field.elem(c.0)?;
        self.add_raw_term(exps, c.0);
        Ok(())
    }

    pub(crate) fn add_raw_term(&mut self, exps: Vec<u32>, c: u64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Occupied(mut o) => {
                let v = self.field.add_raw(*o.get(), c);
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.m
    }

    pub fn degree_bound(&self) -> usize {
        self.bound
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max()
    }

    pub fn coeff(&self, exps: &[u32]) -> Fe {
        Fe(self.terms.get(exps).copied().unwrap_or(0))
    }

    /// Nonzero terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], Fe)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), Fe(c)))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Same polynomial with a different (sufficient) degree bound.
    pub fn with_bound(&self, bound: usize) -> Result<Self> {
        if let Some(t) = self.total_degree() {
            if t > bound {
                return Err(Error::DegreeOverflow { degree: t, bound });
            }
        }
        Ok(MultiPoly { bound, ..self.clone() })
    }

    pub fn eval(&self, point: &[Fe]) -> Result<Fe> {
        if point.len() != self.m {
            return Err(Error::ShapeMismatch(format!(
                "point has {} coordinates, expected {}",
                point.len(),
                self.m
            )));
        }
        let f = &self.field;
        for a in point {
            f.elem(a.0)?;
        }
        let mut acc = 0;
        for (e, &c) in &self.terms {
            let mut t = c;
            for (k, &ek) in e.iter().enumerate() {
                t = f.mul_raw(t, f.pow_raw(point[k].0, ek as u64));
            }
            acc = f.add_raw(acc, t);
        }
        Ok(Fe(acc))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        let mut out = self.clone();
        out.bound = self.bound.max(o.bound);
        for (e, &c) in &o.terms {
            out.add_raw_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        let mut out = self.clone();
        out.bound = self.bound.max(o.bound);
        for (e, &c) in &o.terms {
            out.add_raw_term(e.clone(), self.field.neg_raw(c));
        }
        Ok(out)
    }

    fn compatible(&self, o: &Self) -> Result<()> {
        if self.field != o.field {
            return Err(Error::FieldMismatch);
        }
        if self.m != o.m {
            return Err(Error::ShapeMismatch(format!("{} vs {} variables", self.m, o.m)));
        }
        Ok(())
    }

    /// Coefficient of X_m^k, a polynomial in the first m-1 variables.
    pub fn peel(&self, k: usize) -> Result<MultiPoly> {
        if self.m == 0 {
            return Err(Error::ShapeMismatch("cannot peel a constant".into()));
        }
        if k > self.bound {
            return Err(Error::DegreeOverflow { degree: k, bound: self.bound });
        }
        let mut out = MultiPoly::zero(self.field, self.m - 1, self.bound - k);
        for (e, &c) in &self.terms {
            if e[self.m - 1] as usize == k {
                out.terms.insert(e[..self.m - 1].to_vec(), c);
            }
        }
        Ok(out)
    }

    /// Sum of parts[k] * X_{m}^{k} where every part has m-1 variables.
    pub fn assemble(field: PrimeField, m: usize, bound: usize, parts: &[(usize, MultiPoly)]) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(field, m, bound);
        for (k, q) in parts {
            if q.m + 1 != m {
                return Err(Error::ShapeMismatch("part has the wrong number of variables".into()));
            }
            for (e, &c) in &q.terms {
                let mut full = e.clone();
                full.push(*k as u32);
                out.add_term(full, Fe(c))?;
            }
        }
        Ok(out)
    }

    pub fn to_univariate(&self) -> Result<UniPoly> {
        if self.m != 1 {
            return Err(Error::ShapeMismatch(format!("{} variables, expected 1", self.m)));
        }
        let mut v = vec![0; self.total_degree().map_or(0, |d| d + 1)];
        for (e, &c) in &self.terms {
            v[e[0] as usize] = c;
        }
        Ok(UniPoly::from_raw(self.field, v))
    }

    pub fn from_univariate(p: &UniPoly, bound: usize) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(*p.field(), 1, bound);
        for (k, &c) in p.raw().iter().enumerate() {
            if c != 0 {
                out.add_term(vec![k as u32], Fe(c))?;
            }
        }
        Ok(out)
    }

    /// Values on S^m in canonical grid order.
    pub fn eval_grid(&self, set: &EvalSet) -> Result<Vec<Fe>> {
        if *set.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self.eval_grid_raw(set)?.into_iter().map(Fe).collect())
    }

    pub(crate) fn eval_grid_raw(&self, set: &EvalSet) -> Result<Vec<u64>> {
        let n = set.len();
        let m = self.m;
        let total = checked_pow(n, m)?;
        let d = self.total_degree().unwrap_or(0);
        let dense_len = checked_pow(d + 1, m).ok().filter(|&l| l <= 1 << 26);
        match dense_len {
            Some(len) => Ok(self.eval_grid_dense(set, d, len)),
            None => {
                let mut out = Vec::with_capacity(total);
                for idx in 0..total {
                    let pt: Vec<Fe> = grid_coords(idx, n, m).into_iter().map(|c| set.point(c)).collect();
                    out.push(self.eval(&pt)?.0);
                }
                Ok(out)
            }
        }
    }

    fn eval_grid_dense(&self, set: &EvalSet, d: usize, len: usize) -> Vec<u64> {
        let f = &self.field;
        let n = set.len();
        let m = self.m;
        let w = d + 1;
        let mut a = vec![0u64; len];
        for (e, &c) in &self.terms {
            let idx = e.iter().fold(0, |acc, &x| acc * w + x as usize);
            a[idx] = c;
        }
        // pw[x * w + k] = a_x^k
        let pw = set.power_table(d);
        let mut dims = vec![w; m];
        let mut col = vec![0u64; w];
        for axis in (0..m).rev() {
            let outer: usize = dims[..axis].iter().product();
            let inner: usize = dims[axis + 1..].iter().product();
            let mut next = vec![0u64; outer * n * inner];
            for o in 0..outer {
                for i in 0..inner {
                    for (k, slot) in col.iter_mut().enumerate() {
                        *slot = a[(o * w + k) * inner + i];
                    }
                    let top = match col.iter().rposition(|&c| c != 0) {
                        Some(t) => t + 1,
                        None => continue,
                    };
                    for x in 0..n {
                        next[(o * n + x) * inner + i] = f.dot_raw(&col[..top], &pw[x * w..x * w + top]);
                    }
                }
            }
            dims[axis] = n;
            a = next;
        }
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn set_validation() {
        let f = gf(5);
        assert_eq!(EvalSet::new(f, &[1, 2, 1]).unwrap_err(), Error::DuplicatePoint(1));
        assert!(EvalSet::new(f, &[5]).is_err());
        assert_eq!(EvalSet::new(f, &[]).unwrap_err(), Error::EmptySet);
        assert!(EvalSet::prefix(f, 6).is_err());
    }

    #[test]
    fn grid_order_first_coordinate_major() {
        assert_eq!(grid_index(&[1, 2], 3), 5);
        assert_eq!(grid_coords(5, 3, 2), vec![1, 2]);
        for i in 0..64 {
            assert_eq!(grid_index(&grid_coords(i, 4, 3), 4), i);
        }
    }

    #[test]
    fn grid_eval_matches_pointwise() {
        let f = gf(11);
        let set = EvalSet::new(f, &[0, 3, 5, 7, 10]).unwrap();
        let p = MultiPoly::from_terms(
            f,
            3,
            3,
            vec![
                (vec![0, 0, 0], Fe(4)),
                (vec![1, 0, 2], Fe(7)),
                (vec![0, 3, 0], Fe(1)),
                (vec![1, 1, 1], Fe(9)),
                (vec![0, 0, 1], Fe(2)),
            ],
        )
        .unwrap();
        let grid = p.eval_grid(&set).unwrap();
        for (idx, v) in grid.iter().enumerate() {
            let pt: Vec<Fe> = grid_coords(idx, 5, 3).into_iter().map(|c| set.point(c)).collect();
            assert_eq!(*v, p.eval(&pt).unwrap());
        }
    }

    #[test]
    fn degree_bound_enforced() {
        let f = gf(7);
        let mut p = MultiPoly::zero(f, 2, 2);
        assert_eq!(
            p.add_term(vec![2, 1], Fe(1)),
            Err(Error::DegreeOverflow { degree: 3, bound: 2 })
        );
        p.add_term(vec![1, 1], Fe(3)).unwrap();
        p.add_term(vec![1, 1], Fe(4)).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn peel_and_assemble_roundtrip() {
        let f = gf(7);
        let p = MultiPoly::from_terms(
            f,
            2,
            3,
            vec![(vec![1, 2], Fe(3)), (vec![0, 3], Fe(2)), (vec![3, 0], Fe(5)), (vec![0, 0], Fe(1))],
        )
        .unwrap();
        let parts: Vec<(usize, MultiPoly)> = (0..=3).map(|k| (k, p.peel(k).unwrap())).collect();
        assert_eq!(parts[2].1.degree_bound(), 1);
        assert_eq!(MultiPoly::assemble(f, 2, 3, &parts).unwrap(), p);
    }
}
