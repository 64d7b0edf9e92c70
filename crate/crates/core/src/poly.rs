//! Univariate polynomials over a prime field.
//!
//! The `raw` functions work on little-endian coefficient vectors of
//! canonical residues and are what the decoders use internally.

use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField};

pub(crate) mod raw {
    use crate::field::PrimeField;

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    /// Degree, or None for the zero polynomial. Input must be trimmed.
    pub fn deg(v: &[u64]) -> Option<usize> {
        v.len().checked_sub(1)
    }

    pub fn eval(f: &PrimeField, a: &[u64], x: u64) -> u64 {
        let mut acc = 0;
        for &c in a.iter().rev() {
            acc = f.add_raw(f.mul_raw(acc, x), c);
        }
        acc
    }

    pub fn add(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = long.to_vec();
        for (o, &s) in out.iter_mut().zip(short) {
            *o = f.add_raw(*o, s);
        }
        trim(&mut out);
        out
    }

    pub fn sub(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = a.to_vec();
        if out.len() < b.len() {
            out.resize(b.len(), 0);
        }
        for (o, &s) in out.iter_mut().zip(b) {
            *o = f.sub_raw(*o, s);
        }
        trim(&mut out);
        out
    }

    /// a -= c * x^shift * b
    pub fn sub_scaled_shifted(f: &PrimeField, a: &mut Vec<u64>, b: &[u64], c: u64, shift: usize) {
        if b.is_empty() || c == 0 {
            return;
        }
        if a.len() < b.len() + shift {
            a.resize(b.len() + shift, 0);
        }
        let cs = f.shoup(c);
        for (ai, &bi) in a[shift..].iter_mut().zip(b) {
            *ai = f.sub_raw(*ai, f.mul_shoup(c, cs, bi));
        }
        trim(a);
    }

    pub fn scale(f: &PrimeField, a: &[u64], c: u64) -> Vec<u64> {
        if c == 0 {
            return Vec::new();
        }
        let cs = f.shoup(c);
        a.iter().map(|&x| f.mul_shoup(c, cs, x)).collect()
    }

    pub fn mul(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let n = a.len() + b.len() - 1;
        let mut out = Vec::with_capacity(n);
        // convolution by output index so each coefficient is one lazy dot
        let mut rb: Vec<u64> = b.to_vec();
        rb.reverse();
        for k in 0..n {
            let lo = k.saturating_sub(b.len() - 1);
            let hi = k.min(a.len() - 1);
            let sa = &a[lo..=hi];
            let sb = &rb[b.len() - 1 - (k - lo)..b.len() - 1 - (k - hi) + 1];
            out.push(f.dot_raw(sa, sb));
        }
        trim(&mut out);
        out
    }

    /// Multiply in place by (x - r).
    pub fn mul_linear(f: &PrimeField, a: &mut Vec<u64>, r: u64) {
        let nr = f.neg_raw(r);
        a.push(0);
        for i in (0..a.len()).rev() {
            let below = if i > 0 { a[i - 1] } else { 0 };
            a[i] = f.add_raw(below, f.mul_raw(a[i], nr));
        }
        trim(a);
    }

    pub fn from_roots(f: &PrimeField, roots: &[u64]) -> Vec<u64> {
        let mut out = vec![1];
        for &r in roots {
            mul_linear(f, &mut out, r);
        }
        out
    }

    /// Quotient and remainder. Divisor must be nonzero and trimmed.
    pub fn divrem(f: &PrimeField, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        assert!(!b.is_empty(), "division by the zero polynomial");
        let mut r = a.to_vec();
        trim(&mut r);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let db = b.len() - 1;
        let inv = f.inv_raw(b[db]);
        let mut q = vec![0; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = f.mul_raw(r[k + db], inv);
            q[k] = c;
            if c != 0 {
                let cs = f.shoup(c);
                for (ri, &bi) in r[k..].iter_mut().zip(b) {
                    *ri = f.sub_raw(*ri, f.mul_shoup(c, cs, bi));
                }
            }
        }
        r.truncate(db);
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }

    pub fn rem(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
        divrem(f, a, b).1
    }

    /// Divide by (x - r), discarding the remainder.
    pub fn div_linear(f: &PrimeField, a: &[u64], r: u64) -> Vec<u64> {
        if a.len() <= 1 {
            return Vec::new();
        }
        let mut q = vec![0; a.len() - 1];
        let mut carry = 0;
        for i in (1..a.len()).rev() {
            carry = f.add_raw(a[i], f.mul_raw(carry, r));
            q[i - 1] = carry;
        }
        q
    }

    pub fn monic(f: &PrimeField, a: &[u64]) -> Vec<u64> {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => scale(f, a, f.inv_raw(lc)),
        }
    }

    pub fn gcd(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(f, &x, &y);
            x = y;
            y = r;
        }
        monic(f, &x)
    }

    /// base^e mod m.
    pub fn powmod(f: &PrimeField, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
        let mut acc = rem(f, &[1], m);
        let mut b = rem(f, base, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(f, &mul(f, &acc, &b), m);
            }
            b = rem(f, &mul(f, &b, &b), m);
            e >>= 1;
        }
        acc
    }
}

/// Polynomial in one variable with trimmed coefficients, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl UniPoly {
    pub fn zero(field: PrimeField) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn new(field: PrimeField, coeffs: &[Fe]) -> Result<Self> {
        let mut v = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            v.push(field.elem(c.0)?.0);
        }
        raw::trim(&mut v);
        Ok(UniPoly { field, coeffs: v })
    }

    pub fn from_u64(field: PrimeField, coeffs: &[u64]) -> Result<Self> {
        for &c in coeffs {
            field.elem(c)?;
        }
        Ok(Self::from_raw(field, coeffs.to_vec()))
    }

    pub(crate) fn from_raw(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        raw::trim(&mut coeffs);
        UniPoly { field, coeffs }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn degree(&self) -> Option<usize> {
        raw::deg(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of x^k, zero past the degree.
    pub fn coeff(&self, k: usize) -> Fe {
        Fe(self.coeffs.get(k).copied().unwrap_or(0))
    }

    pub fn coeffs(&self) -> Vec<Fe> {
        self.coeffs.iter().map(|&c| Fe(c)).collect()
    }

    pub(crate) fn raw(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn eval(&self, x: Fe) -> Result<Fe> {
        self.field.elem(x.0)?;
        Ok(Fe(raw::eval(&self.field, &self.coeffs, x.0)))
    }

    fn same_field(&self, o: &Self) -> Result<()> {
        if self.field != o.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_field(o)?;
        Ok(Self::from_raw(self.field, raw::add(&self.field, &self.coeffs, &o.coeffs)))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same_field(o)?;
        Ok(Self::from_raw(self.field, raw::sub(&self.field, &self.coeffs, &o.coeffs)))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_field(o)?;
        Ok(Self::from_raw(self.field, raw::mul(&self.field, &self.coeffs, &o.coeffs)))
    }

    pub fn divrem(&self, o: &Self) -> Result<(Self, Self)> {
        self.same_field(o)?;
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = raw::divrem(&self.field, &self.coeffs, &o.coeffs);
        Ok((Self::from_raw(self.field, q), Self::from_raw(self.field, r)))
    }
}

/// Evaluate f at x.
pub fn poly_eval(f: &UniPoly, x: Fe) -> Result<Fe> {
    f.eval(x)
}

/// The polynomial of degree below `points.len()` through every point, by
/// Newton divided differences; None when its degree exceeds `dmax`.
pub fn interpolate(field: &PrimeField, points: &[(Fe, Fe)], dmax: usize) -> Result<Option<UniPoly>> {
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut xs = Vec::with_capacity(points.len());
    for &(x, _) in points {
        let x = field.elem(x.0)?.0;
        if xs.contains(&x) {
            return Err(Error::DuplicatePoint(x));
        }
        xs.push(x);
    }
    let mut dd: Vec<u64> = points.iter().map(|&(_, y)| field.elem(y.0).map(|y| y.0)).collect::<Result<_>>()?;
    let k = xs.len();
    for j in 1..k {
        for i in (j..k).rev() {
            let num = field.sub(Fe(dd[i]), Fe(dd[i - 1]));
            let den = field.sub(Fe(xs[i]), Fe(xs[i - j]));
            dd[i] = field.div(num, den)?.0;
        }
    }
    // Horner on the Newton form
    let mut acc = vec![dd[k - 1]];
    for i in (0..k - 1).rev() {
        raw::mul_linear(field, &mut acc, xs[i]);
        if acc.is_empty() {
            acc.push(0);
        }
        acc[0] = field.add(Fe(acc[0]), Fe(dd[i])).0;
    }
    let p = UniPoly::from_raw(*field, acc);
    Ok(match p.degree() {
        Some(deg) if deg > dmax => None,
        _ => Some(p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn mul_matches_schoolbook() {
        let f = gf(101);
        let a = vec![3, 0, 7, 100, 1];
        let b = vec![5, 9, 2];
        let mut want = vec![0; a.len() + b.len() - 1];
        for i in 0..a.len() {
            for j in 0..b.len() {
                want[i + j] = (want[i + j] + a[i] * b[j]) % 101;
            }
        }
        assert_eq!(raw::mul(&f, &a, &b), want);
        assert_eq!(raw::mul(&f, &b, &a), want);
    }

    #[test]
    fn divrem_roundtrip() {
        let f = gf(13);
        let a = vec![1, 2, 3, 4, 5, 6];
        let b = vec![7, 0, 1];
        let (q, r) = raw::divrem(&f, &a, &b);
        assert!(r.len() < b.len());
        let back = raw::add(&f, &raw::mul(&f, &q, &b), &r);
        assert_eq!(back, a);
    }

    #[test]
    fn linear_helpers() {
        let f = gf(17);
        let g = raw::from_roots(&f, &[1, 2, 3]);
        for x in [1, 2, 3] {
            assert_eq!(raw::eval(&f, &g, x), 0);
        }
        let q = raw::div_linear(&f, &g, 2);
        assert_eq!(raw::mul(&f, &q, &[15, 1]), g);
    }

    #[test]
    fn gcd_of_products() {
        let f = gf(31);
        let a = raw::from_roots(&f, &[1, 4, 9]);
        let b = raw::from_roots(&f, &[4, 9, 16, 25]);
        assert_eq!(raw::gcd(&f, &a, &b), raw::from_roots(&f, &[4, 9]));
    }

    #[test]
    fn eval_rejects_foreign_points() {
        let p = UniPoly::from_u64(gf(5), &[1, 1]).unwrap();
        assert_eq!(p.eval(Fe(3)).unwrap(), Fe(4));
        assert!(p.eval(Fe(5)).is_err());
        let q = UniPoly::from_u64(gf(7), &[1]).unwrap();
        assert_eq!(p.add(&q), Err(Error::FieldMismatch));
    }
}
