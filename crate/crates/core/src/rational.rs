//! Exact nonnegative-friendly rationals used for distances and uncertainties.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, Zero};

use crate::error::{Error, Result};

/// Components are kept below this bound so products never leave i128.
pub const COMPONENT_BOUND: i128 = 1 << 62;

/// Exact rational with bounded numerator and denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rational(Ratio<i128>);

/// Distances are exact rationals; Hamming distances are integral ones.
pub type Distance = Rational;

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    pub fn new(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Self::checked(Ratio::new(num, den))
    }

    pub fn from_int(v: i128) -> Self {
        Self::checked(Ratio::from_integer(v)).expect("integer out of rational range")
    }

    fn checked(r: Ratio<i128>) -> Result<Self> {
        if r.numer().abs() >= COMPONENT_BOUND || *r.denom() >= COMPONENT_BOUND {
            return Err(Error::Overflow);
        }
        Ok(Rational(r))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn floor(&self) -> i128 {
        Integer::div_floor(&self.numer(), &self.denom())
    }

    pub fn ceil(&self) -> i128 {
        -Integer::div_floor(&-self.numer(), &self.denom())
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.0.checked_add(&o.0).ok_or(Error::Overflow).and_then(Self::checked)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.0.checked_sub(&o.0).ok_or(Error::Overflow).and_then(Self::checked)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.0.checked_mul(&o.0).ok_or(Error::Overflow).and_then(Self::checked)
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.0.checked_div(&o.0).ok_or(Error::Overflow).and_then(Self::checked)
    }

    pub fn min(self, o: Self) -> Self {
        if o < self {
            o
        } else {
            self
        }
    }

    pub fn max(self, o: Self) -> Self {
        if o > self {
            o
        } else {
            self
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // Ratio's comparison avoids overflow by continued-fraction steps
        self.0.cmp(&other.0)
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $checked:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $f(self, o: Rational) -> Rational {
                self.$checked(&o).expect("rational arithmetic overflow")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl From<u64> for Rational {
    fn from(v: u64) -> Self {
        Rational::from_int(v as i128)
    }
}

impl From<usize> for Rational {
    fn from(v: usize) -> Self {
        Rational::from_int(v as i128)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Format(format!("not a rational: {s:?}"));
        match s.split_once('/') {
            Some((a, b)) => {
                let a = a.trim().parse::<i128>().map_err(|_| bad())?;
                let b = b.trim().parse::<i128>().map_err(|_| bad())?;
                Rational::new(a, b)
            }
            None => Ok(Rational::from_int(s.trim().parse::<i128>().map_err(|_| bad())?)),
        }
    }
}

/// Running sum that skips gcd work while denominators agree.
#[derive(Clone, Copy, Debug)]
pub(crate) struct RationalSum {
    num: i128,
    den: i128,
}

impl RationalSum {
    pub fn new() -> Self {
        RationalSum { num: 0, den: 1 }
    }

    pub fn add(&mut self, r: Rational) -> Result<()> {
        if r.denom() == self.den {
            self.num = self.num.checked_add(r.numer()).ok_or(Error::Overflow)?;
            if self.num.abs() >= COMPONENT_BOUND {
                self.normalize()?;
            }
            return Ok(());
        }
        let cur = self.finish()?;
        let s = cur.checked_add(&r)?;
        self.num = s.numer();
        self.den = s.denom();
        Ok(())
    }

    fn normalize(&mut self) -> Result<()> {
        let r = Rational::new(self.num, self.den)?;
        self.num = r.numer();
        self.den = r.denom();
        Ok(())
    }

    pub fn finish(&self) -> Result<Rational> {
        Rational::new(self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_ceil() {
        let r = Rational::new(7, 2).unwrap();
        assert_eq!(r.floor(), 3);
        assert_eq!(r.ceil(), 4);
        let r = Rational::new(-7, 2).unwrap();
        assert_eq!(r.floor(), -4);
        assert_eq!(r.ceil(), -3);
    }

    #[test]
    fn parse_and_print() {
        let r: Rational = "6/4".parse().unwrap();
        assert_eq!(r.to_string(), "3/2");
        assert_eq!("5".parse::<Rational>().unwrap(), Rational::from_int(5));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let big = Rational::new(COMPONENT_BOUND - 1, 1).unwrap();
        assert_eq!(big.checked_mul(&big), Err(Error::Overflow));
        assert!(Rational::new(COMPONENT_BOUND, 1).is_err());
    }

    #[test]
    fn sum_mixed_denominators() {
        let mut s = RationalSum::new();
        for (a, b) in [(1, 2), (1, 2), (1, 3), (2, 3), (5, 1)] {
            s.add(Rational::new(a, b).unwrap()).unwrap();
        }
        assert_eq!(s.finish().unwrap(), Rational::from_int(7));
    }
}
