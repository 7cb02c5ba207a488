use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::{rational_to_f64, Rational, Sign};
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalValue {
    lo: Rational,
    hi: Rational,
}

impl IntervalValue {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyInterval(format!("[{lo}, {hi}]")));
        }
        Ok(IntervalValue { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        IntervalValue { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &IntervalValue) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &IntervalValue) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &IntervalValue) -> Option<IntervalValue> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        IntervalValue::new(lo, hi).ok()
    }

    /// Sign shared by every point, if there is one.
    pub fn sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Sign::Zero)
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rational) -> IntervalValue {
        let a = &self.lo * r;
        let b = &self.hi * r;
        if a <= b {
            IntervalValue { lo: a, hi: b }
        } else {
            IntervalValue { lo: b, hi: a }
        }
    }

    pub fn powi(&self, n: u32) -> IntervalValue {
        let mut acc = IntervalValue::point(Rational::from_integer(1.into()));
        for _ in 0..n {
            acc = &acc * self;
        }
        if n.is_multiple_of(2) && self.lo.is_negative() && self.hi.is_positive() {
            acc.lo = Rational::zero();
        }
        acc
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rational_to_f64(&self.lo), rational_to_f64(&self.hi))
    }
}

impl fmt::Display for IntervalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for &IntervalValue {
    type Output = IntervalValue;
    fn add(self, rhs: &IntervalValue) -> IntervalValue {
        IntervalValue { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }
}

impl Sub for &IntervalValue {
    type Output = IntervalValue;
    fn sub(self, rhs: &IntervalValue) -> IntervalValue {
        IntervalValue { lo: &self.lo - &rhs.hi, hi: &self.hi - &rhs.lo }
    }
}

impl Neg for &IntervalValue {
    type Output = IntervalValue;
    fn neg(self) -> IntervalValue {
        IntervalValue { lo: -&self.hi, hi: -&self.lo }
    }
}

impl Mul for &IntervalValue {
    type Output = IntervalValue;
    fn mul(self, rhs: &IntervalValue) -> IntervalValue {
        let c = [&self.lo * &rhs.lo, &self.lo * &rhs.hi, &self.hi * &rhs.lo, &self.hi * &rhs.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        IntervalValue { lo, hi }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    fn iv(a: i64, b: i64) -> IntervalValue {
        IntervalValue::new(rat(a, 1), rat(b, 1)).unwrap()
    }

    #[test]
    fn rejects_reversed_endpoints() {
        assert!(IntervalValue::new(rat(1, 1), rat(0, 1)).is_err());
    }

    #[test]
    fn arithmetic_encloses_pointwise_results() {
        let a = iv(-2, 3);
        let b = iv(1, 4);
        assert_eq!(&a * &b, iv(-8, 12));
        assert_eq!(&a - &b, iv(-6, 2));
        assert_eq!(&a + &b, iv(-1, 7));
        assert_eq!(a.powi(2), iv(0, 9));
        assert_eq!(iv(-3, -1).powi(3), iv(-27, -1));
    }

    #[test]
    fn signs() {
        assert_eq!(iv(1, 2).sign(), Some(Sign::Positive));
        assert_eq!(iv(-2, -1).sign(), Some(Sign::Negative));
        assert_eq!(iv(0, 0).sign(), Some(Sign::Zero));
        assert_eq!(iv(-1, 1).sign(), None);
    }
}
