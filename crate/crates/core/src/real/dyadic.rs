use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numerics::Rational;

/// Rounding direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// Exact binary number `mant * 2^exp`, normalised to an odd mantissa.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

/// `floor(m / 2^s)`.
pub(crate) fn shr_floor(m: &BigInt, s: u64) -> BigInt {
    if m.is_negative() {
        -shr_ceil(&-m, s)
    } else {
        m >> s
    }
}

/// `ceil(m / 2^s)`.
pub(crate) fn shr_ceil(m: &BigInt, s: u64) -> BigInt {
    if m.is_negative() {
        return -shr_floor(&-m, s);
    }
    let q: BigInt = m >> s;
    let exact = m.trailing_zeros().is_none_or(|tz| tz >= s);
    if exact {
        q
    } else {
        q + 1
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Dyadic {
        if mant.is_zero() {
            return Dyadic { mant, exp: 0 };
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Dyadic { mant, exp }
        } else {
            Dyadic { mant: mant >> tz, exp: exp + tz as i64 }
        }
    }

    pub fn zero() -> Dyadic {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Dyadic {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_int(n: i64) -> Dyadic {
        Dyadic::new(BigInt::from(n), 0)
    }

    /// Exact value of a finite float.
    pub fn from_f64(x: f64) -> Dyadic {
        assert!(x.is_finite(), "non-finite float {x}");
        if x == 0.0 {
            return Dyadic::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), raw_exp - 1075) };
        Dyadic::new(BigInt::from(m) * sign, e)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            BigSign::Minus => -1,
            BigSign::NoSign => 0,
            BigSign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    /// `self * 2^e`.
    pub fn mul_pow2(&self, e: i64) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + e }
    }

    pub fn add(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &o.mant << (o.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, o: &Dyadic) -> Dyadic {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &o.mant, self.exp + o.exp)
    }

    /// Round to at most `prec` significant bits in the given direction.
    pub fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let s = bits - prec as u64;
        let m = match dir {
            Round::Down => shr_floor(&self.mant, s),
            Round::Up => shr_ceil(&self.mant, s),
        };
        Dyadic::new(m, self.exp + s as i64)
    }

    /// `a / b` rounded to `prec` significant bits.
    pub fn div(a: &Dyadic, b: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        assert!(!b.is_zero(), "dyadic division by zero");
        if a.is_zero() {
            return Dyadic::zero();
        }
        let shift = (prec as i64 + 2 + b.mant.bits() as i64 - a.mant.bits() as i64).max(0) as u64;
        let num = &a.mant << shift;
        let q = match dir {
            Round::Down => num.div_floor(&b.mant),
            Round::Up => -((-num).div_floor(&b.mant)),
        };
        Dyadic::new(q, a.exp - b.exp - shift as i64).round(prec, dir)
    }

    /// Rational rounded to `prec` significant bits.
    pub fn from_rational(r: &Rational, prec: u32, dir: Round) -> Dyadic {
        let n = Dyadic::new(r.numer().clone(), 0);
        let d = Dyadic::new(r.denom().clone(), 0);
        if d.mant.is_one() {
            return Dyadic::new(n.mant, n.exp - d.exp).round(prec, dir);
        }
        Dyadic::div(&n, &d, prec, dir)
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as u64)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Nearest float (may overflow to infinity or underflow to zero).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(60, Round::Down);
        let m = r.mant.to_f64().unwrap();
        if r.exp > 2000 {
            return m * f64::INFINITY;
        }
        if r.exp < -2200 {
            return m * 0.0;
        }
        let half = r.exp / 2;
        m * 2f64.powi(half as i32) * 2f64.powi((r.exp - half) as i32)
    }

    /// Largest float not above the value.
    pub fn to_f64_down(&self) -> f64 {
        let mut f = self.to_f64();
        if f.is_nan() {
            return f64::NEG_INFINITY;
        }
        while f.is_finite() && Dyadic::from_f64(f) > *self {
            f = f.next_down();
        }
        if f == f64::INFINITY {
            f = f64::MAX;
        }
        f
    }

    /// Smallest float not below the value.
    pub fn to_f64_up(&self) -> f64 {
        let mut f = self.to_f64();
        if f.is_nan() {
            return f64::INFINITY;
        }
        while f.is_finite() && Dyadic::from_f64(f) < *self {
            f = f.next_up();
        }
        if f == f64::NEG_INFINITY {
            f = f64::MIN;
        }
        f
    }

    /// `floor(log2 |x|)` for nonzero `x`.
    pub fn magnitude(&self) -> i64 {
        self.mant.bits() as i64 - 1 + self.exp
    }
}

impl Ord for Dyadic {
    fn cmp(&self, o: &Dyadic) -> Ordering {
        let (sa, sb) = (self.signum(), o.signum());
        if sa != sb || sa == 0 {
            return sa.cmp(&sb);
        }
        let (ma, mb) = (self.magnitude(), o.magnitude());
        if ma != mb {
            return if sa > 0 { ma.cmp(&mb) } else { mb.cmp(&ma) };
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &o.mant << (o.exp - e) as u64;
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, o: &Dyadic) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn float_round_trip() {
        for x in [0.0, 1.0, -2.5, 0.1, 1e-300, 5e-324, 1.7e308, -3.3e-5] {
            let d = Dyadic::from_f64(x);
            assert_eq!(d.to_f64(), x);
            assert_eq!(d.to_rational(), Rational::from_float(x).unwrap());
        }
    }

    #[test]
    fn directed_rounding_brackets() {
        let third = rat(1, 3);
        let lo = Dyadic::from_rational(&third, 20, Round::Down);
        let hi = Dyadic::from_rational(&third, 20, Round::Up);
        assert!(lo.to_rational() < third && third < hi.to_rational());
        assert!(hi.to_rational() - lo.to_rational() <= rat(1, 1 << 20));
        let neg = Dyadic::from_rational(&-third.clone(), 20, Round::Down);
        assert_eq!(neg, hi.neg());
        let exact = Dyadic::from_rational(&rat(3, 8), 20, Round::Down);
        assert_eq!(exact.to_rational(), rat(3, 8));
    }

    #[test]
    fn float_bounds_are_directed() {
        let third = Dyadic::from_rational(&rat(1, 3), 200, Round::Down);
        let (lo, hi) = (third.to_f64_down(), third.to_f64_up());
        assert!(Dyadic::from_f64(lo) <= third && third <= Dyadic::from_f64(hi));
        assert_eq!(lo.next_up(), hi);
    }

    #[test]
    fn ordering() {
        let a = Dyadic::from_f64(-1.5);
        let b = Dyadic::from_f64(0.25);
        let c = Dyadic::from_f64(3.0);
        assert!(a < b && b < c && a < c);
        assert!(Dyadic::from_f64(-4.0) < Dyadic::from_f64(-3.0));
        assert_eq!(Dyadic::from_f64(2.0).cmp(&Dyadic::new(BigInt::from(8), -2)), Ordering::Equal);
    }
}
