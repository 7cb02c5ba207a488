use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{Dyadic, Enclosure, Round};
use crate::numerics::{to_decimal, IntervalValue, Rational};

/// Interval `[lo, hi]` with dyadic endpoints rounded outward to `prec` bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Real {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

/// A value with an explicit absolute error bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealEval {
    pub value: Dyadic,
    pub error_bound: Dyadic,
    pub precision_bits: u32,
}

impl RealEval {
    pub fn from_real(x: &Real) -> RealEval {
        let value = x.lo.add(&x.hi).mul_pow2(-1).round(x.prec, Round::Down);
        let r1 = x.hi.sub(&value);
        let r2 = value.sub(&x.lo);
        let error_bound = r1.max(r2).round(32, Round::Up);
        RealEval { value, error_bound, precision_bits: x.prec }
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// Decimal string with enough digits for the working precision.
    pub fn to_decimal(&self) -> String {
        let digits = (self.precision_bits as f64 * std::f64::consts::LOG10_2).ceil() as usize;
        to_decimal(&self.value.to_rational(), digits.max(1))
    }
}

impl fmt::Display for RealEval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:e}", self.value.to_f64(), self.error_bound.to_f64())
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo.to_f64_down(), self.hi.to_f64_up())
    }
}

impl Real {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Real {
        assert!(lo <= hi, "reversed interval endpoints");
        Real { lo: lo.round(prec, Round::Down), hi: hi.round(prec, Round::Up), prec }
    }

    pub fn exact(d: Dyadic, prec: u32) -> Real {
        Real::new(d.clone(), d, prec)
    }

    pub fn from_f64(x: f64, prec: u32) -> Real {
        Real::exact(Dyadic::from_f64(x), prec)
    }

    pub fn from_int(n: i64, prec: u32) -> Real {
        Real::exact(Dyadic::from_int(n), prec)
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Real {
        Real {
            lo: Dyadic::from_rational(r, prec, Round::Down),
            hi: Dyadic::from_rational(r, prec, Round::Up),
            prec,
        }
    }

    pub fn from_interval(iv: &IntervalValue, prec: u32) -> Real {
        Real {
            lo: Dyadic::from_rational(iv.lo(), prec, Round::Down),
            hi: Dyadic::from_rational(iv.hi(), prec, Round::Up),
            prec,
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Real {
        Real::new(self.lo.clone(), self.hi.clone(), prec)
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, d: &Dyadic) -> bool {
        &self.lo <= d && d <= &self.hi
    }

    pub fn overlaps(&self, o: &Real) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn to_interval_value(&self) -> IntervalValue {
        IntervalValue::new(self.lo.to_rational(), self.hi.to_rational()).expect("ordered")
    }

    pub fn mid_f64(&self) -> f64 {
        0.5 * (self.lo.to_f64() + self.hi.to_f64())
    }

    pub fn eval(&self) -> RealEval {
        RealEval::from_real(self)
    }

    fn p(&self, o: &Real) -> u32 {
        self.prec.max(o.prec)
    }

    pub fn recip(&self) -> Real {
        Enclosure::div(&self.constant(1.0), self)
    }

    /// `ln 2` enclosed to `prec` bits.
    pub fn ln2(prec: u32) -> Real {
        let w = prec as u64 + 40;
        let (l2, err) = ln2_fixed(w);
        fixed_to_real(&l2, &BigInt::from(err), w, prec)
    }

    /// `[min, max]` of two intervals' endpoints.
    pub fn max(&self, o: &Real) -> Real {
        Real { lo: self.lo.clone().max(o.lo.clone()), hi: self.hi.clone().max(o.hi.clone()), prec: self.p(o) }
    }

    pub fn min(&self, o: &Real) -> Real {
        Real { lo: self.lo.clone().min(o.lo.clone()), hi: self.hi.clone().min(o.hi.clone()), prec: self.p(o) }
    }

    pub fn to_rational_bounds(&self) -> (Rational, Rational) {
        (self.lo.to_rational(), self.hi.to_rational())
    }

    /// Midpoint as an exact dyadic.
    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).mul_pow2(-1)
    }

    /// Midpoint rounded to `digits` decimal places.
    pub fn mid_decimal(&self, digits: usize) -> String {
        to_decimal(&self.mid().to_rational(), digits)
    }

    pub fn lo_decimal(&self, digits: usize) -> String {
        to_decimal(&self.lo.to_rational(), digits)
    }
}

fn fixed_to_real(v: &BigInt, err: &BigInt, w: u64, prec: u32) -> Real {
    let lo = Dyadic::new(v - err, -(w as i64));
    let hi = Dyadic::new(v + err, -(w as i64));
    Real::new(lo, hi, prec)
}

/// `2 atanh(z)` in fixed point with `w` fractional bits, for `Z ~ z 2^w`,
/// `|Z - z 2^w| < 1` and `|z| <= 1/3`. Returns the value and an error bound in ulps.
fn atanh2_fixed(z: &BigInt, w: u64) -> (BigInt, u64) {
    let z2: BigInt = (z * z) >> w;
    let mut term = z.clone();
    let mut sum = z.clone();
    let mut n = 0u64;
    loop {
        n += 1;
        term = shr_trunc(&(&term * &z2), w);
        if term.is_zero() {
            break;
        }
        sum += &term / BigInt::from(2 * n + 1);
    }
    (sum * 2, 6 * (n + 1) + 6)
}

/// `m / 2^s` rounded toward zero.
fn shr_trunc(m: &BigInt, s: u64) -> BigInt {
    if m.is_negative() {
        -((-m) >> s)
    } else {
        m >> s
    }
}

fn ln2_fixed(w: u64) -> (BigInt, u64) {
    static CACHE: OnceLock<Mutex<HashMap<u64, (BigInt, u64)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&w) {
        return v.clone();
    }
    let z = (BigInt::from(1) << w) / 3;
    let v = atanh2_fixed(&z, w);
    cache.lock().unwrap().insert(w, v.clone());
    v
}

/// Rigorous enclosure of `ln d` for positive `d`.
///
/// With `d = y 2^E` and `y` in `[3/4, 3/2)`, `ln y = 2 atanh((y - 1)/(y + 1))`
/// is summed in fixed point with a tracked error bound.
fn ln_point(d: &Dyadic, prec: u32) -> Real {
    assert!(d.is_positive(), "logarithm of a non-positive number");
    let w = prec as u64 + 40;
    let m = d.mantissa().clone();
    let n = m.bits();
    let mut e = d.exponent() + n as i64;
    let mut big_m = m;
    let s = n;
    // y = big_m / 2^s lies in [1/2, 1)
    if (&big_m * 4u32) < (BigInt::from(3) << s) {
        big_m *= 2u32;
        e -= 1;
    }
    let one = BigInt::from(1) << s;
    let num = (&big_m - &one) << w;
    let den = &big_m + &one;
    let z = num_integer::Integer::div_floor(&num, &den);
    let (ly, err_y) = atanh2_fixed(&z, w);
    let (l2, err_2) = ln2_fixed(w);
    let total = ly + &l2 * BigInt::from(e);
    let err = BigInt::from(err_y) + BigInt::from(err_2) * BigInt::from(e.unsigned_abs()) + 2;
    fixed_to_real(&total, &err, w, prec)
}

/// `x^n` for `x >= 0` with every product rounded in one direction.
fn pow_dir(x: &Dyadic, mut n: u32, prec: u32, dir: Round) -> Dyadic {
    let mut acc = Dyadic::one();
    let mut base = x.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc.mul(&base).round(prec, dir);
        }
        n >>= 1;
        if n > 0 {
            base = base.mul(&base).round(prec, dir);
        }
    }
    acc
}

impl Enclosure for Real {
    fn constant(&self, x: f64) -> Real {
        Real::from_f64(x, self.prec)
    }

    fn from_rational(&self, r: &Rational) -> Real {
        Real::from_rational(r, self.prec)
    }

    fn add(&self, o: &Real) -> Real {
        Real::new(self.lo.add(&o.lo), self.hi.add(&o.hi), self.p(o))
    }

    fn sub(&self, o: &Real) -> Real {
        Real::new(self.lo.sub(&o.hi), self.hi.sub(&o.lo), self.p(o))
    }

    fn mul(&self, o: &Real) -> Real {
        let c = [self.lo.mul(&o.lo), self.lo.mul(&o.hi), self.hi.mul(&o.lo), self.hi.mul(&o.hi)];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Real::new(lo, hi, self.p(o))
    }

    fn div(&self, o: &Real) -> Real {
        assert!(!o.contains_zero(), "interval division by an interval containing zero");
        let p = self.p(o);
        let pairs = [(&self.lo, &o.lo), (&self.lo, &o.hi), (&self.hi, &o.lo), (&self.hi, &o.hi)];
        let lo = pairs.iter().map(|(a, b)| Dyadic::div(a, b, p, Round::Down)).min().unwrap();
        let hi = pairs.iter().map(|(a, b)| Dyadic::div(a, b, p, Round::Up)).max().unwrap();
        Real::new(lo, hi, p)
    }

    fn neg(&self) -> Real {
        Real { lo: self.hi.neg(), hi: self.lo.neg(), prec: self.prec }
    }

    fn abs(&self) -> Real {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            Enclosure::neg(self)
        } else {
            Real { lo: Dyadic::zero(), hi: self.lo.abs().max(self.hi.clone()), prec: self.prec }
        }
    }

    fn ln(&self) -> Real {
        let lo = ln_point(&self.lo, self.prec);
        if self.lo == self.hi {
            return lo;
        }
        let hi = ln_point(&self.hi, self.prec);
        Real { lo: lo.lo, hi: hi.hi, prec: self.prec }
    }

    /// For `|x| <= 1/16` the series `-sum x^n/n` keeps relative accuracy,
    /// which `1 - x` followed by `ln` loses for tiny `x`.
    fn ln_abs_one_minus(&self) -> Real {
        let a = Enclosure::abs(self);
        let small = Dyadic::new(1.into(), -4);
        if a.hi > small {
            return self.constant(1.0).sub(self).abs().ln();
        }
        let p = self.prec;
        let mut sum = Real::from_int(0, p);
        let mut term = self.clone();
        let mut n = 1i64;
        loop {
            sum = sum.add(&term.div(&Real::from_int(n, p)));
            term = term.mul(self);
            n += 1;
            let t = Enclosure::abs(&term).hi;
            if t.is_zero() || t < a.lo.mul(&Dyadic::new(1.into(), -(i64::from(p) + 4))) || n > i64::from(p) + 4 {
                break;
            }
        }
        let tail = Enclosure::abs(&term).hi.mul_pow2(1);
        let sum = Real::new(sum.lo.sub(&tail), sum.hi.add(&tail), p);
        Enclosure::neg(&sum)
    }

    fn powi(&self, n: u32) -> Real {
        let p = self.prec;
        if n == 0 {
            return self.constant(1.0);
        }
        let down = |x: &Dyadic| {
            if x.is_negative() {
                pow_dir(&x.abs(), n, p, Round::Up).neg()
            } else {
                pow_dir(x, n, p, Round::Down)
            }
        };
        let up = |x: &Dyadic| {
            if x.is_negative() {
                pow_dir(&x.abs(), n, p, Round::Down).neg()
            } else {
                pow_dir(x, n, p, Round::Up)
            }
        };
        if n % 2 == 1 || !self.lo.is_negative() {
            return Real { lo: down(&self.lo), hi: up(&self.hi), prec: p };
        }
        if !self.hi.is_positive() {
            let a = self.neg();
            return Real { lo: pow_dir(&a.lo, n, p, Round::Down), hi: pow_dir(&a.hi, n, p, Round::Up), prec: p };
        }
        let m = self.lo.abs().max(self.hi.abs());
        Real { lo: Dyadic::zero(), hi: pow_dir(&m, n, p, Round::Up), prec: p }
    }

    fn hull(&self, o: &Real) -> Real {
        Real { lo: self.lo.clone().min(o.lo.clone()), hi: self.hi.clone().max(o.hi.clone()), prec: self.p(o) }
    }

    fn intersect(&self, o: &Real) -> Option<Real> {
        let lo = self.lo.clone().max(o.lo.clone());
        let hi = self.hi.clone().min(o.hi.clone());
        (lo <= hi).then(|| Real { lo, hi, prec: self.p(o) })
    }

    fn lower(&self) -> Real {
        Real { lo: self.lo.clone(), hi: self.lo.clone(), prec: self.prec }
    }

    fn upper(&self) -> Real {
        Real { lo: self.hi.clone(), hi: self.hi.clone(), prec: self.prec }
    }

    fn midpoint(&self) -> Real {
        Real::exact(self.lo.add(&self.hi).mul_pow2(-1), self.prec)
    }

    fn lo_f64(&self) -> f64 {
        self.lo.to_f64_down()
    }

    fn hi_f64(&self) -> f64 {
        self.hi.to_f64_up()
    }

    fn lo_cmp(&self, x: f64) -> Ordering {
        self.lo.cmp(&Dyadic::from_f64(x))
    }

    fn hi_cmp(&self, x: f64) -> Ordering {
        self.hi.cmp(&Dyadic::from_f64(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn contains_f64(r: &Real, x: f64, slack: f64) -> bool {
        r.lo_f64() <= x + slack && x - slack <= r.hi_f64()
    }

    #[test]
    fn ln_two_digits() {
        let l = Real::ln2(200);
        let s = l.lo_decimal(60);
        assert!(s.starts_with("0.69314718055994530941723212145817656807550013436025"), "{s}");
        assert!(l.width() < Dyadic::new(BigInt::from(1), -190));
    }

    #[test]
    fn ln_brackets_known_values() {
        for &x in &[0.5, 0.75, 1.0, 1.4999, 3.0, 1e-10, 12345.678, 0.618033988749895] {
            let r = Real::from_f64(x, 128).ln();
            assert!(contains_f64(&r, x.ln(), 1e-15), "ln {x}: {r}");
            assert!(r.width() < Dyadic::new(BigInt::from(1), -110));
        }
        let zero = Real::from_f64(1.0, 64).ln();
        assert!(zero.contains(&Dyadic::zero()));
    }

    #[test]
    fn arithmetic_and_powers() {
        let third = Real::from_rational(&crate::numerics::rat(1, 3), 100);
        let one = third.add(&third).add(&third);
        assert!(one.contains(&Dyadic::one()));
        let x = Real::from_f64(-1.5, 64);
        assert!(x.powi(3).contains(&Dyadic::from_f64(-3.375)));
        assert!(x.powi(2).contains(&Dyadic::from_f64(2.25)));
        let mixed = Real::new(Dyadic::from_f64(-2.0), Dyadic::from_f64(1.0), 64);
        assert_eq!(mixed.powi(2).lo(), &Dyadic::zero());
        let q = Real::from_f64(1.0, 64).div(&Real::from_f64(3.0, 64));
        assert!(q.to_interval_value().contains(&crate::numerics::rat(1, 3)));
    }

    #[test]
    fn eval_reports_radius() {
        let r = Real::from_rational(&crate::numerics::rat(2, 3), 80);
        let e = r.eval();
        assert!(e.error_bound.to_f64() < 1e-23);
        assert!((e.to_f64() - 2.0 / 3.0).abs() < 1e-15);
    }
}
