//! Dense univariate polynomials over exact coefficient rings.

mod descartes;
mod euclid;
mod resultant;
mod sturm;

pub use descartes::count_unit_interval_vca;
pub use resultant::{discriminant, resultant};
pub use sturm::{count_roots, count_roots_sturm, isolate_roots, sturm_chain, Bound, OpenInterval, RootCount, SturmChain};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::numerics::{AlgebraicElement, IntervalValue, Rational, Sign};

mod sealed {
    pub trait Sealed {}
    impl Sealed for crate::numerics::Rational {}
    impl Sealed for crate::numerics::AlgebraicElement {}
}

/// Coefficient rings supported by [`Poly`]: exact rationals and elements of
/// `Q[x]/(x^k + x - 1)` read at `phi_k`.
///
/// Signs are always those of the real value, so a coefficient whose value is
/// zero counts as zero even when it is a nonzero ring element.
pub trait Coefficient:
    Clone + fmt::Debug + fmt::Display + PartialEq + Send + Sync + 'static + sealed::Sealed
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rational_like(&self, r: &Rational) -> Self;
    fn is_exact_zero(&self) -> bool;
    fn sign(&self) -> Sign;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_sub(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn mul_rational(&self, r: &Rational) -> Self;
    fn mul_int(&self, n: &BigInt) -> Self;
    /// Multiplicative inverse of the value, `None` when the value is zero.
    fn inverse(&self) -> Option<Self>;
    /// Rational interval containing the value, of width at most about `2^-bits`.
    fn value_enclosure(&self, bits: u32) -> IntervalValue;

    fn div_exact(&self, d: &Self) -> Self {
        self.ring_mul(&d.inverse().expect("division by a zero coefficient"))
    }
}

impl Coefficient for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
    fn sign(&self) -> Sign {
        if self.is_positive() {
            Sign::Positive
        } else if self.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn mul_rational(&self, r: &Rational) -> Self {
        self * r
    }
    fn mul_int(&self, n: &BigInt) -> Self {
        self * Rational::from_integer(n.clone())
    }
    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn value_enclosure(&self, _bits: u32) -> IntervalValue {
        IntervalValue::point(self.clone())
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
}

impl Coefficient for AlgebraicElement {
    fn zero_like(&self) -> Self {
        AlgebraicElement::zero(self.context())
    }
    fn one_like(&self) -> Self {
        AlgebraicElement::one(self.context())
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        AlgebraicElement::from_rational(self.context(), r)
    }
    fn is_exact_zero(&self) -> bool {
        self.is_zero_in_ring()
    }
    fn sign(&self) -> Sign {
        crate::numerics::sign_of(self)
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn mul_rational(&self, r: &Rational) -> Self {
        AlgebraicElement::mul_rational(self, r)
    }
    fn mul_int(&self, n: &BigInt) -> Self {
        AlgebraicElement::mul_int(self, n)
    }
    fn inverse(&self) -> Option<Self> {
        AlgebraicElement::inverse(self).ok()
    }
    fn value_enclosure(&self, bits: u32) -> IntervalValue {
        self.enclosure(bits)
    }
}

/// Which side of a point a one-sided limit is taken from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Polynomial `sum coeffs[i] x^i`; the leading coefficient never has value zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_exact_zero() || c.sign() == Sign::Zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Poly::new(vec![c])
    }

    /// `c x^n`.
    pub fn monomial(c: C, n: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); n];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&C> {
        self.coeffs.get(i)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_int(&BigInt::from(i)))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.mul_rational(r)).collect())
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.ring_mul(c)).collect())
    }

    /// Divide every coefficient by `c`, whose value must be nonzero.
    pub fn div_coeff(&self, c: &C) -> Self {
        match c.inverse() {
            Some(inv) => self.mul_coeff(&inv),
            None => panic!("division of a polynomial by a zero coefficient"),
        }
    }

    /// Value at `x`, or `None` for the zero polynomial.
    pub fn eval(&self, x: &Rational) -> Option<C> {
        let mut it = self.coeffs.iter().rev();
        let mut acc = it.next()?.clone();
        for c in it {
            acc = acc.mul_rational(x).ring_add(c);
        }
        Some(acc)
    }

    pub fn eval_sign(&self, x: &Rational) -> Sign {
        self.eval(x).map_or(Sign::Zero, |v| v.sign())
    }

    pub fn sign_at_pos_inf(&self) -> Sign {
        self.leading().map_or(Sign::Zero, |c| c.sign())
    }

    pub fn sign_at_neg_inf(&self) -> Sign {
        match self.degree() {
            None => Sign::Zero,
            Some(d) if d % 2 == 1 => self.sign_at_pos_inf().flip(),
            Some(_) => self.sign_at_pos_inf(),
        }
    }

    /// Sign of `p(x)` as `x` tends to `a` from the given side.
    pub fn sign_near(&self, a: &Rational, side: Side) -> Sign {
        let mut q = self.clone();
        let mut j = 0usize;
        while !q.is_zero() {
            let s = q.eval_sign(a);
            if s != Sign::Zero {
                return if side == Side::Left && j % 2 == 1 { s.flip() } else { s };
            }
            q = q.derivative();
            j += 1;
        }
        Sign::Zero
    }

    /// `lc(d)^(deg self - deg d + 1) * self mod d`, computed without division.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo-remainder by the zero polynomial");
        let lc = d.leading().unwrap();
        let mut r = self.clone();
        let Some(dr) = r.degree() else { return r };
        if dr < dd {
            return r;
        }
        let mut e = dr - dd + 1;
        while let Some(deg) = r.degree() {
            if deg < dd {
                break;
            }
            let t = r.leading().unwrap().clone();
            let shift = deg - dd;
            let mut coeffs: Vec<C> = r.coeffs.iter().map(|c| c.ring_mul(lc)).collect();
            for (i, b) in d.coeffs.iter().enumerate() {
                coeffs[i + shift] = coeffs[i + shift].ring_sub(&t.ring_mul(b));
            }
            coeffs.pop();
            r = Poly::new(coeffs);
            e -= 1;
        }
        let factor = pow_coeff(lc, e);
        r.mul_coeff(&factor)
    }

    /// Coefficients of `x^d p(1/x)` for `d = deg p`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::new(c)
    }

    /// `p(x + 1)`.
    pub fn taylor_shift_one(&self) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                c[j] = c[j].ring_add(&c[j + 1]);
            }
        }
        Poly::new(c)
    }

    /// `2^d p(x / 2)` for `d = deg p`.
    pub fn halve_argument(&self) -> Self {
        let Some(d) = self.degree() else { return self.clone() };
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c.mul_int(&(BigInt::one() << (d - i))))
                .collect(),
        )
    }

    /// Convert coefficients into another ring.
    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// `self^e` by repeated squaring. The zero polynomial stays zero, even for `e = 0`.
    pub fn pow(&self, mut e: u32) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut acc = Poly::constant(self.coeffs[0].one_like());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `p(x^m)`.
    pub fn compose_power(&self, m: usize) -> Self {
        assert!(m > 0, "compose_power needs m >= 1");
        if self.is_zero() || m == 1 {
            return self.clone();
        }
        let zero = self.coeffs[0].zero_like();
        let mut c = vec![zero; (self.coeffs.len() - 1) * m + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[i * m] = a.clone();
        }
        Poly::new(c)
    }

    /// Upper bound on the absolute value of every real root (Cauchy), rounded
    /// up to a power of two.
    pub fn root_bound(&self) -> Rational {
        let Some(lc) = self.leading() else { return Rational::one() };
        let mut bits = 8;
        let lower = loop {
            let iv = lc.value_enclosure(bits);
            let m = if iv.lo().is_positive() {
                iv.lo().clone()
            } else if iv.hi().is_negative() {
                -iv.hi().clone()
            } else {
                bits *= 2;
                continue;
            };
            break m;
        };
        let mut max = Rational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let iv = c.value_enclosure(8);
            let m = iv.lo().abs().max(iv.hi().abs());
            if m > max {
                max = m;
            }
        }
        let bound = Rational::one() + max / lower;
        let mut p = Rational::one();
        while p < bound {
            p *= Rational::from_integer(2.into());
        }
        p
    }
}

pub(crate) fn pow_coeff<C: Coefficient>(c: &C, e: usize) -> C {
    let mut acc = c.one_like();
    for _ in 0..e {
        acc = acc.ring_mul(c);
    }
    acc
}

impl<C: Coefficient> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut c = long.coeffs.clone();
        for (i, b) in short.coeffs.iter().enumerate() {
            c[i] = c[i].ring_add(b);
        }
        Poly::new(c)
    }
}

impl<C: Coefficient> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly { coeffs: self.coeffs.iter().map(|c| c.ring_neg()).collect() }
    }
}

impl<C: Coefficient> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        self + &(-rhs)
    }
}

impl<C: Coefficient> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut c = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_exact_zero() {
                    c[i + j] = c[i + j].ring_add(&a.ring_mul(b));
                }
            }
        }
        Poly::new(c)
    }
}

impl<C: Coefficient> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_exact_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let s = c.to_string();
            let s = if s.contains(' ') || (i > 0 && s.starts_with('-')) { format!("({s})") } else { s };
            match i {
                0 => write!(f, "{s}")?,
                1 => write!(f, "{s}*x")?,
                _ => write!(f, "{s}*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Shorthand for a rational polynomial from integer coefficients, lowest degree first.
pub fn int_poly(coeffs: &[i64]) -> Poly<Rational> {
    Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn trims_and_reports_degree() {
        assert_eq!(int_poly(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(int_poly(&[0, 0]).degree(), None);
    }

    #[test]
    fn derivative_and_eval() {
        let p = int_poly(&[1, -3, 0, 2]);
        assert_eq!(p.derivative(), int_poly(&[-3, 0, 6]));
        assert_eq!(p.eval(&rat(1, 2)).unwrap(), rat(-1, 4));
        assert_eq!(p.nth_derivative(4), Poly::zero());
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = int_poly(&[1, 2, 3, 4, 5]);
        let b = int_poly(&[-1, 0, 2]);
        let r = a.pseudo_rem(&b);
        // lc(b)^3 a = q b + r
        let (q, r2) = a.scale(&rat(8, 1)).div_rem(&b);
        assert_eq!(r, r2);
        assert_eq!(&(&q * &b) + &r, a.scale(&rat(8, 1)));
    }

    #[test]
    fn one_sided_signs_at_a_double_root() {
        // (x - 1)^2 (x - 2) near 1 is negative on both sides
        let p = &(&int_poly(&[-1, 1]) * &int_poly(&[-1, 1])) * &int_poly(&[-2, 1]);
        assert_eq!(p.sign_near(&rat(1, 1), Side::Left), Sign::Negative);
        assert_eq!(p.sign_near(&rat(1, 1), Side::Right), Sign::Negative);
        assert_eq!(p.sign_near(&rat(2, 1), Side::Left), Sign::Negative);
        assert_eq!(p.sign_near(&rat(2, 1), Side::Right), Sign::Positive);
        assert_eq!(p.sign_at_neg_inf(), Sign::Negative);
    }

    #[test]
    fn shifts() {
        let p = int_poly(&[1, 1, 1]);
        assert_eq!(p.taylor_shift_one(), int_poly(&[3, 3, 1]));
        assert_eq!(p.halve_argument(), int_poly(&[4, 2, 1]));
        assert_eq!(int_poly(&[1, 2, 3]).reversed(), int_poly(&[3, 2, 1]));
    }

    #[test]
    fn root_bound_covers_roots() {
        let p = int_poly(&[-6, 11, -6, 1]);
        assert!(p.root_bound() >= rat(3, 1));
    }
}
