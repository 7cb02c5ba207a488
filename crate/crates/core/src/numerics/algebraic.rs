use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::phi::PhiLevel;
use super::{IntervalValue, PhiContext, Rational, Sign};
use crate::error::{Error, Result};
use crate::poly::{count_roots, Bound, OpenInterval, Poly};

/// Level after which the exact zero test is run if the sign is still unresolved.
const ZERO_TEST_LEVEL: usize = 2;

/// An element of `Q[x]/(x^k + x - 1)`, read as a real number through `x -> phi_k`.
///
/// Coordinates are stored as an integer vector over a common positive
/// denominator in lowest terms, in the basis `1, phi, ..., phi^(k-1)`.
#[derive(Clone)]
pub struct AlgebraicElement {
    num: Vec<BigInt>,
    den: BigInt,
    ctx: Arc<PhiContext>,
}

impl PartialEq for AlgebraicElement {
    fn eq(&self, other: &Self) -> bool {
        self.k() == other.k() && self.den == other.den && self.num == other.num
    }
}

impl Eq for AlgebraicElement {}

impl fmt::Debug for AlgebraicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraicElement(k={}, {})", self.k(), self)
    }
}

impl AlgebraicElement {
    fn from_parts(ctx: Arc<PhiContext>, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        let k = ctx.k() as usize;
        if num.len() > k {
            reduce(&mut num, k);
        }
        num.resize(k, BigInt::zero());
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|c| *c = -&*c);
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                g = g.gcd(c);
            }
            if !g.is_one() {
                den /= &g;
                num.iter_mut().for_each(|c| *c /= &g);
            }
        }
        AlgebraicElement { num, den, ctx }
    }

    pub fn zero(ctx: &Arc<PhiContext>) -> Self {
        Self::from_parts(ctx.clone(), Vec::new(), BigInt::one())
    }

    pub fn one(ctx: &Arc<PhiContext>) -> Self {
        Self::from_rational(ctx, &Rational::one())
    }

    pub fn from_rational(ctx: &Arc<PhiContext>, r: &Rational) -> Self {
        Self::from_parts(ctx.clone(), vec![r.numer().clone()], r.denom().clone())
    }

    pub fn from_int(ctx: &Arc<PhiContext>, n: i64) -> Self {
        Self::from_parts(ctx.clone(), vec![BigInt::from(n)], BigInt::one())
    }

    /// Element `sum coords[i] x^i`; more than `k` coordinates are reduced modulo `x^k + x - 1`.
    pub fn from_coords(ctx: &Arc<PhiContext>, coords: &[Rational]) -> Self {
        let den = coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coords.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Self::from_parts(ctx.clone(), num, den)
    }

    pub fn from_int_coords(ctx: &Arc<PhiContext>, coords: &[i64]) -> Self {
        Self::from_parts(ctx.clone(), coords.iter().map(|&c| BigInt::from(c)).collect(), BigInt::one())
    }

    /// The generator `phi`.
    pub fn phi(ctx: &Arc<PhiContext>) -> Self {
        Self::from_int_coords(ctx, &[0, 1])
    }

    /// `alpha = phi^(k-1) = 1/phi - 1`.
    pub fn alpha(ctx: &Arc<PhiContext>) -> Self {
        let mut c = vec![0i64; ctx.k() as usize];
        c[ctx.k() as usize - 1] = 1;
        Self::from_int_coords(ctx, &c)
    }

    /// `a + b * alpha`.
    pub fn linear(ctx: &Arc<PhiContext>, a: &Rational, b: &Rational) -> Self {
        let k = ctx.k() as usize;
        let mut c = vec![Rational::zero(); k];
        c[0] += a;
        c[k - 1] += b;
        Self::from_coords(ctx, &c)
    }

    pub fn k(&self) -> u32 {
        self.ctx.k()
    }

    pub fn context(&self) -> &Arc<PhiContext> {
        &self.ctx
    }

    pub fn coords(&self) -> Vec<Rational> {
        self.num.iter().map(|c| Rational::new(c.clone(), self.den.clone())).collect()
    }

    /// True when every coordinate is zero (zero in the ring, not only at `phi`).
    pub fn is_zero_in_ring(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// The rational value, if only the constant coordinate is nonzero.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// `(a, b)` with `self = a + b * alpha`, if the element has that shape.
    pub fn as_linear_alpha(&self) -> Option<(Rational, Rational)> {
        let k = self.num.len();
        if self.num[1..k - 1].iter().all(Zero::is_zero) {
            let a = Rational::new(self.num[0].clone(), self.den.clone());
            let b = Rational::new(self.num[k - 1].clone(), self.den.clone());
            Some((a, b))
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.k() != other.k() {
            return Err(Error::ContextMismatch { left: self.k(), right: other.k() });
        }
        Ok(())
    }

    fn add_sub(&self, other: &Self, negate: bool) -> Self {
        let (l, r) = if self.den == other.den {
            (BigInt::one(), BigInt::one())
        } else {
            (other.den.clone(), self.den.clone())
        };
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| if negate { a * &l - b * &r } else { a * &l + b * &r })
            .collect();
        let den = if self.den == other.den { self.den.clone() } else { &self.den * &other.den };
        Self::from_parts(self.ctx.clone(), num, den)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_sub(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_sub(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let k = self.num.len();
        let mut prod = vec![BigInt::zero(); 2 * k - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(Self::from_parts(self.ctx.clone(), prod, &self.den * &other.den))
    }

    /// Quotient whose value at `phi` is `self / other`.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.checked_mul(&other.inverse()?)
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::from_parts(self.ctx.clone(), num, &self.den * r.denom())
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        let num = self.num.iter().map(|c| c * n).collect();
        Self::from_parts(self.ctx.clone(), num, self.den.clone())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
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

    fn to_poly(&self) -> Poly<Rational> {
        Poly::new(self.coords())
    }

    /// An element whose value at `phi` is the reciprocal of `self`'s.
    ///
    /// When `x^k + x - 1` shares a factor `g` with `self`, the inverse is taken
    /// modulo the cofactor that still vanishes at `phi`.
    pub fn inverse(&self) -> Result<Self> {
        if self.sign() == Sign::Zero {
            return Err(Error::DivisionByZero);
        }
        let a = self.to_poly();
        let f = self.ctx.modulus();
        let g = a.gcd(f);
        let m = if g.degree() == Some(0) { f.clone() } else { f.div_rem(&g).0 };
        let (d, s, _) = a.div_rem(&m).1.xgcd(&m);
        debug_assert_eq!(d.degree(), Some(0));
        let s = s.scale(&d.coeffs()[0].recip());
        Ok(Self::from_coords(&self.ctx, s.coeffs()))
    }

    /// Certified sign of the value at `phi`.
    pub fn sign(&self) -> Sign {
        sign_of(self)
    }

    fn level_bounds(&self, lvl: &PhiLevel) -> (BigInt, BigInt) {
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (i, c) in self.num.iter().enumerate() {
            if c.is_positive() {
                lo += c * &lvl.lo_pows[i];
                hi += c * &lvl.hi_pows[i];
            } else if c.is_negative() {
                lo += c * &lvl.hi_pows[i];
                hi += c * &lvl.lo_pows[i];
            }
        }
        (lo, hi)
    }

    /// Rational interval containing the value, computed from an enclosure of
    /// `phi` of width at most `2^-bits`.
    pub fn enclosure(&self, bits: u32) -> IntervalValue {
        let mut level = 0;
        while (32u64 << level) < bits as u64 {
            level += 1;
        }
        let lvl = self.ctx.level(level);
        let (lo, hi) = self.level_bounds(&lvl);
        let scale = (&self.den) << (lvl.bits * (self.num.len() as u64 - 1));
        IntervalValue::new(Rational::new(lo, scale.clone()), Rational::new(hi, scale))
            .expect("ordered bounds")
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclosure(64).to_f64_pair();
        0.5 * (lo + hi)
    }

    fn vanishes_at_phi(&self, lvl: &PhiLevel) -> bool {
        let g = self.to_poly().gcd(self.ctx.modulus());
        if g.degree() == Some(0) {
            return false;
        }
        let iv = lvl.interval();
        let window = OpenInterval::new(Bound::At(iv.lo().clone()), Bound::At(iv.hi().clone()))
            .expect("nonempty window");
        count_roots(&g, &window).map(|c| c.distinct > 0).unwrap_or(false)
    }
}

/// Certified sign of `a(phi_k)`.
///
/// The value is bracketed with exact integer arithmetic on a dyadic enclosure
/// of `phi`, doubling the precision until the bracket excludes zero. If that
/// has not happened by 128 bits, an exact test decides whether the value is
/// zero: `a(phi) = 0` exactly when `gcd(a, x^k + x - 1)` has a root in the
/// enclosure.
pub fn sign_of(a: &AlgebraicElement) -> Sign {
    sign_with_bits(a).0
}

/// [`sign_of`] together with the enclosure precision (bits) at which it was
/// decided; `0` when the element is zero in the ring.
pub fn sign_with_bits(a: &AlgebraicElement) -> (Sign, u32) {
    if a.is_zero_in_ring() {
        return (Sign::Zero, 0);
    }
    let mut level = 0;
    loop {
        let lvl = a.ctx.level(level);
        let bits = lvl.bits as u32;
        let (lo, hi) = a.level_bounds(&lvl);
        if lo.is_positive() {
            return (Sign::Positive, bits);
        }
        if hi.is_negative() {
            return (Sign::Negative, bits);
        }
        if level == ZERO_TEST_LEVEL && a.vanishes_at_phi(&lvl) {
            return (Sign::Zero, bits);
        }
        level += 1;
    }
}

/// Reduce a coefficient vector modulo `x^k + x - 1` using `x^k = 1 - x`.
fn reduce(c: &mut Vec<BigInt>, k: usize) {
    for m in (k..c.len()).rev() {
        let top = std::mem::take(&mut c[m]);
        if top.is_zero() {
            continue;
        }
        c[m - k] += &top;
        c[m - k + 1] -= &top;
    }
    c.truncate(k);
}

impl Add for &AlgebraicElement {
    type Output = AlgebraicElement;
    /// Panics if the operands live in different rings; see [`AlgebraicElement::checked_add`].
    fn add(self, rhs: &AlgebraicElement) -> AlgebraicElement {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &AlgebraicElement {
    type Output = AlgebraicElement;
    fn sub(self, rhs: &AlgebraicElement) -> AlgebraicElement {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &AlgebraicElement {
    type Output = AlgebraicElement;
    fn mul(self, rhs: &AlgebraicElement) -> AlgebraicElement {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &AlgebraicElement {
    type Output = AlgebraicElement;
    fn neg(self) -> AlgebraicElement {
        AlgebraicElement {
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
            ctx: self.ctx.clone(),
        }
    }
}

fn fmt_rational_term(out: &mut String, c: &Rational, symbol: &str, first: bool) {
    let neg = c.is_negative();
    let mag = c.abs();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if symbol.is_empty() || !mag.is_one() {
        out.push_str(&mag.to_string());
    }
    out.push_str(symbol);
}

impl fmt::Display for AlgebraicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let mut terms: Vec<(Rational, String)> = Vec::new();
        if let Some((a, b)) = self.as_linear_alpha() {
            if !a.is_zero() {
                terms.push((a, String::new()));
            }
            if !b.is_zero() {
                terms.push((b, "α".into()));
            }
        } else {
            for (i, c) in self.coords().into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let sym = match i {
                    0 => String::new(),
                    1 => "φ".into(),
                    _ => format!("φ^{i}"),
                };
                terms.push((c, sym));
            }
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, sym)) in terms.iter().enumerate() {
            fmt_rational_term(&mut out, c, sym, i == 0);
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    fn ctx(k: u32) -> Arc<PhiContext> {
        PhiContext::new(k).unwrap()
    }

    #[test]
    fn phi_satisfies_defining_relation() {
        for k in 2..9 {
            let c = ctx(k);
            let phi = AlgebraicElement::phi(&c);
            let lhs = &phi.pow(k) + &phi;
            assert_eq!(lhs, AlgebraicElement::one(&c));
            let alpha = AlgebraicElement::alpha(&c);
            let recip = &AlgebraicElement::one(&c).checked_div(&phi).unwrap() - &AlgebraicElement::one(&c);
            assert_eq!(alpha, recip);
        }
    }

    #[test]
    fn signs_of_simple_elements() {
        let c = ctx(2);
        let phi = AlgebraicElement::phi(&c);
        let half = AlgebraicElement::from_rational(&c, &rat(1, 2));
        assert_eq!((&phi - &half).sign(), Sign::Positive);
        assert_eq!((&half - &phi).sign(), Sign::Negative);
        // phi^2 + phi - 1 is zero in the ring
        let z = &(&phi * &phi) + &(&phi - &AlgebraicElement::one(&c));
        assert!(z.is_zero_in_ring());
        assert_eq!(z.sign(), Sign::Zero);
        // 496 alpha - 40 for k = 4 is barely negative? alpha_4 ~ 0.3803, so positive
        let c4 = ctx(4);
        let e = AlgebraicElement::linear(&c4, &rat(-40, 1), &rat(496, 1));
        assert_eq!(e.sign(), Sign::Positive);
    }

    #[test]
    fn nonzero_ring_element_vanishing_at_phi() {
        // x^5 + x - 1 = (x^2 - x + 1)(x^3 + x^2 - 1); the cubic factor vanishes at phi_5
        let c = ctx(5);
        let e = AlgebraicElement::from_int_coords(&c, &[-1, 0, 1, 1]);
        assert!(!e.is_zero_in_ring());
        assert_eq!(e.sign(), Sign::Zero);
        assert_eq!(e.inverse(), Err(Error::DivisionByZero));
        let q = AlgebraicElement::from_int_coords(&c, &[1, -1, 1]);
        assert_eq!(q.sign(), Sign::Positive);
        let inv = q.inverse().unwrap();
        let prod = &q * &inv;
        assert_eq!((&prod - &AlgebraicElement::one(&c)).sign(), Sign::Zero);
    }

    #[test]
    fn rational_round_trip() {
        let c = ctx(3);
        let r = rat(-17, 5);
        assert_eq!(AlgebraicElement::from_rational(&c, &r).to_rational(), Some(r));
        assert_eq!(AlgebraicElement::phi(&c).to_rational(), None);
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = AlgebraicElement::phi(&ctx(2));
        let b = AlgebraicElement::phi(&ctx(3));
        assert_eq!(a.checked_add(&b), Err(Error::ContextMismatch { left: 2, right: 3 }));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn display_linear_forms() {
        let c = ctx(4);
        let e = AlgebraicElement::linear(&c, &rat(40, 1), &rat(-496, 1));
        assert_eq!(e.to_string(), "40 - 496α");
        assert_eq!(AlgebraicElement::zero(&c).to_string(), "0");
    }

    #[test]
    fn enclosure_matches_float() {
        let c = ctx(4);
        let a = AlgebraicElement::alpha(&c);
        let iv = a.enclosure(128);
        let (lo, hi) = iv.to_f64_pair();
        assert!(lo >= 0.380_277_5 && hi <= 0.380_277_6);
        assert!(iv.width() < crate::numerics::pow2(-100));
    }
}
