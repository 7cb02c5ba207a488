//! The binary entropy `h` (natural logarithm), extended to all reals by
//! `h(x) = -x ln|x| - (1-x) ln|1-x|` with `h(0) = h(1) = 0`.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::numerics::{factorial, Rational};
use crate::real::Enclosure;

/// `h(x)` in double precision.
pub fn h_f64(x: f64) -> f64 {
    let a = if x == 0.0 { 0.0 } else { -x * x.abs().ln() };
    let y = 1.0 - x;
    let b = if x == 1.0 { 0.0 } else if x < 1.0 { -y * (-x).ln_1p() } else { -y * y.abs().ln() };
    a + b
}

fn h_formula<E: Enclosure>(x: &E) -> E {
    let one = x.constant(1.0);
    let y = one.sub(x);
    x.mul(&x.abs().ln()).add(&y.mul(&x.ln_abs_one_minus())).neg()
}

fn is_point<E: Enclosure>(x: &E, v: f64) -> bool {
    x.lo_cmp(v) == Ordering::Equal && x.hi_cmp(v) == Ordering::Equal
}

/// Enclosure of `h` over an enclosure of `x`.
///
/// `h` increases on `(-inf, 1/2]` and decreases on `[1/2, inf)`, so the
/// result is the hull of the endpoint values, plus the peak when `1/2` is
/// inside.
pub fn h<E: Enclosure>(x: &E) -> E {
    let at = |p: E| if is_point(&p, 0.0) || is_point(&p, 1.0) { p.constant(0.0) } else { h_formula(&p) };
    let lo = at(x.lower());
    let hi = at(x.upper());
    if x.hi_cmp(0.5) != Ordering::Greater || x.lo_cmp(0.5) != Ordering::Less {
        lo.hull(&hi)
    } else {
        lo.hull(&hi).hull(&h_formula(&x.constant(0.5)))
    }
}

/// `h'(x) = ln|1-x| - ln|x|`; the argument must avoid `0` and `1`.
pub fn h_prime<E: Enclosure>(x: &E) -> E {
    x.ln_abs_one_minus().sub(&x.abs().ln())
}

/// `h^(t)(x)` for any `t`, over an enclosure avoiding `0` and `1` when `t >= 1`.
pub fn h_nth<E: Enclosure>(t: usize, x: &E) -> E {
    match t {
        0 => h(x),
        1 => h_prime(x),
        _ => {
            let one = x.constant(1.0);
            let e = (t - 1) as u32;
            let a = one.div(&x.sub(&one).powi(e));
            let b = one.div(&x.powi(e));
            let v = a.sub(&b).mul(&x.from_rational(&fact_r(t as u64 - 2)));
            if t % 2 == 1 {
                v.neg()
            } else {
                v
            }
        }
    }
}

/// `h^(t)(x) = (t-2)! (-1)^t (1/(x-1)^(t-1) - 1/x^(t-1))` for `t >= 2`, exactly.
pub fn h_deriv_rational(t: usize, x: &Rational) -> Result<Rational> {
    if t < 2 {
        return Err(invalid("the rational derivative formula needs t >= 2"));
    }
    if x.is_zero() || x.is_one() {
        return Err(invalid("h derivatives are singular at 0 and 1"));
    }
    let e = (t - 1) as i32;
    let xm1 = x - Rational::one();
    let v = Rational::from_integer(factorial(t as u64 - 2)) * (xm1.pow(-e) - x.pow(-e));
    Ok(if t % 2 == 1 { -v } else { v })
}

/// `(k-1)!` as a rational.
pub(crate) fn fact_r(n: u64) -> Rational {
    Rational::from_integer(factorial(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;
    use crate::real::{FastInterval, Real};

    #[test]
    fn f64_values() {
        assert!((h_f64(0.5) - std::f64::consts::LN_2).abs() < 1e-15);
        assert_eq!(h_f64(0.0), 0.0);
        assert_eq!(h_f64(1.0), 0.0);
        assert!((h_f64(-1.0) + 2.0 * std::f64::consts::LN_2).abs() < 1e-15);
        assert!((h_f64(0.3) - h_f64(0.7)).abs() < 1e-15);
    }

    #[test]
    fn interval_values_enclose() {
        for &x in &[0.1, 0.3, 0.5, 0.62, 0.9] {
            let v = h(&FastInterval::point(x));
            assert!(v.lo <= h_f64(x) && h_f64(x) <= v.hi);
            let r = h(&Real::from_f64(x, 128));
            assert!(r.lo_f64() <= h_f64(x) + 1e-15 && h_f64(x) - 1e-15 <= r.hi_f64());
            assert!(r.width().to_f64() < 1e-30);
        }
        let wide = h(&FastInterval::new(0.0, 1.0));
        assert!(wide.lo <= 0.0 && wide.hi >= std::f64::consts::LN_2);
        let neg = h(&Real::from_f64(-1.0, 128));
        assert!((neg.mid_f64() + 2.0 * std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn rational_derivatives_match_finite_differences() {
        let x = rat(3, 10);
        let d2 = h_deriv_rational(2, &x).unwrap();
        assert_eq!(d2, rat(-1, 1) / rat(3, 10) - rat(1, 1) / rat(7, 10));
        let d3 = h_deriv_rational(3, &x).unwrap();
        let e = 1e-5;
        let fd = (h_prime(&FastInterval::point(0.3 + e)).lo - 2.0 * h_prime(&FastInterval::point(0.3)).lo
            + h_prime(&FastInterval::point(0.3 - e)).lo)
            / (e * e);
        assert!((fd - crate::numerics::rational_to_f64(&d3)).abs() < 1e-2);
        assert!(h_deriv_rational(1, &x).is_err());
    }
}
