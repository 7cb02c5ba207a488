//! Exact checks of the rational closed forms for the `(k+1)`-th derivatives
//! of `s_k(x) = x^(k-1) h(x)` and `r_k(x) = h(x^k)`.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::analysis::entropy::{fact_r, h, h_deriv_rational, h_nth};
use crate::error::{invalid, Result};
use crate::numerics::{binomial, pow2, rat, to_decimal, Rational};
use crate::real::{Enclosure, Real};
use crate::report::PaperCheckReport;

use super::construct::{build_p_parts, check_k};
use super::ctable::ctable;

/// Working precision of the finite-difference and limit layers.
pub const FD_PRECISION: u32 = 256;
/// Step of the finite-difference stencil, `2^-20`.
pub const FD_STEP_LOG2: i64 = -20;
/// Relative mismatch above which the finite-difference layer warns.
pub const FD_TOLERANCE: f64 = 1e-3;

fn int(n: num_bigint::BigInt) -> Rational {
    Rational::from_integer(n)
}

fn in_unit(x: &Rational) -> bool {
    x.is_positive() && *x < Rational::one()
}

/// `s_k^(k+1)(x)` from the closed form
/// `sum_j (-1)^j (k-1)! binom(k+1,j+2) (x^(j+1) - (x-1)^(j+1)) / (x (x-1)^(j+1))`.
pub fn s_closed_form(k: u32, x: &Rational) -> Result<Rational> {
    check_k(k)?;
    if !in_unit(x) {
        return Err(invalid("closed forms are evaluated on (0,1)"));
    }
    let xm1 = x - Rational::one();
    let f = fact_r(u64::from(k) - 1);
    let mut acc = Rational::zero();
    for j in 0..k as i32 {
        let b = int(binomial(u64::from(k) + 1, j as u64 + 2));
        let term = (x.pow(j + 1) - xm1.pow(j + 1)) / (x * xm1.pow(j + 1));
        let v = &f * b * term;
        acc += if j % 2 == 1 { -v } else { v };
    }
    Ok(acc)
}

/// `r_k^(k+1)(x)` from the closed form
/// `sum_j (-1)^j j! (k-1)! C(k,k+1,j+2) (x^(kj+k) - (x^k-1)^(j+1)) / (x (x^k-1)^(j+1))`.
pub fn r_closed_form(k: u32, x: &Rational) -> Result<Rational> {
    check_k(k)?;
    if !in_unit(x) {
        return Err(invalid("closed forms are evaluated on (0,1)"));
    }
    let ku = k as i32;
    let tab = ctable(k, k as usize + 1)?;
    let xk = x.pow(ku);
    let xk1 = &xk - Rational::one();
    let f = fact_r(u64::from(k) - 1);
    let mut acc = Rational::zero();
    for j in 0..ku {
        let c = tab.get(k as usize + 1, j as usize + 2);
        let term = (x.pow(ku * j + ku) - xk1.pow(j + 1)) / (x * xk1.pow(j + 1));
        let v = fact_r(j as u64) * &f * c * term;
        acc += if j % 2 == 1 { -v } else { v };
    }
    Ok(acc)
}

/// `s_k^(t)(x) = sum_j h^(j)(x) binom(k-1,t-j) t!/j! x^(k-t+j-1)` for
/// `t >= k+1`, where only the rational terms `j >= 2` survive.
pub fn s_derivative_exact(k: u32, t: usize, x: &Rational) -> Result<Rational> {
    check_k(k)?;
    if t < k as usize + 1 {
        return Err(invalid("the exact form needs t >= k+1"));
    }
    let mut acc = Rational::zero();
    for j in 2..=t {
        let b = int(binomial(u64::from(k) - 1, (t - j) as u64));
        if b.is_zero() {
            continue;
        }
        let e = k as i32 - t as i32 + j as i32 - 1;
        acc += h_deriv_rational(j, x)? * b * fact_r(t as u64) / fact_r(j as u64) * x.pow(e);
    }
    Ok(acc)
}

/// `r_k^(t)(x) = sum_j (k-1)! C(k,t,j) h^(j)(x^k) x^(kj-t)` for `t >= k+1`.
pub fn r_derivative_exact(k: u32, t: usize, x: &Rational) -> Result<Rational> {
    check_k(k)?;
    if t < k as usize + 1 {
        return Err(invalid("the exact form needs t >= k+1"));
    }
    let tab = ctable(k, t)?;
    let xk = x.pow(k as i32);
    let f = fact_r(u64::from(k) - 1);
    let mut acc = Rational::zero();
    for j in 2..=t {
        let c = tab.get(t, j);
        if c.is_zero() {
            continue;
        }
        let e = k as i32 * j as i32 - t as i32;
        acc += &f * c * h_deriv_rational(j, &xk)? * x.pow(e);
    }
    Ok(acc)
}

fn pow_signed<E: Enclosure>(x: &E, e: i64) -> E {
    if e >= 0 {
        x.powi(e as u32)
    } else {
        x.constant(1.0).div(&x.powi((-e) as u32))
    }
}

/// `s_k^(t)(x)` over an enclosure, all terms included.
pub fn s_derivative<E: Enclosure>(k: u32, t: usize, x: &E) -> E {
    let mut acc = x.constant(0.0);
    for j in 0..=t {
        let b = int(binomial(u64::from(k) - 1, (t - j) as u64));
        if b.is_zero() {
            continue;
        }
        let c = x.from_rational(&(b * fact_r(t as u64) / fact_r(j as u64)));
        let e = k as i64 - t as i64 + j as i64 - 1;
        acc = acc.add(&h_nth(j, x).mul(&c).mul(&pow_signed(x, e)));
    }
    acc
}

/// `r_k^(t)(x)` over an enclosure, all terms included.
pub fn r_derivative<E: Enclosure>(k: u32, t: usize, x: &E) -> Result<E> {
    let tab = ctable(k, t)?;
    let xk = x.powi(k);
    let f = fact_r(u64::from(k) - 1);
    let mut acc = x.constant(0.0);
    for j in 0..=t {
        let c = tab.get(t, j);
        if c.is_zero() {
            continue;
        }
        let coef = x.from_rational(&(&f * c));
        let e = k as i64 * j as i64 - t as i64;
        acc = acc.add(&h_nth(j, &xk).mul(&coef).mul(&pow_signed(x, e)));
    }
    Ok(acc)
}

/// `n`-th derivative by the central difference
/// `h^-n sum_i (-1)^i binom(n,i) f(x + (n/2 - i) h)`, accurate to `O(h^2)`.
fn central_difference(f: impl Fn(&Real) -> Real, x: &Rational, n: usize, prec: u32) -> Real {
    let half = pow2(FD_STEP_LOG2 - 1);
    let mut acc = Real::from_int(0, prec);
    for i in 0..=n {
        let offset = &half * rat(n as i64 - 2 * i as i64, 1);
        let v = f(&Real::from_rational(&(x + offset), prec));
        let b = Real::from_rational(&int(binomial(n as u64, i as u64)), prec);
        let term = v.mul(&b);
        acc = if i % 2 == 1 { acc.sub(&term) } else { acc.add(&term) };
    }
    acc.mul(&Real::from_rational(&pow2(-FD_STEP_LOG2 * n as i64), prec))
}

fn rel_error(approx: &Real, exact: &Rational) -> f64 {
    let e = crate::numerics::rational_to_f64(exact);
    (approx.mid_f64() - e).abs() / e.abs().max(f64::MIN_POSITIVE)
}

fn magnitude(v: &Real) -> Rational {
    let (lo, hi) = v.to_rational_bounds();
    lo.abs().max(hi.abs())
}

/// Check `alpha r^(k+1) - s^(k+1) = (k-1)! p_k(x) / (x (x^k - 1)^k)` exactly
/// at each sample point, the closed forms against the general derivative
/// formulas, a finite-difference sanity layer, and the vanishing of the
/// low-order derivatives at `0`.
pub fn verify_sr_derivative_identity(k: u32, sample_points: &[Rational]) -> Result<PaperCheckReport> {
    check_k(k)?;
    if sample_points.is_empty() {
        return Err(invalid("at least one sample point is required"));
    }
    if let Some(x) = sample_points.iter().find(|x| !in_unit(x)) {
        return Err(invalid(format!("sample point {x} is outside (0,1)")));
    }
    let mut rep = PaperCheckReport::new(
        format!("corollary-3.8-identity-k{k}"),
        "f_k^(k+1) = alpha_k r_k^(k+1) - s_k^(k+1) = (k-1)! p_k(x) / (x (x^k - 1)^k)",
        FD_PRECISION,
    );
    let parts = build_p_parts(k)?;
    let t = k as usize + 1;
    let kf = fact_r(u64::from(k) - 1);
    for x in sample_points {
        let s = s_closed_form(k, x)?;
        let r = r_closed_form(k, x)?;
        rep.check(
            format!("s_{k}^({t})({x}) closed form vs general formula"),
            to_decimal(&s, 20),
            "exact equality",
            s == s_derivative_exact(k, t, x)?,
        );
        rep.check(
            format!("r_{k}^({t})({x}) closed form vs general formula"),
            to_decimal(&r, 20),
            "exact equality",
            r == r_derivative_exact(k, t, x)?,
        );
        let (pa, pb) = parts.eval(x);
        let den = x * (x.pow(k as i32) - Rational::one()).pow(k as i32);
        let rhs = (&kf * pa / &den, &kf * pb / &den);
        let lhs = (-s.clone(), r.clone());
        rep.check(
            format!("alpha r^({t}) - s^({t}) at x = {x}"),
            format!("{} + {} alpha", to_decimal(&lhs.0, 20), to_decimal(&lhs.1, 20)),
            "equals (k-1)! p_k(x) / (x (x^k-1)^k) exactly",
            lhs == rhs,
        );

        let lo = x - pow2(FD_STEP_LOG2) * rat(t as i64, 2);
        let hi = x + pow2(FD_STEP_LOG2) * rat(t as i64, 2);
        if !(lo.is_positive() && hi < Rational::one()) {
            rep.note(format!("finite-difference stencil at {x} leaves (0,1); skipped"));
            continue;
        }
        let kk = k;
        let s_fd = central_difference(|y| y.powi(kk - 1).mul(&h(y)), x, t, FD_PRECISION);
        let r_fd = central_difference(|y| h(&y.powi(kk)), x, t, FD_PRECISION);
        for (name, fd, exact) in [("s", &s_fd, &s), ("r", &r_fd, &r)] {
            let err = rel_error(fd, exact);
            let expr = format!("{name}_{k}^({t})({x}) central difference, step 2^{FD_STEP_LOG2}");
            let value = format!("{:.12e} (relative mismatch {err:.2e})", fd.mid_f64());
            if err <= FD_TOLERANCE {
                rep.check(expr, value, format!("relative mismatch <= {FD_TOLERANCE:e}"), true);
            } else {
                rep.info(expr, value);
                rep.note(format!(
                    "warning: {name}_{k}^({t})({x}) finite difference off by {err:.2e} with step 2^{FD_STEP_LOG2}"
                ));
            }
        }
    }
    limit_checks(k, &mut rep)?;
    Ok(rep)
}

/// `s_k^(t)` and `r_k^(t)` tend to `0` as `x -> 0` for `t <= k-1`, sampled
/// along `x = 10^-i`.
fn limit_checks(k: u32, rep: &mut PaperCheckReport) -> Result<()> {
    let exps = [3i32, 6, 9, 12];
    let tol = rat(1, 1_000_000);
    for t in 0..k as usize {
        for name in ["s", "r"] {
            let mut mags = Vec::new();
            for &i in &exps {
                let x = Real::from_rational(&Rational::new(1.into(), num_bigint::BigInt::from(10).pow(i as u32)), FD_PRECISION);
                let v = if name == "s" { s_derivative(k, t, &x) } else { r_derivative(k, t, &x)? };
                mags.push(magnitude(&v));
            }
            let decreasing = mags.windows(2).all(|w| w[1].cmp(&w[0]) != Ordering::Greater);
            let last = mags.last().expect("nonempty");
            rep.check(
                format!("|{name}_{k}^({t})(10^-i)| for i = 3,6,9,12"),
                mags.iter().map(|m| format!("{:.3e}", crate::numerics::rational_to_f64(m))).collect::<Vec<_>>().join(", "),
                "non-increasing and below 1e-6 at 10^-12",
                decreasing && *last < tol,
            );
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_holds_at_three_tenths() {
        for k in 2..=4 {
            let rep = verify_sr_derivative_identity(k, &[rat(3, 10)]).unwrap();
            assert!(rep.passed(), "{}", rep.render_text());
            assert!(rep.notes.is_empty(), "{:?}", rep.notes);
        }
    }

    #[test]
    fn closed_forms_reject_endpoints() {
        assert!(s_closed_form(3, &rat(0, 1)).is_err());
        assert!(r_closed_form(3, &rat(1, 1)).is_err());
        assert!(verify_sr_derivative_identity(3, &[rat(3, 2)]).is_err());
    }
}
