//! Exact construction of `rho_k`, `sigma_k` and `p_k = alpha_k rho_k - sigma_k`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Result};
use crate::numerics::{binomial, factorial, AlgebraicElement, PhiContext, Rational, Sign};
use crate::poly::{int_poly, Poly};

use super::ctable::ctable;

/// Largest `k` accepted by the constructions (degree `k^2 - 1`).
pub const MAX_K: u32 = 64;

pub(crate) fn check_k(k: u32) -> Result<()> {
    if !(2..=MAX_K).contains(&k) {
        return Err(invalid(format!("k must lie in 2..={MAX_K}, got {k}")));
    }
    Ok(())
}

fn int(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `(x^k - 1)` and friends as rational polynomials.
fn xk_minus_one(k: usize) -> Poly<Rational> {
    let mut c = vec![Rational::zero(); k + 1];
    c[0] = -Rational::one();
    c[k] = Rational::one();
    Poly::new(c)
}

/// `rho_k` written in `y = x^k`, before substitution.
pub fn rho_in_y(k: u32) -> Result<Poly<Rational>> {
    check_k(k)?;
    let ku = k as usize;
    let tab = ctable(k, ku + 1)?;
    let y_minus_one = int_poly(&[-1, 1]);
    let base = y_minus_one.pow(k);
    let mut acc = Poly::zero();
    for j in 0..ku {
        let c = int(factorial(j as u64)) * tab.get(ku + 1, j + 2);
        if c.is_zero() {
            continue;
        }
        let c = if j % 2 == 1 { -c } else { c };
        let term = &(&y_minus_one.pow(k - 1 - j as u32) * &Poly::monomial(Rational::one(), j + 1)) - &base;
        acc = &acc + &term.scale(&c);
    }
    Ok(acc)
}

/// `rho_k(x) = sum_j (-1)^j j! C(k,k+1,j+2) ((x^k-1)^(k-j-1) x^(kj+k) - (x^k-1)^k)`.
pub fn build_rho(k: u32) -> Result<Poly<Rational>> {
    Ok(rho_in_y(k)?.compose_power(k as usize))
}

/// `sigma_k(x) = sum_j (-1)^j binom(k+1,j+2) (x^(j+1) (x-1)^(k-j-1) (1+...+x^(k-1))^k - (x^k-1)^k)`.
pub fn build_sigma(k: u32) -> Result<Poly<Rational>> {
    check_k(k)?;
    let ku = k as usize;
    let x_minus_one = int_poly(&[-1, 1]);
    let geom = Poly::new(vec![Rational::one(); ku]).pow(k);
    let base = xk_minus_one(ku).pow(k);
    let mut acc = Poly::zero();
    for j in 0..ku {
        let b = int(binomial(u64::from(k) + 1, j as u64 + 2));
        let b = if j % 2 == 1 { -b } else { b };
        let lead = &(&Poly::monomial(Rational::one(), j + 1) * &x_minus_one.pow(k - 1 - j as u32)) * &geom;
        acc = &acc + &(&lead - &base).scale(&b);
    }
    Ok(acc)
}

/// Polynomial whose coefficients are `a + b alpha_k` with rational `a`, `b`,
/// stored as the pair of rational polynomials `(a(x), b(x))`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaPoly {
    pub rational: Poly<Rational>,
    pub alpha: Poly<Rational>,
}

impl AlphaPoly {
    pub fn new(rational: Poly<Rational>, alpha: Poly<Rational>) -> Self {
        AlphaPoly { rational, alpha }
    }

    pub fn degree(&self) -> Option<usize> {
        self.rational.degree().max(self.alpha.degree())
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.alpha.is_zero()
    }

    pub fn derivative(&self) -> Self {
        AlphaPoly::new(self.rational.derivative(), self.alpha.derivative())
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        AlphaPoly::new(self.rational.nth_derivative(n), self.alpha.nth_derivative(n))
    }

    /// Coefficient of `x^i` as `(a, b)`.
    pub fn coeff(&self, i: usize) -> (Rational, Rational) {
        let get = |p: &Poly<Rational>| p.coeff(i).cloned().unwrap_or_else(Rational::zero);
        (get(&self.rational), get(&self.alpha))
    }

    /// `p(x)` as `(a, b)` meaning `a + b alpha`.
    pub fn eval(&self, x: &Rational) -> (Rational, Rational) {
        let ev = |p: &Poly<Rational>| p.eval(x).unwrap_or_else(Rational::zero);
        (ev(&self.rational), ev(&self.alpha))
    }

    /// `p(x)` as an element of `Q(phi_k)`.
    pub fn eval_in(&self, ctx: &Arc<PhiContext>, x: &Rational) -> AlgebraicElement {
        let (a, b) = self.eval(x);
        AlgebraicElement::linear(ctx, &a, &b)
    }

    /// Coefficients read in `Q[x]/(x^k + x - 1)`.
    pub fn to_ring(&self, ctx: &Arc<PhiContext>) -> Poly<AlgebraicElement> {
        let n = self.degree().map_or(0, |d| d + 1);
        let coeffs = (0..n)
            .map(|i| {
                let (a, b) = self.coeff(i);
                AlgebraicElement::linear(ctx, &a, &b)
            })
            .collect();
        Poly::new(coeffs)
    }

    pub fn sub(&self, o: &AlphaPoly) -> AlphaPoly {
        AlphaPoly::new(&self.rational - &o.rational, &self.alpha - &o.alpha)
    }

    pub fn scale(&self, r: &Rational) -> AlphaPoly {
        AlphaPoly::new(self.rational.scale(r), self.alpha.scale(r))
    }
}

fn fmt_linear(a: &Rational, b: &Rational) -> String {
    match (a.is_zero(), b.is_zero()) {
        (_, true) => a.to_string(),
        (true, false) => format!("{b}a"),
        (false, false) => {
            if b.is_negative() {
                format!("{a}-{}a", -b)
            } else {
                format!("{a}+{b}a")
            }
        }
    }
}

/// Compact form `c0+c1x+...` with `a` for `alpha`, the same grammar as the
/// golden tables.
impl fmt::Display for AlphaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for i in 0..=self.degree().unwrap_or(0) {
            let (a, b) = self.coeff(i);
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let mixed = !a.is_zero() && !b.is_zero();
            let mut c = fmt_linear(&a, &b);
            if mixed {
                c = format!("({c})");
            } else if i > 0 && c == "1" {
                c.clear();
            } else if i > 0 && c == "-1" {
                c = "-".into();
            }
            if !out.is_empty() && !c.starts_with('-') {
                out.push('+');
            }
            out.push_str(&c);
            match i {
                0 => {}
                1 => out.push('x'),
                _ => out.push_str(&format!("x^{i}")),
            }
        }
        f.write_str(&out)
    }
}

/// `p_k` split as `alpha * rho_k - sigma_k`.
pub fn build_p_parts(k: u32) -> Result<AlphaPoly> {
    Ok(AlphaPoly::new(-&build_sigma(k)?, build_rho(k)?))
}

/// `p_k(x) = alpha_k rho_k(x) - sigma_k(x)` over `Q(phi_k)`.
pub fn build_p(k: u32) -> Result<Poly<AlgebraicElement>> {
    let ctx = PhiContext::shared(k)?;
    Ok(build_p_parts(k)?.to_ring(&ctx))
}

/// Number of nonzero coefficients of `rho_k` as a polynomial in `y = x^k`.
pub fn rho_term_count(k: u32) -> Result<usize> {
    Ok(rho_in_y(k)?.coeffs().iter().filter(|c| !c.is_zero()).count())
}

/// Sign pattern of the nonzero coefficients of `sigma_k`, lowest degree first.
pub fn sigma_coefficient_signs(k: u32) -> Result<Vec<Sign>> {
    Ok(build_sigma(k)?
        .coeffs()
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| if c.is_positive() { Sign::Positive } else { Sign::Negative })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;
    use crate::paperpoly::golden::table2;

    #[test]
    fn matches_reference_rows() {
        for k in 2..=6 {
            assert_eq!(build_p_parts(k).unwrap(), table2(k).unwrap(), "k={k}");
        }
    }

    #[test]
    fn degrees_and_leading_terms() {
        for k in 2..=7u32 {
            let kk = k as usize;
            let s = build_sigma(k).unwrap();
            let r = build_rho(k).unwrap();
            assert_eq!(s.degree(), Some(kk * kk - 1));
            assert_eq!(r.degree(), Some(kk * kk - kk));
            assert_eq!(s.leading().unwrap(), &rat(1, 1));
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let ki = i64::from(k);
            assert_eq!(s.eval(&rat(0, 1)).unwrap(), rat(sign * ki, 1));
            assert_eq!(r.eval(&rat(0, 1)).unwrap(), rat(sign * ki * ki, 1));
            assert_eq!(rho_term_count(k).unwrap(), kk);
            let p = build_p(k).unwrap();
            assert_eq!(p.degree(), Some(kk * kk - 1));
            assert_eq!(p.leading().unwrap().to_rational(), Some(rat(-1, 1)));
        }
        assert!(build_sigma(1).is_err());
        assert!(build_rho(MAX_K + 1).is_err());
    }

    #[test]
    fn sigma_has_one_odd_sign_out() {
        for k in 2..=8 {
            let signs = sigma_coefficient_signs(k).unwrap();
            let pos = signs.iter().filter(|s| **s == Sign::Positive).count();
            assert_eq!(pos.min(signs.len() - pos), 1, "k={k}");
        }
    }
}
