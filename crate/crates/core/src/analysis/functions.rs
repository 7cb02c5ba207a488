//! `r_k`, `s_k`, `f_k`, `F_k`, `g` and `M_k`.

use std::cmp::Ordering;

use serde::Serialize;

use super::entropy::{h, h_f64, h_prime};
use crate::error::{invalid, Result};
use crate::real::{Enclosure, FastInterval, Real};

/// `r_k(x) = h(x^k)`.
pub fn r_k<E: Enclosure>(k: u32, x: &E) -> E {
    h(&x.powi(k))
}

/// `s_k(x) = x^(k-1) h(x)`.
pub fn s_k<E: Enclosure>(k: u32, x: &E) -> E {
    x.powi(k - 1).mul(&h(x))
}

/// `f_k(x) = alpha_k r_k(x) - s_k(x)`.
pub fn f_k<E: Enclosure>(k: u32, alpha: &E, x: &E) -> E {
    alpha.mul(&r_k(k, x)).sub(&s_k(k, x))
}

/// `f_k'(x)`; the argument must avoid `0` and `1`.
pub fn f_k_prime<E: Enclosure>(k: u32, alpha: &E, x: &E) -> E {
    let kk = x.constant(k as f64);
    let r = kk.mul(&x.powi(k - 1)).mul(&h_prime(&x.powi(k)));
    let s = x.constant((k - 1) as f64).mul(&x.powi(k.saturating_sub(2))).mul(&h(x)).add(&x.powi(k - 1).mul(&h_prime(x)));
    alpha.mul(&r).sub(&s)
}

pub fn f_k_f64(k: u32, alpha: f64, x: f64) -> f64 {
    alpha * h_f64(x.powi(k as i32)) - x.powi(k as i32 - 1) * h_f64(x)
}

fn open_unit<E: Enclosure>(x: &E) -> Result<()> {
    if x.lo_cmp(0.0) != Ordering::Greater || x.hi_cmp(1.0) != Ordering::Less {
        return Err(invalid("argument must lie in (0, 1)"));
    }
    Ok(())
}

/// `F_k(x) = h(x^k) / (x^(k-1) h(x))` on `(0, 1)`.
pub fn big_f_k<E: Enclosure>(k: u32, x: &E) -> Result<E> {
    open_unit(x)?;
    Ok(r_k(k, x).div(&s_k(k, x)))
}

pub fn big_f_k_f64(k: u32, x: f64) -> f64 {
    h_f64(x.powi(k as i32)) / (x.powi(k as i32 - 1) * h_f64(x))
}

/// `g(x) = h(x)/x` on `(0, 1)`.
pub fn g<E: Enclosure>(x: &E) -> Result<E> {
    open_unit(x)?;
    Ok(h(x).div(x))
}

/// A point of `[0, 1]^k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointK {
    coords: Vec<f64>,
}

impl PointK {
    pub fn new(coords: Vec<f64>) -> Result<PointK> {
        if coords.is_empty() {
            return Err(invalid("a point needs at least one coordinate"));
        }
        if let Some(c) = coords.iter().find(|c| !(0.0..=1.0).contains(*c)) {
            return Err(invalid(format!("coordinate {c} outside [0, 1]")));
        }
        Ok(PointK { coords })
    }

    pub fn diagonal(k: usize, t: f64) -> Result<PointK> {
        PointK::new(vec![t; k])
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn k(&self) -> usize {
        self.coords.len()
    }

    /// Coordinates other than `1`.
    pub fn reduced(&self) -> Vec<f64> {
        self.coords.iter().copied().filter(|&c| c != 1.0).collect()
    }
}

enum Reduced {
    One,
    Interior(Vec<f64>),
}

fn reduce(p: &PointK) -> Reduced {
    let k = p.k();
    if p.coords.contains(&0.0) {
        return Reduced::One;
    }
    let rest = p.reduced();
    let ones = k - rest.len();
    if ones + 1 >= k {
        return Reduced::One;
    }
    Reduced::Interior(rest)
}

fn m_interior<E: Enclosure>(xs: &[E]) -> E {
    let mut prod = xs[0].clone();
    for x in &xs[1..] {
        prod = prod.mul(x);
    }
    let num = h(&prod).div(&prod);
    let mut den = h(&xs[0]).div(&xs[0]);
    for x in &xs[1..] {
        den = den.add(&h(x).div(x));
    }
    num.div(&den)
}

/// `M_k` extended to `[0, 1]^k`: `1` when a coordinate is `0` or at least
/// `k - 1` coordinates are `1`; otherwise coordinates equal to `1` are
/// dropped.
pub fn m_k(p: &PointK, prec: u32) -> Real {
    match reduce(p) {
        Reduced::One => Real::from_int(1, prec),
        Reduced::Interior(xs) => {
            let xs: Vec<Real> = xs.iter().map(|&x| Real::from_f64(x, prec)).collect();
            m_interior(&xs)
        }
    }
}

pub fn m_k_fast(p: &PointK) -> FastInterval {
    match reduce(p) {
        Reduced::One => FastInterval::point(1.0),
        Reduced::Interior(xs) => {
            let xs: Vec<FastInterval> = xs.iter().map(|&x| FastInterval::point(x)).collect();
            m_interior(&xs)
        }
    }
}

pub fn m_k_f64(p: &PointK) -> f64 {
    match reduce(p) {
        Reduced::One => 1.0,
        Reduced::Interior(xs) => {
            let prod: f64 = xs.iter().product();
            let den: f64 = xs.iter().map(|&x| h_f64(x) / x).sum();
            h_f64(prod) / prod / den
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants;

    #[test]
    fn f2_at_half() {
        let a = constants::alpha(2, 128).unwrap();
        let v = f_k(2, &a, &Real::from_f64(0.5, 128));
        let oracle = 0.6180339887498949 * h_f64(0.25) - 0.5 * std::f64::consts::LN_2;
        assert!((v.mid_f64() - oracle).abs() < 1e-15);
        assert!((v.mid_f64() - 0.0009).abs() < 1e-4);
    }

    #[test]
    fn big_f_at_phi_is_reciprocal_alpha() {
        let p = constants::phi(3, 128).unwrap();
        let v = big_f_k(3, &p).unwrap();
        assert!((v.mid_f64() - 2.148).abs() < 1e-3);
        assert!(big_f_k(3, &Real::from_int(1, 64)).is_err());
        assert!(g(&Real::from_int(0, 64)).is_err());
    }

    #[test]
    fn m_k_boundary_and_diagonal() {
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        let v = m_k(&PointK::new(vec![phi, phi]).unwrap(), 128);
        assert!((v.mid_f64() - 1.0 / (2.0 * phi)).abs() < 1e-12);
        assert_eq!(m_k_f64(&PointK::new(vec![0.0, 0.3, 0.4]).unwrap()), 1.0);
        assert_eq!(m_k_f64(&PointK::new(vec![1.0, 0.3, 1.0]).unwrap()), 1.0);
        let a = m_k_f64(&PointK::new(vec![1.0, 0.3, 0.4]).unwrap());
        let b = m_k_f64(&PointK::new(vec![0.3, 0.4]).unwrap());
        assert_eq!(a, b);
        let t = 0.37;
        let d = m_k_f64(&PointK::diagonal(4, t).unwrap());
        assert!((d - big_f_k_f64(4, t) / 4.0).abs() < 1e-12);
        assert!(PointK::new(vec![1.5]).is_err());
    }

    #[test]
    fn derivative_matches_difference() {
        let a = constants::alpha(4, 128).unwrap();
        let x = 0.41;
        let e = 1e-6;
        let af = a.mid_f64();
        let fd = (f_k_f64(4, af, x + e) - f_k_f64(4, af, x - e)) / (2.0 * e);
        let d = f_k_prime(4, &a, &Real::from_f64(x, 128));
        assert!((d.mid_f64() - fd).abs() < 1e-8);
    }
}
