use num_traits::{One, Zero};

use super::Poly;
use crate::numerics::Rational;

impl Poly<Rational> {
    /// Euclidean division over the field of rationals.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let Some(dr) = self.degree() else { return (Poly::zero(), Poly::zero()) };
        if dr < dd {
            return (Poly::zero(), self.clone());
        }
        let inv = d.leading().unwrap().recip();
        let mut r = self.coeffs().to_vec();
        let mut q = vec![Rational::zero(); dr - dd + 1];
        for i in (0..=dr - dd).rev() {
            let t = &r[i + dd] * &inv;
            if t.is_zero() {
                continue;
            }
            for (j, b) in d.coeffs().iter().enumerate() {
                r[i + j] -= &t * b;
            }
            q[i] = t;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s self + t other = g` and `g` the monic gcd.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let one = Poly::constant(Rational::one());
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (one.clone(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), one);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            Some(lc) => {
                let inv = lc.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
            None => (r0, s0, t0),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::poly::int_poly;

    #[test]
    fn gcd_of_products() {
        let a = &int_poly(&[-1, 1]) * &int_poly(&[2, 0, 1]);
        let b = &int_poly(&[-1, 1]) * &int_poly(&[3, 1]);
        assert_eq!(a.gcd(&b), int_poly(&[-1, 1]));
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn cyclotomic_factor_of_quintic() {
        let f = int_poly(&[-1, 1, 0, 0, 0, 1]);
        let g = int_poly(&[1, -1, 1]);
        let (q, r) = f.div_rem(&g);
        assert!(r.is_zero());
        assert_eq!(q, int_poly(&[-1, 0, 1, 1]));
    }
}
