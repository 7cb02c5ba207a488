use super::sturm::next_h;
use super::{pow_coeff, Coefficient, Poly};
use crate::error::{invalid, Error, Result};
use crate::numerics::Sign;

fn negate_if<C: Coefficient>(c: C, s: Sign) -> C {
    if s == Sign::Negative {
        c.ring_neg()
    } else {
        c
    }
}

/// Resultant by the subresultant algorithm.
pub fn resultant<C: Coefficient>(a: &Poly<C>, b: &Poly<C>) -> Result<C> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial("resultant"));
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut s = Sign::Positive;
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            s = Sign::Negative;
        }
    }
    if b.degree() == Some(0) {
        return Ok(negate_if(pow_coeff(b.leading().unwrap(), a.degree().unwrap()), s));
    }
    let one = a.leading().unwrap().one_like();
    let (mut g, mut h) = (one.clone(), one);
    loop {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = s.flip();
        }
        let r = a.pseudo_rem(&b);
        a = b;
        if r.is_zero() {
            return Ok(a.leading().unwrap().zero_like());
        }
        b = r.div_coeff(&g.ring_mul(&pow_coeff(&h, delta)));
        g = a.leading().unwrap().clone();
        h = next_h(&h, &g, delta);
        if b.degree() == Some(0) {
            let da = a.degree().unwrap();
            let lb = pow_coeff(b.leading().unwrap(), da);
            let out = lb.div_exact(&pow_coeff(&h, da - 1));
            return Ok(negate_if(out, s));
        }
    }
}

/// Discriminant `(-1)^(d(d-1)/2) Res(p, p') / lc(p)`; equal to 1 for linear `p`.
pub fn discriminant<C: Coefficient>(p: &Poly<C>) -> Result<C> {
    let d = p.degree().ok_or(Error::ZeroPolynomial("discriminant"))?;
    if d == 0 {
        return Err(invalid("a constant polynomial has no discriminant"));
    }
    let lc = p.leading().unwrap();
    if d == 1 {
        return Ok(lc.one_like());
    }
    let r = resultant(p, &p.derivative())?.div_exact(lc);
    let sign = if (d * (d - 1) / 2) % 2 == 1 { Sign::Negative } else { Sign::Positive };
    Ok(negate_if(r, sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;
    use crate::poly::int_poly;

    #[test]
    fn quadratic_discriminant() {
        assert_eq!(discriminant(&int_poly(&[-2, 0, 1])).unwrap(), rat(8, 1));
        assert_eq!(discriminant(&int_poly(&[3, 2, 5])).unwrap(), rat(4 - 60, 1));
        assert_eq!(discriminant(&int_poly(&[3, 2])).unwrap(), rat(1, 1));
        assert!(discriminant(&int_poly(&[3])).is_err());
    }

    #[test]
    fn cubic_discriminant() {
        // x^3 + p x + q: -4p^3 - 27q^2
        assert_eq!(discriminant(&int_poly(&[2, -3, 0, 1])).unwrap(), rat(108 - 108, 1));
        assert_eq!(discriminant(&int_poly(&[1, -4, 0, 1])).unwrap(), rat(256 - 27, 1));
    }

    #[test]
    fn resultant_of_common_root_is_zero() {
        let a = &int_poly(&[-1, 1]) * &int_poly(&[5, 0, 1]);
        let b = &int_poly(&[-1, 1]) * &int_poly(&[7, 1]);
        assert_eq!(resultant(&a, &b).unwrap(), rat(0, 1));
    }

    #[test]
    fn resultant_with_constant() {
        assert_eq!(resultant(&int_poly(&[1, 2, 3]), &int_poly(&[2])).unwrap(), rat(4, 1));
        assert_eq!(resultant(&int_poly(&[2]), &int_poly(&[1, 2, 3])).unwrap(), rat(4, 1));
    }
}
