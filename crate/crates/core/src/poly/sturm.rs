use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::{count_unit_interval_vca, pow_coeff, Coefficient, Poly, Side};
use crate::error::{Error, Result};
use crate::numerics::{IntervalValue, Rational, Sign};

/// Depth cap for the Descartes bisection before falling back to Sturm.
const VCA_MAX_DEPTH: usize = 40;

/// Endpoint of an open interval on the extended real line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    At(Rational),
    PosInf,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => write!(f, "-inf"),
            Bound::At(r) => write!(f, "{r}"),
            Bound::PosInf => write!(f, "inf"),
        }
    }
}

/// Open interval `(lo, hi)` with `lo < hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenInterval {
    lo: Bound,
    hi: Bound,
}

impl OpenInterval {
    pub fn new(lo: Bound, hi: Bound) -> Result<Self> {
        let ok = match (&lo, &hi) {
            (Bound::PosInf, _) | (_, Bound::NegInf) => false,
            (Bound::At(a), Bound::At(b)) => a < b,
            _ => true,
        };
        if !ok {
            return Err(Error::EmptyInterval(format!("({lo}, {hi})")));
        }
        Ok(OpenInterval { lo, hi })
    }

    pub fn real_line() -> Self {
        OpenInterval { lo: Bound::NegInf, hi: Bound::PosInf }
    }

    pub fn unit() -> Self {
        OpenInterval { lo: Bound::At(Rational::zero()), hi: Bound::At(Rational::from_integer(1.into())) }
    }

    pub fn finite(a: Rational, b: Rational) -> Result<Self> {
        Self::new(Bound::At(a), Bound::At(b))
    }

    pub fn lo(&self) -> &Bound {
        &self.lo
    }

    pub fn hi(&self) -> &Bound {
        &self.hi
    }

    fn is_unit(&self) -> bool {
        *self == Self::unit()
    }
}

impl fmt::Display for OpenInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// Number of real roots in an interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RootCount {
    pub distinct: usize,
    pub with_multiplicity: usize,
}

/// Signed subresultant Sturm sequence of a polynomial and its derivative.
#[derive(Clone, Debug)]
pub struct SturmChain<C> {
    polys: Vec<Poly<C>>,
}

impl<C: Coefficient> SturmChain<C> {
    pub fn new(p: &Poly<C>) -> Result<Self> {
        Ok(SturmChain { polys: sturm_chain(p)? })
    }

    pub fn polys(&self) -> &[Poly<C>] {
        &self.polys
    }

    /// `gcd(p, p')` up to a nonzero constant factor.
    pub fn gcd(&self) -> &Poly<C> {
        self.polys.last().unwrap()
    }

    fn signs_at(&self, b: &Bound, side: Side) -> Vec<Sign> {
        self.polys
            .iter()
            .map(|q| match b {
                Bound::NegInf => q.sign_at_neg_inf(),
                Bound::PosInf => q.sign_at_pos_inf(),
                Bound::At(a) => q.sign_near(a, side),
            })
            .collect()
    }

    fn variations(&self, b: &Bound, side: Side) -> usize {
        variations(&self.signs_at(b, side))
    }

    /// Number of distinct roots of `p` in the open interval.
    pub fn count_distinct(&self, iv: &OpenInterval) -> usize {
        let a = self.variations(&iv.lo, Side::Right);
        let b = self.variations(&iv.hi, Side::Left);
        a.saturating_sub(b)
    }
}

pub(crate) fn variations(signs: &[Sign]) -> usize {
    let mut last = Sign::Zero;
    let mut n = 0;
    for &s in signs {
        if s == Sign::Zero {
            continue;
        }
        if last != Sign::Zero && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Sturm sequence of `p` built with the subresultant pseudo-remainder sequence.
///
/// Each pseudo-remainder is divided by the subresultant factor `g h^delta`
/// to keep coefficients small, and multiplied by a sign so the sequence
/// agrees in sign with the classical negated-remainder sequence.
pub fn sturm_chain<C: Coefficient>(p: &Poly<C>) -> Result<Vec<Poly<C>>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("Sturm chain"));
    }
    let dp = p.derivative();
    let mut seq = vec![p.clone()];
    if dp.is_zero() {
        return Ok(seq);
    }
    seq.push(dp.clone());
    let one = p.leading().unwrap().one_like();
    let (mut a, mut b) = (p.clone(), dp);
    let (mut eps_prev, mut eps) = (Sign::Positive, Sign::Positive);
    let (mut g, mut h) = (one.clone(), one);
    while b.degree() > Some(0) {
        let delta = a.degree().unwrap() - b.degree().unwrap();
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            break;
        }
        let beta = g.ring_mul(&pow_coeff(&h, delta));
        let next = r.div_coeff(&beta);
        let lc_sign = b.leading().unwrap().sign();
        let lc_pow = if (delta + 1) % 2 == 0 { Sign::Positive } else { lc_sign };
        let eps_next = (eps_prev * beta.sign() * lc_pow).flip();
        seq.push(if eps_next == Sign::Negative { -&next } else { next.clone() });
        g = b.leading().unwrap().clone();
        h = next_h(&h, &g, delta);
        a = std::mem::replace(&mut b, next);
        eps_prev = eps;
        eps = eps_next;
    }
    Ok(seq)
}

/// `h^(1 - delta) g^delta`.
pub(crate) fn next_h<C: Coefficient>(h: &C, g: &C, delta: usize) -> C {
    match delta {
        0 => h.clone(),
        1 => g.clone(),
        _ => pow_coeff(g, delta).div_exact(&pow_coeff(h, delta - 1)),
    }
}

/// Distinct and multiplicity-weighted root counts of `p` in an open interval.
///
/// For the unit interval a Descartes bisection is tried first; it only
/// answers when every root there is simple. Otherwise the counts come from
/// Sturm chains of the iterated gcds `p, gcd(p, p'), ...`.
pub fn count_roots<C: Coefficient>(p: &Poly<C>, iv: &OpenInterval) -> Result<RootCount> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("root count"));
    }
    if iv.is_unit() && p.degree() >= Some(2) {
        if let Some(n) = count_unit_interval_vca(p, VCA_MAX_DEPTH) {
            return Ok(RootCount { distinct: n, with_multiplicity: n });
        }
    }
    count_roots_sturm(p, iv)
}

/// [`count_roots`] using Sturm chains only.
pub fn count_roots_sturm<C: Coefficient>(p: &Poly<C>, iv: &OpenInterval) -> Result<RootCount> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("root count"));
    }
    let chain = SturmChain::new(p)?;
    let distinct = chain.count_distinct(iv);
    let mut total = distinct;
    let mut g = chain.gcd().clone();
    while g.degree() > Some(0) {
        let c = SturmChain::new(&g)?;
        total += c.count_distinct(iv);
        g = c.gcd().clone();
    }
    Ok(RootCount { distinct, with_multiplicity: total })
}

/// Disjoint closed intervals of width at most `eps`, in increasing order,
/// each either a single root or containing exactly one distinct root in its
/// interior.
pub fn isolate_roots<C: Coefficient>(
    p: &Poly<C>,
    iv: &OpenInterval,
    eps: &Rational,
) -> Result<Vec<IntervalValue>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("root isolation"));
    }
    if *eps <= Rational::zero() {
        return Err(crate::error::invalid("eps must be positive"));
    }
    let chain = SturmChain::new(p)?;
    let bound = p.root_bound();
    let lo = match &iv.lo {
        Bound::At(a) => a.clone(),
        _ => -bound.clone(),
    };
    let hi = match &iv.hi {
        Bound::At(b) => b.clone(),
        _ => bound,
    };
    let mut out = Vec::new();
    let mut stack = vec![(lo, hi)];
    let two = Rational::from_integer(2.into());
    while let Some((l, h)) = stack.pop() {
        let window = OpenInterval::finite(l.clone(), h.clone())?;
        let n = chain.count_distinct(&window);
        if n == 0 {
            continue;
        }
        if n == 1 && &h - &l <= *eps {
            out.push(IntervalValue::new(l, h)?);
            continue;
        }
        let m = (&l + &h) / &two;
        if p.eval_sign(&m) == Sign::Zero {
            out.push(IntervalValue::point(m.clone()));
        }
        stack.push((m.clone(), h));
        stack.push((l, m));
    }
    out.sort_by(|a, b| a.lo().cmp(b.lo()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;
    use crate::poly::int_poly;

    #[test]
    fn counts_simple_and_multiple_roots() {
        // (x - 1)^2 (x + 2) (x - 3)
        let p = &(&(&int_poly(&[-1, 1]) * &int_poly(&[-1, 1])) * &int_poly(&[2, 1])) * &int_poly(&[-3, 1]);
        let all = count_roots(&p, &OpenInterval::real_line()).unwrap();
        assert_eq!(all, RootCount { distinct: 3, with_multiplicity: 4 });
        let right = count_roots(&p, &OpenInterval::finite(rat(0, 1), rat(3, 1)).unwrap()).unwrap();
        assert_eq!(right, RootCount { distinct: 1, with_multiplicity: 2 });
        let closed_end = count_roots(&p, &OpenInterval::finite(rat(1, 1), rat(4, 1)).unwrap()).unwrap();
        assert_eq!(closed_end, RootCount { distinct: 1, with_multiplicity: 1 });
    }

    #[test]
    fn unit_interval_paths_agree() {
        let p = &(&int_poly(&[-1, 3]) * &int_poly(&[-2, 3])) * &int_poly(&[1, 1, 1]);
        let fast = count_roots(&p, &OpenInterval::unit()).unwrap();
        let slow = count_roots_sturm(&p, &OpenInterval::unit()).unwrap();
        assert_eq!(fast, slow);
        assert_eq!(fast.distinct, 2);
        let sq = &p * &p;
        assert_eq!(count_roots(&sq, &OpenInterval::unit()).unwrap(), RootCount { distinct: 2, with_multiplicity: 4 });
    }

    #[test]
    fn isolates_roots_of_cubic() {
        let p = int_poly(&[-6, 11, -6, 1]);
        let roots = isolate_roots(&p, &OpenInterval::real_line(), &rat(1, 1000)).unwrap();
        assert_eq!(roots.len(), 3);
        for (iv, r) in roots.iter().zip([1, 2, 3]) {
            assert!(iv.contains(&rat(r, 1)));
            assert!(iv.width() <= rat(1, 1000));
        }
    }

    #[test]
    fn rejects_empty_interval_and_zero_poly() {
        assert!(OpenInterval::finite(rat(1, 1), rat(1, 1)).is_err());
        assert!(count_roots(&Poly::<Rational>::zero(), &OpenInterval::unit()).is_err());
    }
}
