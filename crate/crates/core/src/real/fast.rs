use std::cmp::Ordering;

use super::Enclosure;

/// `f64` interval with one-ulp outward rounding after every operation.
///
/// The logarithm is widened by two ulps on each side, which covers the
/// error of the platform `ln`. Used to screen large samples; anything it
/// cannot decide is re-evaluated with [`super::Real`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FastInterval {
    pub lo: f64,
    pub hi: f64,
}

impl FastInterval {
    pub fn new(lo: f64, hi: f64) -> FastInterval {
        debug_assert!(lo <= hi, "reversed interval {lo} > {hi}");
        FastInterval { lo, hi }
    }

    pub fn point(x: f64) -> FastInterval {
        FastInterval { lo: x, hi: x }
    }

    fn out(lo: f64, hi: f64) -> FastInterval {
        FastInterval { lo: lo.next_down(), hi: hi.next_up() }
    }
}

impl Enclosure for FastInterval {
    fn constant(&self, x: f64) -> Self {
        FastInterval::point(x)
    }

    fn from_rational(&self, r: &crate::numerics::Rational) -> Self {
        let x = crate::numerics::rational_to_f64(r);
        FastInterval { lo: x.next_down(), hi: x.next_up() }
    }

    fn add(&self, o: &Self) -> Self {
        Self::out(self.lo + o.lo, self.hi + o.hi)
    }

    fn sub(&self, o: &Self) -> Self {
        Self::out(self.lo - o.hi, self.hi - o.lo)
    }

    fn mul(&self, o: &Self) -> Self {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut r = Self::out(lo, hi);
        if self.lo >= 0.0 && o.lo >= 0.0 {
            r.lo = r.lo.max(0.0);
        }
        r
    }

    fn div(&self, o: &Self) -> Self {
        assert!(o.lo > 0.0 || o.hi < 0.0, "interval division by an interval containing zero");
        let c = [self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self::out(lo, hi)
    }

    fn neg(&self) -> Self {
        FastInterval { lo: -self.hi, hi: -self.lo }
    }

    fn abs(&self) -> Self {
        if self.lo >= 0.0 {
            *self
        } else if self.hi <= 0.0 {
            self.neg()
        } else {
            FastInterval { lo: 0.0, hi: (-self.lo).max(self.hi) }
        }
    }

    fn ln(&self) -> Self {
        assert!(self.lo > 0.0, "logarithm of a non-positive interval");
        FastInterval { lo: self.lo.ln().next_down().next_down(), hi: self.hi.ln().next_up().next_up() }
    }

    fn ln_abs_one_minus(&self) -> Self {
        if self.hi < 1.0 {
            let lo = (-self.hi).ln_1p().next_down().next_down();
            let hi = (-self.lo).ln_1p().next_up().next_up();
            FastInterval { lo, hi }
        } else {
            self.constant(1.0).sub(self).abs().ln()
        }
    }

    fn powi(&self, n: u32) -> Self {
        let mut acc = FastInterval::point(1.0);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        if n.is_multiple_of(2) && self.lo < 0.0 && self.hi > 0.0 {
            acc.lo = 0.0;
        }
        acc
    }

    fn hull(&self, o: &Self) -> Self {
        FastInterval { lo: self.lo.min(o.lo), hi: self.hi.max(o.hi) }
    }

    fn intersect(&self, o: &Self) -> Option<Self> {
        let lo = self.lo.max(o.lo);
        let hi = self.hi.min(o.hi);
        (lo <= hi).then_some(FastInterval { lo, hi })
    }

    fn lower(&self) -> Self {
        FastInterval::point(self.lo)
    }

    fn upper(&self) -> Self {
        FastInterval::point(self.hi)
    }

    fn midpoint(&self) -> Self {
        FastInterval::point(0.5 * self.lo + 0.5 * self.hi)
    }

    fn lo_f64(&self) -> f64 {
        self.lo
    }

    fn hi_f64(&self) -> f64 {
        self.hi
    }

    fn lo_cmp(&self, x: f64) -> Ordering {
        self.lo.partial_cmp(&x).unwrap()
    }

    fn hi_cmp(&self, x: f64) -> Ordering {
        self.hi.partial_cmp(&x).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encloses_float_results() {
        let a = FastInterval::point(0.1);
        let b = FastInterval::point(0.2);
        let s = a.add(&b);
        assert!(s.lo < 0.30000000000000004 && 0.3 < s.hi);
        let l = FastInterval::point(2.0).ln();
        assert!(l.lo < std::f64::consts::LN_2 && std::f64::consts::LN_2 < l.hi);
        let p = FastInterval::new(-1.0, 2.0).powi(2);
        assert_eq!(p.lo, 0.0);
        assert!(p.hi >= 4.0);
    }
}
