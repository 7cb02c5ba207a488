//! Certified real arithmetic.
//!
//! [`Real`] is an interval with dyadic endpoints rounded outward to a working
//! precision, with a rigorous logarithm. [`FastInterval`] is an `f64`
//! interval with outward rounding, used as a cheap filter before falling
//! back to [`Real`].

mod dyadic;
mod fast;
mod interval;

pub use dyadic::{Dyadic, Round};
pub use fast::FastInterval;
pub use interval::{RealEval, Real};

use std::cmp::Ordering;
use std::fmt;

/// Interval arithmetic shared by [`Real`] and [`FastInterval`], so the
/// entropy expressions can be written once.
pub trait Enclosure: Clone + fmt::Debug + Send + Sync + Sized {
    /// Exact constant at the receiver's precision.
    fn constant(&self, x: f64) -> Self;
    /// Enclosure of an exact rational at the receiver's precision.
    fn from_rational(&self, r: &crate::numerics::Rational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Division; the divisor must not contain zero.
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn abs(&self) -> Self;
    /// Natural logarithm; the argument must be positive.
    fn ln(&self) -> Self;
    /// `ln|1 - x|`; the argument must avoid `1`.
    fn ln_abs_one_minus(&self) -> Self {
        self.constant(1.0).sub(self).abs().ln()
    }
    fn powi(&self, n: u32) -> Self;
    fn hull(&self, o: &Self) -> Self;
    fn intersect(&self, o: &Self) -> Option<Self>;
    /// Degenerate interval at the lower endpoint.
    fn lower(&self) -> Self;
    fn upper(&self) -> Self;
    /// Degenerate interval at a representable point inside.
    fn midpoint(&self) -> Self;
    fn lo_f64(&self) -> f64;
    fn hi_f64(&self) -> f64;
    fn lo_cmp(&self, x: f64) -> Ordering;
    fn hi_cmp(&self, x: f64) -> Ordering;

    fn is_positive(&self) -> bool {
        self.lo_cmp(0.0) == Ordering::Greater
    }

    fn is_negative(&self) -> bool {
        self.hi_cmp(0.0) == Ordering::Less
    }

    fn is_nonnegative(&self) -> bool {
        self.lo_cmp(0.0) != Ordering::Less
    }
}
