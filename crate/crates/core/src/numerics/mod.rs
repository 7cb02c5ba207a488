//! Exact scalar arithmetic: rationals, rational intervals and the ring
//! `Q[x]/(x^k + x - 1)` with certified signs at the root `phi_k`.

mod algebraic;
mod interval;
mod phi;
mod rational;

pub use algebraic::{sign_of, sign_with_bits, AlgebraicElement};
pub use interval::IntervalValue;
pub use phi::{refine_phi, PhiContext};
pub use rational::{
    binomial, factorial, parse_rational, pow2, rat, rational_from_f64, rational_to_f64, to_decimal, Rational,
};

use std::fmt;
use std::ops::Mul;

/// Sign of a real quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn from_i32(v: i32) -> Sign {
        match v.cmp(&0) {
            std::cmp::Ordering::Less => Sign::Negative,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Positive,
        }
    }

    pub fn from_ordering(o: std::cmp::Ordering) -> Sign {
        Sign::from_i32(o as i32)
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Sign {
        Sign::from_i32(-self.as_i32())
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Zero => '0',
            Sign::Positive => '+',
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_i32(self.as_i32() * rhs.as_i32())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}
