//! Exact and certified arithmetic for checking the closure-constant results
//! on almost k-union closed set systems.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: exact rationals, the ring `Q[x]/(x^k + x - 1)` evaluated at
//!   its root in `(1/2, 1)`, and certified sign determination.
//! * [`real`]: dyadic interval arithmetic with directed rounding, plus a fast
//!   `f64` interval filter.
//! * [`poly`]: univariate polynomials over exact coefficient rings, Sturm
//!   chains, root counting and discriminants.
//! * [`paperpoly`]: the explicit polynomial family `p_k` and its reference data.
//! * [`analysis`]: entropy inequalities and their certified or sampled checks.
//! * [`constants`]: `phi_k`, `alpha_k`, `mu_k`, `z_k` and the frequency bound.
//! * [`simulate`]: the extremal family and Monte Carlo estimates.
//! * [`report`] and [`cli`]: structured results and the `kunion` binary.

pub mod analysis;
pub mod cli;
pub mod constants;
pub mod error;
pub mod numerics;
pub mod paperpoly;
pub mod poly;
pub mod real;
pub mod report;
pub mod simulate;

pub use error::{Error, Result};
pub use numerics::{sign_of, AlgebraicElement, IntervalValue, PhiContext, Rational};
pub use poly::{Coefficient, Poly};
