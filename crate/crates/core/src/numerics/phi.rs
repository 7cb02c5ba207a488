use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{pow2, IntervalValue, Rational};
use crate::error::{invalid, Result};
use crate::poly::Poly;

/// Largest `k` accepted for exact ring arithmetic.
pub const MAX_RING_DEGREE: u32 = 4096;

const BASE_BITS: u64 = 32;

/// Precomputed scaled powers of a dyadic enclosure `[m / 2^b, (m + 1) / 2^b]` of `phi`.
///
/// `lo_pows[i] = m^i * 2^(b (k - 1 - i))` and likewise for `hi_pows` with `m + 1`,
/// so that `sum c_i x^i` is bracketed by integer dot products scaled by `2^(b (k - 1))`.
#[derive(Debug)]
pub(crate) struct PhiLevel {
    pub bits: u64,
    pub lo: BigInt,
    pub lo_pows: Vec<BigInt>,
    pub hi_pows: Vec<BigInt>,
}

impl PhiLevel {
    fn new(k: u32, bits: u64, lo: BigInt) -> PhiLevel {
        let hi = &lo + 1u32;
        let pows = |base: &BigInt| {
            let mut out = Vec::with_capacity(k as usize);
            let mut acc = BigInt::one();
            for i in 0..k as u64 {
                out.push(&acc << (bits * (k as u64 - 1 - i)));
                acc *= base;
            }
            out
        };
        PhiLevel { bits, lo_pows: pows(&lo), hi_pows: pows(&hi), lo }
    }

    pub fn interval(&self) -> IntervalValue {
        let scale = pow2(-(self.bits as i64));
        let lo = Rational::from_integer(self.lo.clone()) * &scale;
        let hi = Rational::from_integer(&self.lo + 1u32) * scale;
        IntervalValue::new(lo, hi).expect("ordered endpoints")
    }
}

/// The ring `Q[x]/(x^k + x - 1)` together with certified enclosures of its
/// distinguished real root `phi_k` in `(1/2, 1)`.
pub struct PhiContext {
    k: u32,
    modulus: Poly<Rational>,
    enclosure: IntervalValue,
    levels: RwLock<Vec<Arc<PhiLevel>>>,
}

impl fmt::Debug for PhiContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PhiContext")
            .field("k", &self.k)
            .field("enclosure", &self.enclosure)
            .finish()
    }
}

impl PhiContext {
    pub fn new(k: u32) -> Result<Arc<PhiContext>> {
        if !(2..=MAX_RING_DEGREE).contains(&k) {
            return Err(invalid(format!("k must lie in 2..={MAX_RING_DEGREE}, got {k}")));
        }
        let mut coeffs = vec![Rational::zero(); k as usize + 1];
        coeffs[0] = Rational::from_integer((-1).into());
        coeffs[1] += Rational::one();
        coeffs[k as usize] += Rational::one();
        let base = Arc::new(PhiLevel::new(k, BASE_BITS, phi_bracket(k, BASE_BITS)));
        Ok(Arc::new(PhiContext {
            k,
            modulus: Poly::new(coeffs),
            enclosure: base.interval(),
            levels: RwLock::new(vec![base]),
        }))
    }

    /// Process-wide shared context for `k`.
    pub fn shared(k: u32) -> Result<Arc<PhiContext>> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<PhiContext>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(ctx) = cache.lock().unwrap().get(&k) {
            return Ok(ctx.clone());
        }
        let ctx = PhiContext::new(k)?;
        Ok(cache.lock().unwrap().entry(k).or_insert(ctx).clone())
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The defining polynomial `x^k + x - 1`.
    pub fn modulus(&self) -> &Poly<Rational> {
        &self.modulus
    }

    /// Rational enclosure of `phi_k` of width `2^-32`.
    pub fn enclosure(&self) -> &IntervalValue {
        &self.enclosure
    }

    pub fn precision_bits(&self) -> u32 {
        BASE_BITS as u32
    }

    /// Enclosure at refinement level `level`, of width `2^-(32 * 2^level)`.
    pub(crate) fn level(&self, level: usize) -> Arc<PhiLevel> {
        if let Some(l) = self.levels.read().unwrap().get(level) {
            return l.clone();
        }
        let mut levels = self.levels.write().unwrap();
        while levels.len() <= level {
            let bits = BASE_BITS << levels.len();
            let lo = phi_bracket(self.k, bits);
            levels.push(Arc::new(PhiLevel::new(self.k, bits, lo)));
        }
        levels[level].clone()
    }

    /// Enclosure of width at most `2^-bits` (rounded up to the next level).
    pub fn enclosure_with_bits(&self, bits: u32) -> IntervalValue {
        let mut level = 0;
        while (BASE_BITS << level) < bits as u64 {
            level += 1;
        }
        self.level(level).interval()
    }
}

/// Sign of `f(m / 2^b)` for `f = x^k + x - 1`.
fn sign_at(k: u32, m: &BigInt, bits: u64) -> i32 {
    let k64 = k as u64;
    let v = num_traits::pow(m.clone(), k as usize) + (m << (bits * (k64 - 1)))
        - (BigInt::one() << (bits * k64));
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn f64_guess(k: u32) -> f64 {
    let (mut lo, mut hi) = (0.5f64, 1.0f64);
    for _ in 0..64 {
        let mid = 0.5 * (lo + hi);
        if mid.powi(k as i32) + mid - 1.0 > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Integer `m` with `phi_k` strictly inside `(m / 2^bits, (m + 1) / 2^bits)`.
///
/// Newton iteration at doubling precision produces a candidate, which is
/// then corrected by exact sign tests so the result never depends on the
/// accuracy of the iteration.
pub(crate) fn phi_bracket(k: u32, bits: u64) -> BigInt {
    let k64 = k as u64;
    let mut prec = 48u64.min(bits);
    let mut x = BigInt::from((f64_guess(k) * (1u64 << prec) as f64) as u64);
    while prec < bits {
        let next = (prec * 2).min(bits);
        x <<= next - prec;
        prec = next;
        for _ in 0..2 {
            let f = num_traits::pow(x.clone(), k as usize) + (&x << (prec * (k64 - 1)))
                - (BigInt::one() << (prec * k64));
            let g = num_traits::pow(x.clone(), k as usize - 1) * BigInt::from(k)
                + (BigInt::one() << (prec * (k64 - 1)));
            x -= f / g;
        }
    }
    let mut m = x;
    while sign_at(k, &m, bits) >= 0 {
        m -= 1u32;
    }
    while sign_at(k, &(&m + 1u32), bits) < 0 {
        m += 1u32;
    }
    m
}

/// Rational interval of width at most `eps` containing `phi_k`.
pub fn refine_phi(k: u32, eps: &Rational) -> Result<IntervalValue> {
    if k < 2 {
        return Err(invalid(format!("k must be at least 2, got {k}")));
    }
    if !eps.is_positive() {
        return Err(invalid("eps must be positive"));
    }
    let mut bits = 1u64;
    while pow2(-(bits as i64)) > *eps {
        bits += 1;
    }
    let m = phi_bracket(k, bits);
    let scale = pow2(-(bits as i64));
    IntervalValue::new(
        Rational::from_integer(m.clone()) * &scale,
        Rational::from_integer(m + 1u32) * scale,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    fn f_at(k: u32, x: &Rational) -> Rational {
        let mut p = Rational::one();
        for _ in 0..k {
            p *= x;
        }
        p + x - Rational::one()
    }

    #[test]
    fn bracket_straddles_root() {
        for k in [2u32, 3, 5, 8, 16, 100] {
            let iv = refine_phi(k, &rat(1, 1_000_000_000)).unwrap();
            assert!(iv.width() <= rat(1, 1_000_000_000));
            assert!(f_at(k, iv.lo()) < Rational::zero());
            assert!(f_at(k, iv.hi()) > Rational::zero());
        }
    }

    #[test]
    fn golden_ratio_conjugate() {
        let iv = refine_phi(2, &pow2(-200)).unwrap();
        let (lo, hi) = iv.to_f64_pair();
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        assert!((lo - phi).abs() < 1e-15 && (hi - phi).abs() < 1e-15);
    }

    #[test]
    fn levels_are_nested() {
        let ctx = PhiContext::new(7).unwrap();
        let mut prev = ctx.enclosure().clone();
        for l in 1..5 {
            let cur = ctx.level(l).interval();
            assert!(prev.contains_interval(&cur));
            assert_eq!(cur.width(), pow2(-((32i64) << l)));
            prev = cur;
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(PhiContext::new(1).is_err());
        assert!(refine_phi(3, &rat(0, 1)).is_err());
        assert!(refine_phi(1, &rat(1, 2)).is_err());
    }
}
