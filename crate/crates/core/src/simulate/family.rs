//! The two-layer family: all `t1`-subsets of `[n]` together with all subsets
//! of size at least `t2`.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;

use crate::constants;
use crate::error::{invalid, Result};
use crate::numerics::{binomial, Rational};

/// Largest `n` handled with exact big-integer weights.
pub const EXACT_LIMIT: u32 = 10_000;
pub const MAX_N: u32 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilySpec {
    pub n: u32,
    pub k: u32,
    pub t1: u32,
    pub t2: u32,
    /// `psi_k` as used for the floors.
    #[serde(serialize_with = "ser_rational")]
    pub psi: Rational,
    /// Set when `t1 >= t2`, in which case the first layer is contained in
    /// the second and the family is just the sets of size at least `t2`.
    pub overlap: bool,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::numerics::to_decimal(r, 12))
}

/// `floor(q n + n^(2/3))`, exactly.
fn floor_t1(q: &Rational, n: u32) -> u32 {
    let qn = q * Rational::from_integer(n.into());
    let guess = (crate::numerics::rational_to_f64(&qn) + f64::from(n).powf(2.0 / 3.0)).floor() as i64;
    let n2 = BigInt::from(n) * BigInt::from(n);
    // n^(2/3) >= r  <=>  r <= 0 or n^2 >= r^3
    let ge = |r: &Rational| !r.is_positive() || Rational::from_integer(n2.clone()) >= r * r * r;
    let mut m = guess;
    loop {
        let lo = Rational::from_integer(m.into()) - &qn;
        let hi = Rational::from_integer((m + 1).into()) - &qn;
        if !ge(&lo) {
            m -= 1;
        } else if ge(&hi) {
            m += 1;
        } else {
            return m.max(0) as u32;
        }
    }
}

impl FamilySpec {
    /// Spec with `0 < t1 < t2 <= n`; other parameter choices are refused.
    pub fn new(n: u32, k: u32) -> Result<FamilySpec> {
        let s = FamilySpec::with_overlap(n, k)?;
        if s.overlap || s.t1 == 0 {
            return Err(invalid(format!(
                "n = {n} is too small for k = {k}: t1 = {} and t2 = {} need 0 < t1 < t2 <= n",
                s.t1, s.t2
            )));
        }
        Ok(s)
    }

    /// Like [`FamilySpec::new`] but accepts `t1 >= t2`, flagging the overlap.
    pub fn with_overlap(n: u32, k: u32) -> Result<FamilySpec> {
        if k < 2 {
            return Err(invalid("k must be at least 2"));
        }
        if !(1..=MAX_N).contains(&n) {
            return Err(invalid(format!("n must lie in 1..={MAX_N}")));
        }
        let psi = constants::psi(u64::from(k), 64)?;
        let psi = psi.mid().to_rational();
        let t1 = floor_t1(&psi, n).min(n);
        let t2 = ((Rational::one() - &psi) * Rational::from_integer(n.into())).floor().to_integer().to_u32().unwrap_or(0);
        Ok(FamilySpec { n, k, t1, t2, psi, overlap: t1 >= t2 })
    }

    /// Membership of a set of the given size.
    pub fn contains_size(&self, size: u32) -> bool {
        size == self.t1 || size >= self.t2
    }

    /// Sizes of the members: `t1` (unless overlapping) and `t2..=n`.
    pub fn sizes(&self) -> Vec<u32> {
        let mut v = Vec::new();
        if !self.overlap {
            v.push(self.t1);
        }
        v.extend(self.t2..=self.n);
        v
    }
}

/// `|F_1 \ F_2|` and `|F_2|`.
pub fn layer_sizes(spec: &FamilySpec) -> (BigUint, BigUint) {
    let n = u64::from(spec.n);
    let f1 = if spec.overlap { BigInt::zero() } else { binomial(n, u64::from(spec.t1)) };
    let f2: BigInt = (spec.t2..=spec.n).map(|j| binomial(n, u64::from(j))).sum();
    (f1.to_biguint().expect("nonnegative"), f2.to_biguint().expect("nonnegative"))
}

/// Exact weights `|F_i| / |F|` of the two layers.
pub fn family_weights(spec: &FamilySpec) -> Result<(Rational, Rational)> {
    if spec.n > EXACT_LIMIT {
        return Err(invalid(format!("exact weights are limited to n <= {EXACT_LIMIT}; use family_weights_f64")));
    }
    let (a, b) = layer_sizes(spec);
    let total = BigInt::from(&a + &b);
    Ok((Rational::new(a.into(), total.clone()), Rational::new(b.into(), total)))
}

fn ln_binomial(n: u32, j: u32) -> f64 {
    use statrs::function::gamma::ln_gamma;
    ln_gamma(f64::from(n) + 1.0) - ln_gamma(f64::from(j) + 1.0) - ln_gamma(f64::from(n - j) + 1.0)
}

/// Size distribution of a uniform member as `(size, probability)` pairs,
/// computed in log space.
pub fn size_law_f64(spec: &FamilySpec) -> Vec<(u32, f64)> {
    let sizes = spec.sizes();
    let logs: Vec<f64> = sizes.iter().map(|&j| ln_binomial(spec.n, j)).collect();
    let m = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let z: f64 = logs.iter().map(|l| (l - m).exp()).sum();
    sizes.iter().zip(&logs).map(|(&j, l)| (j, (l - m).exp() / z)).collect()
}

/// Weights of the two layers in floating point, valid for every `n`.
pub fn family_weights_f64(spec: &FamilySpec) -> (f64, f64) {
    if spec.n <= EXACT_LIMIT {
        let (a, b) = family_weights(spec).expect("n within the exact range");
        return (crate::numerics::rational_to_f64(&a), crate::numerics::rational_to_f64(&b));
    }
    let law = size_law_f64(spec);
    let w1: f64 = law.iter().filter(|(j, _)| !spec.overlap && *j == spec.t1).map(|(_, p)| p).sum();
    (w1, 1.0 - w1)
}

/// A subset of `[n]` as a packed bitmask.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bitset {
    n: u32,
    words: Vec<u64>,
}

impl Bitset {
    pub fn empty(n: u32) -> Bitset {
        Bitset { n, words: vec![0; (n as usize).div_ceil(64)] }
    }

    pub fn from_indices(n: u32, idx: impl IntoIterator<Item = usize>) -> Bitset {
        let mut b = Bitset::empty(n);
        for i in idx {
            assert!(i < n as usize, "index {i} out of range");
            b.words[i / 64] |= 1 << (i % 64);
        }
        b
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.n as usize && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, o: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&o.words) {
            *a |= b;
        }
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.n as usize).filter(|&i| self.contains(i)).collect()
    }
}

/// Draws uniform members of the family.
#[derive(Clone, Debug)]
pub struct Sampler {
    spec: FamilySpec,
    kind: SamplerKind,
}

#[derive(Clone, Debug)]
enum SamplerKind {
    /// Prefix sums of the member counts by size.
    Exact { sizes: Vec<u32>, prefix: Vec<BigUint> },
    Float { sizes: Vec<u32>, cdf: Vec<f64> },
}

impl Sampler {
    pub fn new(spec: &FamilySpec) -> Sampler {
        let sizes = spec.sizes();
        let kind = if spec.n <= EXACT_LIMIT {
            let mut acc = BigUint::zero();
            let prefix = sizes
                .iter()
                .map(|&j| {
                    acc += binomial(u64::from(spec.n), u64::from(j)).to_biguint().expect("nonnegative");
                    acc.clone()
                })
                .collect();
            SamplerKind::Exact { sizes, prefix }
        } else {
            let mut acc = 0.0;
            let cdf = size_law_f64(spec)
                .iter()
                .map(|(_, p)| {
                    acc += p;
                    acc
                })
                .collect();
            SamplerKind::Float { sizes, cdf }
        };
        Sampler { spec: spec.clone(), kind }
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    /// Size of a uniform member.
    pub fn sample_size<R: Rng>(&self, rng: &mut R) -> u32 {
        match &self.kind {
            SamplerKind::Exact { sizes, prefix } => {
                let u = rng.gen_biguint_below(prefix.last().expect("nonempty family"));
                sizes[prefix.partition_point(|p| p <= &u)]
            }
            SamplerKind::Float { sizes, cdf } => {
                let u: f64 = rng.gen::<f64>() * cdf.last().copied().unwrap_or(1.0);
                sizes[cdf.partition_point(|&c| c <= u).min(sizes.len() - 1)]
            }
        }
    }

    /// A uniform member of the family.
    pub fn sample_member<R: Rng>(&self, rng: &mut R) -> Bitset {
        let j = self.sample_size(rng);
        let idx = rand::seq::index::sample(rng, self.spec.n as usize, j as usize);
        Bitset::from_indices(self.spec.n, idx)
    }
}

pub fn sample_member<R: Rng>(spec: &FamilySpec, rng: &mut R) -> Bitset {
    Sampler::new(spec).sample_member(rng)
}

/// `sum_(A in F) |A| / (n |F|)`, the probability that a fixed element lies
/// in a uniform member.
pub fn exact_element_frequency(spec: &FamilySpec) -> Result<Rational> {
    if spec.n > EXACT_LIMIT {
        return Err(invalid(format!("exact frequencies are limited to n <= {EXACT_LIMIT}")));
    }
    let n = u64::from(spec.n);
    let mut total = BigInt::zero();
    let mut weighted = BigInt::zero();
    for j in spec.sizes() {
        let c = binomial(n, u64::from(j));
        weighted += &c * BigInt::from(j);
        total += c;
    }
    Ok(Rational::new(weighted, total * BigInt::from(n)))
}

pub fn element_frequency_f64(spec: &FamilySpec) -> f64 {
    if spec.n <= EXACT_LIMIT {
        return crate::numerics::rational_to_f64(&exact_element_frequency(spec).expect("exact range"));
    }
    size_law_f64(spec).iter().map(|(j, p)| f64::from(*j) * p).sum::<f64>() / f64::from(spec.n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn spec_floors() {
        let s = FamilySpec::new(2000, 3).unwrap();
        let psi = 0.317672196171981;
        assert_eq!(s.t1, (psi * 2000.0 + 2000f64.powf(2.0 / 3.0)).floor() as u32);
        assert_eq!(s.t2, ((1.0 - psi) * 2000.0).floor() as u32);
        assert!(FamilySpec::new(12, 2).is_err());
        let o = FamilySpec::with_overlap(12, 2).unwrap();
        assert!(o.overlap);
        assert!(FamilySpec::new(2000, 1).is_err());
        // n = 8: 8^(2/3) = 4 exactly, so the floor must not drop below.
        let e = FamilySpec::with_overlap(8, 2).unwrap();
        assert_eq!(e.t1, (0.3819660112501051 * 8.0 + 4.0f64).floor() as u32);
    }

    #[test]
    fn weights_sum_to_one_and_decay() {
        let s = FamilySpec::with_overlap(20, 2).unwrap();
        let (a, b) = family_weights(&s).unwrap();
        assert_eq!(a + b, rat(1, 1));
        let mut last = rat(2, 1);
        for n in [100, 200, 400, 800] {
            let (_, w2) = family_weights(&FamilySpec::new(n, 2).unwrap()).unwrap();
            assert!(w2 < last, "n = {n}");
            last = w2;
        }
        let s = FamilySpec::new(400, 3).unwrap();
        let (w1, _) = family_weights_f64(&s);
        let law = size_law_f64(&s);
        assert!((law.iter().find(|(j, _)| *j == s.t1).unwrap().1 - w1).abs() < 1e-9);
    }

    #[test]
    fn members_have_member_sizes() {
        let s = FamilySpec::new(300, 3).unwrap();
        let smp = Sampler::new(&s);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let m = smp.sample_member(&mut rng);
            assert!(s.contains_size(m.len()));
        }
    }

    #[test]
    fn log_binomial_matches_exact() {
        let exact = crate::numerics::rational_to_f64(&Rational::from_integer(binomial(60, 25))).ln();
        assert!((ln_binomial(60, 25) - exact).abs() < 1e-10);
    }

    #[test]
    fn bitset_ops() {
        let mut a = Bitset::from_indices(70, [0, 65]);
        let b = Bitset::from_indices(70, [1, 65, 69]);
        a.union_with(&b);
        assert_eq!(a.len(), 4);
        assert_eq!(a.indices(), vec![0, 1, 65, 69]);
        assert!(!a.contains(70));
    }
}
