//! Exact joint laws of `k` random `n`-bit strings and the union entropy
//! inequality on small instances.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constants;
use crate::error::{invalid, Result};
use crate::numerics::Rational;
use crate::real::{Enclosure, Real};
use crate::report::PaperCheckReport;

/// Joint law of `(A_1, ..., A_k)`, each `A_j` an `n`-bit string stored as an
/// integer below `2^n`. Only atoms with positive probability are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct JointDistribution {
    n: u32,
    k: u32,
    probs: BTreeMap<Vec<u32>, Rational>,
    product_form: bool,
}

fn check_shape(n: u32, k: u32) -> Result<()> {
    if n == 0 || k == 0 || n * k > 16 {
        return Err(invalid(format!("need n, k >= 1 and n*k <= 16, got n = {n}, k = {k}")));
    }
    Ok(())
}

fn tuples(n: u32, k: u32) -> impl Iterator<Item = Vec<u32>> {
    let m = 1u32 << n;
    (0..1u64 << (n * k)).map(move |mut c| {
        (0..k)
            .map(|_| {
                let v = (c % u64::from(m)) as u32;
                c /= u64::from(m);
                v
            })
            .collect()
    })
}

impl JointDistribution {
    /// Arbitrary joint law; the product flag is set when it factorizes.
    pub fn new(n: u32, k: u32, probs: BTreeMap<Vec<u32>, Rational>) -> Result<JointDistribution> {
        check_shape(n, k)?;
        let mut total = Rational::zero();
        for (key, p) in &probs {
            if key.len() != k as usize || key.iter().any(|&v| v >= 1 << n) {
                return Err(invalid(format!("atom {key:?} is not a {k}-tuple of {n}-bit strings")));
            }
            if p.is_negative() {
                return Err(invalid("probabilities must be nonnegative"));
            }
            total += p;
        }
        if !total.is_one() {
            return Err(invalid(format!("probabilities sum to {total}, not 1")));
        }
        let probs: BTreeMap<_, _> = probs.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        let mut d = JointDistribution { n, k, probs, product_form: false };
        let margs: Vec<Vec<Rational>> = (0..k).map(|j| d.marginal(j)).collect();
        d.product_form = tuples(n, k).all(|t| {
            let prod = t.iter().enumerate().fold(Rational::one(), |acc, (j, &v)| acc * &margs[j][v as usize]);
            d.prob(&t) == prod
        });
        Ok(d)
    }

    /// Law of independent `A_j` with the given marginals over `{0,1}^n`.
    pub fn product(n: u32, marginals: &[Vec<Rational>]) -> Result<JointDistribution> {
        let k = marginals.len() as u32;
        check_shape(n, k)?;
        for m in marginals {
            if m.len() != 1 << n || m.iter().any(|p| p.is_negative()) || !m.iter().sum::<Rational>().is_one() {
                return Err(invalid("each marginal must be a probability vector of length 2^n"));
            }
        }
        let mut probs = BTreeMap::new();
        for t in tuples(n, k) {
            let p = t.iter().enumerate().fold(Rational::one(), |acc, (j, &v)| acc * &marginals[j][v as usize]);
            if !p.is_zero() {
                probs.insert(t, p);
            }
        }
        Ok(JointDistribution { n, k, probs, product_form: true })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn is_product(&self) -> bool {
        self.product_form
    }

    pub fn probs(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.probs
    }

    pub fn prob(&self, t: &[u32]) -> Rational {
        self.probs.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    /// Law of `A_j` over `{0,1}^n`.
    pub fn marginal(&self, j: u32) -> Vec<Rational> {
        let mut m = vec![Rational::zero(); 1 << self.n];
        for (t, p) in &self.probs {
            m[t[j as usize] as usize] += p;
        }
        m
    }

    /// `Pr[A_(j,i) = 0]`.
    pub fn zero_probability(&self, j: u32, i: u32) -> Rational {
        self.probs.iter().filter(|(t, _)| t[j as usize] >> i & 1 == 0).map(|(_, p)| p.clone()).sum()
    }

    /// Smallest `Pr[A_(j,i) = 0]` over all `i`, `j`.
    pub fn min_zero_probability(&self) -> Rational {
        (0..self.k)
            .flat_map(|j| (0..self.n).map(move |i| (j, i)))
            .map(|(j, i)| self.zero_probability(j, i))
            .min()
            .expect("n, k >= 1")
    }

    /// Law of the bitwise union `A_1 | ... | A_k`.
    pub fn union_law(&self) -> Vec<Rational> {
        let mut m = vec![Rational::zero(); 1 << self.n];
        for (t, p) in &self.probs {
            let u = t.iter().fold(0u32, |a, &v| a | v);
            m[u as usize] += p;
        }
        m
    }
}

/// Shannon entropy (natural log) of a finite law.
pub fn entropy(law: &[Rational], prec: u32) -> Real {
    let mut acc = Real::from_int(0, prec);
    for p in law {
        if p.is_zero() || p.is_one() {
            continue;
        }
        let r = Real::from_rational(p, prec);
        acc = acc.sub(&r.mul(&r.ln()));
    }
    acc
}

/// `H(A_1 | ... | A_k) - p^(k-1) (mu_k/k) sum_j H(A_j)` with `p` the smallest
/// zero-probability of any bit.
pub fn union_slack(d: &JointDistribution, prec: u32) -> Result<Real> {
    let k = d.k();
    let mu = constants::mu(u64::from(k.max(2)), prec)?;
    let p = Real::from_rational(&d.min_zero_probability(), prec);
    let coef = p.powi(k - 1).mul(&mu).div(&Real::from_int(i64::from(k), prec));
    let mut sum = Real::from_int(0, prec);
    for j in 0..k {
        sum = sum.add(&entropy(&d.marginal(j), prec));
    }
    Ok(entropy(&d.union_law(), prec).sub(&coef.mul(&sum)))
}

fn random_marginal(rng: &mut ChaCha8Rng, n: u32) -> Vec<Rational> {
    let m = 1usize << n;
    let w: Vec<i64> = match rng.gen_range(0..10) {
        0 => {
            let mut w = vec![0; m];
            w[rng.gen_range(0..m)] = 1;
            w
        }
        1 => (0..m).map(|_| if rng.gen_bool(0.4) { rng.gen_range(1..10) } else { 0 }).collect(),
        2 => {
            let q: Vec<i64> = (0..n).map(|_| rng.gen_range(1..10)).collect();
            (0..m).map(|v| (0..n).map(|i| if v >> i & 1 == 0 { q[i as usize] } else { 10 - q[i as usize] }).product()).collect()
        }
        _ => (0..m).map(|_| rng.gen_range(1..13)).collect(),
    };
    let total: i64 = w.iter().sum();
    if total == 0 {
        let mut w = vec![Rational::zero(); m];
        w[0] = Rational::one();
        return w;
    }
    w.iter().map(|&x| Rational::new(x.into(), total.into())).collect()
}

/// Random independent `A_1, ..., A_k` over `{0,1}^n`.
pub fn random_independent(rng: &mut ChaCha8Rng, n: u32, k: u32) -> Result<JointDistribution> {
    let margs: Vec<Vec<Rational>> = (0..k).map(|_| random_marginal(rng, n)).collect();
    JointDistribution::product(n, &margs)
}

const PREC: u32 = 128;

pub fn verify_lemma_main_small(n: u32, k: u32, trials: usize, seed: u64) -> Result<PaperCheckReport> {
    if !(1..=4).contains(&n) || !(2..=3).contains(&k) {
        return Err(invalid(format!("need 1 <= n <= 4 and 2 <= k <= 3, got n = {n}, k = {k}")));
    }
    if trials == 0 {
        return Err(invalid("need at least one trial"));
    }
    const CHUNK: usize = 256;
    let chunks = trials.div_ceil(CHUNK);
    let results: Vec<(usize, usize, usize, f64, Option<String>)> = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<_> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64 + 1);
            let (mut bad, mut tight, mut trivial) = (0, 0, 0);
            let mut min_margin = f64::INFINITY;
            let mut example = None;
            for _ in 0..CHUNK.min(trials - c * CHUNK) {
                let d = random_independent(&mut rng, n, k)?;
                let mut s = union_slack(&d, PREC)?;
                if s.contains_zero() && !(s.lo().is_zero() && s.hi().is_zero()) {
                    s = union_slack(&d, 2 * PREC)?;
                }
                if s.lo().is_zero() && s.hi().is_zero() {
                    trivial += 1;
                } else if s.is_nonnegative() {
                    min_margin = min_margin.min(s.lo().to_f64_down());
                } else if s.is_negative() {
                    bad += 1;
                    example.get_or_insert_with(|| format!("{:?}", (0..k).map(|j| d.marginal(j)).collect::<Vec<_>>()));
                } else {
                    tight += 1;
                }
            }
            Ok((bad, tight, trivial, min_margin, example))
        })
        .collect::<Result<_>>()?;
    let bad: usize = results.iter().map(|r| r.0).sum();
    let tight: usize = results.iter().map(|r| r.1).sum();
    let trivial: usize = results.iter().map(|r| r.2).sum();
    let min_margin = results.iter().map(|r| r.3).fold(f64::INFINITY, f64::min);
    let mut rep = PaperCheckReport::new(
        format!("lemma-5.2-n{n}-k{k}"),
        "H(A_1 | ... | A_k) >= p^(k-1) (mu_k/k) sum_j H(A_j) for independent A_j",
        PREC,
    )
    .with_seed(seed);
    let mut value = format!("{trials} instances, {bad} violations, {tight} undecided, {trivial} with both sides exactly 0");
    if let Some(e) = results.iter().find_map(|r| r.4.clone()) {
        value.push_str(&format!("; e.g. marginals {e}"));
    }
    rep.check("exact-entropy instances", value, "no certified violation", bad == 0);
    rep.info("smallest positive slack", format!("{min_margin:.3e}"));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{big_f_k_f64, h_f64};
    use crate::numerics::rat;

    #[test]
    fn validation() {
        let mut m = BTreeMap::new();
        m.insert(vec![0, 1], rat(1, 2));
        m.insert(vec![1, 1], rat(1, 3));
        assert!(JointDistribution::new(1, 2, m.clone()).is_err());
        m.insert(vec![1, 0], rat(1, 6));
        let d = JointDistribution::new(1, 2, m).unwrap();
        assert!(!d.is_product());
        let p = JointDistribution::product(1, &[vec![rat(1, 3), rat(2, 3)], vec![rat(1, 2), rat(1, 2)]]).unwrap();
        let again = JointDistribution::new(1, 2, p.probs().clone()).unwrap();
        assert!(again.is_product());
        assert_eq!(p.zero_probability(0, 0), rat(1, 3));
        assert_eq!(p.union_law(), vec![rat(1, 6), rat(5, 6)]);
    }

    #[test]
    fn point_masses_are_trivial() {
        let pm = vec![Rational::zero(), Rational::zero(), Rational::one(), Rational::zero()];
        let d = JointDistribution::product(2, &[pm.clone(), pm]).unwrap();
        let s = union_slack(&d, 128).unwrap();
        assert!(s.lo().is_zero() && s.hi().is_zero());
    }

    #[test]
    fn bernoulli_reduction() {
        let q = rat(3, 5);
        let b = vec![q.clone(), Rational::one() - &q];
        for k in 2..=3u32 {
            let d = JointDistribution::product(1, &vec![b.clone(); k as usize]).unwrap();
            let s = union_slack(&d, 128).unwrap().mid_f64();
            let qf = 0.6f64;
            let mu = constants::mu(u64::from(k), 128).unwrap().mid_f64();
            let oracle = h_f64(qf.powi(k as i32)) - qf.powi(k as i32 - 1) * mu * h_f64(qf);
            assert!((s - oracle).abs() < 1e-14);
            assert_eq!(oracle >= 0.0, big_f_k_f64(k, qf) >= mu);
        }
    }

    #[test]
    fn small_run() {
        let r = verify_lemma_main_small(2, 2, 300, 5).unwrap();
        assert!(r.passed(), "{}", r.render_text());
        assert!(verify_lemma_main_small(5, 2, 1, 0).is_err());
    }
}
