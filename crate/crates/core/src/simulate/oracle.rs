//! Exact closure fractions and a uniformity test for small ground sets.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::family::{FamilySpec, Sampler};
use crate::error::{invalid, Result};
use crate::numerics::{binomial, Rational};

pub const EXHAUSTIVE_MAX_N: u32 = 14;
const EXHAUSTIVE_MAX_TUPLES: f64 = 2e8;
pub const DP_MAX_N: u32 = 200;

/// Members of the family as bitmasks over `[n]`, `n <= 14`.
pub fn enumerate_members(spec: &FamilySpec) -> Result<Vec<u32>> {
    if spec.n > EXHAUSTIVE_MAX_N {
        return Err(invalid(format!("enumeration is limited to n <= {EXHAUSTIVE_MAX_N}")));
    }
    Ok((0u32..1 << spec.n).filter(|m| spec.contains_size(m.count_ones())).collect())
}

/// Fraction of `k`-tuples of members whose union is a member, by listing
/// every tuple.
pub fn exhaustive_closure_fraction(spec: &FamilySpec) -> Result<Rational> {
    let members = enumerate_members(spec)?;
    let m = members.len();
    if (m as f64).powi(spec.k as i32) > EXHAUSTIVE_MAX_TUPLES {
        return Err(invalid(format!("{m}^{} tuples is too many to list", spec.k)));
    }
    fn count(spec: &FamilySpec, members: &[u32], acc: u32, depth: u32) -> u64 {
        if depth == 0 {
            return u64::from(spec.contains_size(acc.count_ones()));
        }
        members.iter().map(|&x| count(spec, members, acc | x, depth - 1)).sum()
    }
    let hits: u64 = members.par_iter().map(|&x| count(spec, &members, x, spec.k - 1)).sum();
    let total = BigInt::from(m).pow(spec.k);
    Ok(Rational::new(hits.into(), total))
}

/// Exact closure fraction by propagating the law of the union size: adding
/// a uniform `s`-subset to a union of size `u` adds a hypergeometric number
/// of new elements.
pub fn exact_closure_fraction(spec: &FamilySpec) -> Result<Rational> {
    if spec.n > DP_MAX_N {
        return Err(invalid(format!("the exact union-size recursion is limited to n <= {DP_MAX_N}")));
    }
    let n = spec.n as usize;
    let nn = u64::from(spec.n);
    let sizes = spec.sizes();
    let counts: Vec<BigInt> = sizes.iter().map(|&s| binomial(nn, u64::from(s))).collect();
    let total: BigInt = counts.iter().sum();
    let c = |a: usize, b: usize| binomial(a as u64, b as u64);
    let mut law = vec![Rational::zero(); n + 1];
    for (s, w) in sizes.iter().zip(&counts) {
        law[*s as usize] = Rational::new(w.clone(), total.clone());
    }
    for _ in 1..spec.k {
        let next: Vec<Rational> = (0..=n)
            .into_par_iter()
            .map(|v| {
                let mut acc = Rational::zero();
                for (u, pu) in law.iter().enumerate() {
                    if pu.is_zero() || u > v {
                        continue;
                    }
                    let x = v - u;
                    let mut inner = BigInt::zero();
                    for &s in &sizes {
                        let s = s as usize;
                        if x > s || s - x > u || x > n - u {
                            continue;
                        }
                        // members of size s meeting the complement in exactly x points
                        inner += c(n - u, x) * c(u, s - x);
                    }
                    if !inner.is_zero() {
                        acc += pu * Rational::new(inner, total.clone());
                    }
                }
                acc
            })
            .collect();
        law = next;
    }
    Ok(law.iter().enumerate().filter(|(u, _)| spec.contains_size(*u as u32)).map(|(_, p)| p.clone()).sum())
}

/// Chi-squared statistic of `draws` sampled members against the uniform law
/// on the family, with its 0.999 quantile.
#[derive(Clone, Debug)]
pub struct Uniformity {
    pub draws: usize,
    pub cells: usize,
    pub statistic: f64,
    pub critical: f64,
}

impl Uniformity {
    pub fn passed(&self) -> bool {
        self.statistic <= self.critical
    }
}

pub fn uniformity_chi2(spec: &FamilySpec, draws: usize, seed: u64) -> Result<Uniformity> {
    let members = enumerate_members(spec)?;
    if members.len() < 2 {
        return Err(invalid("the family has a single member"));
    }
    let sampler = Sampler::new(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: BTreeMap<u32, u64> = BTreeMap::new();
    for _ in 0..draws {
        let m = sampler.sample_member(&mut rng);
        let mask = m.indices().iter().fold(0u32, |a, &i| a | 1 << i);
        *seen.entry(mask).or_default() += 1;
    }
    let expected = draws as f64 / members.len() as f64;
    let statistic = members
        .iter()
        .map(|m| {
            let o = seen.get(m).copied().unwrap_or(0) as f64;
            (o - expected).powi(2) / expected
        })
        .sum();
    let df = (members.len() - 1) as f64;
    let critical = ChiSquared::new(df).map_err(|e| invalid(e.to_string()))?.inverse_cdf(0.999);
    Ok(Uniformity { draws, cells: members.len(), statistic, critical })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn dp_matches_enumeration() {
        for (n, k) in [(10, 2), (12, 2), (9, 3), (14, 2)] {
            let s = FamilySpec::with_overlap(n, k).unwrap();
            assert_eq!(exhaustive_closure_fraction(&s).unwrap(), exact_closure_fraction(&s).unwrap(), "n={n} k={k}");
        }
    }

    #[test]
    fn overlapping_family_is_closed() {
        let s = FamilySpec::with_overlap(12, 2).unwrap();
        assert_eq!(exhaustive_closure_fraction(&s).unwrap(), rat(1, 1));
    }

    #[test]
    fn sampler_is_uniform() {
        let s = FamilySpec::with_overlap(10, 3).unwrap();
        let u = uniformity_chi2(&s, 50_000, 9).unwrap();
        assert!(u.passed(), "{u:?}");
    }
}
