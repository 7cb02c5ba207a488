//! Monte Carlo estimates of the closure fraction and the element frequency.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;
use statrs::distribution::{ContinuousCDF, Normal};

use super::family::{element_frequency_f64, family_weights, family_weights_f64, FamilySpec, Sampler, EXACT_LIMIT};
use super::oracle::{exact_closure_fraction, exhaustive_closure_fraction, DP_MAX_N, EXHAUSTIVE_MAX_N};
use crate::error::{invalid, Result};
use crate::numerics::{rational_to_f64, to_decimal, Rational};
use crate::report::{PaperCheckReport, SCHEMA_VERSION};

pub const CONFIDENCE: f64 = 0.99;
const BATCH: usize = 1024;

fn z_score() -> f64 {
    Normal::new(0.0, 1.0).expect("standard normal").inverse_cdf(0.5 + CONFIDENCE / 2.0)
}

/// A point estimate with a two-sided half-width at [`CONFIDENCE`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub half_width: f64,
}

impl Estimate {
    /// Binomial proportion; the half-width is the larger side of the Wilson
    /// score interval, so it stays positive at `0` and `1`.
    pub fn proportion(hits: u64, n: u64) -> Estimate {
        let z = z_score();
        let nf = n as f64;
        let p = hits as f64 / nf;
        let den = 1.0 + z * z / nf;
        let centre = (p + z * z / (2.0 * nf)) / den;
        let rad = z * (p * (1.0 - p) / nf + z * z / (4.0 * nf * nf)).sqrt() / den;
        Estimate { value: p, half_width: (p - (centre - rad)).max(centre + rad - p) }
    }

    /// Mean with the normal-approximation half-width.
    pub fn mean(sum: f64, sum_sq: f64, n: u64) -> Estimate {
        let nf = n as f64;
        let m = sum / nf;
        let var = ((sum_sq / nf - m * m) * nf / (nf - 1.0).max(1.0)).max(0.0);
        Estimate { value: m, half_width: z_score() * (var / nf).sqrt() }
    }

    pub fn covers(&self, x: f64) -> bool {
        (self.value - x).abs() <= self.half_width + 1e-12
    }
}

/// Result of a simulation run.
#[derive(Clone, Debug)]
pub struct SimReport {
    pub spec: FamilySpec,
    pub trials: u64,
    pub seed: u64,
    pub closure_fraction: Estimate,
    pub element_frequency: Estimate,
    /// `|F_2| / |F|`, exact for `n <= 10^4`.
    pub f2_weight: Option<Rational>,
    pub f2_weight_f64: f64,
    pub exact_element_frequency: f64,
    pub exact_closure_fraction: Option<Rational>,
    pub union_size_mean: f64,
    /// Histogram of union sizes.
    pub union_sizes: BTreeMap<u32, u64>,
}

#[derive(Default)]
struct Acc {
    hits: u64,
    size_sum: f64,
    size_sq: f64,
    union_sum: f64,
    hist: BTreeMap<u32, u64>,
}

impl Acc {
    fn merge(mut self, o: Acc) -> Acc {
        self.hits += o.hits;
        self.size_sum += o.size_sum;
        self.size_sq += o.size_sq;
        self.union_sum += o.union_sum;
        for (k, v) in o.hist {
            *self.hist.entry(k).or_default() += v;
        }
        self
    }
}

/// Draw `trials` independent `k`-tuples of uniform members.
pub fn simulate(spec: &FamilySpec, trials: u64, seed: u64) -> Result<SimReport> {
    if trials == 0 {
        return Err(invalid("need at least one trial"));
    }
    let sampler = Sampler::new(spec);
    let batches = trials.div_ceil(BATCH as u64);
    let n = f64::from(spec.n);
    let accs: Vec<Acc> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b + 1);
            let mut acc = Acc::default();
            let count = (BATCH as u64).min(trials - b * BATCH as u64);
            for _ in 0..count {
                let mut u = sampler.sample_member(&mut rng);
                let f = f64::from(u.len()) / n;
                acc.size_sum += f;
                acc.size_sq += f * f;
                for _ in 1..spec.k {
                    let m = sampler.sample_member(&mut rng);
                    let f = f64::from(m.len()) / n;
                    acc.size_sum += f;
                    acc.size_sq += f * f;
                    u.union_with(&m);
                }
                let s = u.len();
                acc.hits += u64::from(spec.contains_size(s));
                acc.union_sum += f64::from(s);
                *acc.hist.entry(s).or_default() += 1;
            }
            acc
        })
        .collect();
    let acc = accs.into_iter().fold(Acc::default(), Acc::merge);
    let draws = trials * u64::from(spec.k);
    let f2_weight = if spec.n <= EXACT_LIMIT { Some(family_weights(spec)?.1) } else { None };
    let exact_closure_fraction = if spec.n <= EXHAUSTIVE_MAX_N {
        exhaustive_closure_fraction(spec).or_else(|_| exact_closure_fraction(spec)).ok()
    } else if spec.n <= DP_MAX_N {
        exact_closure_fraction(spec).ok()
    } else {
        None
    };
    Ok(SimReport {
        spec: spec.clone(),
        trials,
        seed,
        closure_fraction: Estimate::proportion(acc.hits, trials),
        element_frequency: Estimate::mean(acc.size_sum, acc.size_sq, draws),
        f2_weight_f64: family_weights_f64(spec).1,
        f2_weight,
        exact_element_frequency: element_frequency_f64(spec),
        exact_closure_fraction,
        union_size_mean: acc.union_sum / trials as f64,
        union_sizes: acc.hist,
    })
}

pub fn estimate_closure_fraction(spec: &FamilySpec, trials: u64, seed: u64) -> Result<SimReport> {
    simulate(spec, trials, seed)
}

pub fn estimate_element_frequency(spec: &FamilySpec, trials: u64, seed: u64) -> Result<SimReport> {
    simulate(spec, trials, seed)
}

fn d(x: f64) -> String {
    format!("{x:.10}")
}

impl SimReport {
    /// `n (1 - psi_k)`, the size a union of `k` first-layer sets exceeds.
    pub fn union_size_target(&self) -> f64 {
        f64::from(self.spec.n) * (1.0 - rational_to_f64(&self.spec.psi))
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "kind": "sim_report",
            "spec": {
                "n": self.spec.n.to_string(),
                "k": self.spec.k.to_string(),
                "t1": self.spec.t1.to_string(),
                "t2": self.spec.t2.to_string(),
                "psi": to_decimal(&self.spec.psi, 12),
                "overlap": self.spec.overlap,
            },
            "trials": self.trials.to_string(),
            "seed": self.seed.to_string(),
            "confidence": d(CONFIDENCE),
            "precision_bits": "53",
            "closure_fraction": {"value": d(self.closure_fraction.value), "half_width": d(self.closure_fraction.half_width)},
            "element_frequency": {"value": d(self.element_frequency.value), "half_width": d(self.element_frequency.half_width)},
            "f2_weight": self.f2_weight.as_ref().map_or_else(|| format!("{:.6e}", self.f2_weight_f64), |w| format!("{:.6e}", rational_to_f64(w))),
            "exact_element_frequency": d(self.exact_element_frequency),
            "exact_closure_fraction": self.exact_closure_fraction.as_ref().map(|r| to_decimal(r, 12)),
            "union_size_mean": d(self.union_size_mean),
            "union_size_target": d(self.union_size_target()),
        })
    }

    pub fn histogram_csv(&self) -> String {
        let mut s = String::from("union_size,count\n");
        for (k, v) in &self.union_sizes {
            s.push_str(&format!("{k},{v}\n"));
        }
        s
    }

    /// Checks of the asymptotic claims (skipped for overlapping specs) and
    /// of the estimates against the exact companions.
    pub fn check(&self) -> PaperCheckReport {
        let s = &self.spec;
        let mut rep = PaperCheckReport::new(
            format!("proposition-2.1-n{}-k{}", s.n, s.k),
            "1 - o(1) approximate k-union closed, element frequency at most psi_k + o(1)",
            64,
        )
        .with_seed(self.seed);
        let psi = rational_to_f64(&s.psi);
        let cf = self.closure_fraction;
        let ef = self.element_frequency;
        rep.info("t1, t2", format!("{}, {}", s.t1, s.t2));
        rep.info("|F_2|/|F|", format!("{:.6e}", self.f2_weight_f64));
        rep.info("mean union size vs n(1 - psi_k)", format!("{:.3} vs {:.3}", self.union_size_mean, self.union_size_target()));
        if s.overlap {
            rep.info("closure fraction", format!("{:.6} +- {:.6}", cf.value, cf.half_width));
            rep.info("element frequency", format!("{:.6} +- {:.6}", ef.value, ef.half_width));
            rep.note("t1 >= t2: the two layers overlap and the family is every set of size >= t2; asymptotic checks skipped");
        } else {
            rep.check("closure fraction", format!("{:.6} +- {:.6}", cf.value, cf.half_width), ">= 0.99", cf.value >= 0.99);
            rep.check(
                "element frequency",
                format!("{:.6} +- {:.6} (psi_k = {psi:.6})", ef.value, ef.half_width),
                "within 0.02 of psi_k",
                (ef.value - psi).abs() <= 0.02,
            );
        }
        rep.check(
            "element frequency vs exact layer expectation",
            format!("{:.8} vs {:.8}", ef.value, self.exact_element_frequency),
            "within the confidence half-width",
            ef.covers(self.exact_element_frequency),
        );
        if let Some(x) = &self.exact_closure_fraction {
            let xf = rational_to_f64(x);
            rep.check(
                "closure fraction vs exact value",
                format!("{:.8} +- {:.8} vs {}", cf.value, cf.half_width, to_decimal(x, 10)),
                "within the confidence half-width",
                cf.covers(xf),
            );
        }
        rep
    }
}

/// Simulation plus its checks.
pub fn verify_simulation(n: u32, k: u32, trials: u64, seed: u64) -> Result<(SimReport, PaperCheckReport)> {
    let spec = FamilySpec::with_overlap(n, k)?;
    let sim = simulate(&spec, trials, seed)?;
    let rep = sim.check();
    Ok((sim, rep))
}

/// Closure fraction along `n = 200, 500, 1000, 2000`; the trend is reported,
/// not asserted.
pub fn closure_ladder(k: u32, trials: u64, seed: u64) -> Result<PaperCheckReport> {
    let mut rep = PaperCheckReport::new(format!("proposition-2.1-ladder-k{k}"), "closure fraction as n grows", 64).with_seed(seed);
    let mut last = f64::NEG_INFINITY;
    let mut monotone = true;
    for n in [200, 500, 1000, 2000] {
        let spec = FamilySpec::with_overlap(n, k)?;
        let sim = simulate(&spec, trials, seed)?;
        let v = sim.closure_fraction.value;
        monotone &= v >= last;
        last = v;
        rep.info(format!("closure fraction at n = {n}"), format!("{v:.6} +- {:.6}", sim.closure_fraction.half_width));
    }
    rep.info("nondecreasing along the ladder", monotone);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proportion_interval() {
        let e = Estimate::proportion(100, 100);
        assert_eq!(e.value, 1.0);
        assert!(e.half_width > 0.0 && e.half_width < 0.07);
        let e = Estimate::proportion(50, 100);
        assert!((e.half_width - 2.5758 * 0.05).abs() < 0.01);
    }

    #[test]
    fn small_oracle_agreement() {
        let (sim, rep) = verify_simulation(12, 2, 20_000, 4).unwrap();
        assert!(sim.spec.overlap);
        assert!(rep.passed(), "{}", rep.render_text());
        assert_eq!(sim.exact_closure_fraction, Some(Rational::from_integer(1.into())));
    }

    #[test]
    fn valid_spec_dp_agreement() {
        let (sim, rep) = verify_simulation(40, 3, 20_000, 8).unwrap();
        assert!(!sim.spec.overlap);
        assert!(sim.exact_closure_fraction.is_some());
        assert!(rep.witnesses.iter().any(|w| w.expression == "closure fraction vs exact value" && w.outcome == crate::report::Outcome::Holds), "{}", rep.render_text());
    }

    #[test]
    fn deterministic_json() {
        let spec = FamilySpec::new(300, 3).unwrap();
        let a = simulate(&spec, 3000, 17).unwrap().to_json();
        let b = simulate(&spec, 3000, 17).unwrap().to_json();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
