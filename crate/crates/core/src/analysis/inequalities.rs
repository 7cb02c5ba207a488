//! Sampled checks of the two-variable entropy inequality, its `k`-variable
//! corollary, and the minimum of `M_k`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::entropy::h;
use super::functions::{big_f_k_f64, m_k, m_k_f64, PointK};
use crate::constants;
use crate::error::{invalid, Result};
use crate::real::{Enclosure, FastInterval, Real};
use crate::report::PaperCheckReport;

pub const SAMPLE_PRECISION: u32 = 128;
pub const DIAGONAL_TOLERANCE: f64 = 1e-6;
const CHUNK: usize = 4096;

/// Verdict on one sampled instance of an inequality `lhs >= rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
    /// Slack too close to zero to decide at the working precision.
    Tight,
}

/// Decide `slack >= 0`, screening with `f64` intervals first.
pub fn classify(fast: impl Fn() -> FastInterval, exact: impl Fn() -> Real) -> Verdict {
    decide(false, fast, exact)
}

/// Decide `slack > 0`.
pub fn classify_strict(fast: impl Fn() -> FastInterval, exact: impl Fn() -> Real) -> Verdict {
    decide(true, fast, exact)
}

fn decide(strict: bool, fast: impl Fn() -> FastInterval, exact: impl Fn() -> Real) -> Verdict {
    let f = fast();
    if f.lo > 0.0 || (!strict && f.lo >= 0.0) {
        return Verdict::Holds;
    }
    if f.hi < 0.0 || (strict && f.hi <= 0.0) {
        return Verdict::Violated;
    }
    let r = exact();
    if r.is_positive() || (!strict && r.is_nonnegative()) {
        Verdict::Holds
    } else if r.is_negative() || (strict && r.hi_cmp(0.0) != std::cmp::Ordering::Greater) {
        Verdict::Violated
    } else {
        Verdict::Tight
    }
}

#[derive(Clone, Debug, Default)]
pub struct Tally {
    pub holds: usize,
    pub violated: usize,
    pub tight: usize,
    pub examples: Vec<Vec<f64>>,
    pub tight_examples: Vec<Vec<f64>>,
}

impl Tally {
    fn add(&mut self, v: Verdict, x: &[f64]) {
        match v {
            Verdict::Holds => self.holds += 1,
            Verdict::Violated => {
                self.violated += 1;
                if self.examples.len() < 5 {
                    self.examples.push(x.to_vec());
                }
            }
            Verdict::Tight => {
                self.tight += 1;
                if self.tight_examples.len() < 3 {
                    self.tight_examples.push(x.to_vec());
                }
            }
        }
    }

    fn merge(mut self, o: Tally) -> Tally {
        self.holds += o.holds;
        self.violated += o.violated;
        self.tight += o.tight;
        for e in o.examples {
            if self.examples.len() < 5 {
                self.examples.push(e);
            }
        }
        for e in o.tight_examples {
            if self.tight_examples.len() < 3 {
                self.tight_examples.push(e);
            }
        }
        self
    }

    pub fn total(&self) -> usize {
        self.holds + self.violated + self.tight
    }

    fn record(&self, rep: &mut PaperCheckReport, what: &str) {
        let fmt = |v: &[Vec<f64>]| v.iter().map(|p| format!("{p:?}")).collect::<Vec<_>>().join(", ");
        let mut value = format!("{} samples, {} violations, {} undecided", self.total(), self.violated, self.tight);
        if !self.examples.is_empty() {
            value.push_str(&format!("; e.g. {}", fmt(&self.examples)));
        }
        rep.check(what, value, "no certified violation", self.violated == 0);
        if !self.tight_examples.is_empty() {
            rep.info(format!("{what}: near-equality points"), fmt(&self.tight_examples));
        }
    }
}

fn chunk_rng(seed: u64, chunk: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64 + 1);
    rng
}

/// Run `samples` draws of `draw` in seeded chunks and classify each with `judge`.
fn sample_tally(
    samples: usize,
    seed: u64,
    draw: impl Fn(&mut ChaCha8Rng) -> Vec<f64> + Sync,
    judge: impl Fn(&[f64]) -> Verdict + Sync,
) -> Tally {
    let chunks = samples.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, c);
            let n = CHUNK.min(samples - c * CHUNK);
            let mut t = Tally::default();
            for _ in 0..n {
                let x = draw(&mut rng);
                t.add(judge(&x), &x);
            }
            t
        })
        .reduce(Tally::default, Tally::merge)
}

/// A coordinate drawn from a mix of uniform, near-0, near-1, and exact
/// boundary values.
fn coord(rng: &mut ChaCha8Rng) -> f64 {
    match rng.gen_range(0..10) {
        0 => 10f64.powf(-rng.gen_range(1.0..12.0)),
        1 => 1.0 - 10f64.powf(-rng.gen_range(1.0..12.0)),
        2 => [0.0, 1.0][rng.gen_range(0..2)],
        _ => rng.gen::<f64>(),
    }
}

fn near(rng: &mut ChaCha8Rng, c: f64) -> f64 {
    let d = 10f64.powf(-rng.gen_range(2.0..10.0)) * if rng.gen() { 1.0 } else { -1.0 };
    (c + d).clamp(0.0, 1.0)
}

fn cl_slack<E: Enclosure>(x: &E, y: &E, c: &E) -> E {
    h(&x.mul(y)).sub(&c.mul(&x.mul(&h(y)).add(&y.mul(&h(x)))))
}

fn fast_of(r: &Real) -> FastInterval {
    FastInterval::new(r.lo().to_f64_down(), r.hi().to_f64_up())
}

/// `h(xy) >= (x h(y) + y h(x)) / (2 phi)` with `phi = phi_2`.
pub fn verify_lemma_cl(samples: usize, seed: u64) -> Result<PaperCheckReport> {
    if samples == 0 {
        return Err(invalid("need at least one sample"));
    }
    let p = SAMPLE_PRECISION;
    let phi = constants::phi(2, p)?;
    let c = phi.mul(&phi.constant(2.0)).recip();
    let cf = fast_of(&c);
    let pf = phi.mid_f64();
    let judge = |v: &[f64]| {
        classify(
            || cl_slack(&FastInterval::point(v[0]), &FastInterval::point(v[1]), &cf),
            || cl_slack(&Real::from_f64(v[0], p), &Real::from_f64(v[1], p), &c),
        )
    };
    let mut rep = PaperCheckReport::new("lemma-4.1", "h(xy) >= (x h(y) + y h(x))/(2 phi)", p).with_seed(seed);
    let fixed: Vec<Vec<f64>> = vec![
        vec![1.0, 1.0],
        vec![0.0, 0.0],
        vec![0.0, 1.0],
        vec![1.0, 0.5],
        vec![pf, pf],
        vec![0.5, 0.5],
        vec![1e-300, 1e-300],
        vec![1.0 - 1e-16, pf],
    ];
    let mut ft = Tally::default();
    for v in &fixed {
        ft.add(judge(v), v);
    }
    ft.record(&mut rep, "adversarial points");
    let t = sample_tally(
        samples,
        seed,
        |rng| match rng.gen_range(0..10) {
            0 => vec![near(rng, pf), near(rng, pf)],
            1 => {
                let x = coord(rng);
                vec![x, x]
            }
            _ => vec![coord(rng), coord(rng)],
        },
        judge,
    );
    t.record(&mut rep, "sampled points of [0,1]^2");
    let tight = cl_slack(&phi, &phi, &c);
    rep.info("slack at (phi, phi)", format!("{tight}"));
    rep.check("slack at (phi, phi) encloses 0", format!("{tight}"), "equality point", tight.contains_zero());
    Ok(rep)
}

fn corollary_slack<E: Enclosure>(x: &[E], coef: &E) -> E {
    let mut prod = x[0].clone();
    for v in &x[1..] {
        prod = prod.mul(v);
    }
    let mut sum = x[0].constant(0.0);
    for i in 0..x.len() {
        let mut term = h(&x[i]);
        for (j, v) in x.iter().enumerate() {
            if j != i {
                term = term.mul(v);
            }
        }
        sum = sum.add(&term);
    }
    h(&prod).sub(&coef.mul(&sum))
}

/// `h(prod x_i) >= (mu_k / k) sum_i h(x_i) prod_(j != i) x_j` on `[0,1]^k`.
pub fn verify_corollary_main(k: u32, samples: usize, seed: u64) -> Result<PaperCheckReport> {
    if !(2..=16).contains(&k) {
        return Err(invalid(format!("k must lie in 2..=16, got {k}")));
    }
    if samples == 0 {
        return Err(invalid("need at least one sample"));
    }
    let p = SAMPLE_PRECISION;
    let ku = k as usize;
    let coef = constants::mu(u64::from(k), p)?.div(&Real::from_int(i64::from(k), p));
    let cf = fast_of(&coef);
    let pf = constants::phi(u64::from(k), p)?.mid_f64();
    let judge = |v: &[f64]| {
        classify(
            || corollary_slack(&v.iter().map(|&x| FastInterval::point(x)).collect::<Vec<_>>(), &cf),
            || corollary_slack(&v.iter().map(|&x| Real::from_f64(x, p)).collect::<Vec<_>>(), &coef),
        )
    };
    let mut rep = PaperCheckReport::new(
        format!("corollary-4.6-k{k}"),
        "h(prod x_i) >= (mu_k/k) sum_i h(x_i) prod_(j != i) x_j",
        p,
    )
    .with_seed(seed);
    let mut ft = Tally::default();
    let mut zero = vec![0.5; ku];
    zero[0] = 0.0;
    let mut last_one = vec![0.4; ku];
    last_one[ku - 1] = 1.0;
    for v in [zero, last_one, vec![1.0; ku], vec![pf; ku], vec![0.5; ku]] {
        ft.add(judge(&v), &v);
    }
    ft.record(&mut rep, "boundary and diagonal points");
    let t = sample_tally(
        samples,
        seed,
        |rng| match rng.gen_range(0..10) {
            0 => vec![rng.gen::<f64>(); ku],
            1 => (0..ku).map(|_| near(rng, pf)).collect(),
            2 => {
                let t = near(rng, pf);
                let mut v = vec![t; ku];
                v[ku - 1] = 1.0;
                v
            }
            _ => (0..ku).map(|_| coord(rng)).collect(),
        },
        judge,
    );
    t.record(&mut rep, &format!("sampled points of [0,1]^{k}"));
    Ok(rep)
}

/// Best point found by [`minimize_m_k`].
#[derive(Clone, Debug)]
pub struct MkMinimum {
    pub k: u32,
    pub point: PointK,
    pub value: Real,
    /// Best value of `F_k(t)/k` on the diagonal scan and where it occurs.
    pub diagonal_t: f64,
    pub diagonal_value: f64,
    /// Spread of the coordinates different from `1`.
    pub spread: f64,
}

impl MkMinimum {
    pub fn is_diagonal(&self) -> bool {
        self.spread <= DIAGONAL_TOLERANCE
    }

    pub fn report(&self, tolerance: f64) -> Result<PaperCheckReport> {
        let p = self.value.prec();
        let bound = constants::mu(u64::from(self.k), p)?.div(&Real::from_int(i64::from(self.k), p));
        let mut rep = PaperCheckReport::new(
            format!("lemma-4.5-k{}", self.k),
            "mu_k/k <= M_k < 1, minima on the diagonal",
            p,
        );
        rep.info("minimizer", format!("{:?}", self.point.coords()));
        rep.info("diagonal scan minimum of F_k(t)/k", format!("{:.12} at t = {:.9}", self.diagonal_value, self.diagonal_t));
        let slack = self.value.sub(&bound).add(&bound.constant(tolerance));
        rep.check(
            "min M_k - mu_k/k",
            format!("{:.3e}", self.value.mid_f64() - bound.mid_f64()),
            format!(">= -{tolerance:e}"),
            slack.is_nonnegative(),
        );
        rep.check(
            "spread of the non-1 coordinates of the minimizer",
            format!("{:.3e}", self.spread),
            format!("<= {DIAGONAL_TOLERANCE:e}"),
            self.is_diagonal(),
        );
        rep.note("first-order behaviour only; second-order conditions at interior minima are not examined");
        Ok(rep)
    }
}

fn golden(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let c = b - r * (b - a);
        let d = a + r * (b - a);
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
        if b - a < 1e-15 {
            break;
        }
    }
    0.5 * (a + b)
}

fn compass(k: usize, start: Vec<f64>) -> (Vec<f64>, f64) {
    let eval = |x: &[f64]| m_k_f64(&PointK::new(x.to_vec()).expect("clamped point"));
    let mut x = start;
    let mut fx = eval(&x);
    let mut step = 0.1;
    while step > 1e-12 {
        let mut improved = false;
        for i in 0..k {
            for s in [step, -step] {
                let mut y = x.clone();
                y[i] = (y[i] + s).clamp(1e-12, 1.0);
                let fy = eval(&y);
                if fy < fx {
                    x = y;
                    fx = fy;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (x, fx)
}

/// Multi-start local descent on `M_k` plus a dense scan of the diagonal.
pub fn minimize_m_k(k: u32, tolerance: f64) -> Result<MkMinimum> {
    if !(2..=12).contains(&k) {
        return Err(invalid(format!("k must lie in 2..=12, got {k}")));
    }
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(invalid("tolerance must be positive"));
    }
    let ku = k as usize;
    let diag = |t: f64| big_f_k_f64(k, t) / k as f64;
    let n = 20_000;
    let (i, _) = (1..n).map(|i| (i, diag(i as f64 / n as f64))).fold((1, f64::INFINITY), |b, (i, v)| if v < b.1 { (i, v) } else { b });
    let t = golden(diag, (i - 1) as f64 / n as f64, (i + 1) as f64 / n as f64);
    let dv = diag(t);
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d6b);
    let mut starts: Vec<Vec<f64>> = (0..24).map(|_| (0..ku).map(|_| rng.gen_range(0.05..0.95)).collect()).collect();
    starts.push(vec![t; ku]);
    let best = starts
        .into_par_iter()
        .map(|s| compass(ku, s))
        .reduce(|| (vec![], f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
    let (coords, _) = if dv <= best.1 { (vec![t; ku], dv) } else { best };
    let point = PointK::new(coords)?;
    let rest = point.reduced();
    let spread = if rest.is_empty() {
        0.0
    } else {
        rest.iter().copied().fold(f64::NEG_INFINITY, f64::max) - rest.iter().copied().fold(f64::INFINITY, f64::min)
    };
    let value = m_k(&point, SAMPLE_PRECISION);
    Ok(MkMinimum { k, point, value, diagonal_t: t, diagonal_value: dv, spread })
}

fn m_interior_real(xs: &[Real]) -> Real {
    let mut prod = xs[0].clone();
    for x in &xs[1..] {
        prod = prod.mul(x);
    }
    let mut den = h(&xs[0]).div(&xs[0]);
    for x in &xs[1..] {
        den = den.add(&h(x).div(x));
    }
    h(&prod).div(&prod).div(&den)
}

/// Sampled `mu_k/k <= M_k < 1`, the chain `M_k(x) < M_(k-1)(x_1 x_2, ...)`,
/// and convergence of `M_k` to its extended boundary value.
pub fn verify_mk_bounds(k: u32, samples: usize, seed: u64) -> Result<PaperCheckReport> {
    if !(2..=12).contains(&k) {
        return Err(invalid(format!("k must lie in 2..=12, got {k}")));
    }
    let p = SAMPLE_PRECISION;
    let ku = k as usize;
    let bound = constants::mu(u64::from(k), p)?.div(&Real::from_int(i64::from(k), p));
    let bf = fast_of(&bound);
    let pf = constants::phi(u64::from(k), p)?.mid_f64();
    let mut rep = PaperCheckReport::new(format!("lemma-4.5-bounds-k{k}"), "mu_k/k <= M_k < 1 in (0,1)^k", p).with_seed(seed);
    let interior = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        match rng.gen_range(0..4) {
            0 => (0..ku).map(|_| near(rng, pf).clamp(1e-12, 1.0 - 1e-12)).collect(),
            _ => (0..ku).map(|_| rng.gen_range(1e-9..1.0 - 1e-9)).collect(),
        }
    };
    let pts = |v: &[f64]| v.iter().map(|&x| Real::from_f64(x, p)).collect::<Vec<_>>();
    let fpts = |v: &[f64]| v.iter().map(|&x| FastInterval::point(x)).collect::<Vec<_>>();
    let fast_m = |v: &[FastInterval]| {
        let mut prod = v[0];
        for x in &v[1..] {
            prod = prod.mul(x);
        }
        let mut den = h(&v[0]).div(&v[0]);
        for x in &v[1..] {
            den = den.add(&h(x).div(x));
        }
        h(&prod).div(&prod).div(&den)
    };
    let lower = sample_tally(samples, seed, interior, |v| {
        classify(|| fast_m(&fpts(v)).sub(&bf), || m_interior_real(&pts(v)).sub(&bound))
    });
    lower.record(&mut rep, "M_k - mu_k/k >= 0");
    let upper = sample_tally(samples, seed ^ 1, interior, |v| {
        classify_strict(
            || FastInterval::point(1.0).sub(&fast_m(&fpts(v))),
            || {
                let m = m_interior_real(&pts(v));
                m.constant(1.0).sub(&m)
            },
        )
    });
    upper.record(&mut rep, "1 - M_k > 0");
    let chain = sample_tally(samples, seed ^ 2, interior, |v| {
        classify_strict(
            || {
                let mut w = fpts(v);
                let first = w[0].mul(&w[1]);
                w.splice(0..2, [first]);
                let rhs = if w.len() == 1 { FastInterval::point(1.0) } else { fast_m(&w) };
                rhs.sub(&fast_m(&fpts(v)))
            },
            || {
                let mut w = pts(v);
                let first = w[0].mul(&w[1]);
                w.splice(0..2, [first]);
                let rhs = if w.len() == 1 { Real::from_int(1, p) } else { m_interior_real(&w) };
                rhs.sub(&m_interior_real(&pts(v)))
            },
        )
    });
    chain.record(&mut rep, "M_(k-1)(x_1 x_2, x_3, ...) - M_k(x) > 0");

    let mut base = vec![0.3; ku];
    base[0] = 0.0;
    let mut dists = Vec::new();
    for e in [10i64, 100, 1000, 10000] {
        let mut xs = pts(&base);
        xs[0] = Real::exact(crate::real::Dyadic::new(1.into(), -e), p);
        dists.push((m_interior_real(&xs).mid_f64() - 1.0).abs());
    }
    let mono = dists.windows(2).all(|w| w[1] < w[0]);
    rep.check(
        "|M_k(2^-e, 0.3, ...) - 1| for e = 10, 100, 1000, 10000",
        format!("{:?}", dists.iter().map(|d| format!("{d:.3e}")).collect::<Vec<_>>()),
        "decreasing, last below 1e-3",
        mono && dists[3] < 1e-3,
    );
    if ku >= 2 {
        let mut b = vec![0.3; ku];
        b[ku - 1] = 1.0;
        let target = m_k(&PointK::new(b.clone())?, p).mid_f64();
        let mut d1 = Vec::new();
        for e in [10i64, 20, 40, 80] {
            let mut xs = pts(&b);
            xs[ku - 1] = Real::from_int(1, p).sub(&Real::exact(crate::real::Dyadic::new(1.into(), -e), p));
            d1.push((m_interior_real(&xs).mid_f64() - target).abs());
        }
        rep.check(
            "|M_k(0.3, ..., 1 - 2^-e) - M_k(0.3, ..., 1)| for e = 10, 20, 40, 80",
            format!("{:?}", d1.iter().map(|d| format!("{d:.3e}")).collect::<Vec<_>>()),
            "decreasing, last below 1e-12",
            d1.windows(2).all(|w| w[1] <= w[0]) && d1[3] < 1e-12,
        );
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cl_small_run() {
        let r = verify_lemma_cl(20_000, 7).unwrap();
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn corollary_small_run() {
        for k in 2..=4 {
            let r = verify_corollary_main(k, 5_000, 11).unwrap();
            assert!(r.passed(), "{}", r.render_text());
        }
    }

    #[test]
    fn minimum_k2_at_phi() {
        let m = minimize_m_k(2, 1e-9).unwrap();
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        for &c in m.point.coords() {
            assert!((c - phi).abs() < 1e-6, "{:?}", m.point);
        }
        assert!((m.value.mid_f64() - 1.0 / (2.0 * phi)).abs() < 1e-12);
        assert!(m.report(1e-9).unwrap().passed());
    }

    #[test]
    fn mk_bounds_small_run() {
        let r = verify_mk_bounds(3, 2_000, 3).unwrap();
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn deterministic() {
        let a = verify_lemma_cl(5_000, 42).unwrap();
        let b = verify_lemma_cl(5_000, 42).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
