//! Library results against independent f64 / exhaustive computations done
//! here from the definitions.

use kunion_core::analysis::{big_f_k_f64, f_k, h_f64, m_k_f64, union_slack, JointDistribution, PointK};
use kunion_core::constants::{self, BoundQuery};
use kunion_core::numerics::{rat, Rational};
use kunion_core::paperpoly::{build_p_parts, table2};
use kunion_core::real::Real;
use kunion_core::simulate::{exact_element_frequency, exhaustive_closure_fraction, FamilySpec};
use num_bigint::BigUint;

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if f(m) < 0.0 {
            lo = m;
        } else {
            hi = m;
        }
    }
    0.5 * (lo + hi)
}

fn phi_oracle(k: i32) -> f64 {
    bisect(|x| x.powi(k) + x - 1.0, 0.5, 1.0)
}

#[test]
fn phi_and_alpha_by_bisection() {
    for k in 2..=60 {
        let want = phi_oracle(k);
        let got = constants::phi(k as u64, 128).unwrap();
        assert!((got.mid_f64() - want).abs() < 1e-14, "k={k}");
        let a = constants::alpha(k as u64, 128).unwrap().mid_f64();
        assert!((a - want.powi(k - 1)).abs() < 1e-14, "k={k}");
        assert!((a - (1.0 / want - 1.0)).abs() < 1e-13, "k={k}");
    }
}

#[test]
fn z_from_its_definition() {
    // z_k = 1 - mu_k^(1/(1-k)), with mu_k = 1/alpha_k for k <= 4.
    for k in 2..=4 {
        let mu = 1.0 / phi_oracle(k).powi(k - 1);
        let z = 1.0 - mu.powf(1.0 / (1.0 - k as f64));
        assert!((constants::z(k as u64, 128).unwrap().mid_f64() - z).abs() < 1e-14);
    }
    let p2 = phi_oracle(2);
    for k in 5u64..=40 {
        let p = 63 - k.leading_zeros();
        let q = k - (1 << p);
        let two_p = (1u64 << p) as f64;
        let mu = (two_p - q as f64) / (two_p * p2.powi(p as i32)) + q as f64 / (two_p * p2.powi(p as i32 + 1));
        assert!((constants::mu(k, 128).unwrap().mid_f64() - mu).abs() < 1e-12, "k={k}");
    }
}

#[test]
fn f_k_matches_direct_formula() {
    for k in 2..=8u32 {
        let a = phi_oracle(k as i32).powi(k as i32 - 1);
        let alpha = constants::alpha(u64::from(k), 128).unwrap();
        for i in 1..50 {
            let x = i as f64 / 50.0;
            let direct = a * h_f64(x.powi(k as i32)) - x.powi(k as i32 - 1) * h_f64(x);
            let enc = f_k(k, &alpha, &Real::from_f64(x, 128));
            assert!((enc.mid_f64() - direct).abs() < 1e-14, "k={k} x={x}");
        }
    }
}

#[test]
fn big_f_at_phi_is_reciprocal_alpha() {
    for k in 2..=4 {
        let p = phi_oracle(k);
        assert!((big_f_k_f64(k as u32, p) - 1.0 / p.powi(k - 1)).abs() < 1e-10);
    }
}

#[test]
fn m_k_diagonal_and_tight_point() {
    let p = phi_oracle(2);
    assert!((m_k_f64(&PointK::new(vec![p, p]).unwrap()) - 1.0 / (2.0 * p)).abs() < 1e-12);
    for k in 2..=5 {
        for t in [0.2, 0.5, 0.8] {
            let diag = m_k_f64(&PointK::diagonal(k, t).unwrap());
            assert!((diag - big_f_k_f64(k as u32, t) / k as f64).abs() < 1e-12);
        }
    }
}

fn f64_poly_sign_changes(k: u32) -> usize {
    let p = build_p_parts(k).unwrap();
    let a = phi_oracle(k as i32).powi(k as i32 - 1);
    let deg = p.degree().unwrap();
    let coeffs: Vec<f64> = (0..=deg)
        .map(|i| {
            let (r, s) = p.coeff(i);
            kunion_core::numerics::rational_to_f64(&r) + a * kunion_core::numerics::rational_to_f64(&s)
        })
        .collect();
    let eval = |x: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
    let n = 200_000;
    let mut changes = 0;
    let mut prev = eval(1.0 / n as f64).signum();
    for i in 2..n {
        let s = eval(i as f64 / n as f64).signum();
        if s != prev {
            changes += 1;
            prev = s;
        }
    }
    changes
}

#[test]
fn root_counts_by_sign_changes() {
    for k in 2..=4 {
        let c = kunion_core::paperpoly::unit_interval_root_count(k).unwrap();
        assert_eq!(f64_poly_sign_changes(k), c.distinct, "k={k}");
    }
}

#[test]
fn table_two_degrees() {
    for k in 2..=6u32 {
        let t = table2(k).unwrap();
        assert_eq!(t.degree(), Some((k * k - 1) as usize));
        assert_eq!(t, build_p_parts(k).unwrap());
    }
}

#[test]
fn bernoulli_reduction_of_the_union_lemma() {
    // n = 1 with Pr[A_j = 0] = q for every j: the slack is
    // h(q^k) - q^(k-1) mu_k h(q).
    for k in 2..=3u32 {
        let mu = constants::mu(u64::from(k), 128).unwrap().mid_f64();
        for (a, b) in [(1, 5), (1, 2), (3, 4), (9, 10)] {
            let q: Rational = rat(a, b);
            let qf = a as f64 / b as f64;
            let law = vec![q.clone(), rat(1, 1) - &q];
            let d = JointDistribution::product(1, &vec![law; k as usize]).unwrap();
            let slack = union_slack(&d, 128).unwrap().mid_f64();
            let want = h_f64(qf.powi(k as i32)) - qf.powi(k as i32 - 1) * mu * h_f64(qf);
            assert!((slack - want).abs() < 1e-12, "k={k} q={qf}: {slack} vs {want}");
        }
    }
}

#[test]
fn exact_frequency_by_enumeration() {
    let spec = FamilySpec::with_overlap(10, 2).unwrap();
    let (mut members, mut hits) = (0u64, 0u64);
    for mask in 0u32..1 << 10 {
        if spec.contains_size(mask.count_ones()) {
            members += 1;
            hits += u64::from(mask & 1);
        }
    }
    let exact = exact_element_frequency(&spec).unwrap();
    assert_eq!(exact, rat(hits as i64, members as i64));
    assert_eq!(exhaustive_closure_fraction(&spec).unwrap(), rat(1, 1));
}

#[test]
fn bound_with_positive_eps() {
    let k = 5u64;
    let (eps, size) = (1e-4f64, 1u64 << 20);
    let q = BoundQuery::new(k, rat(1, 10_000), BigUint::from(size)).unwrap();
    let b = constants::frequency_bound(&q).unwrap();
    let delta = (k as f64 * eps + 2.0 * eps * (1.0 / eps).ln() / (size as f64).ln()).powf(1.0 / (k as f64 - 1.0));
    assert!((b.delta.mid_f64() - delta).abs() < 1e-12);
    let z = constants::z(k, 128).unwrap().mid_f64();
    assert!((b.guaranteed_fraction.mid_f64() - (z - delta)).abs() < 1e-12);
    assert!(!b.clamped && b.constant_name == "z_k");
}
