use kunion_core::analysis::{entropy, h, h_f64, m_k_f64, PointK};
use kunion_core::constants;
use kunion_core::numerics::{parse_rational, rat, to_decimal, AlgebraicElement, PhiContext, Rational, Sign};
use kunion_core::poly::{count_roots, count_roots_sturm, discriminant, int_poly, OpenInterval, Poly};
use kunion_core::real::{Enclosure, FastInterval, Real};
use proptest::prelude::*;

fn small_poly() -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec(-20i64..=20, 1..7).prop_map(|c| int_poly(&c))
}

fn linear_factor(num: i64, den: i64) -> Poly<Rational> {
    Poly::new(vec![-rat(num, den), rat(1, 1)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b).derivative(), &(&a.derivative() * &b) + &(&a * &b.derivative()));
    }

    #[test]
    fn division_reconstructs(a in small_poly(), d in small_poly()) {
        prop_assume!(!d.is_zero());
        let (q, r) = a.div_rem(&d);
        prop_assert_eq!(&(&q * &d) + &r, a);
        if let (Some(dr), Some(dd)) = (r.degree(), d.degree()) {
            prop_assert!(dr < dd || r.is_zero());
        }
    }

    #[test]
    fn root_count_of_products(roots in prop::collection::vec((-30i64..=30, 1i64..=9), 1..6)) {
        let mut p = int_poly(&[1]);
        let mut inside = 0;
        let mut distinct: Vec<Rational> = Vec::new();
        for &(n, d) in &roots {
            p = &p * &linear_factor(n, d);
            let r = rat(n, d);
            if r > rat(0, 1) && r < rat(1, 1) {
                inside += 1;
                if !distinct.contains(&r) {
                    distinct.push(r);
                }
            }
        }
        let c = count_roots(&p, &OpenInterval::unit()).unwrap();
        prop_assert_eq!(c.with_multiplicity, inside);
        prop_assert_eq!(c.distinct, distinct.len());
        prop_assert_eq!(count_roots_sturm(&p, &OpenInterval::unit()).unwrap(), c);
    }

    #[test]
    fn quadratic_discriminant(b in -50i64..=50, c in -50i64..=50) {
        let d = discriminant(&int_poly(&[c, b, 1])).unwrap();
        prop_assert_eq!(d, rat(b * b - 4 * c, 1));
    }

    #[test]
    fn field_operations(k in 2u32..=6, a in prop::collection::vec(-9i64..=9, 1..6), b in prop::collection::vec(-9i64..=9, 1..6)) {
        let ctx = PhiContext::shared(k).unwrap();
        let x = AlgebraicElement::from_int_coords(&ctx, &a);
        let y = AlgebraicElement::from_int_coords(&ctx, &b);
        prop_assume!(!y.is_zero_in_ring());
        let q = x.checked_div(&y).unwrap();
        prop_assert_eq!(q.checked_mul(&y).unwrap(), x.clone());
        let v = x.to_f64();
        if v.abs() > 1e-9 {
            prop_assert_eq!(x.sign(), if v > 0.0 { Sign::Positive } else { Sign::Negative });
        }
    }

    #[test]
    fn decimal_round_trip(n in -1_000_000i64..1_000_000, e in 0u32..6) {
        let r = rat(n, 10i64.pow(e));
        prop_assert_eq!(parse_rational(&to_decimal(&r, e as usize)).unwrap(), r);
    }

    #[test]
    fn entropy_enclosures_agree(x in 1e-9f64..1.0) {
        let real = h(&Real::from_f64(x, 128));
        prop_assert!(real.width().to_f64() < 1e-30);
        prop_assert!((real.mid_f64() - h_f64(x)).abs() <= 1e-15);
        let fast = h(&FastInterval::point(x));
        prop_assert!(fast.lo_f64() <= real.mid_f64() && real.mid_f64() <= fast.hi_f64());
    }

    #[test]
    fn m_k_symmetric_and_bounded(xs in prop::collection::vec(0.01f64..0.99, 2..6)) {
        let k = xs.len() as u64;
        let v = m_k_f64(&PointK::new(xs.clone()).unwrap());
        let mut rev = xs.clone();
        rev.reverse();
        prop_assert!((v - m_k_f64(&PointK::new(rev).unwrap())).abs() < 1e-12);
        let lower = constants::mu(k, 64).unwrap().mid_f64() / k as f64;
        prop_assert!(v >= lower - 1e-9 && v < 1.0, "M = {v}, lower = {lower}");
    }

    #[test]
    fn entropy_of_laws(w in prop::collection::vec(0u32..20, 1..8)) {
        let total: u32 = w.iter().sum();
        prop_assume!(total > 0);
        let law: Vec<Rational> = w.iter().map(|&x| rat(x.into(), total.into())).collect();
        let support = w.iter().filter(|&&x| x > 0).count();
        let e = entropy(&law, 96);
        prop_assert!(e.lo_f64() >= -1e-25);
        prop_assert!(e.lo_f64() <= (support as f64).ln() + 1e-12);
    }
}
