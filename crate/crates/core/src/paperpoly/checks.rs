//! Root counts, discriminant signs and the sign facts about `p_k`.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::Result;
use crate::numerics::{sign_with_bits, AlgebraicElement, PhiContext, Rational, Sign};
use crate::poly::{count_roots, discriminant, OpenInterval, RootCount};
use crate::report::PaperCheckReport;

use super::construct::{
    build_p, build_p_parts, build_rho, build_sigma, check_k, rho_term_count, sigma_coefficient_signs,
};
use super::golden::table2;

fn alt_sign(k: u32) -> Sign {
    if k % 2 == 1 {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

fn value_string(a: &AlgebraicElement) -> String {
    match a.as_linear_alpha() {
        Some((p, q)) if q.is_zero() => p.to_string(),
        Some((p, q)) => format!("{p} + ({q})*alpha ~ {:.6e}", a.to_f64()),
        None => format!("{a} ~ {:.6e}", a.to_f64()),
    }
}

/// Certified sign of `p_k(0) = alpha_k rho_k(0) - sigma_k(0)`, together with
/// the facts it rests on.
pub fn check_p0_sign(k: u32) -> Result<PaperCheckReport> {
    check_k(k)?;
    let ctx = PhiContext::shared(k)?;
    let parts = build_p_parts(k)?;
    let v = parts.eval_in(&ctx, &Rational::zero());
    let (sign, bits) = sign_with_bits(&v);
    let mut rep = PaperCheckReport::new(
        format!("lemma-3.9-k{k}"),
        "p_k(0) > 0 for odd k and p_k(0) < 0 for even k; leading coefficient -1",
        bits,
    );
    let want = alt_sign(k);
    rep.check(format!("sign p_{k}(0)"), format!("{} ({})", sign.as_i32(), value_string(&v)), format!("= {}", want.as_i32()), sign == want);
    let s = if k % 2 == 1 { 1i64 } else { -1 };
    let kk = i64::from(k);
    let rho0 = build_rho(k)?.eval(&Rational::zero()).unwrap_or_else(Rational::zero);
    let sigma0 = build_sigma(k)?.eval(&Rational::zero()).unwrap_or_else(Rational::zero);
    rep.check(format!("rho_{k}(0)"), &rho0, format!("= {}", s * kk * kk), rho0 == Rational::from_integer((s * kk * kk).into()));
    rep.check(format!("sigma_{k}(0)"), &sigma0, format!("= {}", s * kk), sigma0 == Rational::from_integer((s * kk).into()));
    let p = parts.to_ring(&ctx);
    let deg = p.degree().unwrap_or(0);
    rep.check(format!("deg p_{k}"), deg, format!("= {}", k * k - 1), deg == (k * k - 1) as usize);
    let lc = p.leading().cloned().unwrap_or_else(|| AlgebraicElement::zero(&ctx));
    let minus_one = AlgebraicElement::from_int(&ctx, -1);
    rep.check(format!("leading coefficient of p_{k}"), value_string(&lc), "= -1", lc == minus_one);
    Ok(rep)
}

/// Exact `(distinct, with multiplicity)` root counts of `p_k` in `(0, 1)`.
pub fn unit_interval_root_count(k: u32) -> Result<RootCount> {
    count_roots(&build_p(k)?, &OpenInterval::unit())
}

/// Report on the number of roots of `p_k` in `(0, 1)`; holds when there are
/// at most two counting multiplicity.
pub fn check_unit_interval_roots(k: u32) -> Result<PaperCheckReport> {
    let c = unit_interval_root_count(k)?;
    let mut rep = PaperCheckReport::new(
        format!("conjecture-3.10-k{k}"),
        "p_k has at most two real roots in (0,1), counting multiplicity",
        0,
    );
    rep.check(
        format!("roots of p_{k} in (0,1)"),
        format!("distinct {}, with multiplicity {}", c.distinct, c.with_multiplicity),
        "with multiplicity <= 2",
        c.with_multiplicity <= 2,
    );
    rep.info("exactly two (as in the known cases)", c.distinct == 2 && c.with_multiplicity == 2);
    if k >= 5 {
        rep.note("open case: counts are evidence, not a proof for general k");
    }
    Ok(rep)
}

/// Real-root counts of `p_k^(i)` over the real line for `i = 0..deg-1`.
///
/// Roots are counted with multiplicity; for `k = 4` the double root of
/// `p_4^(13)` at `0` contributes 2.
pub fn derivative_root_pattern(k: u32) -> Result<Vec<usize>> {
    let p = build_p(k)?;
    let deg = p.degree().unwrap_or(0);
    (0..deg)
        .into_par_iter()
        .map(|i| count_roots(&p.nth_derivative(i), &OpenInterval::real_line()).map(|c| c.with_multiplicity))
        .collect()
}

/// Distinct real-root counts of `p_k^(i)`, for comparison with
/// [`derivative_root_pattern`].
pub fn derivative_distinct_root_pattern(k: u32) -> Result<Vec<usize>> {
    let p = build_p(k)?;
    let deg = p.degree().unwrap_or(0);
    (0..deg)
        .into_par_iter()
        .map(|i| count_roots(&p.nth_derivative(i), &OpenInterval::real_line()).map(|c| c.distinct))
        .collect()
}

/// Signs of `disc(p_k^(i))` for `i = 0..deg-1`.
pub fn discriminant_sign_pattern(k: u32) -> Result<Vec<Sign>> {
    let p = build_p(k)?;
    let deg = p.degree().unwrap_or(0);
    (0..deg)
        .into_par_iter()
        .map(|i| discriminant(&p.nth_derivative(i)).map(|d| d.sign()))
        .collect()
}

/// `pattern[i] <= pattern[i+1] + 1` for every `i` (Rolle).
pub fn rolle_consistent(pattern: &[usize]) -> bool {
    pattern.windows(2).all(|w| w[0] <= w[1] + 1)
}

/// Real-root counts implied by discriminant signs, working down from the
/// linear derivative of a degree-`degree` polynomial.
///
/// A nonzero discriminant fixes the parity of the number of non-real
/// conjugate pairs, and Rolle bounds each count by one more than the next
/// derivative's. A zero discriminant needs the count from elsewhere, given in
/// `zero_counts[i]`. Returns `None` unless every count is forced.
pub fn pattern_from_discriminants(
    signs: &[Sign],
    degree: usize,
    zero_counts: &[Option<usize>],
) -> Option<Vec<usize>> {
    let n = signs.len();
    let mut out = vec![0usize; n];
    for i in (0..n).rev() {
        let d = degree.checked_sub(i)?;
        if signs[i] == Sign::Zero {
            out[i] = zero_counts.get(i).copied().flatten()?;
            continue;
        }
        let upper = if i + 1 < n { (out[i + 1] + 1).min(d) } else { d };
        let cands: Vec<usize> = (0..=upper)
            .filter(|r| (d - r) % 2 == 0)
            .filter(|r| (((d - r) / 2) % 2 == 0) == (signs[i] == Sign::Positive))
            .collect();
        if cands.len() != 1 {
            return None;
        }
        out[i] = cands[0];
    }
    Some(out)
}

/// Table 2 golden comparison for `k` in `2..=6`.
pub fn check_table2(k: u32) -> Result<PaperCheckReport> {
    let mut rep = PaperCheckReport::new(format!("table-2-k{k}"), "p_k for 2 <= k <= 6, written with alpha = alpha_k", 0);
    let Some(gold) = table2(k) else {
        rep.undecided(format!("p_{k}"), "no reference row", "k in 2..=6");
        return Ok(rep);
    };
    let parts = build_p_parts(k)?;
    let ctx = PhiContext::shared(k)?;
    let diff = &parts.to_ring(&ctx) - &gold.to_ring(&ctx);
    rep.check(format!("p_{k} - reference (ring)"), if diff.is_zero() { "0".to_string() } else { diff.to_string() }, "= 0", diff.is_zero());
    rep.check(format!("p_{k} coefficients (a + b alpha)"), parts.to_string(), "identical to reference", parts == gold);
    Ok(rep)
}

/// Structural facts: degrees of `sigma_k` and `rho_k`, monic `sigma_k`, and
/// `k` nonzero terms of `rho_k` in `y = x^k`.
pub fn check_structure(k: u32) -> Result<PaperCheckReport> {
    check_k(k)?;
    let mut rep = PaperCheckReport::new(format!("corollary-3.8-k{k}"), "deg sigma_k = k^2-1, deg rho_k = k^2-k, rho_k has k terms in y = x^k", 0);
    let sigma = build_sigma(k)?;
    let rho = build_rho(k)?;
    let kk = k as usize;
    rep.check(format!("deg sigma_{k}"), sigma.degree().unwrap_or(0), format!("= {}", kk * kk - 1), sigma.degree() == Some(kk * kk - 1));
    rep.check(format!("deg rho_{k}"), rho.degree().unwrap_or(0), format!("= {}", kk * kk - kk), rho.degree() == Some(kk * kk - kk));
    let lc = sigma.leading().cloned().unwrap_or_else(Rational::zero);
    rep.check(format!("leading coefficient of sigma_{k}"), &lc, "= 1", lc.is_one());
    let n = rho_term_count(k)?;
    rep.check(format!("nonzero terms of rho_{k} in y"), n, format!("= {k}"), n == kk);
    Ok(rep)
}

/// Whether all nonzero coefficients of `sigma_k` but one share a sign.
pub fn check_sigma_one_sign(k: u32) -> Result<PaperCheckReport> {
    let signs = sigma_coefficient_signs(k)?;
    let pos = signs.iter().filter(|s| **s == Sign::Positive).count();
    let neg = signs.len() - pos;
    let mut rep = PaperCheckReport::new(
        format!("remark-sigma-signs-k{k}"),
        "all nonzero coefficients of sigma_k but one have the same sign",
        0,
    );
    rep.check(
        format!("coefficient signs of sigma_{k}"),
        format!("{pos} positive, {neg} negative"),
        "minority sign occurs exactly once",
        pos.min(neg) == 1,
    );
    let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
    rep.info("sign changes (Descartes bound on positive roots)", changes);
    Ok(rep)
}

/// Exact value of `p_k^(i)(x)` as `a + b alpha_k`.
pub fn derivative_value(k: u32, i: usize, x: &Rational) -> Result<(Rational, Rational)> {
    Ok(build_p_parts(k)?.nth_derivative(i).eval(x))
}

pub(crate) fn sign_text(s: Sign) -> &'static str {
    match s {
        Sign::Positive => "+",
        Sign::Negative => "-",
        Sign::Zero => "0",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p0_signs() {
        for k in 2..=6 {
            let r = check_p0_sign(k).unwrap();
            assert!(r.passed(), "{}", r.render_text());
        }
    }

    #[test]
    fn small_unit_interval_counts() {
        for k in 2..=4 {
            let c = unit_interval_root_count(k).unwrap();
            assert_eq!((c.distinct, c.with_multiplicity), (2, 2), "k={k}");
        }
    }

    #[test]
    fn quadratic_family_tower() {
        let pat = derivative_root_pattern(2).unwrap();
        assert_eq!(pat, vec![3, 2, 1]);
        assert!(rolle_consistent(&pat));
        let signs = discriminant_sign_pattern(2).unwrap();
        assert_eq!(signs.last(), Some(&Sign::Positive));
        assert_eq!(pattern_from_discriminants(&signs, 3, &[]), Some(pat));
    }

    #[test]
    fn golden_rows_pass() {
        for k in 2..=6 {
            assert!(check_table2(k).unwrap().passed());
        }
        assert_eq!(check_table2(7).unwrap().status, crate::report::Status::Inconclusive);
    }
}
