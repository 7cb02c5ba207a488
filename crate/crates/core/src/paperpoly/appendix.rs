//! Replication of the explicit derivative computations for `p_4` and `p_3`.

use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::Result;
use crate::numerics::{parse_rational, rat, sign_with_bits, AlgebraicElement, PhiContext, Rational, Sign};
use crate::poly::{count_roots, Bound, OpenInterval, Poly};
use crate::report::PaperCheckReport;

use super::checks::{derivative_root_pattern, discriminant_sign_pattern, pattern_from_discriminants, sign_text, unit_interval_root_count};
use super::construct::{build_p_parts, AlphaPoly};
use super::golden::{parse_alpha_linear, parse_alpha_poly, P3_DERIVATIVES, P4_DERIVATIVES};

/// Real-root counts of `p_4^(i)`, `i = 0..14`.
pub const P4_ROOT_PATTERN: [usize; 15] = [3, 2, 3, 2, 1, 2, 3, 2, 1, 2, 3, 2, 1, 2, 1];

/// Discriminant signs of `p_4^(i)`, `i = 0..14`.
pub const P4_DISCRIMINANT_SIGNS: [Sign; 15] = {
    use Sign::{Negative as N, Positive as P, Zero as Z};
    [P, P, N, N, N, P, N, N, N, P, N, N, N, Z, P]
};

#[derive(Clone, Copy, Debug)]
enum Rel {
    Lt,
    Gt,
}

impl Rel {
    fn holds(self, s: Sign) -> bool {
        match self {
            Rel::Lt => s == Sign::Negative,
            Rel::Gt => s == Sign::Positive,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Rel::Lt => "<",
            Rel::Gt => ">",
        }
    }
}

/// `p_k^(order)(x) = value`, with `value rel bound`.
struct ValueClaim {
    k: u32,
    order: usize,
    x: &'static str,
    value: &'static str,
    rel: Rel,
    bound: &'static str,
}

const fn vc(k: u32, order: usize, x: &'static str, value: &'static str, rel: Rel, bound: &'static str) -> ValueClaim {
    ValueClaim { k, order, x, value, rel, bound }
}

const VALUE_CLAIMS: [ValueClaim; 20] = [
    vc(4, 10, "-0.2", "-2739308544/125-153280512a", Rel::Lt, "0"),
    vc(4, 10, "0", "14515200", Rel::Gt, "0"),
    vc(4, 9, "0", "3628800", Rel::Gt, "0"),
    vc(4, 9, "0.4", "11226491136/625-408748032/5a", Rel::Lt, "0"),
    vc(4, 8, "0", "-19998720a+806400", Rel::Lt, "-6000000"),
    vc(4, 6, "-0.15", "21901848684147/1280000000-2813835591/12500a", Rel::Lt, "0"),
    vc(4, 6, "0", "28800", Rel::Gt, "0"),
    vc(4, 5, "0", "5280", Rel::Gt, "0"),
    vc(4, 5, "0.25", "2528848395/131072-834765/16a", Rel::Lt, "0"),
    vc(4, 4, "0", "-11904a+960", Rel::Lt, "-3565"),
    vc(4, 2, "-0.2", "2882593792/244140625-2342362112/9765625a", Rel::Lt, "0"),
    vc(4, 2, "0", "40", Rel::Gt, "0"),
    vc(4, 1, "0", "10", Rel::Gt, "0"),
    vc(3, 0, "1", "81a-27", Rel::Gt, "0"),
    vc(3, 4, "-0.9", "9/125(36450a-19309)", Rel::Lt, "0"),
    vc(3, 4, "-0.8", "216/125(1200a-551)", Rel::Gt, "0"),
    vc(3, 4, "0", "-72", Rel::Lt, "0"),
    vc(3, 4, "0.5", "810a-57", Rel::Gt, "0"),
    vc(3, 3, "0", "378a-36", Rel::Gt, "100"),
    vc(3, 3, "-0.9", "9/6250(225281-284250a)", Rel::Gt, "133"),
];

/// On `[lo, hi]`, `p^(order)(x) - p^(order)(anchor)` is bounded below (or
/// above) by the explicit number `stated`, which in turn compares with a
/// round threshold; the conclusion is a strict sign of `p^(order)` there.
struct BoundClaim {
    k: u32,
    order: usize,
    lo: &'static str,
    hi: &'static str,
    anchor: &'static str,
    lower: bool,
    stated: fn() -> Rational,
    stated_text: &'static str,
    stated_equals: Option<&'static str>,
    threshold: Threshold,
    conclusion: Sign,
}

enum Threshold {
    /// `stated rel t`.
    Bound(Rel, &'static str),
    /// `p^(order)(anchor) + stated rel t`.
    Value(Rel, &'static str),
}

fn pw(x: Rational, n: i32) -> Rational {
    x.pow(n)
}

fn r(n: i64) -> Rational {
    rat(n, 1)
}

const BOUND_CLAIMS: [BoundClaim; 7] = [
    BoundClaim {
        k: 4,
        order: 9,
        lo: "-0.2",
        hi: "0",
        anchor: "0",
        lower: true,
        stated: || r(14515200) * rat(-1, 5) - r(1816214400) / pw(r(5), 6),
        stated_text: "14515200(-1/5) - 1816214400/5^6",
        stated_equals: None,
        threshold: Threshold::Bound(Rel::Gt, "-3628800"),
        conclusion: Sign::Positive,
    },
    BoundClaim {
        k: 4,
        order: 8,
        lo: "0",
        hi: "0.4",
        anchor: "0",
        lower: false,
        stated: || r(3628800) * rat(2, 5) + r(7257600) * rat(4, 25) + r(33264000) * rat(8, 125),
        stated_text: "3628800(2/5) + 7257600(4/25) + 33264000(8/125)",
        stated_equals: None,
        threshold: Threshold::Bound(Rel::Lt, "5000000"),
        conclusion: Sign::Negative,
    },
    BoundClaim {
        k: 4,
        order: 5,
        lo: "-0.15",
        hi: "0",
        anchor: "0",
        lower: true,
        stated: || {
            let x = rat(-3, 20);
            r(28800) * &x + r(120960) * pw(x.clone(), 5) - r(360360) * pw(x, 10)
        },
        stated_text: "28800(-3/20) + 120960(-3/20)^5 - 360360(-3/20)^10",
        stated_equals: None,
        threshold: Threshold::Bound(Rel::Gt, "-4400"),
        conclusion: Sign::Positive,
    },
    BoundClaim {
        k: 4,
        order: 4,
        lo: "0",
        hi: "0.25",
        anchor: "0",
        lower: false,
        stated: || {
            r(5280) / r(4) + r(14400) / r(16) + r(21000) / r(64) + r(30240) / pw(r(4), 5)
                + r(20160) / pw(r(4), 6)
                + r(39600) / pw(r(4), 7)
        },
        stated_text: "5280/4 + 14400/16 + 21000/64 + 30240/4^5 + 20160/4^6 + 39600/4^7",
        stated_equals: None,
        threshold: Threshold::Bound(Rel::Lt, "2600"),
        conclusion: Sign::Negative,
    },
    BoundClaim {
        k: 4,
        order: 1,
        lo: "-0.2",
        hi: "0",
        anchor: "0",
        lower: true,
        stated: || {
            let x = rat(-1, 5);
            r(40) * &x + r(240) * pw(x.clone(), 5) + r(40) * pw(x.clone(), 9) - r(15) * pw(x, 14)
        },
        stated_text: "40(-1/5) + 240(-1/5)^5 + 40(-1/5)^9 - 15(-1/5)^14",
        stated_equals: None,
        threshold: Threshold::Bound(Rel::Gt, "-9"),
        conclusion: Sign::Positive,
    },
    BoundClaim {
        k: 3,
        order: 3,
        lo: "0",
        hi: "0.5",
        anchor: "0",
        lower: true,
        stated: || -r(72) / r(2) - r(336) / r(32),
        stated_text: "-72/2 - 336/32",
        stated_equals: None,
        threshold: Threshold::Value(Rel::Gt, "50"),
        conclusion: Sign::Positive,
    },
    BoundClaim {
        k: 3,
        order: 3,
        lo: "-0.9",
        hi: "-0.8",
        anchor: "-0.9",
        lower: true,
        stated: || {
            -r(72) * (rat(-8, 10) + rat(9, 10)) + r(120) * (rat(16, 25) - rat(81, 100))
                - r(336) * (rat(-1024, 3125) + rat(59049, 100000))
        },
        stated_text: "-72(-8/10+9/10) + 120(16/25-81/100) - 336(-1024/3125+59049/100000)",
        stated_equals: Some("-724401/6250"),
        threshold: Threshold::Bound(Rel::Gt, "-116"),
        conclusion: Sign::Positive,
    },
];

/// Expected number of distinct roots of `p_k^(order)` in an open interval;
/// `None` endpoints are infinite.
struct Bracket {
    k: u32,
    order: usize,
    lo: Option<&'static str>,
    hi: Option<&'static str>,
    roots: usize,
}

const fn br(k: u32, order: usize, lo: Option<&'static str>, hi: Option<&'static str>, roots: usize) -> Bracket {
    Bracket { k, order, lo, hi, roots }
}

const BRACKETS: [Bracket; 18] = [
    br(4, 10, None, Some("-0.2"), 1),
    br(4, 10, Some("-0.2"), Some("0"), 1),
    br(4, 10, Some("0"), None, 1),
    br(4, 9, None, Some("0"), 1),
    br(4, 9, Some("0"), Some("0.4"), 1),
    br(4, 6, None, Some("-0.2"), 1),
    br(4, 6, Some("-0.15"), Some("0"), 1),
    br(4, 6, Some("0"), None, 1),
    br(4, 5, None, Some("0"), 1),
    br(4, 5, Some("0"), Some("0.25"), 1),
    br(4, 2, None, Some("-0.2"), 1),
    br(4, 2, Some("-0.2"), Some("0"), 1),
    br(4, 2, Some("0"), None, 1),
    br(3, 4, Some("-0.9"), Some("-0.8"), 1),
    br(3, 4, Some("-0.8"), Some("0"), 1),
    br(3, 4, Some("0"), Some("0.5"), 1),
    br(3, 4, Some("0.5"), None, 1),
    br(3, 0, Some("1"), None, 1),
];

fn prefix(k: u32) -> &'static str {
    if k == 4 {
        "appendix-a"
    } else {
        "proposition-3.12"
    }
}

fn q(s: &str) -> Rational {
    parse_rational(s).expect("embedded rational parses")
}

fn lin_string(v: &(Rational, Rational)) -> String {
    let (a, b) = v;
    if b.is_zero() {
        a.to_string()
    } else if a.is_zero() {
        format!("{b}a")
    } else if *b < Rational::zero() {
        format!("{a}-{}a", -b)
    } else {
        format!("{a}+{b}a")
    }
}

struct Ctx {
    parts: AlphaPoly,
    ring: Arc<PhiContext>,
}

impl Ctx {
    fn new(k: u32) -> Result<Ctx> {
        Ok(Ctx { parts: build_p_parts(k)?, ring: PhiContext::shared(k)? })
    }

    fn elem(&self, v: &(Rational, Rational)) -> AlgebraicElement {
        AlgebraicElement::linear(&self.ring, &v.0, &v.1)
    }

    fn deriv(&self, order: usize) -> Poly<AlgebraicElement> {
        self.parts.nth_derivative(order).to_ring(&self.ring)
    }
}

fn derivative_report(ctx: &Ctx, k: u32, order: usize, text: &str) -> Result<PaperCheckReport> {
    let mut rep = PaperCheckReport::new(format!("{}-p{k}-d{order}", prefix(k)), format!("p_{k}^({order})(x) = {text}"), 0);
    let gold = parse_alpha_poly(text)?;
    let ours = ctx.parts.nth_derivative(order);
    let same = ours == gold;
    let diff = &ctx.deriv(order) - &gold.to_ring(&ctx.ring);
    let value = if same {
        "identical".to_string()
    } else {
        let first = (0..=ours.degree().max(gold.degree()).unwrap_or(0)).find(|&i| ours.coeff(i) != gold.coeff(i));
        format!("differs at x^{}: computed {ours}", first.unwrap_or(0))
    };
    rep.check(format!("d^{order}/dx^{order} p_{k} vs reference"), value, "exact equality", same && diff.is_zero());
    Ok(rep)
}

fn value_report(ctx: &Ctx, c: &ValueClaim) -> Result<PaperCheckReport> {
    let x = q(c.x);
    let mut rep = PaperCheckReport::new(
        format!("{}-p{}-d{}-at{}", prefix(c.k), c.k, c.order, c.x),
        format!("p_{}^({})({}) = {} {} {}", c.k, c.order, c.x, c.value, c.rel.symbol(), c.bound),
        0,
    );
    let got = ctx.parts.nth_derivative(c.order).eval(&x);
    let stated = parse_alpha_linear(c.value)?;
    rep.check(format!("p_{}^({})({})", c.k, c.order, c.x), lin_string(&got), format!("= {}", c.value), got == stated);
    let e = ctx.elem(&got);
    let diff = &e - &AlgebraicElement::from_rational(&ctx.ring, &q(c.bound));
    let (s, bits) = sign_with_bits(&diff);
    rep.precision_bits = bits;
    rep.check(
        format!("p_{}^({})({}) - ({})", c.k, c.order, c.x, c.bound),
        format!("sign {} (value ~ {:.6e})", sign_text(s), e.to_f64()),
        format!("{} 0", c.rel.symbol()),
        c.rel.holds(s),
    );
    Ok(rep)
}

/// Sign facts about `p` on the closed interval `[lo, hi]`: no interior roots
/// and the given endpoint signs.
fn sign_on_closed(p: &Poly<AlgebraicElement>, lo: &Rational, hi: &Rational) -> Result<(usize, Sign, Sign, Sign)> {
    let inner = count_roots(p, &OpenInterval::finite(lo.clone(), hi.clone())?)?.distinct;
    let mid = (lo + hi) / rat(2, 1);
    Ok((inner, p.eval_sign(lo), p.eval_sign(&mid), p.eval_sign(hi)))
}

fn bound_report(ctx: &Ctx, c: &BoundClaim) -> Result<PaperCheckReport> {
    let (lo, hi, anchor) = (q(c.lo), q(c.hi), q(c.anchor));
    let stated = (c.stated)();
    let dir = if c.lower { ">=" } else { "<=" };
    let mut rep = PaperCheckReport::new(
        format!("{}-p{}-d{}-bound-at{}", prefix(c.k), c.k, c.order, c.anchor),
        format!(
            "p_{k}^({o})(x) - p_{k}^({o})({a}) {dir} {t} on [{lo}, {hi}]",
            k = c.k,
            o = c.order,
            a = c.anchor,
            t = c.stated_text,
            lo = c.lo,
            hi = c.hi
        ),
        0,
    );
    if let Some(eq) = c.stated_equals {
        rep.check(c.stated_text, &stated, format!("= {eq}"), stated == q(eq));
    }
    match c.threshold {
        Threshold::Bound(rel, t) => {
            let s = crate::numerics::Sign::from_ordering(stated.cmp(&q(t)));
            rep.check(c.stated_text, &stated, format!("{} {t}", rel.symbol()), rel.holds(s));
        }
        Threshold::Value(rel, t) => {
            let base = ctx.parts.nth_derivative(c.order).eval(&anchor);
            let v = (&base.0 + &stated - q(t), base.1.clone());
            let s = ctx.elem(&v).sign();
            rep.check(
                format!("p_{}^({})({}) + {}", c.k, c.order, c.anchor, c.stated_text),
                format!("{} + {}", lin_string(&base), stated),
                format!("{} {t}", rel.symbol()),
                rel.holds(s),
            );
        }
    }
    // The bound itself, certified: g(x) = p(x) - p(anchor) - stated keeps one sign.
    let d = ctx.deriv(c.order);
    let at_anchor = d.eval(&anchor).expect("nonzero polynomial");
    let shift = &at_anchor + &AlgebraicElement::from_rational(&ctx.ring, &stated);
    let g = &d - &Poly::constant(shift);
    let want = if c.lower { Sign::Positive } else { Sign::Negative };
    let (n, sl, sm, sh) = sign_on_closed(&g, &lo, &hi)?;
    let ok_end = |s: Sign| s == want || s == Sign::Zero;
    rep.check(
        format!("p_{k}^({o})(x) - p_{k}^({o})({a}) - ({t}) on [{lo}, {hi}]", k = c.k, o = c.order, a = c.anchor, t = c.stated_text, lo = c.lo, hi = c.hi),
        format!("{n} interior roots; signs {} {} {}", sign_text(sl), sign_text(sm), sign_text(sh)),
        format!("{dir} 0 throughout"),
        n == 0 && sm == want && ok_end(sl) && ok_end(sh),
    );
    let (n, sl, sm, sh) = sign_on_closed(&d, &lo, &hi)?;
    let c_sym = if c.conclusion == Sign::Positive { "> 0" } else { "< 0" };
    rep.check(
        format!("p_{}^({}) on [{}, {}]", c.k, c.order, c.lo, c.hi),
        format!("{n} interior roots; signs {} {} {}", sign_text(sl), sign_text(sm), sign_text(sh)),
        c_sym,
        n == 0 && [sl, sm, sh].iter().all(|s| *s == c.conclusion),
    );
    Ok(rep)
}

fn bound_of(s: Option<&str>, neg: bool) -> Bound {
    match s {
        Some(v) => Bound::At(q(v)),
        None if neg => Bound::NegInf,
        None => Bound::PosInf,
    }
}

fn bracket_report(ctx: &Ctx, b: &Bracket) -> Result<PaperCheckReport> {
    let iv = OpenInterval::new(bound_of(b.lo, true), bound_of(b.hi, false))?;
    let mut rep = PaperCheckReport::new(
        format!("{}-p{}-d{}-roots-in({},{})", prefix(b.k), b.k, b.order, b.lo.unwrap_or("-inf"), b.hi.unwrap_or("inf")),
        format!("p_{}^({}) has {} root(s) in {iv}", b.k, b.order, b.roots),
        0,
    );
    let c = count_roots(&ctx.deriv(b.order), &iv)?;
    rep.check(format!("distinct roots of p_{}^({}) in {iv}", b.k, b.order), c.distinct, format!("= {}", b.roots), c.distinct == b.roots);
    Ok(rep)
}

fn p3_extra(ctx: &Ctx) -> Result<Vec<PaperCheckReport>> {
    let mut out = Vec::new();
    let mut rep = PaperCheckReport::new("proposition-3.12-p3-d3-one-root", "p_3^(3) has exactly one real root, and it is simple", 0);
    let c = count_roots(&ctx.deriv(3), &OpenInterval::real_line())?;
    rep.check("real roots of p_3^(3)", format!("distinct {}, with multiplicity {}", c.distinct, c.with_multiplicity), "= (1, 1)", c.distinct == 1 && c.with_multiplicity == 1);
    out.push(rep);
    let mut rep = PaperCheckReport::new("proposition-3.12-p3-d4-four-roots", "p_3^(4) has exactly four real roots, all simple", 0);
    let c = count_roots(&ctx.deriv(4), &OpenInterval::real_line())?;
    rep.check("real roots of p_3^(4)", format!("distinct {}, with multiplicity {}", c.distinct, c.with_multiplicity), "= (4, 4)", c.distinct == 4 && c.with_multiplicity == 4);
    out.push(rep);
    let mut rep = PaperCheckReport::new("proposition-3.12-p3-unit-roots", "p_3 has at most two real roots in (0,1), counting multiplicity", 0);
    let c = unit_interval_root_count(3)?;
    rep.check("roots of p_3 in (0,1)", format!("distinct {}, with multiplicity {}", c.distinct, c.with_multiplicity), "with multiplicity <= 2", c.with_multiplicity <= 2);
    let neg = count_roots(&ctx.deriv(0), &OpenInterval::new(Bound::NegInf, Bound::At(Rational::zero()))?)?;
    rep.check("roots of p_3 in (-inf, 0)", neg.distinct, ">= 1", neg.distinct >= 1);
    out.push(rep);
    Ok(out)
}

fn p4_tail(ctx: &Ctx) -> Result<PaperCheckReport> {
    let mut rep = PaperCheckReport::new("appendix-a-p4-d13-double-root", "p_4^(13) has a double root at 0; p_4^(14) is linear", 0);
    let zero = Rational::zero();
    let d13 = ctx.deriv(13);
    let d14 = ctx.deriv(14);
    rep.check("p_4^(13)(0)", d13.eval_sign(&zero).as_i32(), "= 0", d13.eval_sign(&zero) == Sign::Zero);
    rep.check("p_4^(14)(0)", d14.eval_sign(&zero).as_i32(), "= 0", d14.eval_sign(&zero) == Sign::Zero);
    rep.check("deg p_4^(13)", d13.degree().unwrap_or(0), "= 2", d13.degree() == Some(2));
    rep.check("deg p_4^(14)", d14.degree().unwrap_or(0), "= 1", d14.degree() == Some(1));
    Ok(rep)
}

/// Root-pattern report for `p_4`, with the discriminant route alongside.
pub fn check_p4_patterns() -> Result<Vec<PaperCheckReport>> {
    let pattern = derivative_root_pattern(4)?;
    let signs = discriminant_sign_pattern(4)?;
    let mut rp = PaperCheckReport::new(
        "appendix-a-root-pattern",
        "real-root counts of p_4^(i), i = 0..14, are (3,2,3,2,1,2,3,2,1,2,3,2,1,2,1)",
        0,
    );
    let fmt = |v: &[usize]| format!("({})", v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(","));
    rp.check("real roots of p_4^(i), with multiplicity", fmt(&pattern), fmt(&P4_ROOT_PATTERN), pattern == P4_ROOT_PATTERN);
    rp.check("Rolle consistency", super::checks::rolle_consistent(&pattern), "pattern[i] <= pattern[i+1] + 1", super::checks::rolle_consistent(&pattern));
    let mut ds = PaperCheckReport::new(
        "proposition-3.13-discriminant-signs",
        "signs of disc(p_4^(i)), i = 0..14, are (+,+,-,-,-,+,-,-,-,+,-,-,-,0,+)",
        0,
    );
    let sfmt = |v: &[Sign]| format!("({})", v.iter().map(|s| sign_text(*s)).collect::<Vec<_>>().join(","));
    ds.check("sign disc(p_4^(i))", sfmt(&signs), sfmt(&P4_DISCRIMINANT_SIGNS), signs == P4_DISCRIMINANT_SIGNS);
    let mut zero_counts = vec![None; signs.len()];
    zero_counts[13] = Some(2);
    let derived = pattern_from_discriminants(&signs, 15, &zero_counts);
    ds.check(
        "root counts forced by the discriminant signs",
        derived.as_deref().map_or("not forced".to_string(), fmt),
        fmt(&P4_ROOT_PATTERN),
        derived.as_deref() == Some(&P4_ROOT_PATTERN[..]),
    );
    Ok(vec![rp, ds])
}

/// Every individual check, in a fixed order.
pub fn appendix_a_reports() -> Result<Vec<PaperCheckReport>> {
    let c4 = Ctx::new(4)?;
    let c3 = Ctx::new(3)?;
    let ctx = |k: u32| if k == 4 { &c4 } else { &c3 };
    let mut out: Vec<PaperCheckReport> = P4_DERIVATIVES
        .par_iter()
        .map(|(o, s)| derivative_report(&c4, 4, *o, s))
        .chain(P3_DERIVATIVES.par_iter().map(|(o, s)| derivative_report(&c3, 3, *o, s)))
        .collect::<Result<_>>()?;
    let values: Vec<_> = VALUE_CLAIMS.par_iter().map(|c| value_report(ctx(c.k), c)).collect::<Result<_>>()?;
    out.extend(values);
    let bounds: Vec<_> = BOUND_CLAIMS.par_iter().map(|c| bound_report(ctx(c.k), c)).collect::<Result<_>>()?;
    out.extend(bounds);
    let brackets: Vec<_> = BRACKETS.par_iter().map(|b| bracket_report(ctx(b.k), b)).collect::<Result<_>>()?;
    out.extend(brackets);
    out.push(p4_tail(&c4)?);
    out.extend(p3_extra(&c3)?);
    out.extend(check_p4_patterns()?);
    Ok(out)
}

/// All checks folded into one report.
pub fn verify_appendix_a() -> Result<PaperCheckReport> {
    let parts = appendix_a_reports()?;
    let mut rep = PaperCheckReport::new(
        "appendix-a",
        "derivatives, sign evaluations and root pattern of p_4 (and p_3)",
        0,
    );
    for p in &parts {
        rep.absorb(&format!("[{}] ", p.claim_id), p);
        rep.precision_bits = rep.precision_bits.max(p.precision_bits);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_appendix_passes() {
        let reps = appendix_a_reports().unwrap();
        for r in &reps {
            assert!(r.passed(), "{}", r.render_text());
        }
        assert!(verify_appendix_a().unwrap().passed());
    }
}
