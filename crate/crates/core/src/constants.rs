//! `phi_k`, `psi_k`, `alpha_k`, `mu_k`, `z_k` as certified enclosures, the
//! frequency bound `z_k - delta`, and the facts relating them.

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::numerics::{rat, Rational};
use crate::real::{Dyadic, Enclosure, Real};
use crate::report::{PaperCheckReport, SCHEMA_VERSION};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 128;

/// Largest `k` accepted by the constant routines.
pub const MAX_K: u64 = 1 << 24;

fn check_k(k: u64) -> Result<()> {
    if !(2..=MAX_K).contains(&k) {
        return Err(invalid(format!("k must lie in 2..={MAX_K}, got {k}")));
    }
    Ok(())
}

fn check_prec(prec: u32) -> Result<()> {
    if !(24..=4096).contains(&prec) {
        return Err(invalid(format!("precision must lie in 24..=4096 bits, got {prec}")));
    }
    Ok(())
}

/// Bits needed for an absolute tolerance such as `1e-6`, with guard bits.
pub fn bits_for_tolerance(tol: f64) -> Result<u32> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(invalid(format!("tolerance must lie in (0,1), got {tol}")));
    }
    Ok(((-tol.log2()).ceil() as u32 + 32).max(64))
}

fn point(d: Dyadic, prec: u32) -> Real {
    Real::exact(d, prec)
}

/// Root of an increasing function near `guess`, as a certified enclosure.
///
/// Newton steps on exact midpoints give a candidate; the enclosure is then
/// certified by interval evaluation of `f` at both endpoints.
fn increasing_root(f: impl Fn(&Real) -> Real, df: impl Fn(&Real) -> Real, guess: f64, prec: u32) -> Result<Real> {
    let mut x = Real::from_f64(guess, prec);
    let steps = (prec as f64 / 40.0).log2().ceil().max(0.0) as usize + 2;
    for _ in 0..steps {
        let fx = f(&x).midpoint();
        let d = df(&x).midpoint();
        if d.lo_cmp(0.0) != std::cmp::Ordering::Greater {
            break;
        }
        x = x.sub(&fx.div(&d)).midpoint();
    }
    let c = x.lo().clone();
    let mut w = Dyadic::new(1.into(), -(i64::from(prec) - 8));
    for _ in 0..40 {
        let lo = point(c.sub(&w), prec);
        let hi = point(c.add(&w), prec);
        if f(&lo).is_negative() && f(&hi).is_positive() {
            return Ok(Real::new(lo.lo().clone(), hi.hi().clone(), prec));
        }
        w = w.mul_pow2(4);
    }
    Err(crate::error::Error::Uncertified(format!("root near {guess} could not be bracketed at {prec} bits")))
}

fn phi_guess(k: u64) -> f64 {
    let (mut lo, mut hi) = (0.5f64, 1.0f64);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let v = if k > i32::MAX as u64 { mid.powf(k as f64) } else { mid.powi(k as i32) };
        if v + mid - 1.0 > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

fn powu(x: &Real, n: u64) -> Real {
    if n <= u32::MAX as u64 {
        return x.powi(n as u32);
    }
    let mut acc = x.constant(1.0);
    let mut base = x.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    acc
}

/// `phi_k`, the root of `x^k + x - 1` in `(1/2, 1)`.
pub fn phi(k: u64, prec: u32) -> Result<Real> {
    check_k(k)?;
    check_prec(prec)?;
    let kf = Real::from_int(k as i64, prec);
    increasing_root(
        |x| powu(x, k).add(x).sub(&x.constant(1.0)),
        |x| kf.mul(&powu(x, k - 1)).add(&x.constant(1.0)),
        phi_guess(k),
        prec,
    )
}

/// `psi_k = 1 - phi_k`.
pub fn psi(k: u64, prec: u32) -> Result<Real> {
    let p = phi(k, prec)?;
    Ok(p.constant(1.0).sub(&p))
}

/// `alpha_k`, the intersection of `phi^(k-1)` and `1/phi - 1`.
pub fn alpha_from_phi(k: u64, phi: &Real) -> Result<Real> {
    let a = powu(phi, k - 1);
    let b = phi.recip().sub(&phi.constant(1.0));
    a.intersect(&b)
        .ok_or_else(|| crate::error::Error::Uncertified("the two forms of alpha_k do not overlap".into()))
}

pub fn alpha(k: u64, prec: u32) -> Result<Real> {
    alpha_from_phi(k, &phi(k, prec)?)
}

/// `floor(log2 k)` and `k - 2^p`.
pub fn mu_split(k: u64) -> (u32, u64) {
    let p = 63 - k.leading_zeros();
    (p, k - (1u64 << p))
}

/// `mu_k`: `1/alpha_k` for `k <= 4`, otherwise
/// `(2^p - q)/(2^p phi^p) + q/(2^p phi^(p+1))` with `phi = phi_2`.
pub fn mu(k: u64, prec: u32) -> Result<Real> {
    check_k(k)?;
    if k <= 4 {
        return Ok(alpha(k, prec)?.recip());
    }
    mu_formula(k, prec)
}

/// The `p, q` formula for any `k >= 2`, without the small-`k` override.
pub fn mu_formula(k: u64, prec: u32) -> Result<Real> {
    check_k(k)?;
    let g = phi(2, prec)?;
    let (p, q) = mu_split(k);
    let two_p = Real::from_rational(&Rational::from_integer(num_bigint::BigInt::one() << p), prec);
    let a = Real::from_int(((1u64 << p) - q) as i64, prec);
    let gp = g.powi(p);
    let first = a.div(&two_p.mul(&gp));
    let second = Real::from_int(q as i64, prec).div(&two_p.mul(&gp.mul(&g)));
    Ok(first.add(&second))
}

/// `y^(n)` root: the enclosure of `x^(1/n)` for positive `x`.
fn nth_root(x: &Real, n: u64, prec: u32) -> Result<Real> {
    if !x.is_positive() {
        return Err(invalid("nth root of a non-positive enclosure"));
    }
    if n == 1 {
        return Ok(x.clone());
    }
    let guess = x.mid_f64().powf(1.0 / n as f64);
    let nf = Real::from_int(n as i64, prec);
    increasing_root(|y| powu(y, n).sub(x), |y| nf.mul(&powu(y, n - 1)), guess, prec)
}

/// `z_k = 1 - mu_k^(1/(1-k))`.
pub fn z(k: u64, prec: u32) -> Result<Real> {
    z_from_mu(k, &mu(k, prec)?, prec)
}

fn z_from_mu(k: u64, mu: &Real, prec: u32) -> Result<Real> {
    let root = nth_root(mu, k - 1, prec)?;
    Ok(root.constant(1.0).sub(&root.recip()))
}

fn dec(x: &Real) -> String {
    let digits = ((x.prec() as f64) * std::f64::consts::LOG10_2).floor() as usize;
    x.mid_decimal(digits.clamp(4, 40))
}

/// One row of the constants table.
#[derive(Clone, Debug)]
pub struct ConstantsRow {
    pub k: u64,
    pub phi: Real,
    pub psi: Real,
    pub z: Real,
    pub alpha: Real,
    pub mu: Real,
}

#[derive(Serialize)]
struct RowJson<'a> {
    schema_version: &'a str,
    kind: &'a str,
    k: String,
    phi: String,
    psi: String,
    z: String,
    alpha: String,
    mu: String,
    #[serde(serialize_with = "crate::report::as_string")]
    precision_bits: u32,
}

impl ConstantsRow {
    pub fn compute(k: u64, prec: u32) -> Result<ConstantsRow> {
        let phi = phi(k, prec)?;
        let psi = phi.constant(1.0).sub(&phi);
        let alpha = alpha_from_phi(k, &phi)?;
        let mu = if k <= 4 { alpha.recip() } else { mu_formula(k, prec)? };
        let z = z_from_mu(k, &mu, prec)?;
        Ok(ConstantsRow { k, phi, psi, z, alpha, mu })
    }

    pub fn precision_bits(&self) -> u32 {
        self.phi.prec()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(RowJson {
            schema_version: SCHEMA_VERSION,
            kind: "constants_row",
            k: self.k.to_string(),
            phi: dec(&self.phi),
            psi: dec(&self.psi),
            z: dec(&self.z),
            alpha: dec(&self.alpha),
            mu: dec(&self.mu),
            precision_bits: self.precision_bits(),
        })
        .expect("serializable row")
    }

    pub const CSV_HEADER: &'static str = "k,phi,psi,z,alpha,mu";

    pub fn to_csv(&self, digits: usize) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.k,
            self.phi.mid_decimal(digits),
            self.psi.mid_decimal(digits),
            self.z.mid_decimal(digits),
            self.alpha.mid_decimal(digits),
            self.mu.mid_decimal(digits)
        )
    }

    pub fn to_text(&self, digits: usize) -> String {
        format!(
            "{:>6}  {}  {}  {}  {}  {}",
            self.k,
            self.phi.mid_decimal(digits),
            self.psi.mid_decimal(digits),
            self.z.mid_decimal(digits),
            self.alpha.mid_decimal(digits),
            self.mu.mid_decimal(digits)
        )
    }
}

/// Rows for each `k`, in the given order.
pub fn table1(kset: &[u64], prec: u32) -> Result<Vec<ConstantsRow>> {
    kset.par_iter().map(|&k| ConstantsRow::compute(k, prec)).collect()
}

/// The published four-digit values `(k, phi, psi, z, alpha)`.
pub const TABLE1: [(u64, f64, f64, f64, f64); 8] = [
    (2, 0.6180, 0.3819, 0.3819, 0.6180),
    (3, 0.6823, 0.3176, 0.3176, 0.4655),
    (4, 0.7244, 0.2755, 0.2755, 0.3802),
    (5, 0.7548, 0.2451, 0.2416, 0.3247),
    (6, 0.7780, 0.2219, 0.2183, 0.2851),
    (7, 0.7965, 0.2034, 0.2006, 0.2554),
    (8, 0.8116, 0.1883, 0.1863, 0.2319),
    (16, 0.8771, 0.1228, 0.1204, 0.1400),
];

/// Agreement required with the published four-digit values.
pub const TABLE1_TOLERANCE: f64 = 1e-4;

/// Compare computed rows against [`TABLE1`]; rows without a published entry
/// are listed as info.
pub fn check_table1(rows: &[ConstantsRow]) -> PaperCheckReport {
    let prec = rows.iter().map(|r| r.precision_bits()).min().unwrap_or(DEFAULT_PRECISION);
    let mut rep = PaperCheckReport::new("table-1", "phi_k, psi_k, z_k, alpha_k listed with precision 1e-4", prec);
    for r in rows {
        let Some(&(_, p, s, zz, a)) = TABLE1.iter().find(|t| t.0 == r.k) else {
            rep.info(format!("k = {}", r.k), "no published row");
            continue;
        };
        for (name, x, want) in [("phi", &r.phi, p), ("psi", &r.psi, s), ("z", &r.z, zz), ("alpha", &r.alpha, a)] {
            let err = (x.mid_f64() - want).abs() + x.width().to_f64();
            rep.check(
                format!("|{name}_{} - {want:.4}|", r.k),
                format!("{err:.3e}"),
                format!("<= {TABLE1_TOLERANCE:e}"),
                err <= TABLE1_TOLERANCE,
            );
        }
    }
    rep
}

fn lt(a: &Real, b: &Real) -> bool {
    a.hi() < b.lo()
}

fn ln_real(k: u64, prec: u32) -> Real {
    Real::from_int(k as i64, prec).ln()
}

/// `ln(1/phi_2) / ln 2`.
pub fn ratio_limit(prec: u32) -> Result<Real> {
    let g = phi(2, prec)?;
    Ok(g.recip().ln().div(&Real::ln2(prec)))
}

struct KFacts {
    k: u64,
    z: Real,
    psi: Real,
    z_gt_log: bool,
    ratio_gt_half: bool,
    ratio_le_one: bool,
    psi_bracket: bool,
    invariants: bool,
    ratio: f64,
}

fn k_facts(k: u64, prec: u32) -> Result<KFacts> {
    let row = ConstantsRow::compute(k, prec)?;
    let kr = Real::from_int(k as i64, prec);
    let lnk = ln_real(k, prec);
    let one = kr.constant(1.0);
    let z_gt_log = lt(&lnk.div(&kr.mul(&kr.constant(3.0))), &row.z);
    let ratio_gt_half = lt(&row.psi.mul(&one.constant(0.5)), &row.z);
    // z = psi for k <= 4: equal up to the enclosure widths; otherwise strict.
    let ratio_le_one = if k <= 4 { row.z.overlaps(&row.psi) } else { !lt(&row.psi, &row.z) };
    let psi_bracket = k < 3 || (!lt(&row.psi, &lnk.mul(&one.constant(2.0)).div(&kr.mul(&one.constant(3.0)))) && lt(&row.psi, &lnk.div(&kr)));
    let f_phi = powu(&row.phi, k).add(&row.phi).sub(&one);
    let f_psi = powu(&one.sub(&row.psi), k).sub(&row.psi);
    let below = lt(&row.phi, &Real::from_rational(&rat(k as i64, k as i64 + 1), prec));
    let invariants = f_phi.contains_zero() && f_psi.contains_zero() && below;
    let ratio = row.z.mid_f64() / row.psi.mid_f64();
    Ok(KFacts { k, z: row.z, psi: row.psi, z_gt_log, ratio_gt_half, ratio_le_one, psi_bracket, invariants, ratio })
}

fn summarize(rep: &mut PaperCheckReport, what: &str, facts: &[KFacts], pred: impl Fn(&KFacts) -> bool) {
    let bad: Vec<u64> = facts.iter().filter(|f| !pred(f)).map(|f| f.k).collect();
    let lo = facts.first().map_or(0, |f| f.k);
    let hi = facts.last().map_or(0, |f| f.k);
    let value = if bad.is_empty() {
        format!("holds for all {} values of k", facts.len())
    } else {
        let shown: Vec<String> = bad.iter().take(10).map(|k| k.to_string()).collect();
        format!("fails for {} values of k: {}", bad.len(), shown.join(", "))
    };
    rep.check(format!("{what}, k = {lo}..{hi}"), value, "for every k", bad.is_empty());
}

/// `z_k > ln k/(3k)`, `1/2 < z_k/psi_k <= 1` for `k <= kmax`, the bracket on
/// `psi_k`, and the ratio at `k = 2^20` against its limit.
pub fn verify_prop_zk(kmax: u64) -> Result<PaperCheckReport> {
    verify_prop_zk_with(kmax, 1 << 20, DEFAULT_PRECISION)
}

pub fn verify_prop_zk_with(kmax: u64, k_limit: u64, prec: u32) -> Result<PaperCheckReport> {
    if kmax < 2 {
        return Err(invalid("kmax must be at least 2"));
    }
    check_k(kmax)?;
    let facts: Vec<KFacts> = (2..=kmax).into_par_iter().map(|k| k_facts(k, prec)).collect::<Result<_>>()?;
    let mut rep = PaperCheckReport::new(
        "proposition-5.1",
        "z_k = psi_k for k <= 4; z_k > ln k/(3k); 1/2 < z_k/psi_k <= 1; z_k/psi_k -> ln(1/phi)/ln 2",
        prec,
    );
    summarize(&mut rep, "z_k > ln k/(3k)", &facts, |f| f.z_gt_log);
    summarize(&mut rep, "z_k/psi_k > 1/2", &facts, |f| f.ratio_gt_half);
    summarize(&mut rep, "z_k/psi_k <= 1 (equality for k <= 4)", &facts, |f| f.ratio_le_one);
    summarize(&mut rep, "2 ln k/(3k) <= psi_k < ln k/k (k >= 3)", &facts, |f| f.psi_bracket);
    summarize(&mut rep, "phi_k^k + phi_k - 1 and (1-psi_k)^k - psi_k enclose 0; phi_k < k/(k+1)", &facts, |f| f.invariants);
    for f in facts.iter().filter(|f| f.k <= 4) {
        rep.info(format!("z_{} vs psi_{}", f.k, f.k), format!("{} / {}", dec(&f.z), dec(&f.psi)));
    }
    let min = facts.iter().map(|f| f.ratio).fold(f64::INFINITY, f64::min);
    rep.info("min z_k/psi_k over the range", format!("{min:.6}"));
    if let Some(f16) = facts.iter().find(|f| f.k == 16) {
        rep.info("z_16/psi_16", format!("{:.6}", f16.ratio));
    }
    let limit = ratio_limit(prec)?;
    rep.info("ln(1/phi)/ln 2", dec(&limit));
    if k_limit >= 2 {
        let zl = z(k_limit, prec)?;
        let pl = psi(k_limit, prec)?;
        let ratio = zl.div(&pl);
        let gap = (ratio.mid_f64() - limit.mid_f64()).abs();
        rep.check(
            format!("z_k/psi_k at k = {k_limit}"),
            format!("{:.6} (distance to limit {gap:.4})", ratio.mid_f64()),
            "within 0.02 of ln(1/phi)/ln 2",
            gap <= 0.02,
        );
    }
    Ok(rep)
}

/// `mu_(k-1)/mu_k > (k-1)/k` for `3 <= k <= kmax`, and `mu_k` nondecreasing.
pub fn verify_lemma_mu(kmax: u64) -> Result<PaperCheckReport> {
    verify_lemma_mu_with(kmax, DEFAULT_PRECISION)
}

pub fn verify_lemma_mu_with(kmax: u64, prec: u32) -> Result<PaperCheckReport> {
    if kmax < 3 {
        return Err(invalid("kmax must be at least 3"));
    }
    check_k(kmax)?;
    let mus: Vec<Real> = (2..=kmax).into_par_iter().map(|k| mu(k, prec)).collect::<Result<_>>()?;
    let mut rep = PaperCheckReport::new("lemma-4.3", "mu_(k-m)/(k-m) > mu_k/k, via mu_(k-1)/mu_k > (k-1)/k", prec);
    let mut bad = Vec::new();
    let mut nondecreasing = Vec::new();
    for k in 3..=kmax {
        let a = &mus[(k - 3) as usize];
        let b = &mus[(k - 2) as usize];
        let kr = Real::from_int(k as i64, prec);
        let diff = a.mul(&kr).sub(&b.mul(&kr.sub(&kr.constant(1.0))));
        if !diff.is_positive() {
            bad.push(k);
        }
        if lt(b, a) {
            nondecreasing.push(k);
        }
    }
    let list = |v: &[u64]| v.iter().take(10).map(|k| k.to_string()).collect::<Vec<_>>().join(", ");
    rep.check(
        format!("mu_(k-1)/mu_k > (k-1)/k, k = 3..{kmax}"),
        if bad.is_empty() { "holds for every k".into() } else { format!("fails for {}", list(&bad)) },
        "for every k",
        bad.is_empty(),
    );
    rep.check(
        format!("mu_k nondecreasing, k = 2..{kmax}"),
        if nondecreasing.is_empty() { "holds".into() } else { format!("decreases at {}", list(&nondecreasing)) },
        "for every k",
        nondecreasing.is_empty(),
    );
    let ratio = |i: u64, j: u64| -> Option<f64> {
        if j > kmax {
            return None;
        }
        Some(mus[(i - 2) as usize].mid_f64() / mus[(j - 2) as usize].mid_f64())
    };
    for (i, j) in [(2, 3), (3, 4), (4, 5)] {
        if let Some(r) = ratio(i, j) {
            rep.info(format!("mu_{i}/mu_{j}"), format!("{r:.6}"));
        }
    }
    if kmax >= 5 {
        let m3 = mu_formula(3, prec)?;
        let a3 = alpha(3, prec)?.recip();
        rep.check("p,q formula at k = 3 vs 1/alpha_3", format!("{:.6} < {:.6}", m3.mid_f64(), a3.mid_f64()), "<", lt(&m3, &a3));
    }
    let g = phi(2, prec)?;
    let mut p = 3u32;
    while (1u64 << p) <= kmax && p <= 20 {
        let k = 1u64 << p;
        let half = Real::from_int((k / 2) as i64, prec);
        let closed = g.add(&half).sub(&half.constant(1.0)).div(&half);
        let computed = mus[(k - 3) as usize].div(&mus[(k - 2) as usize]);
        rep.check(
            format!("mu_{}/mu_{k} = (phi + k/2 - 1)/(k/2)", k - 1),
            format!("{:.8}", computed.mid_f64()),
            "enclosures overlap",
            computed.overlaps(&closed),
        );
        p += 1;
    }
    Ok(rep)
}

/// Input of [`frequency_bound`].
#[derive(Clone, Debug)]
pub struct BoundQuery {
    pub k: u64,
    pub eps: Rational,
    pub family_size: BigUint,
}

impl BoundQuery {
    pub fn new(k: u64, eps: Rational, family_size: BigUint) -> Result<BoundQuery> {
        check_k(k)?;
        if eps.is_negative() || eps >= rat(1, 2) {
            return Err(invalid(format!("eps must lie in [0, 1/2), got {eps}")));
        }
        if family_size < BigUint::from(2u32) {
            return Err(invalid("family size must be at least 2"));
        }
        Ok(BoundQuery { k, eps, family_size })
    }
}

/// Result of [`frequency_bound`].
#[derive(Clone, Debug)]
pub struct FrequencyBound {
    pub delta: Real,
    /// `z_k` (equal to `psi_k` for `k <= 4`).
    pub constant: Real,
    pub constant_name: &'static str,
    /// `max(constant - delta, 0)`.
    pub guaranteed_fraction: Real,
    /// Set when `delta >= constant` could not be ruled out.
    pub clamped: bool,
}

/// `delta = (k eps + 2 eps ln(1/eps) / ln|F|)^(1/(k-1))` and the guaranteed
/// element frequency `z_k - delta`.
pub fn frequency_bound(q: &BoundQuery) -> Result<FrequencyBound> {
    frequency_bound_with(q, DEFAULT_PRECISION)
}

pub fn frequency_bound_with(q: &BoundQuery, prec: u32) -> Result<FrequencyBound> {
    let q = BoundQuery::new(q.k, q.eps.clone(), q.family_size.clone())?;
    check_prec(prec)?;
    let (constant, constant_name) = if q.k <= 4 { (psi(q.k, prec)?, "psi_k") } else { (z(q.k, prec)?, "z_k") };
    let delta = if q.eps.is_zero() {
        Real::from_int(0, prec)
    } else {
        let e = Real::from_rational(&q.eps, prec);
        let ln_f = Real::from_rational(&Rational::from_integer(q.family_size.clone().into()), prec).ln();
        let inner = Real::from_int(q.k as i64, prec)
            .mul(&e)
            .add(&e.mul(&e.constant(2.0)).mul(&e.recip().ln()).div(&ln_f));
        nth_root(&inner, q.k - 1, prec)?
    };
    let diff = constant.sub(&delta);
    let clamped = !diff.is_positive();
    let guaranteed_fraction = if clamped { diff.max(&diff.constant(0.0)) } else { diff };
    Ok(FrequencyBound { delta, constant, constant_name, guaranteed_fraction, clamped })
}

impl FrequencyBound {
    pub fn to_json(&self, q: &BoundQuery) -> serde_json::Value {
        serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "kind": "frequency_bound",
            "k": q.k.to_string(),
            "eps": q.eps.to_string(),
            "family_size": q.family_size.to_string(),
            "delta": dec(&self.delta),
            "constant": dec(&self.constant),
            "constant_name": self.constant_name,
            "guaranteed_fraction": dec(&self.guaranteed_fraction),
            "clamped": self.clamped,
            "precision_bits": self.delta.prec().to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio() {
        let p = phi(2, 128).unwrap();
        let want = (5f64.sqrt() - 1.0) / 2.0;
        assert!((p.mid_f64() - want).abs() < 1e-15);
        assert!(p.width().to_f64() < 1e-30);
    }

    #[test]
    fn small_k_mu_is_reciprocal_alpha() {
        let m = mu(2, 128).unwrap();
        assert!((m.mid_f64() - 1.618033988749895).abs() < 1e-12);
        let r = mu(4, 128).unwrap().mid_f64() / mu(5, 128).unwrap().mid_f64();
        assert!((r - 0.8700).abs() < 1e-4);
    }

    #[test]
    fn z_equals_psi_for_small_k() {
        for k in 2..=4 {
            let (zk, pk) = (z(k, 128).unwrap(), psi(k, 128).unwrap());
            assert!(zk.overlaps(&pk), "k={k}");
            assert!(zk.width().to_f64() < 1e-25);
        }
    }

    #[test]
    fn nth_root_and_split() {
        let r = nth_root(&Real::from_int(8, 128), 3, 128).unwrap();
        assert!(r.contains(&Dyadic::from_int(2)) || (r.mid_f64() - 2.0).abs() < 1e-30);
        assert_eq!(mu_split(5), (2, 1));
        assert_eq!(mu_split(16), (4, 0));
        assert_eq!(mu_split(23), (4, 7));
    }

    #[test]
    fn bound_query_validation() {
        let f = BigUint::from(1024u32);
        assert!(BoundQuery::new(3, rat(1, 2), f.clone()).is_err());
        assert!(BoundQuery::new(3, rat(-1, 10), f.clone()).is_err());
        assert!(BoundQuery::new(3, rat(0, 1), BigUint::from(1u32)).is_err());
        let q = BoundQuery::new(3, rat(0, 1), f).unwrap();
        let b = frequency_bound(&q).unwrap();
        assert_eq!(b.delta.mid_f64(), 0.0);
        assert!((b.guaranteed_fraction.mid_f64() - 0.3176).abs() < 1e-4);
    }
}
