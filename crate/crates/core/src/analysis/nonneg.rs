//! Nonnegativity of `f_k` on `[0, 1]`: a dense grid scan plus certified
//! interval bisection away from the zeros `0`, `phi_k`, `1`.

use rayon::prelude::*;

use super::functions::{f_k, f_k_f64, f_k_prime};
use crate::constants;
use crate::error::{invalid, Result};
use crate::real::{Enclosure, FastInterval, Real};
use crate::report::PaperCheckReport;

pub const GRID_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_EXCLUSION: f64 = 1e-3;
pub const DEFAULT_GRID: usize = 100_000;
pub const DEPTH_CAP: u32 = 48;
const INITIAL_CELLS: usize = 512;
const CELL_BUDGET: usize = 200_000;
const ZERO_PRECISION: u32 = 256;
const ZERO_TOLERANCE: f64 = 1e-20;

/// Outcome of the certified layer on one segment.
#[derive(Clone, Debug, Default)]
pub struct CellStats {
    pub certified: usize,
    pub max_depth: u32,
    /// Cells still undecided at the depth cap.
    pub open: Vec<(f64, f64)>,
}

impl CellStats {
    fn merge(mut self, o: CellStats) -> CellStats {
        self.certified += o.certified;
        self.max_depth = self.max_depth.max(o.max_depth);
        self.open.extend(o.open);
        self
    }
}

fn alpha_fast(alpha: &Real) -> FastInterval {
    FastInterval::new(alpha.lo().to_f64_down(), alpha.hi().to_f64_up())
}

fn positive_on(k: u32, a: f64, b: f64, alpha: &FastInterval) -> bool {
    f_k(k, alpha, &FastInterval::new(a, b)).lo > 0.0
}

fn certify_cell(k: u32, a: f64, b: f64, alpha: &FastInterval) -> CellStats {
    let mut stats = CellStats::default();
    let mut stack = vec![(a, b, 0u32)];
    let mut spent = 0;
    while let Some((lo, hi, d)) = stack.pop() {
        spent += 1;
        if spent > CELL_BUDGET {
            stats.open.push((lo, hi));
            stats.open.extend(stack.drain(..).map(|(l, h, _)| (l, h)));
            break;
        }
        stats.max_depth = stats.max_depth.max(d);
        if positive_on(k, lo, hi, alpha) {
            stats.certified += 1;
            continue;
        }
        let mid = 0.5 * (lo + hi);
        if d >= DEPTH_CAP || mid <= lo || mid >= hi {
            stats.open.push((lo, hi));
            continue;
        }
        stack.push((mid, hi, d + 1));
        stack.push((lo, mid, d + 1));
    }
    stats
}

/// Certified layer: every cell of `[lo, hi]` is shown to have `f_k > 0`.
pub fn certify_segment(k: u32, lo: f64, hi: f64, alpha: &Real) -> CellStats {
    if hi <= lo {
        return CellStats::default();
    }
    let af = alpha_fast(alpha);
    let w = (hi - lo) / INITIAL_CELLS as f64;
    (0..INITIAL_CELLS)
        .into_par_iter()
        .map(|i| {
            let a = lo + w * i as f64;
            let b = if i + 1 == INITIAL_CELLS { hi } else { lo + w * (i + 1) as f64 };
            certify_cell(k, a, b, &af)
        })
        .reduce(CellStats::default, CellStats::merge)
}

/// Grid minimum of `f_k` over `grid_size + 1` equally spaced points.
pub fn grid_scan(k: u32, grid_size: usize, alpha: f64) -> Vec<f64> {
    (0..=grid_size).into_par_iter().map(|i| f_k_f64(k, alpha, i as f64 / grid_size as f64)).collect()
}

/// `(x, f_k(x))` rows for plotting.
pub fn fk_scan_csv(k: u32, points: usize) -> Result<String> {
    if points < 2 {
        return Err(invalid("need at least two points"));
    }
    let alpha = constants::alpha(u64::from(k), 128)?.mid_f64();
    let vals = grid_scan(k, points - 1, alpha);
    let mut s = String::from("x,f_k\n");
    for (i, v) in vals.iter().enumerate() {
        s.push_str(&format!("{:.12},{:.6e}\n", i as f64 / (points - 1) as f64, v));
    }
    Ok(s)
}

fn check_k(k: u32) -> Result<()> {
    if !(2..=64).contains(&k) {
        return Err(invalid(format!("k must lie in 2..=64, got {k}")));
    }
    Ok(())
}

pub fn verify_fk_nonneg(k: u32, grid_size: usize, exclusion_radius: f64) -> Result<PaperCheckReport> {
    check_k(k)?;
    if grid_size < 1000 {
        return Err(invalid("grid size must be at least 1000"));
    }
    if !(exclusion_radius > 0.0 && exclusion_radius < 0.1) {
        return Err(invalid("exclusion radius must lie in (0, 0.1)"));
    }
    let mut rep = PaperCheckReport::new(format!("conjecture-3.2-k{k}"), "f_k(x) >= 0 on [0,1]", ZERO_PRECISION);
    let phi = constants::phi(u64::from(k), ZERO_PRECISION)?;
    let alpha = constants::alpha_from_phi(u64::from(k), &phi)?;
    let (pf, af) = (phi.mid_f64(), alpha.mid_f64());

    let vals = grid_scan(k, grid_size, af);
    let (imin, vmin) = vals[1..grid_size]
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |b, (i, v)| if v < b.1 { (i + 1, v) } else { b });
    let vmin = vmin.min(vals[0]).min(vals[grid_size]);
    rep.check(
        format!("min of f_{k} over {} grid points", grid_size + 1),
        format!("{vmin:.3e}; interior min {:.3e} at x = {:.6}", vals[imin], imin as f64 / grid_size as f64),
        format!(">= -{GRID_TOLERANCE:e}"),
        vmin >= -GRID_TOLERANCE,
    );
    let eps = match vals[1..grid_size].iter().position(|v| *v <= 0.0) {
        Some(i) => format!("{:.6} (first nonpositive grid value)", (i + 1) as f64 / grid_size as f64),
        None => format!("{pf:.6} = phi_{k} (no nonpositive interior grid value)"),
    };
    rep.info(format!("f_{k} > 0 at every grid point of (0, eps)"), format!("eps = {eps}"));

    let r = exclusion_radius;
    let segments = [(r, pf - r), (pf + r, 1.0 - r)];
    let mut total = CellStats::default();
    for &(lo, hi) in &segments {
        total = total.merge(certify_segment(k, lo, hi, &alpha));
    }
    let where_ = format!("[{r}, phi-{r}] and [phi+{r}, 1-{r}]");
    if total.open.is_empty() {
        rep.check(
            format!("f_{k} > 0 on {where_}"),
            format!("{} certified cells, max depth {}", total.certified, total.max_depth),
            "every cell certified positive",
            true,
        );
    } else {
        let shown: Vec<String> = total.open.iter().take(5).map(|(a, b)| format!("[{a:.9}, {b:.9}]")).collect();
        rep.undecided(
            format!("f_{k} > 0 on {where_}"),
            format!("{} cells undecided at depth {DEPTH_CAP}: {}", total.open.len(), shown.join(", ")),
            "every cell certified positive",
        );
    }
    let near = |c: f64| {
        let lo = ((c - r).max(0.0) * grid_size as f64).ceil() as usize;
        let hi = (((c + r).min(1.0) * grid_size as f64).floor() as usize).min(grid_size);
        vals[lo..=hi].iter().copied().fold(f64::INFINITY, f64::min)
    };
    rep.info(
        "grid min of f_k within the excluded neighbourhoods of 0, phi, 1",
        format!("{:.3e}, {:.3e}, {:.3e}", near(0.0), near(pf), near(1.0)),
    );
    rep.note("the neighbourhoods of 0, phi_k and 1 are covered by the grid scan only; f_k > 0 near 0 is the small-x positivity");

    let zero = f_k(k, &alpha, &Real::from_int(0, ZERO_PRECISION));
    let one = f_k(k, &alpha, &Real::from_int(1, ZERO_PRECISION));
    let exact_zero = |v: &Real| v.lo().is_zero() && v.hi().is_zero();
    rep.check(format!("f_{k}(0), f_{k}(1)"), format!("{zero}, {one}"), "exactly 0", exact_zero(&zero) && exact_zero(&one));
    let at_phi = f_k(k, &alpha, &phi);
    let mag = at_phi.abs().hi().to_f64_up();
    rep.check(format!("|f_{k}(phi_{k})|"), format!("<= {mag:.3e}"), format!("< {ZERO_TOLERANCE:e}"), mag < ZERO_TOLERANCE);
    let d_phi = f_k_prime(k, &alpha, &phi);
    let dmag = d_phi.abs().hi().to_f64_up();
    rep.check(format!("|f_{k}'(phi_{k})|"), format!("<= {dmag:.3e}"), format!("< {ZERO_TOLERANCE:e}"), dmag < ZERO_TOLERANCE);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_passes() {
        let rep = verify_fk_nonneg(2, 2000, 1e-2).unwrap();
        assert!(rep.passed(), "{}", rep.render_text());
    }

    #[test]
    fn csv_shape() {
        let s = fk_scan_csv(3, 11).unwrap();
        assert_eq!(s.lines().count(), 12);
        assert!(s.starts_with("x,f_k\n0.000000000000,"));
    }

    #[test]
    fn parameter_checks() {
        assert!(verify_fk_nonneg(1, 2000, 1e-3).is_err());
        assert!(verify_fk_nonneg(3, 10, 1e-3).is_err());
        assert!(verify_fk_nonneg(3, 2000, 0.0).is_err());
    }
}
