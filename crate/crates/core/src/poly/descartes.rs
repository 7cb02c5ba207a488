use super::sturm::variations;
use super::{Coefficient, Poly};
use crate::numerics::{Rational, Sign};

/// Number of roots in `(0, 1)` via Descartes' rule of signs with bisection.
///
/// Returns `None` if some branch has not resolved to zero or one sign
/// variation by `max_depth`, which is what happens near a multiple root. A
/// `Some(n)` answer means there are exactly `n` roots in `(0, 1)`, all simple.
pub fn count_unit_interval_vca<C: Coefficient>(p: &Poly<C>, max_depth: usize) -> Option<usize> {
    if p.is_zero() {
        return None;
    }
    descend(p.clone(), max_depth)
}

fn descend<C: Coefficient>(p: Poly<C>, depth: usize) -> Option<usize> {
    let q = p.reversed().taylor_shift_one();
    let signs: Vec<Sign> = q.coeffs().iter().map(|c| c.sign()).collect();
    match variations(&signs) {
        0 => return Some(0),
        1 => return Some(1),
        _ => {}
    }
    if depth == 0 {
        return None;
    }
    let half = Rational::new(1.into(), 2.into());
    let mid = match p.eval_sign(&half) {
        Sign::Zero if p.derivative().eval_sign(&half) == Sign::Zero => return None,
        Sign::Zero => 1,
        _ => 0,
    };
    let left = p.halve_argument();
    let right = left.taylor_shift_one();
    Some(descend(left, depth - 1)? + descend(right, depth - 1)? + mid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int_poly;

    #[test]
    fn counts_roots_including_midpoint() {
        // roots 1/4, 1/2, 3/4, 2
        let p = &(&(&int_poly(&[-1, 4]) * &int_poly(&[-1, 2])) * &int_poly(&[-3, 4])) * &int_poly(&[-2, 1]);
        assert_eq!(count_unit_interval_vca(&p, 30), Some(3));
    }

    #[test]
    fn gives_up_on_double_root() {
        let p = &int_poly(&[-1, 3]) * &int_poly(&[-1, 3]);
        assert_eq!(count_unit_interval_vca(&p, 20), None);
    }

    #[test]
    fn endpoint_roots_are_excluded() {
        let p = &(&int_poly(&[0, 1]) * &int_poly(&[-1, 1])) * &int_poly(&[-1, 2]);
        assert_eq!(count_unit_interval_vca(&p, 20), Some(1));
    }
}
