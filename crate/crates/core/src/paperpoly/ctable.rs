//! The coefficients `C(k, t, j)` in the derivatives of `h(x^k)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::numerics::{factorial, Rational};

/// Table of `C(k, t, j)` for `0 <= j <= t <= t_max`.
///
/// `C(k,0,0) = 1/(k-1)!`, `C(k,t,j) = 0` when exactly one of `t`, `j` is zero
/// or when `j > t`, and otherwise
/// `C(k,t,j) = (kj - t + 1) C(k,t-1,j) + k C(k,t-1,j-1)`.
#[derive(Clone, Debug)]
pub struct CTable {
    k: u32,
    rows: Vec<Vec<Rational>>,
}

impl CTable {
    pub fn new(k: u32, t_max: usize) -> Result<Self> {
        if k < 2 {
            return Err(invalid(format!("C(k,t,j) needs k >= 2, got {k}")));
        }
        let kk = BigInt::from(k);
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(t_max + 1);
        rows.push(vec![Rational::new(BigInt::one(), factorial(u64::from(k) - 1))]);
        for t in 1..=t_max {
            let prev = &rows[t - 1];
            let mut row = vec![Rational::zero(); t + 1];
            for (j, slot) in row.iter_mut().enumerate().skip(1) {
                let mut v = Rational::zero();
                if j < t {
                    let m = &kk * BigInt::from(j) - BigInt::from(t) + 1;
                    v += &prev[j] * Rational::from_integer(m);
                }
                v += &prev[j - 1] * Rational::from_integer(kk.clone());
                *slot = v;
            }
            rows.push(row);
        }
        Ok(CTable { k, rows })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn t_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `C(k, t, j)`; zero outside the stored triangle when `j > t`.
    ///
    /// Panics if `t` exceeds the table size.
    pub fn get(&self, t: usize, j: usize) -> Rational {
        let row = &self.rows[t];
        row.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    /// Re-check the defining relations on every stored entry.
    pub fn check_invariants(&self) -> bool {
        let k = Rational::from_integer(BigInt::from(self.k));
        if self.rows[0][0] != Rational::new(BigInt::one(), factorial(u64::from(self.k) - 1)) {
            return false;
        }
        for t in 1..self.rows.len() {
            if !self.rows[t][0].is_zero() {
                return false;
            }
            for j in 1..=t {
                let m = &k * Rational::from_integer(BigInt::from(j))
                    - Rational::from_integer(BigInt::from(t))
                    + Rational::one();
                let expect = m * self.get(t - 1, j) + &k * self.get(t - 1, j - 1);
                if self.rows[t][j] != expect {
                    return false;
                }
            }
        }
        true
    }
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<CTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared table for `k` covering at least rows `0..=t`.
pub fn ctable(k: u32, t: usize) -> Result<Arc<CTable>> {
    let mut map = cache().lock().unwrap_or_else(|e| e.into_inner());
    if let Some(tab) = map.get(&k) {
        if tab.t_max() >= t {
            return Ok(tab.clone());
        }
    }
    let t_max = t.max(k as usize + 1);
    let tab = Arc::new(CTable::new(k, t_max)?);
    map.insert(k, tab.clone());
    Ok(tab)
}

/// Memoized `C(k, t, j)`.
pub fn c_coeff(k: u32, t: usize, j: usize) -> Result<Rational> {
    if j > t {
        if k < 2 {
            return Err(invalid(format!("C(k,t,j) needs k >= 2, got {k}")));
        }
        return Ok(Rational::zero());
    }
    Ok(ctable(k, t)?.get(t, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn small_values() {
        assert_eq!(c_coeff(3, 2, 1).unwrap(), rat(3, 1));
        assert_eq!(c_coeff(4, 1, 3).unwrap(), rat(0, 1));
        assert_eq!(c_coeff(5, 0, 0).unwrap(), rat(1, 24));
        assert!(c_coeff(1, 0, 0).is_err());
    }

    #[test]
    fn first_column_closed_form() {
        for k in 2..9u32 {
            for t in 1..=k as usize {
                let expect = Rational::new(BigInt::from(k), factorial(u64::from(k) - t as u64));
                assert_eq!(c_coeff(k, t, 1).unwrap(), expect, "k={k} t={t}");
            }
            assert_eq!(c_coeff(k, k as usize + 1, 1).unwrap(), rat(0, 1));
        }
    }

    #[test]
    fn sixth_row_second_column() {
        let k = 6i64;
        let lhs = c_coeff(6, 6, 2).unwrap() * Rational::from_integer(factorial(5));
        let rhs = k * k * (k - 1) * (k - 2) * (31 * k * k - 132 * k + 137);
        assert_eq!(lhs, rat(rhs, 1));
    }

    #[test]
    fn invariants_hold() {
        assert!(CTable::new(5, 12).unwrap().check_invariants());
    }
}
