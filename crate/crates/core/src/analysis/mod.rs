//! Entropy-side functions and the inequalities built on them.

pub mod entropy;
pub mod functions;
pub mod inequalities;
pub mod joint;
pub mod nonneg;

pub use entropy::{h, h_deriv_rational, h_f64, h_nth, h_prime};
pub use functions::{big_f_k, big_f_k_f64, f_k, f_k_f64, f_k_prime, g, m_k, m_k_f64, m_k_fast, r_k, s_k, PointK};
pub use inequalities::{
    classify, classify_strict, minimize_m_k, verify_corollary_main, verify_lemma_cl, verify_mk_bounds, MkMinimum, Tally,
    Verdict, DIAGONAL_TOLERANCE,
};
pub use joint::{entropy, random_independent, union_slack, verify_lemma_main_small, JointDistribution};
pub use nonneg::{
    certify_segment, fk_scan_csv, grid_scan, verify_fk_nonneg, CellStats, DEFAULT_EXCLUSION, DEFAULT_GRID, GRID_TOLERANCE,
};
