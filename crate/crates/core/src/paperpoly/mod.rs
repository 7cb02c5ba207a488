//! The polynomial family `p_k = alpha_k rho_k - sigma_k`, whose root count in
//! `(0, 1)` controls the sign of `f_k`, with its reference data and checks.

mod appendix;
mod checks;
mod construct;
mod ctable;
mod golden;
mod identity;

pub use appendix::{appendix_a_reports, check_p4_patterns, verify_appendix_a, P4_DISCRIMINANT_SIGNS, P4_ROOT_PATTERN};
pub use checks::{
    check_p0_sign, check_sigma_one_sign, check_structure, check_table2, check_unit_interval_roots,
    derivative_distinct_root_pattern, derivative_root_pattern, derivative_value, discriminant_sign_pattern,
    pattern_from_discriminants, rolle_consistent, unit_interval_root_count,
};
pub use construct::{
    build_p, build_p_parts, build_rho, build_sigma, rho_in_y, rho_term_count, sigma_coefficient_signs, AlphaPoly,
    MAX_K,
};
pub use ctable::{c_coeff, ctable, CTable};
pub use golden::{parse_alpha_linear, parse_alpha_poly, table2, P3_DERIVATIVES, P4_DERIVATIVES, TABLE2};
pub use identity::{
    r_closed_form, r_derivative, r_derivative_exact, s_closed_form, s_derivative, s_derivative_exact,
    verify_sr_derivative_identity, FD_PRECISION, FD_STEP_LOG2, FD_TOLERANCE,
};
