//! The two-layer extremal family and Monte Carlo checks of its closure
//! fraction and element frequency.

pub mod estimate;
pub mod family;
pub mod oracle;

pub use estimate::{
    closure_ladder, estimate_closure_fraction, estimate_element_frequency, simulate, verify_simulation, Estimate, SimReport,
    CONFIDENCE,
};
pub use family::{
    element_frequency_f64, exact_element_frequency, family_weights, family_weights_f64, layer_sizes, sample_member, size_law_f64,
    Bitset, FamilySpec, Sampler, EXACT_LIMIT,
};
pub use oracle::{enumerate_members, exact_closure_fraction, exhaustive_closure_fraction, uniformity_chi2, Uniformity};
