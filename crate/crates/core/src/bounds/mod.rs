//! Bound calculator: exact integers where possible, rigorous interval
//! enclosures where exponents involve the golden ratio.

pub mod formulas;
pub mod interval;
pub mod verify;

pub use formulas::{
    beta_closed_form, check_evenness, degree_lower_step, golden_power, golden_power_real, m_of_d, m_vector,
    main_bound, multiset, n_sequence, padic_bound, powers_bound, powers_bound_interval, star_bound, star_iterate,
    wooley_bound, wooley_bound_interval, PhiSource,
};
pub use interval::{golden, Dyadic, Interval};
pub use verify::{verify_inequalities, CheckResult, VerificationReport};

/// Interval precision used when none is given.
pub const DEFAULT_PRECISION: u32 = 128;
/// Precision ceiling for automatic refinement.
pub const MAX_PRECISION: u32 = 4096;
/// Environment variable overriding [`DEFAULT_PRECISION`].
pub const PRECISION_ENV: &str = "FORMS_DENSITY_PRECISION";

/// [`DEFAULT_PRECISION`] unless the environment overrides it.
pub fn default_precision() -> u32 {
    std::env::var(PRECISION_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .filter(|&p| (16..=MAX_PRECISION).contains(&p))
        .unwrap_or(DEFAULT_PRECISION)
}
