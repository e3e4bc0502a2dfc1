//! Estimators that turn limit statements into numerical pass/fail checks.

mod exponent;
mod hill;
mod ks;
mod regression;
mod summary;
mod tail;

pub use exponent::{scaling_exponent_fit, ExponentFit};
pub use hill::{default_hill_k, hill_estimator, TailFit};
pub use ks::{ks_critical_value, ks_distance};
pub use regression::{ols, LinearFit};
pub use summary::{mean_and_stderr, quantile, spearman};
pub use tail::{log_correction_fit, log_spaced, product_tail_theory, LogCorrectionFit};

pub(crate) fn sort_floats(xs: &mut [f64]) {
    xs.sort_unstable_by(f64::total_cmp);
}
