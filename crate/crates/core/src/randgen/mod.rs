//! Sampling primitives: heavy-tailed durations and speeds, step directions,
//! and one-sided stable subordinators.

mod direction;
mod stable;
mod subordinator;
mod tail;

pub use direction::{sample_direction, SpectralMeasure};
pub use stable::{sample_positive_stable, sample_stable_subordinator};
pub use subordinator::{
    build_subordinator_path, inverse_subordinator, JumpMarks, PathSampler, SubordinatorPath,
};
pub use tail::{sample_pareto, SpeedLaw, TailLaw};

use rand::distr::Open01;
use rand::Rng;

/// Uniform variate on the open interval (0, 1).
#[inline]
pub(crate) fn open01<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(Open01)
}
