//! Regime classification, rescaled ensembles and limit-process proxies.

mod ensemble;
mod interpolation;
mod regime;

pub use ensemble::{
    joint_step_sums, limit_proxy_ensemble, rescaled_ensemble, EnsembleMeta, EnsembleSnapshot,
    JointSums, LimitProxy, MIN_REFERENCE_SCALE,
};
pub use interpolation::{continuous_limit_interpolation, interpolate_limit, LimitPoint};
pub use regime::{classify_regime, Regime, RegimeKind};

pub use crate::walk::{Variant, WalkModel};
