//! Monte-Carlo simulation of multidimensional Lévy walks with random
//! velocities, together with the statistical diagnostics used to check their
//! scaling limits.
//!
//! The crate is organised bottom-up:
//!
//! * [`randgen`] samples heavy-tailed durations and speeds, step directions,
//!   and one-sided stable subordinators (values, grid paths and inverses).
//! * [`walk`] builds trajectories and evaluates the wait-first, jump-first and
//!   continuous walks at arbitrary times.
//! * [`scaling`] classifies the `(alpha, beta)` regime, produces rescaled
//!   ensembles and evaluates the interpolated continuous limit on marked
//!   subordinator paths.
//! * [`stats`] holds the estimators (Hill, two-sample KS, log-correction and
//!   exponent regressions, rank correlation).
//! * [`harness`] parses experiment configs and runs the verification suites.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod harness;
mod io;
mod par;
pub mod randgen;
pub mod rng;
pub mod scaling;
pub mod stats;
pub mod walk;

pub use error::{Error, Result};
pub use randgen::{SpectralMeasure, SpeedLaw, SubordinatorPath, TailLaw};
pub use rng::StreamKey;
pub use scaling::{EnsembleSnapshot, Regime, RegimeKind, Variant, WalkModel};
pub use walk::{StepTriple, Trajectory, Walker};
