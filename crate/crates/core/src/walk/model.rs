use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Trajectory, Variant};
use crate::randgen::{SpectralMeasure, SpeedLaw, TailLaw};
use crate::{Error, Result, StreamKey};

/// Trajectories are extended lazily; this bounds the number of steps one
/// walker may draw before giving up.
pub const DEFAULT_STEP_CAP: usize = 50_000_000;

/// Laws of the step triple `(T, V, I)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalkModel {
    pub durations: TailLaw,
    pub speeds: SpeedLaw,
    pub directions: SpectralMeasure,
}

impl WalkModel {
    pub fn new(durations: TailLaw, speeds: SpeedLaw, directions: SpectralMeasure) -> Self {
        Self {
            durations,
            speeds,
            directions,
        }
    }

    /// Pareto durations (index `alpha`) and speeds (index `beta`), unit cutoffs.
    pub fn pareto(alpha: f64, beta: f64, directions: SpectralMeasure) -> Result<Self> {
        Ok(Self::new(
            TailLaw::pareto(alpha)?,
            SpeedLaw::HeavyTailed(TailLaw::pareto(beta)?),
            directions,
        ))
    }

    pub fn alpha(&self) -> f64 {
        self.durations.index()
    }

    /// Speed tail index; `+inf` for a constant speed.
    pub fn beta(&self) -> f64 {
        self.speeds.index().unwrap_or(f64::INFINITY)
    }

    pub fn dim(&self) -> usize {
        self.directions.dim()
    }

    pub fn walker(&self, key: StreamKey, index: u64) -> Walker<'_> {
        Walker {
            model: self,
            rng: key.rng(index),
            trajectory: Trajectory::new(self.dim()).with_seed(key, index),
            direction: vec![0.0; self.dim()],
            cap: DEFAULT_STEP_CAP,
        }
    }
}

/// A trajectory together with the random stream that extends it on demand.
///
/// Durations have infinite mean, so the number of steps needed to reach a
/// horizon is not known in advance; queries draw steps until the trajectory
/// passes the requested time.
pub struct Walker<'a> {
    model: &'a WalkModel,
    rng: ChaCha8Rng,
    trajectory: Trajectory,
    direction: Vec<f64>,
    cap: usize,
}

impl<'a> Walker<'a> {
    pub fn with_step_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn trajectory(&self) -> &Trajectory {
        &self.trajectory
    }

    pub fn into_trajectory(self) -> Trajectory {
        self.trajectory
    }

    /// Draw one more step.
    pub fn step(&mut self) {
        let m = self.model;
        let t = m.durations.sample(&mut self.rng);
        let v = m.speeds.sample(&mut self.rng);
        m.directions.sample_into(&mut self.rng, &mut self.direction);
        self.trajectory.push_raw(t, v, &self.direction);
    }

    /// Draw exactly `n` more steps.
    pub fn steps(&mut self, n: usize) {
        for _ in 0..n {
            self.step();
        }
    }

    /// Extend until the total duration strictly exceeds `t`.
    pub fn extend_past(&mut self, t: f64) -> Result<()> {
        if !t.is_finite() {
            return Err(Error::domain("t", format!("{t} must be finite")));
        }
        while self.trajectory.total_duration() <= t {
            if self.trajectory.len() >= self.cap {
                return Err(Error::StepCap { t, cap: self.cap });
            }
            self.step();
        }
        Ok(())
    }

    pub fn renewal_count(&mut self, t: f64) -> Result<usize> {
        self.extend_past(t)?;
        self.trajectory.renewal_count(t)
    }

    pub fn position(&mut self, variant: Variant, t: f64) -> Result<Vec<f64>> {
        self.extend_past(t)?;
        self.trajectory.position(variant, t)
    }
}
