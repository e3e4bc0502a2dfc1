use rand::Rng;

use super::stable::{check_alpha, sample_positive_stable};
use super::{SpectralMeasure, SpeedLaw};
use crate::{Error, Result};

/// Per-increment marks `(v, u)` of a subordinator path.
///
/// Increment `k` of size `dS_k` carries the spatial jump `v_k * dS_k * u_k`,
/// which couples the spatial process to the subordinator jump by jump.
#[derive(Clone, Debug, PartialEq)]
pub struct JumpMarks {
    dim: usize,
    speeds: Vec<f64>,
    directions: Vec<f64>,
    /// Cumulative spatial values, `dim` entries per grid point, starting at 0.
    spatial: Vec<f64>,
}

impl JumpMarks {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn speed(&self, k: usize) -> f64 {
        self.speeds[k]
    }

    pub fn direction(&self, k: usize) -> &[f64] {
        &self.directions[k * self.dim..(k + 1) * self.dim]
    }

    /// Spatial value after `k` increments.
    pub fn spatial_value(&self, k: usize) -> &[f64] {
        &self.spatial[k * self.dim..(k + 1) * self.dim]
    }

    fn push(&mut self, increment: f64, speed: f64, direction: &[f64]) {
        let k = self.speeds.len();
        self.speeds.push(speed);
        self.directions.extend_from_slice(direction);
        for (j, u) in direction.iter().enumerate() {
            let next = self.spatial[k * self.dim + j] + speed * increment * u;
            self.spatial.push(next);
        }
    }
}

/// Stable subordinator sampled on the grid `0, dtau, 2 dtau, ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubordinatorPath {
    delta_tau: f64,
    increments: Vec<f64>,
    /// `cumulative[k]` is the value at operational time `k * delta_tau`.
    cumulative: Vec<f64>,
    marks: Option<JumpMarks>,
}

impl SubordinatorPath {
    fn empty(delta_tau: f64, mark_dim: Option<usize>) -> Self {
        Self {
            delta_tau,
            increments: Vec::new(),
            cumulative: vec![0.0],
            marks: mark_dim.map(|dim| JumpMarks {
                dim,
                speeds: Vec::new(),
                directions: Vec::new(),
                spatial: vec![0.0; dim],
            }),
        }
    }

    /// Path from explicit positive increments, optionally with `(speed, direction)` marks.
    pub fn from_increments(
        delta_tau: f64,
        increments: &[f64],
        marks: Option<&[(f64, Vec<f64>)]>,
    ) -> Result<Self> {
        if !(delta_tau > 0.0) {
            return Err(Error::domain(
                "delta_tau",
                format!("{delta_tau} must be positive"),
            ));
        }
        if let Some(m) = marks {
            if m.len() != increments.len() {
                return Err(Error::domain(
                    "marks",
                    "need exactly one mark per increment",
                ));
            }
        }
        let dim = marks.and_then(|m| m.first()).map(|(_, u)| u.len());
        if marks.is_some_and(|m| !m.is_empty()) && dim == Some(0) {
            return Err(Error::domain("marks", "direction must have dimension >= 1"));
        }
        let mut path = Self::empty(delta_tau, marks.map(|_| dim.unwrap_or(1)));
        for (k, &inc) in increments.iter().enumerate() {
            if !(inc > 0.0 && inc.is_finite()) {
                return Err(Error::domain(
                    "increments",
                    format!("{inc} must be positive"),
                ));
            }
            match marks {
                Some(m) => {
                    let (v, u) = &m[k];
                    if !(*v > 0.0) || u.len() != path.marks.as_ref().unwrap().dim {
                        return Err(Error::domain("marks", format!("bad mark at {k}")));
                    }
                    path.push(inc, Some((*v, u)));
                }
                None => path.push(inc, None),
            }
        }
        Ok(path)
    }

    fn push(&mut self, increment: f64, mark: Option<(f64, &[f64])>) {
        self.increments.push(increment);
        let last = *self.cumulative.last().unwrap();
        self.cumulative.push(last + increment);
        if let (Some(marks), Some((v, u))) = (self.marks.as_mut(), mark) {
            marks.push(increment, v, u);
        }
    }

    pub fn delta_tau(&self) -> f64 {
        self.delta_tau
    }

    /// Number of increments.
    pub fn len(&self) -> usize {
        self.increments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.increments.is_empty()
    }

    pub fn increments(&self) -> &[f64] {
        &self.increments
    }

    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }

    pub fn last_value(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    /// Operational time of grid point `k`.
    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.delta_tau
    }

    pub fn tau_max(&self) -> f64 {
        self.time(self.len())
    }

    pub fn marks(&self) -> Option<&JumpMarks> {
        self.marks.as_ref()
    }

    /// Spatial jump carried by increment `k`; `None` on an unmarked path.
    pub fn spatial_jump(&self, k: usize) -> Option<Vec<f64>> {
        let m = self.marks.as_ref()?;
        let scale = m.speed(k) * self.increments[k];
        Some(m.direction(k).iter().map(|u| scale * u).collect())
    }

    /// The same path observed on a grid `factor` times coarser.
    ///
    /// Sums of consecutive increments are again stable increments, so the
    /// result is a valid path at step `factor * delta_tau`; a trailing partial
    /// group is dropped. Marks are not carried over.
    pub fn coarsen(&self, factor: usize) -> Result<Self> {
        if factor == 0 {
            return Err(Error::domain("factor", "must be at least 1"));
        }
        let mut path = Self::empty(self.delta_tau * factor as f64, None);
        for group in self.increments.chunks_exact(factor) {
            path.push(group.iter().sum(), None);
        }
        Ok(path)
    }

    /// Grid index of the first value strictly above `level`.
    fn first_exceedance(&self, level: f64) -> Option<usize> {
        let k = self.cumulative.partition_point(|&s| s <= level);
        (k < self.cumulative.len()).then_some(k)
    }
}

/// Draws increments `S_alpha(dtau)` and, optionally, their jump marks.
#[derive(Clone, Debug)]
pub struct PathSampler<'a> {
    alpha: f64,
    delta_tau: f64,
    increment_scale: f64,
    marks: Option<(&'a SpeedLaw, &'a SpectralMeasure)>,
}

impl<'a> PathSampler<'a> {
    pub fn new(
        alpha: f64,
        delta_tau: f64,
        marks: Option<(&'a SpeedLaw, &'a SpectralMeasure)>,
    ) -> Result<Self> {
        check_alpha(alpha)?;
        if !(delta_tau > 0.0 && delta_tau.is_finite()) {
            return Err(Error::domain(
                "delta_tau",
                format!("{delta_tau} must be positive"),
            ));
        }
        Ok(Self {
            alpha,
            delta_tau,
            increment_scale: delta_tau.powf(1.0 / alpha),
            marks,
        })
    }

    pub fn empty_path(&self) -> SubordinatorPath {
        SubordinatorPath::empty(self.delta_tau, self.marks.map(|(_, m)| m.dim()))
    }

    /// Append `steps` increments to `path`.
    pub fn extend<R: Rng + ?Sized>(&self, path: &mut SubordinatorPath, steps: usize, rng: &mut R) {
        let mut u = vec![0.0; self.marks.map_or(0, |(_, m)| m.dim())];
        for _ in 0..steps {
            let inc = self.increment_scale * sample_positive_stable(self.alpha, rng);
            match self.marks {
                Some((speed, measure)) => {
                    let v = speed.sample(rng);
                    measure.sample_into(rng, &mut u);
                    path.push(inc, Some((v, &u)));
                }
                None => path.push(inc, None),
            }
        }
    }

    /// Extend until the path exceeds `level`, then pad to a multiple of `multiple` increments.
    pub fn extend_past<R: Rng + ?Sized>(
        &self,
        path: &mut SubordinatorPath,
        level: f64,
        multiple: usize,
        rng: &mut R,
    ) {
        while path.last_value() <= level {
            self.extend(path, 1, rng);
        }
        let rem = path.len() % multiple.max(1);
        if rem != 0 {
            self.extend(path, multiple - rem, rng);
        }
    }
}

/// Grid path on `[0, tau_max]` with i.i.d. `S_alpha(delta_tau)` increments.
pub fn build_subordinator_path<R: Rng + ?Sized>(
    alpha: f64,
    tau_max: f64,
    delta_tau: f64,
    marks: Option<(&SpeedLaw, &SpectralMeasure)>,
    rng: &mut R,
) -> Result<SubordinatorPath> {
    if !(tau_max > 0.0 && tau_max.is_finite()) {
        return Err(Error::domain(
            "tau_max",
            format!("{tau_max} must be positive"),
        ));
    }
    if !(delta_tau > 0.0 && delta_tau <= tau_max) {
        return Err(Error::domain(
            "delta_tau",
            format!("{delta_tau} not in (0, tau_max]"),
        ));
    }
    let sampler = PathSampler::new(alpha, delta_tau, marks)?;
    let steps = (tau_max / delta_tau - 1e-9).ceil().max(1.0) as usize;
    let mut path = sampler.empty_path();
    sampler.extend(&mut path, steps, rng);
    Ok(path)
}

/// First-passage time `inf { tau : S(tau) > t }` read off the grid.
///
/// Returns the smallest grid time whose path value strictly exceeds `t`.
pub fn inverse_subordinator(path: &SubordinatorPath, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::domain("t", format!("{t} must be nonnegative")));
    }
    path.first_exceedance(t)
        .map(|k| path.time(k))
        .ok_or(Error::PathTooShort {
            level: t,
            last: path.last_value(),
        })
}
