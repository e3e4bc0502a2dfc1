use std::io::Write;

use super::Variant;
use crate::io::{csv_writer, fmt_f64};
use crate::{Error, Result, StreamKey};

const UNIT_TOL: f64 = 1e-12;

/// One step of the walk: duration, speed and unit direction.
#[derive(Clone, Debug, PartialEq)]
pub struct StepTriple {
    pub duration: f64,
    pub speed: f64,
    pub direction: Vec<f64>,
}

impl StepTriple {
    pub fn new(duration: f64, speed: f64, direction: Vec<f64>) -> Result<Self> {
        let step = Self {
            duration,
            speed,
            direction,
        };
        step.validate()?;
        Ok(step)
    }

    fn validate(&self) -> Result<()> {
        if !(self.duration > 0.0 && self.duration.is_finite()) {
            return Err(Error::domain(
                "duration",
                format!("{} must be positive", self.duration),
            ));
        }
        if !(self.speed > 0.0 && self.speed.is_finite()) {
            return Err(Error::domain(
                "speed",
                format!("{} must be positive", self.speed),
            ));
        }
        let norm = self.direction.iter().map(|x| x * x).sum::<f64>().sqrt();
        if self.direction.is_empty() || (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::domain("direction", format!("norm {norm} is not 1")));
        }
        Ok(())
    }

    pub fn jump(&self) -> Vec<f64> {
        let s = self.speed * self.duration;
        self.direction.iter().map(|u| s * u).collect()
    }
}

/// Steps with their renewal times and cumulative positions.
///
/// Renewal times are accumulated with Neumaier summation. Positions are stored
/// with a leading origin, so `position_after(k)` is the sum of the first `k`
/// jumps.
#[derive(Clone, Debug)]
pub struct Trajectory {
    dim: usize,
    durations: Vec<f64>,
    speeds: Vec<f64>,
    directions: Vec<f64>,
    renewal_times: Vec<f64>,
    positions: Vec<f64>,
    sum: f64,
    compensation: f64,
    seed: Option<(StreamKey, u64)>,
}

impl Trajectory {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 1, "trajectory dimension must be at least 1");
        Self {
            dim,
            durations: Vec::new(),
            speeds: Vec::new(),
            directions: Vec::new(),
            renewal_times: Vec::new(),
            positions: vec![0.0; dim],
            sum: 0.0,
            compensation: 0.0,
            seed: None,
        }
    }

    pub fn from_steps(steps: &[StepTriple]) -> Result<Self> {
        let dim = steps
            .first()
            .map(|s| s.direction.len())
            .ok_or_else(|| Error::domain("steps", "need at least one step"))?;
        let mut traj = Self::new(dim.max(1));
        for step in steps {
            traj.push(step)?;
        }
        Ok(traj)
    }

    pub(crate) fn with_seed(mut self, key: StreamKey, index: u64) -> Self {
        self.seed = Some((key, index));
        self
    }

    /// Stream the trajectory was drawn from, if it was simulated.
    pub fn seed(&self) -> Option<(StreamKey, u64)> {
        self.seed
    }

    pub fn push(&mut self, step: &StepTriple) -> Result<()> {
        step.validate()?;
        if step.direction.len() != self.dim {
            return Err(Error::domain("direction", "dimension mismatch"));
        }
        self.push_raw(step.duration, step.speed, &step.direction);
        Ok(())
    }

    #[inline]
    pub(crate) fn push_raw(&mut self, duration: f64, speed: f64, direction: &[f64]) {
        let t = self.sum + duration;
        if self.sum.abs() >= duration.abs() {
            self.compensation += (self.sum - t) + duration;
        } else {
            self.compensation += (duration - t) + self.sum;
        }
        self.sum = t;
        self.renewal_times.push(self.sum + self.compensation);

        self.durations.push(duration);
        self.speeds.push(speed);
        self.directions.extend_from_slice(direction);
        let k = self.durations.len() - 1;
        let scale = speed * duration;
        for (j, u) in direction.iter().enumerate() {
            let next = self.positions[k * self.dim + j] + scale * u;
            self.positions.push(next);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.durations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.durations.is_empty()
    }

    pub fn total_duration(&self) -> f64 {
        self.renewal_times.last().copied().unwrap_or(0.0)
    }

    /// `renewal_times()[k]` is `T_1 + ... + T_(k+1)`.
    pub fn renewal_times(&self) -> &[f64] {
        &self.renewal_times
    }

    /// Time of the `k`-th renewal, with renewal 0 at time 0.
    pub fn renewal_time(&self, k: usize) -> f64 {
        if k == 0 {
            0.0
        } else {
            self.renewal_times[k - 1]
        }
    }

    // Step accessors are 0-based: index i is step i+1.
    pub fn duration(&self, i: usize) -> f64 {
        self.durations[i]
    }

    pub fn speed(&self, i: usize) -> f64 {
        self.speeds[i]
    }

    pub fn direction(&self, i: usize) -> &[f64] {
        &self.directions[i * self.dim..(i + 1) * self.dim]
    }

    pub fn step(&self, i: usize) -> StepTriple {
        StepTriple {
            duration: self.durations[i],
            speed: self.speeds[i],
            direction: self.direction(i).to_vec(),
        }
    }

    pub fn jump(&self, i: usize) -> Vec<f64> {
        let s = self.speeds[i] * self.durations[i];
        self.direction(i).iter().map(|u| s * u).collect()
    }

    /// Sum of the first `k` jumps.
    pub fn position_after(&self, k: usize) -> &[f64] {
        &self.positions[k * self.dim..(k + 1) * self.dim]
    }

    /// `N(t) = max { k : T_1 + ... + T_k <= t }`.
    ///
    /// Fails with [`Error::TrajectoryExhausted`] unless the trajectory reaches
    /// strictly past `t`, since every variant may need step `N(t) + 1`.
    pub fn renewal_count(&self, t: f64) -> Result<usize> {
        if !(t >= 0.0) {
            return Err(Error::domain("t", format!("{t} must be nonnegative")));
        }
        let n = self.renewal_times.partition_point(|&r| r <= t);
        if n == self.renewal_times.len() {
            return Err(Error::TrajectoryExhausted {
                t,
                total: self.total_duration(),
            });
        }
        Ok(n)
    }

    pub fn position_wait_first(&self, t: f64) -> Result<Vec<f64>> {
        let n = self.renewal_count(t)?;
        Ok(self.position_after(n).to_vec())
    }

    pub fn position_jump_first(&self, t: f64) -> Result<Vec<f64>> {
        let n = self.renewal_count(t)?;
        Ok(self.position_after(n + 1).to_vec())
    }

    pub fn position_continuous(&self, t: f64) -> Result<Vec<f64>> {
        let n = self.renewal_count(t)?;
        let scale = (t - self.renewal_time(n)) * self.speeds[n];
        Ok(self
            .position_after(n)
            .iter()
            .zip(self.direction(n))
            .map(|(x, u)| x + scale * u)
            .collect())
    }

    pub fn position(&self, variant: Variant, t: f64) -> Result<Vec<f64>> {
        match variant {
            Variant::WaitFirst => self.position_wait_first(t),
            Variant::JumpFirst => self.position_jump_first(t),
            Variant::Continuous => self.position_continuous(t),
        }
    }

    /// CSV dump: `step_index,T,V,I_1..I_d,renewal_time,pos_1..pos_d`.
    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv_writer(w);
        let mut header = vec!["step_index".to_string(), "T".into(), "V".into()];
        header.extend((1..=self.dim).map(|j| format!("I_{j}")));
        header.push("renewal_time".into());
        header.extend((1..=self.dim).map(|j| format!("pos_{j}")));
        out.write_record(&header)?;
        for i in 0..self.len() {
            let mut row = vec![
                (i + 1).to_string(),
                fmt_f64(self.durations[i]),
                fmt_f64(self.speeds[i]),
            ];
            row.extend(self.direction(i).iter().map(|&x| fmt_f64(x)));
            row.push(fmt_f64(self.renewal_times[i]));
            row.extend(self.position_after(i + 1).iter().map(|&x| fmt_f64(x)));
            out.write_record(&row)?;
        }
        out.flush()?;
        Ok(())
    }
}
