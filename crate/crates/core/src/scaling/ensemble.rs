use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Regime;
use crate::io::{create, csv_err, csv_writer, fmt_f64, write_string};
use crate::par::try_map_indexed;
use crate::walk::{Variant, WalkModel};
use crate::{Error, Result, StreamKey};

/// Smallest scale accepted as a stand-in for the limit law.
pub const MIN_REFERENCE_SCALE: f64 = 1e5;

/// Provenance of an ensemble.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleMeta {
    pub alpha: f64,
    /// `inf` for a constant speed.
    pub beta: f64,
    pub measure: String,
    pub variant: Variant,
    pub n: f64,
    pub t: f64,
    pub n_samples: usize,
    pub seed: u64,
    pub ensemble: u64,
    pub space_norm: f64,
    pub time_norm: f64,
    /// Set when the ensemble stands in for the limit law.
    pub reference: bool,
}

impl EnsembleMeta {
    pub fn regime(&self) -> Result<Regime> {
        Regime::from_indices(self.alpha, self.beta)
    }
}

/// I.i.d. draws of a rescaled walk position at one time.
#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleSnapshot {
    dim: usize,
    values: Vec<f64>,
    meta: EnsembleMeta,
}

impl EnsembleSnapshot {
    pub fn new(dim: usize, values: Vec<f64>, meta: EnsembleMeta) -> Result<Self> {
        if dim == 0 || !values.len().is_multiple_of(dim) || values.len() / dim != meta.n_samples {
            return Err(Error::domain(
                "values",
                "length does not match dim * n_samples",
            ));
        }
        if values.iter().any(|x| !x.is_finite()) {
            return Err(Error::Degenerate("non-finite ensemble value".into()));
        }
        Ok(Self { dim, values, meta })
    }

    pub fn meta(&self) -> &EnsembleMeta {
        &self.meta
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.meta.n_samples
    }

    pub fn is_empty(&self) -> bool {
        self.meta.n_samples == 0
    }

    pub fn sample(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    pub fn coordinate(&self, j: usize) -> Vec<f64> {
        self.values
            .iter()
            .skip(j)
            .step_by(self.dim)
            .copied()
            .collect()
    }

    pub fn radial(&self) -> Vec<f64> {
        self.values
            .chunks_exact(self.dim)
            .map(|x| x.iter().map(|v| v * v).sum::<f64>().sqrt())
            .collect()
    }

    /// CSV with header `sample_index,coordinate_1..coordinate_d`.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut out = csv_writer(create(path)?);
        let mut header = vec!["sample_index".to_string()];
        header.extend((1..=self.dim).map(|j| format!("coordinate_{j}")));
        out.write_record(&header).map_err(csv_err(path))?;
        for i in 0..self.len() {
            let mut row = vec![i.to_string()];
            row.extend(self.sample(i).iter().map(|&x| fmt_f64(x)));
            out.write_record(&row).map_err(csv_err(path))?;
        }
        out.flush().map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    /// Sidecar metadata as flat `key = value` text.
    pub fn write_meta(&self, path: &Path) -> Result<()> {
        let text = toml::to_string(&self.meta).expect("ensemble metadata serialises");
        write_string(path, &text)
    }
}

/// `N` draws of `space_norm(n)^-1 * X(time_norm(n) * t)`, one fresh trajectory each.
pub fn rescaled_ensemble(
    model: &WalkModel,
    variant: Variant,
    n: f64,
    t: f64,
    n_samples: usize,
    key: StreamKey,
) -> Result<EnsembleSnapshot> {
    ensemble_at(model, variant, n, t, n_samples, key, false)
}

fn ensemble_at(
    model: &WalkModel,
    variant: Variant,
    n: f64,
    t: f64,
    n_samples: usize,
    key: StreamKey,
    reference: bool,
) -> Result<EnsembleSnapshot> {
    let regime = Regime::of_model(model)?;
    regime.check_scale(n)?;
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::domain("t", format!("{t} must be nonnegative")));
    }
    if n_samples == 0 {
        return Err(Error::domain("n_samples", "must be at least 1"));
    }
    let space = regime.space_norm(n);
    let time = regime.time_norm(n);
    let horizon = time * t;
    let rows = try_map_indexed(n_samples, |i| {
        let mut walker = model.walker(key, i as u64);
        let x = walker.position(variant, horizon)?;
        Ok::<_, Error>(x.into_iter().map(|v| v / space).collect::<Vec<_>>())
    })?;
    let meta = EnsembleMeta {
        alpha: model.alpha(),
        beta: model.beta(),
        measure: model.directions.describe(),
        variant,
        n,
        t,
        n_samples,
        seed: key.master,
        ensemble: key.ensemble,
        space_norm: space,
        time_norm: time,
        reference,
    };
    EnsembleSnapshot::new(model.dim(), rows.concat(), meta)
}

/// The pre-limit walk at a large reference scale, standing in for the limit law.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitProxy {
    n_ref: f64,
}

impl LimitProxy {
    pub fn new(n_ref: f64) -> Result<Self> {
        if !(n_ref >= MIN_REFERENCE_SCALE && n_ref.is_finite()) {
            return Err(Error::domain(
                "n_ref",
                format!("{n_ref} below the reference scale {MIN_REFERENCE_SCALE}"),
            ));
        }
        Ok(Self { n_ref })
    }

    pub fn n_ref(&self) -> f64 {
        self.n_ref
    }

    pub fn ensemble(
        &self,
        model: &WalkModel,
        variant: Variant,
        t: f64,
        n_samples: usize,
        key: StreamKey,
    ) -> Result<EnsembleSnapshot> {
        ensemble_at(model, variant, self.n_ref, t, n_samples, key, true)
    }
}

pub fn limit_proxy_ensemble(
    model: &WalkModel,
    variant: Variant,
    t: f64,
    n_samples: usize,
    n_ref: f64,
    key: StreamKey,
) -> Result<EnsembleSnapshot> {
    LimitProxy::new(n_ref)?.ensemble(model, variant, t, n_samples, key)
}

/// Rescaled partial sums after a fixed number of steps,
/// `(space_norm(n)^-1 (J_1 + ... + J_n), n^(-1/alpha) (T_1 + ... + T_n))`.
#[derive(Clone, Debug, PartialEq)]
pub struct JointSums {
    pub dim: usize,
    pub displacements: Vec<f64>,
    pub durations: Vec<f64>,
}

impl JointSums {
    pub fn radial(&self) -> Vec<f64> {
        self.displacements
            .chunks_exact(self.dim)
            .map(|x| x.iter().map(|v| v * v).sum::<f64>().sqrt())
            .collect()
    }
}

pub fn joint_step_sums(
    model: &WalkModel,
    n_steps: usize,
    n_samples: usize,
    key: StreamKey,
) -> Result<JointSums> {
    let regime = Regime::of_model(model)?;
    let n = n_steps as f64;
    regime.check_scale(n)?;
    let space = regime.space_norm(n);
    let time = regime.time_norm(n);
    let dim = model.dim();
    let rows = try_map_indexed(n_samples, |i| {
        let mut walker = model.walker(key, i as u64);
        walker.steps(n_steps);
        let traj = walker.trajectory();
        let mut row: Vec<f64> = traj
            .position_after(n_steps)
            .iter()
            .map(|x| x / space)
            .collect();
        row.push(traj.total_duration() / time);
        Ok::<_, Error>(row)
    })?;
    let mut displacements = Vec::with_capacity(dim * n_samples);
    let mut durations = Vec::with_capacity(n_samples);
    for row in rows {
        displacements.extend_from_slice(&row[..dim]);
        durations.push(row[dim]);
    }
    Ok(JointSums {
        dim,
        displacements,
        durations,
    })
}
