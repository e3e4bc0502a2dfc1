//! Experiment configuration: a flat `key = value` document (TOML syntax).
//!
//! ```text
//! alpha = 0.5
//! beta = 0.8
//! d = 1
//! variant = "wait-first"
//! ```
//!
//! Optional keys and defaults: `measure = "axes"` (also `"uniform-sphere"`,
//! `"positive-axis"`, `"atoms"` with `atoms = [[u_1, .., u_d, p], ..]`),
//! `n_grid = [100, 1000, 10000]`, `t_grid = [1.0]`, `n_samples = 10000`,
//! `seed = 0`, `output_dir = "out"`, `delta_tau = 1e-3`, `n_ref = 100000`.

use std::path::PathBuf;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::randgen::SpectralMeasure;
use crate::scaling::MIN_REFERENCE_SCALE;
use crate::walk::{Variant, WalkModel};

pub const DEFAULT_DELTA_TAU: f64 = 1e-3;
pub const DEFAULT_N_REF: u64 = 100_000;
pub const DEFAULT_N_SAMPLES: usize = 10_000;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("config parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid config field `{field}`: {reason}")]
    Invalid { field: &'static str, reason: String },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    alpha: f64,
    beta: f64,
    d: usize,
    variant: Variant,
    measure: Option<String>,
    atoms: Option<Vec<Vec<f64>>>,
    n_grid: Option<Vec<u64>>,
    t_grid: Option<Vec<f64>>,
    n_samples: Option<usize>,
    #[serde(default, deserialize_with = "de_seed")]
    seed: Option<u64>,
    output_dir: Option<PathBuf>,
    delta_tau: Option<f64>,
    n_ref: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub alpha: f64,
    pub beta: f64,
    pub d: usize,
    pub variant: Variant,
    pub measure: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub atoms: Option<Vec<Vec<f64>>>,
    pub n_grid: Vec<u64>,
    pub t_grid: Vec<f64>,
    pub n_samples: usize,
    #[serde(serialize_with = "ser_seed")]
    pub seed: u64,
    pub output_dir: PathBuf,
    pub delta_tau: f64,
    pub n_ref: u64,
}

// TOML integers are signed; seeds above i64::MAX round-trip as strings.
fn ser_seed<S: Serializer>(seed: &u64, s: S) -> Result<S::Ok, S::Error> {
    match i64::try_from(*seed) {
        Ok(v) => s.serialize_i64(v),
        Err(_) => s.serialize_str(&seed.to_string()),
    }
}

fn de_seed<'de, D: Deserializer<'de>>(d: D) -> Result<Option<u64>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Seed {
        Int(u64),
        Text(String),
    }
    match Seed::deserialize(d)? {
        Seed::Int(v) => Ok(Some(v)),
        Seed::Text(s) => s.parse().map(Some).map_err(serde::de::Error::custom),
    }
}

fn invalid(field: &'static str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        field,
        reason: reason.into(),
    }
}

/// Parse and validate a configuration document, filling defaults.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::Parse {
        line: e.span().map_or(1, |span| {
            text[..span.start.min(text.len())].matches('\n').count() + 1
        }),
        message: e.message().trim().to_string(),
    })?;
    let config = ExperimentConfig {
        alpha: raw.alpha,
        beta: raw.beta,
        d: raw.d,
        variant: raw.variant,
        measure: raw.measure.unwrap_or_else(|| "axes".into()),
        atoms: raw.atoms,
        n_grid: raw.n_grid.unwrap_or_else(|| vec![100, 1000, 10_000]),
        t_grid: raw.t_grid.unwrap_or_else(|| vec![1.0]),
        n_samples: raw.n_samples.unwrap_or(DEFAULT_N_SAMPLES),
        seed: raw.seed.unwrap_or(0),
        output_dir: raw.output_dir.unwrap_or_else(|| PathBuf::from("out")),
        delta_tau: raw.delta_tau.unwrap_or(DEFAULT_DELTA_TAU),
        n_ref: raw.n_ref.unwrap_or(DEFAULT_N_REF),
    };
    config.validate()?;
    Ok(config)
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        for (field, x) in [("alpha", self.alpha), ("beta", self.beta)] {
            if !(x > 0.0 && x < 1.0) {
                return Err(invalid(field, format!("{x} not in (0, 1)")));
            }
        }
        if self.d == 0 {
            return Err(invalid("d", "dimension must be at least 1"));
        }
        if self.n_grid.is_empty() {
            return Err(invalid("n_grid", "must not be empty"));
        }
        if self.n_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(invalid("n_grid", "must be strictly increasing"));
        }
        let min_n = if self.alpha == self.beta { 2 } else { 1 };
        if self.n_grid[0] < min_n {
            return Err(invalid(
                "n_grid",
                format!("scales must be at least {min_n}"),
            ));
        }
        if self.t_grid.is_empty() || self.t_grid.iter().any(|t| !(*t >= 0.0 && t.is_finite())) {
            return Err(invalid("t_grid", "need at least one finite time >= 0"));
        }
        if self.n_samples == 0 {
            return Err(invalid("n_samples", "must be at least 1"));
        }
        if !(self.delta_tau > 0.0 && self.delta_tau.is_finite()) {
            return Err(invalid(
                "delta_tau",
                format!("{} must be positive", self.delta_tau),
            ));
        }
        if (self.n_ref as f64) < MIN_REFERENCE_SCALE {
            return Err(invalid(
                "n_ref",
                format!("must be at least {MIN_REFERENCE_SCALE}"),
            ));
        }
        self.spectral_measure()?;
        Ok(())
    }

    pub fn spectral_measure(&self) -> Result<SpectralMeasure, ConfigError> {
        let d = self.d;
        if self.atoms.is_some() && self.measure != "atoms" {
            return Err(invalid("atoms", "only allowed with measure = \"atoms\""));
        }
        let built = match self.measure.as_str() {
            "axes" => SpectralMeasure::axes(d),
            "uniform-sphere" => SpectralMeasure::uniform_sphere(d),
            "positive-axis" => SpectralMeasure::positive_axis(d),
            "atoms" => {
                let rows = self
                    .atoms
                    .as_ref()
                    .ok_or_else(|| invalid("atoms", "required with measure = \"atoms\""))?;
                if rows.iter().any(|r| r.len() != d + 1) {
                    return Err(invalid(
                        "atoms",
                        format!("each atom needs {d} components and a probability"),
                    ));
                }
                let atoms: Vec<_> = rows.iter().map(|r| (r[..d].to_vec(), r[d])).collect();
                SpectralMeasure::atoms(&atoms)
            }
            other => return Err(invalid("measure", format!("unknown measure {other:?}"))),
        };
        built.map_err(|e| invalid("measure", e.to_string()))
    }

    /// Pareto durations and speeds with the configured direction law.
    pub fn model(&self) -> Result<WalkModel, ConfigError> {
        WalkModel::pareto(self.alpha, self.beta, self.spectral_measure()?)
            .map_err(|e| invalid("alpha", e.to_string()))
    }

    /// Flat key-value snapshot that parses back to the same config.
    pub fn to_document(&self) -> String {
        toml::to_string(self).expect("config serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "alpha = 0.5\nbeta = 0.8\nd = 1\nvariant = \"wait-first\"\n";

    #[test]
    fn minimal_document_gets_defaults() {
        let c = parse_config(MINIMAL).unwrap();
        assert_eq!(c.variant, Variant::WaitFirst);
        assert_eq!(c.delta_tau, 1e-3);
        assert_eq!(c.n_ref, 100_000);
        assert_eq!(c.n_samples, 10_000);
        assert_eq!(c.n_grid, vec![100, 1000, 10_000]);
        assert_eq!(c.measure, "axes");
    }

    #[test]
    fn out_of_range_names_field() {
        let err = parse_config(&MINIMAL.replace("alpha = 0.5", "alpha = 1.2")).unwrap_err();
        assert!(
            matches!(err, ConfigError::Invalid { field: "alpha", .. }),
            "{err}"
        );
        assert!(err.to_string().contains("alpha"));
        let err = parse_config(&format!("{MINIMAL}n_grid = [10, 10]\n")).unwrap_err();
        assert!(matches!(
            err,
            ConfigError::Invalid {
                field: "n_grid",
                ..
            }
        ));
        let err = parse_config(&format!("{MINIMAL}n_ref = 1000\n")).unwrap_err();
        assert!(matches!(err, ConfigError::Invalid { field: "n_ref", .. }));
    }

    #[test]
    fn duplicate_key_is_parse_error_with_line() {
        let err = parse_config(&format!("{MINIMAL}beta = 0.7\n")).unwrap_err();
        match err {
            ConfigError::Parse { line, .. } => assert_eq!(line, 5),
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn malformed_and_unknown() {
        assert!(matches!(
            parse_config("alpha = \n"),
            Err(ConfigError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_config(&format!("{MINIMAL}colour = 1\n")),
            Err(ConfigError::Parse { .. })
        ));
        assert!(matches!(
            parse_config(&MINIMAL.replace("wait-first", "sideways")),
            Err(ConfigError::Parse { .. })
        ));
    }

    #[test]
    fn atoms_measure() {
        let doc = format!(
            "{}measure = \"atoms\"\natoms = [[1.0, 0.25], [-1.0, 0.75]]\n",
            MINIMAL
        );
        let c = parse_config(&doc).unwrap();
        assert_eq!(c.spectral_measure().unwrap().dim(), 1);
        let bad = doc.replace("0.75", "0.5");
        assert!(matches!(
            parse_config(&bad),
            Err(ConfigError::Invalid {
                field: "measure",
                ..
            })
        ));
    }

    #[test]
    fn snapshot_round_trips() {
        let mut c = parse_config(MINIMAL).unwrap();
        c.seed = u64::MAX;
        assert_eq!(parse_config(&c.to_document()).unwrap(), c);
    }
}
