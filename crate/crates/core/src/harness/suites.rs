//! Named verification suites and on-disk experiment directories.
//!
//! A run of suite `s` writes `<output_dir>/<s>/` containing `config.toml`,
//! `report.csv` and, for suites that simulate walk ensembles,
//! `ensembles/<label>.csv` with a `<label>.meta.toml` sidecar.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::checks::{
    collapse_rows, counting_rows, coupling_rows, critical_rows, exponent_rows, hill_rows,
    interpolation_rows, laplace_rows, pathwise_rows, survival_rows, CheckOutput,
};
use super::config::ExperimentConfig;
use super::report::{read_report, write_report, ReportRow};
use crate::io::{create, csv_err, csv_writer, fmt_f64, write_string};
use crate::par::with_threads;
use crate::randgen::TailLaw;
use crate::scaling::{limit_proxy_ensemble, rescaled_ensemble, EnsembleSnapshot, Regime};
use crate::stats::log_spaced;
use crate::{Error, Result, StreamKey};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Laplace,
    Tails,
    Critical,
    Collapse,
    Exponents,
    Invariants,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Laplace,
        Suite::Tails,
        Suite::Critical,
        Suite::Collapse,
        Suite::Exponents,
        Suite::Invariants,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Laplace => "laplace",
            Suite::Tails => "tails",
            Suite::Critical => "critical",
            Suite::Collapse => "collapse",
            Suite::Exponents => "exponents",
            Suite::Invariants => "invariants",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::domain("suite", format!("unknown suite {s:?}")))
    }
}

pub const LAPLACE_DRAWS: usize = 100_000;
pub const LAPLACE_S: [f64; 3] = [0.5, 1.0, 2.0];
pub const TAIL_DRAWS: usize = 1_000_000;
pub const HILL_K: usize = 10_000;
pub const CRITICAL_DRAWS: usize = 10_000_000;
pub const COUNTING_N: f64 = 1e6;
pub const PATHWISE_HORIZON: f64 = 1e6;
pub const INVARIANT_TRAJECTORIES: usize = 1000;
pub const INVARIANT_TIMES: usize = 100;

/// Log-spaced grid `[1e2, 1e4]` for the product-tail regression.
pub fn critical_grid() -> Vec<f64> {
    log_spaced(1e2, 1e4, 21)
}

#[derive(Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub rows: Vec<ReportRow>,
    pub dir: PathBuf,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

fn rows_only(rows: Vec<ReportRow>) -> CheckOutput {
    CheckOutput {
        rows,
        ensembles: Vec::new(),
    }
}

fn n_grid(config: &ExperimentConfig) -> Vec<f64> {
    config.n_grid.iter().map(|&n| n as f64).collect()
}

fn compute(config: &ExperimentConfig, suite: Suite) -> Result<CheckOutput> {
    let seed = config.seed;
    let (alpha, beta) = (config.alpha, config.beta);
    let model = config.model()?;
    match suite {
        Suite::Laplace => Ok(rows_only(laplace_rows(
            &[alpha],
            &LAPLACE_S,
            LAPLACE_DRAWS,
            seed,
        )?)),
        Suite::Tails => {
            let mut rows = survival_rows("durations", &TailLaw::pareto(alpha)?, TAIL_DRAWS, seed);
            rows.extend(survival_rows(
                "speeds",
                &TailLaw::pareto(beta)?,
                TAIL_DRAWS,
                seed,
            ));
            rows.extend(hill_rows(alpha, beta, TAIL_DRAWS, HILL_K, seed)?);
            Ok(rows_only(rows))
        }
        Suite::Critical => {
            let control = (beta != alpha).then_some(beta);
            Ok(rows_only(critical_rows(
                alpha,
                control,
                CRITICAL_DRAWS,
                &critical_grid(),
                seed,
            )?))
        }
        Suite::Collapse => {
            let ns = n_grid(config);
            if ns.len() < 2 {
                return Err(Error::domain(
                    "n_grid",
                    "collapse needs at least two scales",
                ));
            }
            let pair = (ns[ns.len() - 2], ns[ns.len() - 1]);
            let mut out = CheckOutput::default();
            for &t in &config.t_grid {
                let part = collapse_rows(&model, config.variant, pair, t, config.n_samples, seed)?;
                out.rows.extend(part.rows);
                out.ensembles.extend(part.ensembles);
            }
            let n_last = *config.n_grid.last().expect("validated") as usize;
            out.rows
                .extend(coupling_rows(&model, n_last, config.n_samples, seed)?);
            let (rows, _) =
                counting_rows(alpha, COUNTING_N, config.n_samples, config.delta_tau, seed)?;
            out.rows.extend(rows);
            Ok(out)
        }
        Suite::Exponents => exponent_rows(
            &model,
            config.variant,
            &n_grid(config),
            config.t_grid[0],
            config.n_samples,
            seed,
        ),
        Suite::Invariants => {
            let trajectories = config.n_samples.min(INVARIANT_TRAJECTORIES);
            let mut rows = pathwise_rows(
                &model,
                trajectories,
                INVARIANT_TIMES,
                PATHWISE_HORIZON,
                seed,
            )?;
            rows.extend(interpolation_rows(
                &model,
                trajectories,
                INVARIANT_TIMES,
                config.delta_tau,
                seed,
            )?);
            Ok(rows_only(rows))
        }
    }
}

fn write_ensembles(dir: &Path, ensembles: &[(String, EnsembleSnapshot)]) -> Result<()> {
    for (label, e) in ensembles {
        e.write_csv(&dir.join(format!("{label}.csv")))?;
        e.write_meta(&dir.join(format!("{label}.meta.toml")))?;
    }
    Ok(())
}

fn write_rows(path: &Path, rows: &[ReportRow]) -> Result<()> {
    write_report(rows, create(path)?).map_err(csv_err(path))
}

/// Run `suite` under `config`, writing its experiment directory.
///
/// `threads` pins the worker count; outputs are identical for every choice.
pub fn run_suite(
    config: &ExperimentConfig,
    suite: Suite,
    threads: Option<usize>,
) -> Result<SuiteReport> {
    config.validate()?;
    let output = with_threads(threads, || compute(config, suite))??;
    let dir = config.output_dir.join(suite.as_str());
    write_string(&dir.join("config.toml"), &config.to_document())?;
    write_ensembles(&dir.join("ensembles"), &output.ensembles)?;
    write_rows(&dir.join("report.csv"), &output.rows)?;
    Ok(SuiteReport {
        suite,
        rows: output.rows,
        dir,
    })
}

/// Dump rescaled ensembles for every `(n, t)` in the grids, the first few
/// trajectories in full, and optionally the reference-scale proxy ensembles.
pub fn simulate(
    config: &ExperimentConfig,
    threads: Option<usize>,
    with_proxy: bool,
) -> Result<PathBuf> {
    config.validate()?;
    let model = config.model()?;
    let dir = config.output_dir.join("simulate");
    let key = |label: String| StreamKey::labeled(config.seed, &label);
    let ensembles = with_threads(threads, || -> Result<Vec<(String, EnsembleSnapshot)>> {
        let mut out = Vec::new();
        for &t in &config.t_grid {
            for &n in &config.n_grid {
                let label = format!("ensemble_n={n}_t={t}");
                let e = rescaled_ensemble(
                    &model,
                    config.variant,
                    n as f64,
                    t,
                    config.n_samples,
                    key(label.clone()),
                )?;
                out.push((label, e));
            }
            if with_proxy {
                let label = format!("proxy_n={}_t={t}", config.n_ref);
                let e = limit_proxy_ensemble(
                    &model,
                    config.variant,
                    t,
                    config.n_samples,
                    config.n_ref as f64,
                    key(label.clone()),
                )?;
                out.push((label, e));
            }
        }
        Ok(out)
    })??;
    write_string(&dir.join("config.toml"), &config.to_document())?;
    write_ensembles(&dir.join("ensembles"), &ensembles)?;

    let regime = Regime::of_model(&model)?;
    let n_max = *config.n_grid.last().expect("validated") as f64;
    let t_max = config.t_grid.iter().cloned().fold(0.0, f64::max);
    let horizon = regime.time_norm(n_max) * t_max;
    let traj_key = key("trajectories".into());
    for i in 0..config.n_samples.min(10) {
        let mut walker = model.walker(traj_key, i as u64);
        walker.extend_past(horizon)?;
        let path = dir.join("trajectories").join(format!("trajectory_{i}.csv"));
        walker
            .trajectory()
            .write_csv(create(&path)?)
            .map_err(csv_err(&path))?;
    }
    Ok(dir)
}

/// All `report.csv` rows under `root` (the root itself and its immediate
/// subdirectories), labelled by directory name and sorted by it.
pub fn collect_reports(root: &Path) -> Result<Vec<(String, ReportRow)>> {
    let io_err = |source| Error::Io {
        path: root.to_path_buf(),
        source,
    };
    let mut dirs = vec![root.to_path_buf()];
    for entry in std::fs::read_dir(root).map_err(io_err)? {
        let path = entry.map_err(io_err)?.path();
        if path.is_dir() {
            dirs.push(path);
        }
    }
    dirs.sort();
    let mut out = Vec::new();
    for dir in dirs {
        let report = dir.join("report.csv");
        if !report.is_file() {
            continue;
        }
        let label = dir
            .strip_prefix(root)
            .ok()
            .and_then(|p| p.to_str())
            .filter(|s| !s.is_empty())
            .unwrap_or(".")
            .to_string();
        out.extend(
            read_report(&report)?
                .into_iter()
                .map(|r| (label.clone(), r)),
        );
    }
    Ok(out)
}

/// Write `<root>/summary.csv` aggregating every report under `root`.
pub fn write_summary(root: &Path) -> Result<(PathBuf, Vec<(String, ReportRow)>)> {
    let rows = collect_reports(root)?;
    if rows.is_empty() {
        return Err(Error::InsufficientData(format!(
            "no report.csv under {}",
            root.display()
        )));
    }
    let path = root.join("summary.csv");
    let mut w = csv_writer(create(&path)?);
    let result = (|| {
        w.write_record([
            "run",
            "test",
            "parameters",
            "statistic",
            "threshold",
            "verdict",
        ])?;
        for (run, r) in &rows {
            w.write_record([
                run.as_str(),
                r.test.as_str(),
                r.parameters.as_str(),
                &fmt_f64(r.statistic),
                r.threshold.as_str(),
                r.verdict(),
            ])?;
        }
        w.flush()?;
        Ok(())
    })();
    result.map_err(csv_err(&path))?;
    Ok((path, rows))
}
