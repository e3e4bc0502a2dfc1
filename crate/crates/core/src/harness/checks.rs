//! Individual Monte-Carlo checks. Each returns report rows; the ones built
//! on walk ensembles also hand back the ensembles for persistence.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use statrs::function::gamma::gamma;

use super::report::{Bound, ReportRow};
use crate::par::{map_indexed, try_map_indexed};
use crate::randgen::{
    build_subordinator_path, inverse_subordinator, sample_positive_stable, PathSampler,
    SpectralMeasure, SpeedLaw, TailLaw,
};
use crate::scaling::{
    interpolate_limit, joint_step_sums, rescaled_ensemble, EnsembleSnapshot, Regime, RegimeKind,
};
use crate::stats::{
    hill_estimator, ks_distance, log_correction_fit, mean_and_stderr, product_tail_theory,
    scaling_exponent_fit, spearman,
};
use crate::walk::{Variant, WalkModel};
use crate::{Error, Result, StreamKey};

/// Rows plus the labelled ensembles they were computed from.
#[derive(Debug, Default)]
pub struct CheckOutput {
    pub rows: Vec<ReportRow>,
    pub ensembles: Vec<(String, EnsembleSnapshot)>,
}

impl CheckOutput {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

const BLOCK: usize = 10_000;

/// `n` i.i.d. draws, generated in fixed blocks so the result does not depend
/// on how blocks are scheduled.
fn draws<F>(n: usize, key: StreamKey, f: F) -> Vec<f64>
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync + Send,
{
    let blocks = n.div_ceil(BLOCK);
    map_indexed(blocks, |b| {
        let mut rng = key.rng(b as u64);
        let m = BLOCK.min(n - b * BLOCK);
        (0..m).map(|_| f(&mut rng)).collect::<Vec<f64>>()
    })
    .concat()
}

fn z_score(estimate: f64, target: f64, se: f64) -> f64 {
    if se > 0.0 {
        (estimate - target).abs() / se
    } else if estimate == target {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Laplace transform of `S_alpha(1)` against `exp(-s^alpha)`, in standard errors.
pub fn laplace_rows(
    alphas: &[f64],
    s_values: &[f64],
    n_draws: usize,
    seed: u64,
) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    for &alpha in alphas {
        TailLaw::pareto(alpha)?;
        let key = StreamKey::labeled(seed, &format!("laplace/alpha={alpha}"));
        let s_draws = draws(n_draws, key, |rng| sample_positive_stable(alpha, rng));
        for &s in s_values {
            let ys: Vec<f64> = s_draws.iter().map(|x| (-s * x).exp()).collect();
            let (mean, se) = mean_and_stderr(&ys)?;
            rows.push(ReportRow::check(
                "laplace-transform",
                format!("alpha={alpha} s={s} N={n_draws}"),
                z_score(mean, (-s.powf(alpha)).exp(), se),
                Bound::AtMost(3.0),
            ));
        }
    }
    Ok(rows)
}

/// Empirical survival at `{2, 10, 100} x cutoff` against the closed form, in standard errors.
pub fn survival_rows(name: &str, law: &TailLaw, n_draws: usize, seed: u64) -> Vec<ReportRow> {
    let key = StreamKey::labeled(seed, &format!("survival/{name}/index={}", law.index()));
    let xs = draws(n_draws, key, |rng| law.sample(rng));
    [2.0, 10.0, 100.0]
        .iter()
        .map(|m| {
            let x = m * law.cutoff();
            let p = law.survival(x);
            let hits = xs.iter().filter(|&&v| v > x).count() as f64 / n_draws as f64;
            let se = (p * (1.0 - p) / n_draws as f64).sqrt();
            ReportRow::check(
                "pareto-survival",
                format!("{name} index={} x={x} N={n_draws}", law.index()),
                z_score(hits, p, se),
                Bound::AtMost(3.0),
            )
        })
        .collect()
}

/// Hill estimates for the duration tail and the product `V * T`.
///
/// The product row is skipped when `alpha == beta`, where a logarithmic
/// factor biases the estimator; the critical checks cover that case.
pub fn hill_rows(
    alpha: f64,
    beta: f64,
    n_draws: usize,
    k: usize,
    seed: u64,
) -> Result<Vec<ReportRow>> {
    let durations = TailLaw::pareto(alpha)?;
    let speeds = TailLaw::pareto(beta)?;
    let key = StreamKey::labeled(seed, &format!("hill/alpha={alpha}/beta={beta}"));
    let ts = draws(n_draws, key.child(0), |rng| durations.sample(rng));
    let fit = hill_estimator(&ts, k)?;
    let mut rows = vec![ReportRow::check(
        "hill-durations",
        format!("alpha={alpha} N={n_draws} k={k}"),
        fit.estimate,
        Bound::Within {
            target: alpha,
            tol: 0.02,
        },
    )];
    if alpha != beta {
        let products = draws(n_draws, key.child(1), |rng| {
            let t = durations.sample(rng);
            t * speeds.sample(rng)
        });
        let fit = hill_estimator(&products, k)?;
        rows.push(ReportRow::check(
            "hill-product",
            format!("alpha={alpha} beta={beta} N={n_draws} k={k}"),
            fit.estimate,
            Bound::Within {
                target: alpha.min(beta),
                tol: 0.05,
            },
        ));
    }
    Ok(rows)
}

fn pareto_products(alpha: f64, beta: f64, n_draws: usize, key: StreamKey) -> Result<Vec<f64>> {
    let t_law = TailLaw::pareto(alpha)?;
    let v_law = TailLaw::pareto(beta)?;
    Ok(draws(n_draws, key, |rng| {
        let t = t_law.sample(rng);
        t * v_law.sample(rng)
    }))
}

/// Logarithmic correction of the product tail: slope `alpha` when both
/// factors share the index, slope zero (within two standard errors) otherwise.
pub fn critical_rows(
    alpha: f64,
    control_beta: Option<f64>,
    n_draws: usize,
    z_grid: &[f64],
    seed: u64,
) -> Result<Vec<ReportRow>> {
    let grid_desc = format!(
        "z=[{}..{}]x{}",
        z_grid[0],
        z_grid[z_grid.len() - 1],
        z_grid.len()
    );
    let products = pareto_products(
        alpha,
        alpha,
        n_draws,
        StreamKey::labeled(seed, &format!("critical/alpha={alpha}")),
    )?;
    let fit = log_correction_fit(&products, z_grid, alpha)?;
    let mut rows = vec![ReportRow::check(
        "log-correction-slope",
        format!("alpha=beta={alpha} N={n_draws} {grid_desc}"),
        fit.slope,
        Bound::Within {
            target: alpha,
            tol: 0.2 * alpha,
        },
    )];

    // Empirical tail over the leading term approaches 1 from above.
    let mut excess = Vec::new();
    for z in [1e2, 1e3, 1e4] {
        let p = products.iter().filter(|&&x| x > z).count() as f64 / n_draws as f64;
        excess.push((p / product_tail_theory(z, alpha)? - 1.0).abs());
    }
    let worst = excess
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max);
    rows.push(ReportRow::check(
        "product-tail-ratio-trend",
        format!("alpha=beta={alpha} z=1e2,1e3,1e4"),
        worst,
        Bound::AtMost(0.0),
    ));
    drop(products);

    if let Some(beta) = control_beta {
        let key = StreamKey::labeled(seed, &format!("critical-control/alpha={alpha}/beta={beta}"));
        let products = pareto_products(alpha, beta, n_draws, key)?;
        let fit = log_correction_fit(&products, z_grid, alpha.min(beta))?;
        rows.push(ReportRow::check(
            "log-correction-control",
            format!(
                "alpha={alpha} beta={beta} N={n_draws} {grid_desc} slope={}",
                fit.slope
            ),
            z_score(fit.slope, 0.0, fit.slope_se),
            Bound::Below(2.0),
        ));
    }
    Ok(rows)
}

/// Mean first passage above 1 of one grid path at three nested resolutions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InverseMeans {
    pub coarse: f64,
    pub half: f64,
    pub quarter: f64,
    pub quarter_se: f64,
}

/// `n^-alpha N(n)` against `S_alpha^-1(1)` read off grid paths.
///
/// Durations use the tail constant `1 / Gamma(1 - alpha)`, under which the
/// rescaled duration sums converge to the subordinator with Laplace exponent
/// `s^alpha`. Grid paths are simulated at `delta_tau / 4` and coarsened, so the
/// three resolutions see the same path.
pub fn counting_rows(
    alpha: f64,
    n: f64,
    n_trajectories: usize,
    delta_tau: f64,
    seed: u64,
) -> Result<(Vec<ReportRow>, InverseMeans)> {
    let durations = TailLaw::stable_domain(alpha)?;
    let model = WalkModel::new(
        durations,
        SpeedLaw::constant(1.0)?,
        SpectralMeasure::positive_axis(1)?,
    );
    let key = StreamKey::labeled(seed, &format!("counting/alpha={alpha}/n={n}"));
    let norm = n.powf(alpha);
    let counts = try_map_indexed(n_trajectories, |i| {
        let mut walker = model.walker(key.child(0), i as u64);
        Ok::<_, Error>(walker.renewal_count(n)? as f64 / norm)
    })?;
    let (count_mean, count_se) = mean_and_stderr(&counts)?;

    let sampler = PathSampler::new(alpha, delta_tau / 4.0, None)?;
    let inverses = try_map_indexed(n_trajectories, |i| {
        let mut rng = key.child(1).rng(i as u64);
        let mut path = sampler.empty_path();
        sampler.extend_past(&mut path, 1.0, 4, &mut rng);
        let quarter = inverse_subordinator(&path, 1.0)?;
        let half = inverse_subordinator(&path.coarsen(2)?, 1.0)?;
        let coarse = inverse_subordinator(&path.coarsen(4)?, 1.0)?;
        Ok::<_, Error>([coarse, half, quarter])
    })?;
    let column = |j: usize| inverses.iter().map(|r| r[j]).collect::<Vec<f64>>();
    let (coarse, _) = mean_and_stderr(&column(0))?;
    let (half, _) = mean_and_stderr(&column(1))?;
    let (quarter, quarter_se) = mean_and_stderr(&column(2))?;
    let means = InverseMeans {
        coarse,
        half,
        quarter,
        quarter_se,
    };

    let params = format!("alpha={alpha} n={n} trajectories={n_trajectories} delta_tau={delta_tau}");
    let rows = vec![
        ReportRow::check(
            "counting-vs-inverse",
            format!(
                "{params} counting_mean={count_mean} counting_se={count_se} inverse_mean={coarse}"
            ),
            (count_mean - coarse).abs() / coarse,
            Bound::AtMost(0.05),
        ),
        ReportRow::check(
            "inverse-grid-refinement",
            format!("{params} means={coarse},{half},{quarter}"),
            (half - quarter).abs() / (coarse - half).abs(),
            Bound::Below(1.0),
        ),
        ReportRow::check(
            "inverse-mean",
            format!(
                "alpha={alpha} delta_tau={} target=1/Gamma(1+alpha)",
                delta_tau / 4.0
            ),
            z_score(quarter, 1.0 / gamma(1.0 + alpha), quarter_se),
            Bound::AtMost(3.0),
        ),
    ];
    Ok((rows, means))
}

fn model_desc(model: &WalkModel) -> String {
    format!(
        "alpha={} beta={} {}",
        model.alpha(),
        model.beta(),
        model.directions.describe()
    )
}

/// Two-sample KS between rescaled ensembles at `n_pair.0` and `n_pair.1`,
/// with an equal-`n` control pair, on the first coordinate.
pub fn collapse_rows(
    model: &WalkModel,
    variant: Variant,
    n_pair: (f64, f64),
    t: f64,
    n_samples: usize,
    seed: u64,
) -> Result<CheckOutput> {
    let (n1, n2) = n_pair;
    let tag = format!(
        "alpha={}_beta={}_{variant}_t={t}",
        model.alpha(),
        model.beta()
    );
    let key =
        |n: f64, rep: u64| StreamKey::labeled(seed, &format!("collapse/{tag}/n={n}/rep={rep}"));
    let a = rescaled_ensemble(model, variant, n1, t, n_samples, key(n1, 0))?;
    let b = rescaled_ensemble(model, variant, n2, t, n_samples, key(n2, 0))?;
    let c = rescaled_ensemble(model, variant, n2, t, n_samples, key(n2, 1))?;
    let params = format!("{} {variant} t={t} N={n_samples}", model_desc(model));
    let rows = vec![
        ReportRow::check(
            "collapse-ks",
            format!("{params} n={n1} vs n={n2}"),
            ks_distance(&a.coordinate(0), &b.coordinate(0))?,
            Bound::AtMost(0.03),
        ),
        ReportRow::check(
            "collapse-ks-control",
            format!("{params} n={n2} vs n={n2}"),
            ks_distance(&b.coordinate(0), &c.coordinate(0))?,
            Bound::AtMost(0.03),
        ),
    ];
    Ok(CheckOutput {
        rows,
        ensembles: vec![
            (format!("collapse_{tag}_n={n1}"), a),
            (format!("collapse_{tag}_n={n2}"), b),
            (format!("collapse_{tag}_n={n2}_control"), c),
        ],
    })
}

/// Expected growth exponent of the position against time.
pub fn expected_exponent(regime: &Regime) -> f64 {
    regime.alpha() / regime.alpha_star()
}

/// Growth exponent of the median radial position over `n_grid`.
pub fn exponent_rows(
    model: &WalkModel,
    variant: Variant,
    n_grid: &[f64],
    t: f64,
    n_samples: usize,
    seed: u64,
) -> Result<CheckOutput> {
    let regime = Regime::of_model(model)?;
    let tag = format!(
        "alpha={}_beta={}_{variant}_t={t}",
        model.alpha(),
        model.beta()
    );
    let mut ensembles = Vec::new();
    for &n in n_grid {
        let key = StreamKey::labeled(seed, &format!("exponent/{tag}/n={n}"));
        ensembles.push(rescaled_ensemble(model, variant, n, t, n_samples, key)?);
    }
    let fit = scaling_exponent_fit(&ensembles, 0.5)?;
    let target = expected_exponent(&regime);
    let tol = if target == 1.0 { 0.1 } else { 0.15 };
    let params = format!(
        "{} {variant} t={t} N={n_samples} n={n_grid:?} q=0.5",
        model_desc(model)
    );
    let mut rows = Vec::new();
    if regime.kind() == RegimeKind::Critical {
        rows.push(ReportRow::check(
            "exponent-log-corrected",
            format!("{params} raw_slope={}", fit.slope),
            fit.log_corrected_slope,
            Bound::Within { target, tol },
        ));
        rows.push(ReportRow::check(
            "exponent-log-excess",
            params,
            fit.slope - fit.log_corrected_slope,
            Bound::Above(0.0),
        ));
    } else {
        rows.push(ReportRow::check(
            "exponent",
            params,
            fit.slope,
            Bound::Within { target, tol },
        ));
    }
    let ensembles = n_grid
        .iter()
        .zip(ensembles)
        .map(|(n, e)| (format!("exponent_{tag}_n={n}"), e))
        .collect();
    Ok(CheckOutput { rows, ensembles })
}

/// Rank correlation between the radial displacement sum and the duration sum
/// after `n_steps` steps, in null standard errors `1 / sqrt(N - 1)`.
///
/// Dependent when the walk is coupled (`alpha < beta`), independent otherwise.
pub fn coupling_rows(
    model: &WalkModel,
    n_steps: usize,
    n_samples: usize,
    seed: u64,
) -> Result<Vec<ReportRow>> {
    if n_samples < 3 {
        return Err(Error::InsufficientData(format!(
            "{n_samples} samples, need 3"
        )));
    }
    let regime = Regime::of_model(model)?;
    let key = StreamKey::labeled(
        seed,
        &format!(
            "coupling/alpha={}/beta={}/n={n_steps}",
            model.alpha(),
            model.beta()
        ),
    );
    let sums = joint_step_sums(model, n_steps, n_samples, key)?;
    let rho = spearman(&sums.radial(), &sums.durations)?;
    let z = rho.abs() * ((n_samples - 1) as f64).sqrt();
    let (test, bound) = if regime.coupled() {
        ("coupling-dependent", Bound::Above(3.0))
    } else {
        ("coupling-independent", Bound::AtMost(3.0))
    };
    Ok(vec![ReportRow::check(
        test,
        format!(
            "{} n={n_steps} N={n_samples} spearman={rho}",
            model_desc(model)
        ),
        z,
        bound,
    )])
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn diff_norm(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

#[derive(Default)]
struct PathwiseErrors {
    sandwich: f64,
    at_renewal: f64,
    interpolation: f64,
    count_mismatches: usize,
}

/// Exact identities between the three walk variants at renewal times and at
/// uniformly drawn times on trajectories that run past `horizon`.
pub fn pathwise_rows(
    model: &WalkModel,
    n_trajectories: usize,
    n_times: usize,
    horizon: f64,
    seed: u64,
) -> Result<Vec<ReportRow>> {
    let key = StreamKey::labeled(
        seed,
        &format!("pathwise/alpha={}/beta={}", model.alpha(), model.beta()),
    );
    let per_traj = try_map_indexed(n_trajectories, |i| {
        let mut walker = model.walker(key.child(0), i as u64);
        walker.extend_past(horizon)?;
        if walker.trajectory().len() < 2 {
            walker.step();
        }
        let traj = walker.trajectory();
        let mut rng = key.child(1).rng(i as u64);
        let mut err = PathwiseErrors::default();
        let last = traj.len() - 1;
        for q in 0..n_times {
            let at_renewal = q % 2 == 0;
            let (t, k) = if at_renewal {
                let k = rng.random_range(1..=last);
                (traj.renewal_time(k), Some(k))
            } else {
                (rng.random::<f64>() * traj.total_duration(), None)
            };
            let count = traj.renewal_count(t)?;
            if k.is_some_and(|k| k != count) {
                err.count_mismatches += 1;
            }
            let u = traj.position_wait_first(t)?;
            let o = traj.position_jump_first(t)?;
            let w = traj.position_continuous(t)?;
            let jump = traj.jump(count);
            let gap: Vec<f64> = o.iter().zip(&u).map(|(a, b)| a - b).collect();
            let scale = norm(&u) + norm(&o) + f64::MIN_POSITIVE;
            err.sandwich = err.sandwich.max(diff_norm(&gap, &jump) / scale);
            let travelled = traj.speed(count) * (t - traj.renewal_time(count));
            let scale = norm(&u) + norm(&w) + travelled + f64::MIN_POSITIVE;
            err.interpolation = err
                .interpolation
                .max((diff_norm(&w, &u) - travelled).abs() / scale);
            if at_renewal {
                err.at_renewal = err
                    .at_renewal
                    .max(diff_norm(&w, &u) / (norm(&u) + f64::MIN_POSITIVE));
            }
        }
        Ok::<_, Error>(err)
    })?;
    let worst = per_traj
        .iter()
        .fold(PathwiseErrors::default(), |acc, e| PathwiseErrors {
            sandwich: acc.sandwich.max(e.sandwich),
            at_renewal: acc.at_renewal.max(e.at_renewal),
            interpolation: acc.interpolation.max(e.interpolation),
            count_mismatches: acc.count_mismatches + e.count_mismatches,
        });
    let params = format!(
        "{} trajectories={n_trajectories} times={n_times} horizon={horizon}",
        model_desc(model)
    );
    Ok(vec![
        ReportRow::check(
            "sandwich-identity",
            params.clone(),
            worst.sandwich,
            Bound::AtMost(1e-9),
        ),
        ReportRow::check(
            "continuous-at-renewal",
            params.clone(),
            worst.at_renewal,
            Bound::AtMost(1e-9),
        ),
        ReportRow::check(
            "continuous-offset",
            params.clone(),
            worst.interpolation,
            Bound::AtMost(1e-9),
        ),
        ReportRow::check(
            "renewal-count-inclusive",
            params,
            worst.count_mismatches as f64,
            Bound::AtMost(0.0),
        ),
    ])
}

/// Interpolation weights on marked grid paths lie in `[0, 1]`, and the
/// interpolated position moves no faster than the largest speed mark.
pub fn interpolation_rows(
    model: &WalkModel,
    n_paths: usize,
    n_times: usize,
    delta_tau: f64,
    seed: u64,
) -> Result<Vec<ReportRow>> {
    let key = StreamKey::labeled(
        seed,
        &format!(
            "interpolation/alpha={}/beta={}",
            model.alpha(),
            model.beta()
        ),
    );
    let marks = Some((&model.speeds, &model.directions));
    let per_path = try_map_indexed(n_paths, |i| {
        let mut rng = key.rng(i as u64);
        let path = build_subordinator_path(model.alpha(), 1.0, delta_tau, marks, &mut rng)?;
        let jm = path.marks().expect("built with marks");
        let v_max = (0..path.len()).map(|k| jm.speed(k)).fold(0.0, f64::max);
        let last = path.last_value();
        let h = last * 1e-6;
        let (mut bad_weights, mut worst_ratio, mut found) = (0usize, 0.0f64, 0usize);
        let mut attempts = 0usize;
        while found < n_times {
            attempts += 1;
            if attempts > 100 * n_times {
                return Err(Error::Degenerate("no off-range times found".into()));
            }
            let t = rng.random::<f64>() * last;
            let p = interpolate_limit(&path, t)?;
            let Some(w) = p.weight else { continue };
            found += 1;
            if !(0.0..=1.0).contains(&w) {
                bad_weights += 1;
            }
            let s = if t + h < last { t + h } else { t - h };
            let q = interpolate_limit(&path, s)?;
            let moved = diff_norm(&p.position, &q.position);
            let allowed = (s - t).abs() * v_max + 1e-9 * (norm(&p.position) + norm(&q.position));
            worst_ratio = worst_ratio.max(moved / allowed);
        }
        Ok::<_, Error>((bad_weights, worst_ratio))
    })?;
    let bad: usize = per_path.iter().map(|r| r.0).sum();
    let ratio = per_path.iter().map(|r| r.1).fold(0.0, f64::max);
    let params = format!(
        "{} paths={n_paths} times={n_times} delta_tau={delta_tau}",
        model_desc(model)
    );
    Ok(vec![
        ReportRow::check(
            "interpolation-weight-range",
            params.clone(),
            bad as f64,
            Bound::AtMost(0.0),
        ),
        ReportRow::check(
            "interpolation-speed-bound",
            params,
            ratio,
            Bound::AtMost(1.0),
        ),
    ])
}
