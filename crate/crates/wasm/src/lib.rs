//! Browser demo: a sample path, a rescaled-position histogram and the
//! product-tail diagnostic, computed in the page.

use levywalk::randgen::TailLaw;
use levywalk::scaling::{classify_regime, rescaled_ensemble};
use levywalk::stats::{log_spaced, product_tail_theory};
use levywalk::{SpectralMeasure, StreamKey, Variant, WalkModel};
use wasm_bindgen::prelude::*;

fn msg<E: ToString>(e: E) -> String {
    e.to_string()
}

fn to_js(e: String) -> JsValue {
    JsValue::from_str(&e)
}

/// Planar walk with uniform directions, sampled at `points` equally spaced
/// times in `[0, horizon]`. Returns `[t, x, y]` triples, flattened.
pub fn walk_path_inner(
    alpha: f64,
    beta: f64,
    variant: &str,
    horizon: f64,
    points: usize,
    seed: u64,
) -> Result<Vec<f64>, String> {
    let variant: Variant = variant.parse().map_err(msg)?;
    let plane = SpectralMeasure::uniform_sphere(2).map_err(msg)?;
    let model = WalkModel::pareto(alpha, beta, plane).map_err(msg)?;
    if !(horizon > 0.0 && horizon.is_finite()) || points < 2 {
        return Err("need horizon > 0 and at least 2 points".into());
    }
    let mut walker = model.walker(StreamKey::new(seed, 0), 0);
    walker.extend_past(horizon).map_err(msg)?;
    let traj = walker.trajectory();
    let mut out = Vec::with_capacity(3 * points);
    for i in 0..points {
        let t = horizon * i as f64 / (points - 1) as f64;
        out.push(t);
        out.extend(traj.position(variant, t).map_err(msg)?);
    }
    Ok(out)
}

/// Density histogram of the rescaled wait-first position at scale `n`, `t = 1`,
/// on `bins` equal cells of `[-range, range]`; mass outside is dropped.
pub fn rescaled_histogram_inner(
    alpha: f64,
    beta: f64,
    n: f64,
    samples: usize,
    bins: usize,
    range: f64,
    seed: u64,
) -> Result<Vec<f64>, String> {
    if bins == 0 || range.is_nan() || range <= 0.0 {
        return Err("need bins >= 1 and range > 0".into());
    }
    let line = SpectralMeasure::axes(1).map_err(msg)?;
    let model = WalkModel::pareto(alpha, beta, line).map_err(msg)?;
    let e = rescaled_ensemble(
        &model,
        Variant::WaitFirst,
        n,
        1.0,
        samples,
        StreamKey::new(seed, 1),
    )
    .map_err(msg)?;
    let width = 2.0 * range / bins as f64;
    let mut hist = vec![0.0; bins];
    for x in e.coordinate(0) {
        let cell = ((x + range) / width).floor();
        if cell >= 0.0 && (cell as usize) < bins {
            hist[cell as usize] += 1.0;
        }
    }
    let scale = 1.0 / (samples as f64 * width);
    Ok(hist.into_iter().map(|c| c * scale).collect())
}

/// `z^a* P(V T > z)` for exact Pareto factors on 31 log-spaced `z` in
/// `[10, 1e4]`, with `a* = min(alpha, beta)`. Returns `[z, empirical, theory]`
/// triples; the theory column is the leading critical term `alpha ln z`
/// when `alpha == beta` and NaN otherwise.
pub fn product_survival_inner(
    alpha: f64,
    beta: f64,
    samples: usize,
    seed: u64,
) -> Result<Vec<f64>, String> {
    let t_law = TailLaw::pareto(alpha).map_err(msg)?;
    let v_law = TailLaw::pareto(beta).map_err(msg)?;
    let a_star = classify_regime(alpha, beta).map_err(msg)?.alpha_star();
    let mut rng = StreamKey::new(seed, 2).rng(0);
    let mut products: Vec<f64> = (0..samples)
        .map(|_| t_law.sample(&mut rng) * v_law.sample(&mut rng))
        .collect();
    products.sort_by(f64::total_cmp);
    let mut out = Vec::with_capacity(93);
    for z in log_spaced(10.0, 1e4, 31) {
        let above = products.len() - products.partition_point(|&x| x <= z);
        let emp = z.powf(a_star) * above as f64 / samples.max(1) as f64;
        let theory = if alpha == beta {
            z.powf(alpha) * product_tail_theory(z, alpha).map_err(msg)?
        } else {
            f64::NAN
        };
        out.extend([z, emp, theory]);
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn walk_path(
    alpha: f64,
    beta: f64,
    variant: &str,
    horizon: f64,
    points: usize,
    seed: u32,
) -> Result<Vec<f64>, JsValue> {
    walk_path_inner(alpha, beta, variant, horizon, points, seed.into()).map_err(to_js)
}

#[wasm_bindgen]
pub fn rescaled_histogram(
    alpha: f64,
    beta: f64,
    n: f64,
    samples: usize,
    bins: usize,
    range: f64,
    seed: u32,
) -> Result<Vec<f64>, JsValue> {
    rescaled_histogram_inner(alpha, beta, n, samples, bins, range, seed.into()).map_err(to_js)
}

#[wasm_bindgen]
pub fn product_survival(
    alpha: f64,
    beta: f64,
    samples: usize,
    seed: u32,
) -> Result<Vec<f64>, JsValue> {
    product_survival_inner(alpha, beta, samples, seed.into()).map_err(to_js)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_starts_at_origin_and_is_reproducible() {
        let a = walk_path_inner(0.6, 0.8, "continuous", 50.0, 20, 3).unwrap();
        assert_eq!(a.len(), 60);
        assert_eq!(&a[..3], &[0.0, 0.0, 0.0]);
        assert_eq!(
            a,
            walk_path_inner(0.6, 0.8, "continuous", 50.0, 20, 3).unwrap()
        );
        assert!(walk_path_inner(0.6, 0.8, "sideways", 50.0, 20, 3).is_err());
    }

    #[test]
    fn histogram_is_a_density() {
        let h = rescaled_histogram_inner(0.5, 0.8, 100.0, 2000, 40, 10.0, 1).unwrap();
        let mass: f64 = h.iter().sum::<f64>() * 0.5;
        assert!(mass > 0.5 && mass <= 1.0 + 1e-12, "{mass}");
    }

    #[test]
    fn critical_survival_tracks_theory() {
        let rows = product_survival_inner(0.5, 0.5, 200_000, 7).unwrap();
        let last = &rows[rows.len() - 3..];
        // Exact tail is (1 + alpha ln z) z^-alpha.
        assert!((last[1] - (1.0 + last[2])).abs() < 0.15, "{last:?}");
        assert!(product_survival_inner(0.5, 0.8, 1000, 7).unwrap()[2].is_nan());
    }
}
