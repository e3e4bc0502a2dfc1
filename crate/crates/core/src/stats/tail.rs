use super::regression::ols;
use super::sort_floats;
use crate::randgen::TailLaw;
use crate::{Error, Result};

/// `alpha z^-alpha ln z`, the leading tail of a product of two independent
/// factors with the same tail index `alpha` and unit tail constants.
pub fn product_tail_theory(z: f64, alpha: f64) -> Result<f64> {
    TailLaw::pareto(alpha)?;
    if !(z > 1.0) {
        return Err(Error::domain("z", format!("{z} must exceed 1")));
    }
    Ok(alpha * z.powf(-alpha) * z.ln())
}

/// `m` points log-spaced from `lo` to `hi` inclusive.
pub fn log_spaced(lo: f64, hi: f64, m: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..m)
        .map(|i| {
            if i + 1 == m {
                hi
            } else {
                (a + (b - a) * i as f64 / (m - 1) as f64).exp()
            }
        })
        .collect()
}

/// Regression of `z^alpha P(X > z)` on `ln z`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogCorrectionFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_se: f64,
    pub residual_norm: f64,
    /// Grid points with a nonzero tail count.
    pub z_grid: Vec<f64>,
}

/// Least-squares fit of `y(z) = z^alpha * P_hat(X > z)` against `ln z`.
///
/// A tail `alpha z^-alpha ln z` shows up as slope `alpha`; a pure power tail
/// with index `alpha` as slope 0.
pub fn log_correction_fit(samples: &[f64], z_grid: &[f64], alpha: f64) -> Result<LogCorrectionFit> {
    TailLaw::pareto(alpha)?;
    if z_grid.len() < 5 {
        return Err(Error::InsufficientData(format!(
            "{} grid points, need 5",
            z_grid.len()
        )));
    }
    if z_grid.windows(2).any(|w| !(w[1] > w[0])) || !(z_grid[0] > 0.0) {
        return Err(Error::domain(
            "z_grid",
            "must be positive and strictly increasing",
        ));
    }
    if samples.is_empty() {
        return Err(Error::InsufficientData("no samples".into()));
    }
    let mut s = samples.to_vec();
    sort_floats(&mut s);
    let (lo, hi) = (s[0], s[s.len() - 1]);
    if z_grid[0] < lo || z_grid[z_grid.len() - 1] > hi {
        return Err(Error::domain(
            "z_grid",
            format!("outside sample range [{lo}, {hi}]"),
        ));
    }
    let n = s.len() as f64;
    let (mut x, mut y, mut used) = (Vec::new(), Vec::new(), Vec::new());
    for &z in z_grid {
        let above = s.len() - s.partition_point(|&v| v <= z);
        if above > 0 {
            x.push(z.ln());
            y.push(z.powf(alpha) * above as f64 / n);
            used.push(z);
        }
    }
    if used.len() < 5 {
        return Err(Error::InsufficientData(format!(
            "{} grid points with nonzero tail counts, need 5",
            used.len()
        )));
    }
    let fit = ols(&x, &y)?;
    Ok(LogCorrectionFit {
        slope: fit.slope,
        intercept: fit.intercept,
        slope_se: fit.slope_se,
        residual_norm: fit.residual_norm,
        z_grid: used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn theory_values() {
        let e = std::f64::consts::E;
        assert_relative_eq!(
            product_tail_theory(e, 0.5).unwrap(),
            0.5 * (-0.5f64).exp(),
            epsilon = 1e-15
        );
        assert!(product_tail_theory(1.0 + 1e-12, 0.5).unwrap() < 1e-11);
        assert!(product_tail_theory(1.0, 0.5).is_err());
        assert!(product_tail_theory(0.5, 0.5).is_err());
    }

    #[test]
    fn theory_decreasing_past_peak() {
        for alpha in [0.3f64, 0.5, 0.8] {
            let start = (1.0 / alpha).exp();
            let grid = log_spaced(start, start * 1e6, 200);
            let vals: Vec<f64> = grid
                .iter()
                .map(|&z| product_tail_theory(z, alpha).unwrap())
                .collect();
            assert!(vals.windows(2).all(|w| w[1] < w[0]));
        }
    }

    #[test]
    fn grid_endpoints() {
        let g = log_spaced(1e2, 1e4, 5);
        assert_eq!(g.len(), 5);
        assert_relative_eq!(g[0], 100.0, max_relative = 1e-14);
        assert_eq!(g[4], 1e4);
        assert_relative_eq!(g[2], 1e3, max_relative = 1e-12);
    }

    #[test]
    fn exact_linear_input() {
        // Build a sample whose empirical survival at each grid point is exactly
        // (0.5 ln z) z^-0.5, i.e. y = 0.5 ln z.
        let grid = log_spaced(1e2, 1e4, 5);
        let n = 1_000_000usize;
        let mut samples = Vec::with_capacity(n);
        let mut prev_count = n;
        for (i, &z) in grid.iter().enumerate() {
            let p = 0.5 * z.ln() * z.powf(-0.5);
            let count = (p * n as f64).round() as usize;
            let below = prev_count - count;
            // `below` values just under the next grid point (or at z itself)
            let v = if i == 0 { z * 0.5 } else { z };
            samples.extend(std::iter::repeat_n(v, below));
            prev_count = count;
        }
        samples.extend(std::iter::repeat_n(2e4, prev_count));
        samples[0] = 1.0; // keep the grid inside the sample range
        let fit = log_correction_fit(&samples, &grid, 0.5).unwrap();
        assert!((fit.slope - 0.5).abs() < 1e-3, "{fit:?}");
        assert!(fit.residual_norm < 1e-3);
    }

    #[test]
    fn insufficient_and_invalid() {
        let grid = log_spaced(1e2, 1e4, 5);
        let small: Vec<f64> = (1..=1000).map(|i| i as f64 * 10.0).collect();
        // only the first grid points have exceedances
        assert!(matches!(
            log_correction_fit(&small, &grid, 0.5),
            Err(Error::InsufficientData(_))
        ));
        assert!(log_correction_fit(&small, &grid[..4], 0.5).is_err());
        assert!(log_correction_fit(&small, &[5.0, 4.0, 6.0, 7.0, 8.0], 0.5).is_err());
        assert!(log_correction_fit(&small, &grid, 1.5).is_err());
    }
}
