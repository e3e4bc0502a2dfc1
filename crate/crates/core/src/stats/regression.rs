use crate::{Error, Result};

/// Ordinary least squares `y = intercept + slope * x`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Classical standard error of the slope from the residual variance.
    pub slope_se: f64,
    pub residual_norm: f64,
}

pub fn ols(x: &[f64], y: &[f64]) -> Result<LinearFit> {
    let m = x.len();
    if m != y.len() {
        return Err(Error::domain("y", "length differs from x"));
    }
    if m < 3 {
        return Err(Error::InsufficientData(format!(
            "{m} points, need at least 3"
        )));
    }
    let mf = m as f64;
    let mx = x.iter().sum::<f64>() / mf;
    let my = y.iter().sum::<f64>() / mf;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    if !(sxx > 0.0) {
        return Err(Error::Degenerate("regressor has zero spread".into()));
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - intercept - slope * a).powi(2))
        .sum();
    Ok(LinearFit {
        slope,
        intercept,
        slope_se: (rss / (mf - 2.0) / sxx).sqrt(),
        residual_norm: rss.sqrt(),
    })
}
