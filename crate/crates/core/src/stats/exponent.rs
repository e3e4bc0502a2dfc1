use super::regression::{ols, LinearFit};
use super::summary::quantile;
use crate::scaling::{EnsembleSnapshot, RegimeKind};
use crate::{Error, Result};

/// Growth exponent of a position quantile against the time horizon.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentFit {
    /// Slope of `ln Q_q(|X(tau_n)|)` on `ln tau_n`.
    pub slope: f64,
    /// Same regression after removing the `(ln n)^(1/alpha)` factor of the
    /// critical normalisation; equal to `slope` in the other regimes.
    pub log_corrected_slope: f64,
    pub fit: LinearFit,
    /// `(ln tau_n, ln Q_q)` per ensemble.
    pub points: Vec<(f64, f64)>,
}

/// Regress the `q`-quantile of the unrescaled radial position at horizon
/// `time_norm(n)` against `time_norm(n)`, on log-log axes.
pub fn scaling_exponent_fit(ensembles: &[EnsembleSnapshot], q: f64) -> Result<ExponentFit> {
    if ensembles.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "{} scales, need 3",
            ensembles.len()
        )));
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::domain("q", format!("{q} not in (0, 1)")));
    }
    let first = ensembles[0].meta();
    let regime = first.regime()?;
    let mut points = Vec::with_capacity(ensembles.len());
    let mut corrected = Vec::with_capacity(ensembles.len());
    for e in ensembles {
        let m = e.meta();
        if m.alpha != first.alpha || m.beta != first.beta {
            return Err(Error::domain(
                "ensembles",
                "mixed (alpha, beta) across scales",
            ));
        }
        let radial: Vec<f64> = e.radial().iter().map(|r| r * m.space_norm).collect();
        let qv = quantile(&radial, q)?;
        if !(qv > 0.0 && qv.is_finite()) {
            return Err(Error::InsufficientData(format!(
                "quantile {qv} at n = {}",
                m.n
            )));
        }
        let x = (m.time_norm * m.t).ln();
        let y = qv.ln();
        points.push((x, y));
        let log_factor = match regime.kind() {
            RegimeKind::Critical => m.n.ln().ln() / regime.alpha(),
            _ => 0.0,
        };
        corrected.push(y - log_factor);
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    if xs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::domain("ensembles", "repeated scale"));
    }
    let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    let fit = ols(&xs, &ys)?;
    let log_corrected_slope = ols(&xs, &corrected)?.slope;
    Ok(ExponentFit {
        slope: fit.slope,
        log_corrected_slope,
        fit,
        points,
    })
}
