use std::fmt;

use serde::{Deserialize, Serialize};

use crate::walk::WalkModel;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegimeKind {
    /// `alpha < beta`: durations dominate; space and time share jumps.
    SubordinatorDominated,
    /// `beta < alpha`: speeds dominate; space and time decouple in the limit.
    VelocityDominated,
    /// `alpha == beta`: logarithmic correction to the space normalisation.
    Critical,
}

impl fmt::Display for RegimeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegimeKind::SubordinatorDominated => "subordinator-dominated",
            RegimeKind::VelocityDominated => "velocity-dominated",
            RegimeKind::Critical => "critical",
        })
    }
}

/// Scaling regime of a walk with duration index `alpha` and speed index `beta`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Regime {
    kind: RegimeKind,
    alpha: f64,
    beta: f64,
}

/// Critical regime only on exact equality of the supplied indices.
pub fn classify_regime(alpha: f64, beta: f64) -> Result<Regime> {
    for (name, x) in [("alpha", alpha), ("beta", beta)] {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::domain(name, format!("{x} not in (0, 1)")));
        }
    }
    let kind = if alpha < beta {
        RegimeKind::SubordinatorDominated
    } else if beta < alpha {
        RegimeKind::VelocityDominated
    } else {
        RegimeKind::Critical
    };
    Ok(Regime { kind, alpha, beta })
}

impl Regime {
    /// Regime of a model; a constant speed behaves like `beta = +inf`.
    pub fn of_model(model: &WalkModel) -> Result<Self> {
        match model.speeds.index() {
            Some(beta) => classify_regime(model.alpha(), beta),
            None => {
                classify_regime(model.alpha(), 0.5)?;
                Ok(Regime {
                    kind: RegimeKind::SubordinatorDominated,
                    alpha: model.alpha(),
                    beta: f64::INFINITY,
                })
            }
        }
    }

    pub(crate) fn from_indices(alpha: f64, beta: f64) -> Result<Self> {
        if beta.is_infinite() {
            classify_regime(alpha, 0.5)?;
            return Ok(Regime {
                kind: RegimeKind::SubordinatorDominated,
                alpha,
                beta,
            });
        }
        classify_regime(alpha, beta)
    }

    pub fn kind(&self) -> RegimeKind {
        self.kind
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn alpha_star(&self) -> f64 {
        self.alpha.min(self.beta)
    }

    /// Spatial and temporal jumps share the limit's jumps only for `alpha < beta`.
    pub fn coupled(&self) -> bool {
        self.kind == RegimeKind::SubordinatorDominated
    }

    /// `n^(1/alpha)`, `n^(1/beta)` or `(n log n)^(1/alpha)`.
    ///
    /// The critical normalisation vanishes at `n = 1`; callers use `n > 1` there.
    pub fn space_norm(&self, n: f64) -> f64 {
        match self.kind {
            RegimeKind::SubordinatorDominated => n.powf(1.0 / self.alpha),
            RegimeKind::VelocityDominated => n.powf(1.0 / self.beta),
            RegimeKind::Critical => (n * n.ln()).powf(1.0 / self.alpha),
        }
    }

    pub fn time_norm(&self, n: f64) -> f64 {
        n.powf(1.0 / self.alpha)
    }

    /// Exponent `alpha / alpha*` of space against time.
    pub fn space_time_exponent(&self) -> f64 {
        self.alpha / self.alpha_star()
    }

    pub(crate) fn check_scale(&self, n: f64) -> Result<()> {
        let ok = match self.kind {
            RegimeKind::Critical => n > 1.0,
            _ => n >= 1.0,
        };
        if ok && n.is_finite() {
            Ok(())
        } else {
            Err(Error::domain(
                "n",
                format!("scale {n} invalid for the {} regime", self.kind),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn subordinator_dominated() {
        let r = classify_regime(0.5, 0.8).unwrap();
        assert_eq!(r.kind(), RegimeKind::SubordinatorDominated);
        assert!(r.coupled());
        assert_eq!(r.alpha_star(), 0.5);
        assert_relative_eq!(r.space_norm(10.0), 100.0, max_relative = 1e-14);
        assert_relative_eq!(r.time_norm(10.0), 100.0, max_relative = 1e-14);
    }

    #[test]
    fn velocity_dominated() {
        let r = classify_regime(0.8, 0.5).unwrap();
        assert_eq!(r.kind(), RegimeKind::VelocityDominated);
        assert!(!r.coupled());
        assert_eq!(r.alpha_star(), 0.5);
        assert_relative_eq!(r.space_norm(10.0), 100.0, max_relative = 1e-14);
        assert_relative_eq!(r.time_norm(10.0), 10f64.powf(1.25), max_relative = 1e-14);
        assert_relative_eq!(r.space_time_exponent(), 1.6, max_relative = 1e-14);
    }

    #[test]
    fn critical() {
        let r = classify_regime(0.5, 0.5).unwrap();
        assert_eq!(r.kind(), RegimeKind::Critical);
        assert!(!r.coupled());
        let n: f64 = 10.0;
        assert_relative_eq!(r.space_norm(n), (n * n.ln()).powi(2), max_relative = 1e-14);
        assert!(r.check_scale(1.0).is_err());
        assert!(r.check_scale(2.0).is_ok());
    }

    #[test]
    fn near_equal_is_not_critical() {
        let r = classify_regime(0.5, 0.5 + 1e-15).unwrap();
        assert_eq!(r.kind(), RegimeKind::SubordinatorDominated);
    }

    #[test]
    fn domain() {
        assert!(classify_regime(1.2, 0.5).is_err());
        assert!(classify_regime(0.5, 0.0).is_err());
        assert!(classify_regime(f64::NAN, 0.5).is_err());
    }
}
