use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use super::open01;
use crate::{Error, Result};

/// One-sided power-tail law with survival `min(1, scale * (x / cutoff)^-index)`.
///
/// With `scale = 1` this is the Pareto law on `[cutoff, inf)`, whose survival
/// function equals its power-law asymptote exactly.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailLaw {
    index: f64,
    scale: f64,
    cutoff: f64,
}

impl TailLaw {
    pub fn new(index: f64, scale: f64, cutoff: f64) -> Result<Self> {
        if !(index > 0.0 && index < 1.0) {
            return Err(Error::domain("index", format!("{index} not in (0, 1)")));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::domain("scale", format!("{scale} must be positive")));
        }
        if !(cutoff > 0.0 && cutoff.is_finite()) {
            return Err(Error::domain(
                "cutoff",
                format!("{cutoff} must be positive"),
            ));
        }
        Ok(Self {
            index,
            scale,
            cutoff,
        })
    }

    /// Pareto law with unit scale and cutoff.
    pub fn pareto(index: f64) -> Result<Self> {
        Self::new(index, 1.0, 1.0)
    }

    /// Pareto law whose tail constant is `1 / Gamma(1 - index)`.
    ///
    /// This is the constant for which `n^(-1/index) * (T_1 + ... + T_n)`
    /// converges to a stable subordinator with Laplace exponent `s^index`
    /// (no extra time scaling).
    pub fn stable_domain(index: f64) -> Result<Self> {
        let law = Self::pareto(index)?;
        Self::new(index, 1.0 / gamma(1.0 - law.index), 1.0)
    }

    pub fn index(&self) -> f64 {
        self.index
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    /// Smallest point of the support.
    pub fn support_min(&self) -> f64 {
        self.cutoff * self.scale.powf(1.0 / self.index)
    }

    pub fn survival(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 1.0;
        }
        (self.scale * (x / self.cutoff).powf(-self.index)).min(1.0)
    }

    /// Inverse-transform draw; `u` is the survival level.
    #[inline]
    pub(crate) fn quantile_unchecked(&self, u: f64) -> f64 {
        self.cutoff * (self.scale / u).powf(1.0 / self.index)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.quantile_unchecked(open01(rng))
    }
}

/// Inverse-transform Pareto draw: `cutoff * (scale / u)^(1/index)`.
pub fn sample_pareto(law: &TailLaw, u: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::domain("u", format!("{u} not in (0, 1)")));
    }
    Ok(law.quantile_unchecked(u))
}

/// Law of the scalar speed `V` of a step.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum SpeedLaw {
    HeavyTailed(TailLaw),
    /// Point mass; reduces the model to the constant-speed walk.
    Constant(f64),
}

impl SpeedLaw {
    pub fn constant(speed: f64) -> Result<Self> {
        if !(speed > 0.0 && speed.is_finite()) {
            return Err(Error::domain("speed", format!("{speed} must be positive")));
        }
        Ok(SpeedLaw::Constant(speed))
    }

    /// Tail index, `None` for a constant speed.
    pub fn index(&self) -> Option<f64> {
        match self {
            SpeedLaw::HeavyTailed(law) => Some(law.index()),
            SpeedLaw::Constant(_) => None,
        }
    }

    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            SpeedLaw::HeavyTailed(law) => law.sample(rng),
            SpeedLaw::Constant(v) => *v,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::StreamKey;
    use approx::assert_relative_eq;

    #[test]
    fn rejects_bad_parameters() {
        assert!(TailLaw::new(0.0, 1.0, 1.0).is_err());
        assert!(TailLaw::new(1.0, 1.0, 1.0).is_err());
        assert!(TailLaw::new(0.5, 0.0, 1.0).is_err());
        assert!(TailLaw::new(0.5, 1.0, -1.0).is_err());
        assert!(SpeedLaw::constant(0.0).is_err());
    }

    #[test]
    fn inversion_formula() {
        let law = TailLaw::pareto(0.5).unwrap();
        assert_relative_eq!(
            sample_pareto(&law, 0.25).unwrap(),
            16.0,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            sample_pareto(&law, 1.0 - 1e-12).unwrap(),
            1.0,
            epsilon = 1e-9
        );
    }

    #[test]
    fn rejects_u_outside_open_interval() {
        let law = TailLaw::pareto(0.5).unwrap();
        for u in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(matches!(
                sample_pareto(&law, u),
                Err(Error::Domain { name: "u", .. })
            ));
        }
    }

    #[test]
    fn survival_is_exact_power_law_above_cutoff() {
        let law = TailLaw::new(0.7, 1.0, 2.0).unwrap();
        assert_eq!(law.survival(1.0), 1.0);
        assert_relative_eq!(law.survival(20.0), 10f64.powf(-0.7), max_relative = 1e-14);
        let shifted = TailLaw::stable_domain(0.5).unwrap();
        // 1/Gamma(1/2) = 1/sqrt(pi)
        assert_relative_eq!(
            shifted.scale(),
            1.0 / std::f64::consts::PI.sqrt(),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            shifted.survival(shifted.support_min()),
            1.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn empirical_survival_at_ten() {
        let law = TailLaw::pareto(0.5).unwrap();
        let mut rng = StreamKey::new(1, 1).rng(0);
        let n = 1_000_000;
        let hits = (0..n).filter(|_| law.sample(&mut rng) > 10.0).count();
        let p = 10f64.powf(-0.5);
        let se = (p * (1.0 - p) / n as f64).sqrt();
        let phat = hits as f64 / n as f64;
        assert!((phat - p).abs() < 3.0 * se, "phat={phat} p={p}");
    }
}
