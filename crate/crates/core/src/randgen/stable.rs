use std::f64::consts::PI;

use rand::Rng;
use rand_distr::Exp1;

use super::open01;
use crate::{Error, Result};

/// Kanter's representation of the totally skewed positive stable law,
///
/// `S = sin(a U) / sin(U)^(1/a) * (sin((1 - a) U) / W)^((1 - a) / a)`
///
/// with `U ~ Uniform(0, pi)`, `W ~ Exp(1)`, so that `E exp(-s S) = exp(-s^a)`.
/// The caller guarantees `0 < alpha < 1`.
#[inline]
pub fn sample_positive_stable<R: Rng + ?Sized>(alpha: f64, rng: &mut R) -> f64 {
    let u = PI * open01(rng);
    let w: f64 = rng.sample(Exp1);
    let a = (alpha * u).sin() / u.sin().powf(1.0 / alpha);
    let b = (((1.0 - alpha) * u).sin() / w).powf((1.0 - alpha) / alpha);
    a * b
}

/// One draw of `S_alpha(t)`, i.e. `t^(1/alpha)` times a standard positive stable variate.
pub fn sample_stable_subordinator<R: Rng + ?Sized>(alpha: f64, t: f64, rng: &mut R) -> Result<f64> {
    check_alpha(alpha)?;
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::domain(
            "t",
            format!("{t} must be finite and nonnegative"),
        ));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    Ok(t.powf(1.0 / alpha) * sample_positive_stable(alpha, rng))
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::domain("alpha", format!("{alpha} not in (0, 1)")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::ks_distance;
    use crate::StreamKey;

    fn laplace_z(alpha: f64, s: f64, n: usize, seed: u64) -> f64 {
        let mut rng = StreamKey::new(seed, 0).rng(0);
        let xs: Vec<f64> = (0..n)
            .map(|_| (-s * sample_stable_subordinator(alpha, 1.0, &mut rng).unwrap()).exp())
            .collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        (mean - (-s.powf(alpha)).exp()).abs() / (var / n as f64).sqrt()
    }

    #[test]
    fn laplace_transform_at_unit_argument() {
        assert!(laplace_z(0.5, 1.0, 100_000, 3) < 3.0);
    }

    #[test]
    fn zero_time_is_zero() {
        let mut rng = StreamKey::new(0, 0).rng(0);
        assert_eq!(sample_stable_subordinator(0.5, 0.0, &mut rng).unwrap(), 0.0);
    }

    #[test]
    fn domain_errors() {
        let mut rng = StreamKey::new(0, 0).rng(0);
        assert!(sample_stable_subordinator(1.0, 1.0, &mut rng).is_err());
        assert!(sample_stable_subordinator(0.0, 1.0, &mut rng).is_err());
        assert!(sample_stable_subordinator(0.5, -1.0, &mut rng).is_err());
    }

    #[test]
    fn self_similar() {
        let alpha = 0.6;
        let key = StreamKey::new(9, 0);
        let mut r1 = key.rng(0);
        let mut r2 = key.rng(1);
        let at2: Vec<f64> = (0..10_000)
            .map(|_| sample_stable_subordinator(alpha, 2.0, &mut r1).unwrap())
            .collect();
        let scaled: Vec<f64> = (0..10_000)
            .map(|_| {
                2f64.powf(1.0 / alpha) * sample_stable_subordinator(alpha, 1.0, &mut r2).unwrap()
            })
            .collect();
        assert!(ks_distance(&at2, &scaled).unwrap() < 0.03);
    }
}
