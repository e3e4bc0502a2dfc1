use super::sort_floats;
use crate::{Error, Result};

/// Hill estimate of a tail index.
#[derive(Clone, Debug, PartialEq)]
pub struct TailFit {
    pub estimate: f64,
    pub k: usize,
    /// Asymptotic standard error `estimate / sqrt(k)`.
    pub stderr: f64,
}

/// `floor(sqrt(n))`.
pub fn default_hill_k(n: usize) -> usize {
    (n as f64).sqrt().floor() as usize
}

/// Hill estimator over the `k` largest order statistics:
/// `[ (1/k) sum_{j<=k} ln(X_(j) / X_(k+1)) ]^-1`.
pub fn hill_estimator(samples: &[f64], k: usize) -> Result<TailFit> {
    if k < 10 {
        return Err(Error::domain(
            "k",
            format!("{k} order statistics, need at least 10"),
        ));
    }
    if k >= samples.len() {
        return Err(Error::domain(
            "k",
            format!("{k} not below sample count {}", samples.len()),
        ));
    }
    if samples.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
        return Err(Error::domain("samples", "must be positive and finite"));
    }
    let mut s = samples.to_vec();
    sort_floats(&mut s);
    s.reverse();
    let mut distinct = 1;
    for w in s.windows(2) {
        if distinct > k {
            break;
        }
        if w[1] != w[0] {
            distinct += 1;
        }
    }
    if distinct < k + 1 {
        return Err(Error::Degenerate(format!(
            "{distinct} distinct values, need {}",
            k + 1
        )));
    }
    let threshold = s[k];
    let mean_log: f64 = s[..k].iter().map(|x| (x / threshold).ln()).sum::<f64>() / k as f64;
    if !(mean_log > 0.0) {
        return Err(Error::Degenerate("zero log-spacings".into()));
    }
    let estimate = 1.0 / mean_log;
    Ok(TailFit {
        estimate,
        k,
        stderr: estimate / (k as f64).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randgen::TailLaw;
    use crate::StreamKey;
    use approx::assert_relative_eq;

    fn pareto(index: f64, n: usize, seed: u64) -> Vec<f64> {
        let law = TailLaw::pareto(index).unwrap();
        let mut rng = StreamKey::new(seed, 0).rng(0);
        (0..n).map(|_| law.sample(&mut rng)).collect()
    }

    #[test]
    fn exact_pareto() {
        let xs = pareto(0.5, 1_000_000, 1);
        let fit = hill_estimator(&xs, 10_000).unwrap();
        assert!((fit.estimate - 0.5).abs() < 0.02, "{fit:?}");
        assert_relative_eq!(fit.stderr, fit.estimate / 100.0);
    }

    #[test]
    fn scale_invariant() {
        let xs = pareto(0.7, 10_000, 2);
        let scaled: Vec<f64> = xs.iter().map(|x| 37.5 * x).collect();
        let a = hill_estimator(&xs, 100).unwrap().estimate;
        let b = hill_estimator(&scaled, 100).unwrap().estimate;
        assert_relative_eq!(a, b, max_relative = 1e-12);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            hill_estimator(&[2.0; 100], 10),
            Err(Error::Degenerate(_))
        ));
        let mut few = vec![1.0; 100];
        few[..5].copy_from_slice(&[2.0, 3.0, 4.0, 5.0, 6.0]);
        assert!(matches!(
            hill_estimator(&few, 10),
            Err(Error::Degenerate(_))
        ));
        assert!(hill_estimator(&[1.0, 2.0, 3.0], 10).is_err());
        assert!(hill_estimator(&pareto(0.5, 100, 3), 5).is_err());
        assert!(hill_estimator(&[-1.0; 20], 10).is_err());
    }

    #[test]
    fn default_k() {
        assert_eq!(default_hill_k(1_000_000), 1000);
        assert_eq!(default_hill_k(99), 9);
    }
}
