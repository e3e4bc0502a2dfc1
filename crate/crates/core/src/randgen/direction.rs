use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::open01;
use crate::{Error, Result};

const UNIT_TOL: f64 = 1e-12;

/// Law of the step direction on the unit sphere of `R^d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum SpectralMeasure {
    UniformSphere {
        dim: usize,
    },
    Atoms {
        dim: usize,
        /// Flattened unit vectors, `dim` entries per atom.
        vectors: Vec<f64>,
        /// Cumulative probabilities; the last entry is exactly 1.
        cumulative: Vec<f64>,
    },
}

impl SpectralMeasure {
    pub fn uniform_sphere(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::domain("dimension", "must be at least 1"));
        }
        Ok(SpectralMeasure::UniformSphere { dim })
    }

    /// Discrete measure from `(unit vector, probability)` pairs.
    pub fn atoms(atoms: &[(Vec<f64>, f64)]) -> Result<Self> {
        let dim = match atoms.first() {
            Some((u, _)) if !u.is_empty() => u.len(),
            Some(_) => return Err(Error::domain("dimension", "must be at least 1")),
            None => return Err(Error::domain("atoms", "need at least one atom")),
        };
        let mut vectors = Vec::with_capacity(dim * atoms.len());
        let mut cumulative = Vec::with_capacity(atoms.len());
        let mut total = 0.0;
        for (u, p) in atoms {
            if u.len() != dim {
                return Err(Error::domain("atoms", "atom vectors differ in dimension"));
            }
            let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > UNIT_TOL {
                return Err(Error::domain(
                    "atoms",
                    format!("atom {u:?} has norm {norm}"),
                ));
            }
            if !(*p > 0.0) {
                return Err(Error::domain(
                    "atoms",
                    format!("probability {p} must be positive"),
                ));
            }
            total += p;
            vectors.extend_from_slice(u);
            cumulative.push(total);
        }
        if (total - 1.0).abs() > UNIT_TOL {
            return Err(Error::domain(
                "atoms",
                format!("probabilities sum to {total}"),
            ));
        }
        *cumulative.last_mut().unwrap() = 1.0;
        Ok(SpectralMeasure::Atoms {
            dim,
            vectors,
            cumulative,
        })
    }

    /// `+e_i` and `-e_i` for each axis, all with probability `1 / (2d)`.
    pub fn axes(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::domain("dimension", "must be at least 1"));
        }
        let p = 1.0 / (2 * dim) as f64;
        let atoms: Vec<_> = (0..dim)
            .flat_map(|i| {
                [1.0, -1.0].map(|sign| {
                    let mut u = vec![0.0; dim];
                    u[i] = sign;
                    (u, p)
                })
            })
            .collect();
        Self::atoms(&atoms)
    }

    /// Point mass at `+e_1`.
    pub fn positive_axis(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::domain("dimension", "must be at least 1"));
        }
        let mut u = vec![0.0; dim];
        u[0] = 1.0;
        Self::atoms(&[(u, 1.0)])
    }

    pub fn dim(&self) -> usize {
        match self {
            SpectralMeasure::UniformSphere { dim } | SpectralMeasure::Atoms { dim, .. } => *dim,
        }
    }

    /// Short human-readable description for metadata.
    pub fn describe(&self) -> String {
        match self {
            SpectralMeasure::UniformSphere { dim } => format!("uniform-sphere(d={dim})"),
            SpectralMeasure::Atoms {
                dim, cumulative, ..
            } => format!("atoms(d={dim},k={})", cumulative.len()),
        }
    }

    /// Write one direction into `out` (length `dim`).
    #[inline]
    pub fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [f64]) {
        match self {
            SpectralMeasure::UniformSphere { dim: 1 } => {
                out[0] = if rng.random::<bool>() { 1.0 } else { -1.0 };
            }
            SpectralMeasure::UniformSphere { .. } => loop {
                for x in out.iter_mut() {
                    *x = rng.sample(StandardNormal);
                }
                let norm = out.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm > 1e-150 {
                    out.iter_mut().for_each(|x| *x /= norm);
                    break;
                }
            },
            SpectralMeasure::Atoms {
                dim,
                vectors,
                cumulative,
            } => {
                let k = if cumulative.len() == 1 {
                    0
                } else {
                    let u = open01(rng);
                    cumulative
                        .partition_point(|&c| c < u)
                        .min(cumulative.len() - 1)
                };
                out.copy_from_slice(&vectors[k * dim..(k + 1) * dim]);
            }
        }
    }
}

pub fn sample_direction<R: Rng + ?Sized>(measure: &SpectralMeasure, rng: &mut R) -> Vec<f64> {
    let mut out = vec![0.0; measure.dim()];
    measure.sample_into(rng, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::StreamKey;

    #[test]
    fn validation() {
        assert!(SpectralMeasure::atoms(&[]).is_err());
        assert!(SpectralMeasure::atoms(&[(vec![0.6, 0.6], 1.0)]).is_err());
        assert!(SpectralMeasure::atoms(&[(vec![1.0], 0.5), (vec![-1.0], 0.4)]).is_err());
        assert!(SpectralMeasure::atoms(&[(vec![1.0], 1.0), (vec![-1.0], 0.0)]).is_err());
        assert!(SpectralMeasure::uniform_sphere(0).is_err());
        assert!(SpectralMeasure::atoms(&[(vec![0.6, 0.8], 1.0)]).is_ok());
    }

    #[test]
    fn degenerate_measure_is_constant() {
        let m = SpectralMeasure::positive_axis(3).unwrap();
        let mut rng = StreamKey::new(0, 0).rng(0);
        for _ in 0..100 {
            assert_eq!(sample_direction(&m, &mut rng), vec![1.0, 0.0, 0.0]);
        }
    }

    #[test]
    fn symmetric_atoms_have_zero_mean() {
        let m = SpectralMeasure::axes(1).unwrap();
        let mut rng = StreamKey::new(0, 1).rng(0);
        let n = 1_000_000;
        let mut buf = [0.0];
        let sum: f64 = (0..n)
            .map(|_| {
                m.sample_into(&mut rng, &mut buf);
                buf[0]
            })
            .sum();
        // Var = 1 for a fair +-1 coin.
        let stderr = 1.0 / (n as f64).sqrt();
        assert!((sum / n as f64).abs() < 3.0 * stderr);
    }

    #[test]
    fn sphere_draws_are_unit() {
        for d in [1, 2, 3, 7] {
            let m = SpectralMeasure::uniform_sphere(d).unwrap();
            let mut rng = StreamKey::new(0, d as u64).rng(0);
            for _ in 0..1000 {
                let u = sample_direction(&m, &mut rng);
                let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
                assert!((norm - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn atom_frequencies() {
        let m = SpectralMeasure::atoms(&[(vec![1.0, 0.0], 0.2), (vec![0.0, 1.0], 0.8)]).unwrap();
        let mut rng = StreamKey::new(5, 5).rng(0);
        let n = 200_000;
        let hits = (0..n)
            .filter(|_| sample_direction(&m, &mut rng)[0] == 1.0)
            .count();
        let se = (0.2 * 0.8 / n as f64).sqrt();
        assert!((hits as f64 / n as f64 - 0.2).abs() < 4.0 * se);
    }
}
