use crate::randgen::SubordinatorPath;
use crate::{Error, Result};

/// Relative tolerance for treating `t` as a value taken by the path.
const RANGE_TOL: f64 = 1e-12;

/// Evaluation of the interpolated limit at one physical time.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitPoint {
    pub position: Vec<f64>,
    /// `(t - G) / (H - G)`; `None` when `t` lies on the range of the path.
    pub weight: Option<f64>,
    /// `G(t)`: path value just before the increment straddling `t`.
    pub lower: f64,
    /// `H(t)`: path value just after it.
    pub upper: f64,
}

/// Continuous-walk limit on a marked path.
///
/// For `t` on the range of the path this is the spatial value there; otherwise
/// the spatial process is interpolated linearly across the increment
/// `[G(t), H(t))` that straddles `t`.
pub fn interpolate_limit(path: &SubordinatorPath, t: f64) -> Result<LimitPoint> {
    let marks = path
        .marks()
        .ok_or_else(|| Error::domain("path", "interpolation needs a marked path"))?;
    if !(t >= 0.0) {
        return Err(Error::domain("t", format!("{t} must be nonnegative")));
    }
    let values = path.cumulative();
    let k = values.partition_point(|&s| s <= t);
    if k == values.len() {
        return Err(Error::PathTooShort {
            level: t,
            last: path.last_value(),
        });
    }
    let (lower, upper) = (values[k - 1], values[k]);
    let on_range = |s: f64| (t - s).abs() <= RANGE_TOL * s.max(t);
    if on_range(lower) {
        return Ok(LimitPoint {
            position: marks.spatial_value(k - 1).to_vec(),
            weight: None,
            lower,
            upper,
        });
    }
    if on_range(upper) {
        return Ok(LimitPoint {
            position: marks.spatial_value(k).to_vec(),
            weight: None,
            lower,
            upper,
        });
    }
    let w = (t - lower) / (upper - lower);
    let before = marks.spatial_value(k - 1);
    let after = marks.spatial_value(k);
    Ok(LimitPoint {
        position: before
            .iter()
            .zip(after)
            .map(|(a, b)| a + w * (b - a))
            .collect(),
        weight: Some(w),
        lower,
        upper,
    })
}

pub fn continuous_limit_interpolation(path: &SubordinatorPath, t: f64) -> Result<Vec<f64>> {
    interpolate_limit(path, t).map(|p| p.position)
}
