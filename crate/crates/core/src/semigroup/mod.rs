//! Semigroups modelled by a domain: type classification, closed-form and
//! integrated trajectories, and measured slopes.

mod koenigs;
mod trajectory;

use serde::{Deserialize, Serialize};

pub use koenigs::{koenigs_catalog, KoenigsMap, Shape};
pub use trajectory::{trajectory_closed_form, trajectory_ode, OdeControl, Trajectory};

use crate::extents::geometric_grid;
use crate::geometry::Domain;
use crate::{Complex, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SemigroupType {
    /// The real projection of the domain is a bounded interval.
    Hyperbolic,
    /// The projection is a half-line.
    ParabolicPositiveStep,
    /// The projection is the whole line.
    ParabolicZeroStep,
}

/// Type read off the real projection of the domain.
pub fn classify_semigroup_type(dom: &Domain) -> SemigroupType {
    match dom.projection_interval() {
        (lo, hi) if lo.is_finite() && hi.is_finite() => SemigroupType::Hyperbolic,
        (lo, hi) if lo.is_finite() || hi.is_finite() => SemigroupType::ParabolicPositiveStep,
        _ => SemigroupType::ParabolicZeroStep,
    }
}

/// Range of the trailing slope samples.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlopeSet {
    pub min: f64,
    pub max: f64,
    pub samples: usize,
}

impl SlopeSet {
    pub fn width(&self) -> f64 {
        self.max - self.min
    }

    pub fn overlaps(&self, other: &SlopeSet, tol: f64) -> bool {
        self.min.max(other.min) <= self.max.min(other.max) + tol
    }
}

pub const MIN_SLOPE_SAMPLES: usize = 64;

/// Slope range over the last `fraction` of the trajectory's samples.
pub fn measure_slope_set(traj: &Trajectory, fraction: f64) -> Result<SlopeSet> {
    let n = traj.slopes.len();
    if n < MIN_SLOPE_SAMPLES {
        return Err(Error::Precondition(format!("need at least {MIN_SLOPE_SAMPLES} slope samples, got {n}")));
    }
    let k = ((n as f64 * fraction.clamp(0.0, 1.0)).ceil() as usize).max(1);
    let tail = &traj.slopes[n - k..];
    Ok(SlopeSet {
        min: tail.iter().copied().fold(f64::INFINITY, f64::min),
        max: tail.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        samples: k,
    })
}

/// Slope windows of two orbits on the grid `1.1^k`, `k ≥ 0`, up to `t_end`.
pub fn check_slope_independence(
    k: &KoenigsMap,
    z1: Complex,
    z2: Complex,
    t_end: f64,
    tol: f64,
) -> Result<(SlopeSet, SlopeSet, bool)> {
    let grid = geometric_grid(1.0, t_end, 1.1)?;
    let a = measure_slope_set(&trajectory_closed_form(k, z1, &grid)?, 0.25)?;
    let b = measure_slope_set(&trajectory_closed_form(k, z2, &grid)?, 0.25)?;
    let ok = a.overlaps(&b, tol);
    Ok((a, b, ok))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn slope_windows_agree_across_start_points() {
        let sector = koenigs_catalog(&Domain::sector(c(0.0, 0.0), FRAC_PI_2, PI / 6.0).unwrap()).unwrap();
        assert!(check_slope_independence(&sector, c(0.0, 0.0), c(0.0, 0.5), 1e6, 2e-3).unwrap().2);
        let half = koenigs_catalog(&Domain::half_plane_upper()).unwrap();
        assert!(check_slope_independence(&half, c(0.0, 0.0), c(-0.3, 0.0), 1e6, 2e-3).unwrap().2);
        // Points on the real axis share the centre line of the strip.
        let strip = koenigs_catalog(&Domain::vertical_strip(0.0, PI).unwrap()).unwrap();
        assert!(check_slope_independence(&strip, c(0.0, 0.0), c(0.4, 0.0), 1e6, 2e-3).unwrap().2);
        assert!(!check_slope_independence(&strip, c(0.0, 0.0), c(0.0, 0.5), 1e6, 2e-3).unwrap().2);
    }

    #[test]
    fn classification_by_projection() {
        assert_eq!(classify_semigroup_type(&Domain::half_plane_upper()), SemigroupType::ParabolicZeroStep);
        assert_eq!(classify_semigroup_type(&Domain::vertical_strip(0.0, PI).unwrap()), SemigroupType::Hyperbolic);
        let quarter = Domain::sector(c(0.0, 0.0), FRAC_PI_2, 0.0).unwrap();
        assert_eq!(classify_semigroup_type(&quarter), SemigroupType::ParabolicPositiveStep);
    }

    #[test]
    fn half_plane_orbit_of_origin() {
        let k = koenigs_catalog(&Domain::half_plane_upper()).unwrap();
        let tr = trajectory_closed_form(&k, c(0.0, 0.0), &[0.0, 1.0, 2.0, 10.0]).unwrap();
        for (t, z) in tr.t.iter().zip(&tr.points) {
            assert!((z - c(-t / (2.0 + t), 0.0)).norm() < 1e-15);
        }
        assert_eq!(tr.dw_point, c(-1.0, 0.0));
    }

    #[test]
    fn ode_matches_closed_form_on_half_plane() {
        let k = koenigs_catalog(&Domain::half_plane_upper()).unwrap();
        let grid: Vec<f64> = (0..=50).map(|j| j as f64 * 2.0).collect();
        let a = trajectory_closed_form(&k, c(0.1, 0.3), &grid).unwrap();
        let b = trajectory_ode(&k, c(0.1, 0.3), &grid, &OdeControl::default()).unwrap();
        assert!(b.truncated_at.is_none());
        for (x, y) in a.points.iter().zip(&b.points) {
            assert!((x - y).norm() < 1e-9);
        }
        assert!(b.abel_residual.iter().all(|r| *r < 1e-8));
    }

    #[test]
    fn short_trajectory_has_no_slope_set() {
        let k = koenigs_catalog(&Domain::half_plane_upper()).unwrap();
        let tr = trajectory_closed_form(&k, c(0.0, 0.0), &[1.0, 2.0]).unwrap();
        assert!(measure_slope_set(&tr, 0.5).is_err());
    }

    #[test]
    fn start_outside_disk_is_rejected() {
        let k = koenigs_catalog(&Domain::half_plane_upper()).unwrap();
        assert!(trajectory_closed_form(&k, c(1.0, 0.0), &[1.0]).is_err());
    }
}
