//! Angular extents `α±(t)`.
//!
//! `α+(t)` is the largest angle `α ≤ π` such that the clockwise arc
//! `p + i t e^{-iθ}`, `0 ≤ θ ≤ α`, stays inside the domain; `α-(t)` is the
//! same for the counterclockwise arc.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geometry::Domain;
use crate::{Complex, Error, Result, Side};

/// Minimum profile length accepted by [`limit_estimate`].
pub const MIN_LIMIT_SAMPLES: usize = 16;

pub(crate) fn check_radius(dom: &Domain, p: Complex, t: f64) -> Result<()> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::Precondition(format!("radius must be positive and finite, got {t}")));
    }
    if dom.contains(p + Complex::new(0.0, t)) {
        return Ok(());
    }
    match dom.natural_point_t0(p) {
        Some(t0) => Err(Error::OutsideNaturalDomain { t, t0 }),
        None => Err(Error::NotNatural { re: p.re, im: p.im }),
    }
}

/// `α±(t)` on the given side.
pub fn alpha(dom: &Domain, p: Complex, t: f64, side: Side, tol_theta: f64) -> Result<f64> {
    check_radius(dom, p, t)?;
    Ok(dom.arc_exit(p, t, side, tol_theta).unwrap_or(PI).min(PI))
}

pub fn alpha_minus(dom: &Domain, p: Complex, t: f64, tol_theta: f64) -> Result<f64> {
    alpha(dom, p, t, Side::Minus, tol_theta)
}

pub fn alpha_plus(dom: &Domain, p: Complex, t: f64, tol_theta: f64) -> Result<f64> {
    alpha(dom, p, t, Side::Plus, tol_theta)
}

/// Geometric grid `t_start q^k` up to `t_end`.
pub fn geometric_grid(t_start: f64, t_end: f64, q: f64) -> Result<Vec<f64>> {
    if !(t_start > 0.0 && t_start.is_finite() && t_end.is_finite() && t_end >= t_start) {
        return Err(Error::Precondition(format!("bad grid bounds [{t_start}, {t_end}]")));
    }
    if !(q > 1.0 && q.is_finite()) {
        return Err(Error::Precondition(format!("grid ratio must exceed 1, got {q}")));
    }
    let n = ((t_end / t_start).ln() / q.ln() + 1e-9).floor() as i32;
    Ok((0..=n).map(|k| t_start * q.powi(k)).collect())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AngularProfile {
    pub p: Complex,
    pub t: Vec<f64>,
    pub alpha_minus: Vec<f64>,
    pub alpha_plus: Vec<f64>,
}

impl AngularProfile {
    pub fn side(&self, side: Side) -> &[f64] {
        match side {
            Side::Minus => &self.alpha_minus,
            Side::Plus => &self.alpha_plus,
        }
    }
}

/// Both extents on every grid radius. Radii are evaluated in parallel.
pub fn extent_profile(dom: &Domain, p: Complex, t_grid: &[f64], tol_theta: f64) -> Result<AngularProfile> {
    let pairs: Vec<(f64, f64)> = t_grid
        .par_iter()
        .map(|&t| Ok((alpha_minus(dom, p, t, tol_theta)?, alpha_plus(dom, p, t, tol_theta)?)))
        .collect::<Result<_>>()?;
    let (alpha_minus, alpha_plus) = pairs.into_iter().unzip();
    Ok(AngularProfile { p, t: t_grid.to_vec(), alpha_minus, alpha_plus })
}

/// Trailing-window summary of a profile.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitEstimate {
    pub liminf: f64,
    pub limsup: f64,
    pub converged: bool,
    /// Last trailing value, reported only when the window converged.
    pub limit: Option<f64>,
    /// The trailing minima drop by more than half across the window.
    pub collapsing: bool,
    pub window: (f64, f64),
    pub samples: usize,
}

/// Summarizes the second half of `values` (sampled at radii `t`).
pub fn limit_estimate(t: &[f64], values: &[f64], tol_limit: f64) -> Result<LimitEstimate> {
    if values.len() < MIN_LIMIT_SAMPLES || t.len() != values.len() {
        return Err(Error::Precondition(format!(
            "limit estimation needs at least {MIN_LIMIT_SAMPLES} samples, got {}",
            values.len()
        )));
    }
    let start = values.len() / 2;
    let tail = &values[start..];
    let liminf = tail.iter().copied().fold(f64::INFINITY, f64::min);
    let limsup = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let converged = limsup - liminf <= tol_limit;
    let third = (tail.len() / 3).max(1);
    let head_min = tail[..third].iter().copied().fold(f64::INFINITY, f64::min);
    let last_min = tail[tail.len() - third..].iter().copied().fold(f64::INFINITY, f64::min);
    Ok(LimitEstimate {
        liminf,
        limsup,
        converged,
        limit: converged.then(|| *tail.last().unwrap()),
        collapsing: last_min < 0.5 * head_min,
        window: (t[start], *t.last().unwrap()),
        samples: tail.len(),
    })
}

/// Both limit estimates of a profile.
pub fn profile_limits(profile: &AngularProfile, tol_limit: f64) -> Result<(LimitEstimate, LimitEstimate)> {
    Ok((
        limit_estimate(&profile.t, &profile.alpha_minus, tol_limit)?,
        limit_estimate(&profile.t, &profile.alpha_plus, tol_limit)?,
    ))
}

/// Result of the close-radii check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CloseRadiiReport {
    pub holds: bool,
    /// Largest dyadic `δ` for which every sampled radius passed.
    pub delta: Option<f64>,
    /// A failing radius at the smallest `δ` tried.
    pub counterexample: Option<f64>,
}

/// Checks that extents near `β` persist on a neighbourhood of `t`.
///
/// For `β ≤ π/2` the radii are `[t, t(1+δ)]` and must satisfy
/// `α+ ≥ β - ε`; for `β > π/2` they are `[t(1-δ), t]` and must satisfy
/// `α+ ≥ β - ε` or `α+ ≤ π - β + ε`. Requires `α+(t) ≥ β`.
pub fn check_close_radii(dom: &Domain, p: Complex, t: f64, beta: f64, eps: f64, tol_theta: f64) -> Result<CloseRadiiReport> {
    let a0 = alpha_plus(dom, p, t, tol_theta)?;
    if a0 < beta - tol_theta {
        return Err(Error::Precondition(format!("α+({t}) = {a0} is below β = {beta}")));
    }
    let passes = |x: f64| -> Result<bool> {
        let a = alpha_plus(dom, p, x, tol_theta)?;
        Ok(if beta <= PI / 2.0 { a >= beta - eps } else { a >= beta - eps || a <= PI - beta + eps })
    };
    let mut last_fail = None;
    for k in 0..=40 {
        let delta = 0.5f64.powi(k + i32::from(beta > PI / 2.0));
        let mut ok = true;
        for j in 0..=64 {
            let f = j as f64 / 64.0;
            let x = if beta <= PI / 2.0 { t * (1.0 + delta * f) } else { t * (1.0 - delta * f) };
            let pass = match passes(x) {
                Ok(v) => v,
                Err(e) if e.is_precondition() => false,
                Err(e) => return Err(e),
            };
            if !pass {
                ok = false;
                last_fail = Some(x);
                break;
            }
        }
        if ok {
            return Ok(CloseRadiiReport { holds: true, delta: Some(delta), counterexample: None });
        }
    }
    Ok(CloseRadiiReport { holds: false, delta: None, counterexample: last_fail })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{SlitSet, VerticalSlit};

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn sector_extents_are_its_angles() {
        let d = Domain::sector(c(0.0, 0.0), 1.0, 0.5).unwrap();
        for t in [0.1, 1.0, 1e3] {
            assert!((alpha_minus(&d, c(0.0, 0.0), t, 1e-10).unwrap() - 1.0).abs() < 1e-12);
            assert!((alpha_plus(&d, c(0.0, 0.0), t, 1e-10).unwrap() - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn half_plane_with_slit() {
        let d = Domain::slit_complement(
            Domain::half_plane_upper(),
            SlitSet::fixed(vec![VerticalSlit::bounded(-1.0, 0.0, 1.0)]),
        )
        .unwrap();
        let a = alpha_minus(&d, c(0.0, 0.0), 1.2, 1e-10).unwrap();
        assert!((a - (1.0f64 / 1.2).asin()).abs() < 1e-14);
        let a = alpha_minus(&d, c(0.0, 0.0), 2.0, 1e-10).unwrap();
        assert!((a - PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn outside_natural_domain_is_an_error() {
        let h = Domain::half_plane_upper();
        assert!(matches!(alpha_plus(&h, c(0.0, -1.0), 0.5, 1e-9), Err(Error::OutsideNaturalDomain { .. })));
        let s = Domain::vertical_strip(0.0, 1.0).unwrap();
        assert!(matches!(alpha_plus(&s, c(3.0, 0.0), 1.0, 1e-9), Err(Error::NotNatural { .. })));
    }

    #[test]
    fn grid_is_geometric() {
        let g = geometric_grid(1.0, 1e6, 1.05).unwrap();
        assert!((g.last().unwrap() / 1e6 - 1.0).abs() < 0.05);
        assert!(g.windows(2).all(|w| (w[1] / w[0] - 1.05).abs() < 1e-12));
        assert!(geometric_grid(1.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn limit_of_short_profile_is_rejected() {
        assert!(limit_estimate(&[1.0; 8], &[1.0; 8], 1e-3).is_err());
    }

    #[test]
    fn collapsing_tail_is_flagged() {
        let t: Vec<f64> = (0..64).map(|k| 2f64.powi(k)).collect();
        let v: Vec<f64> = t.iter().map(|x| 1.0 / x.sqrt()).collect();
        let l = limit_estimate(&t, &v, 1e-3).unwrap();
        assert!(l.collapsing);
        let v: Vec<f64> = t.iter().map(|x| 1.0 + 1.0 / x).collect();
        assert!(!limit_estimate(&t, &v, 1e-3).unwrap().collapsing);
    }

    #[test]
    fn close_radii_on_sector() {
        let d = Domain::sector(c(0.0, 0.0), 1.0, 0.6).unwrap();
        let r = check_close_radii(&d, c(0.0, 0.0), 5.0, 0.6, 1e-6, 1e-10).unwrap();
        assert!(r.holds);
        let d = Domain::sector(c(0.0, 0.0), 1.0, 2.5).unwrap();
        assert!(check_close_radii(&d, c(0.0, 0.0), 5.0, 2.5, 1e-6, 1e-10).unwrap().holds);
    }
}
