//! One-sided boundary distances `δ±(t)`.
//!
//! `δ+(t) = min(t, dist(p + it, ∁Ω ∩ {Re z ≥ Re p}))` and symmetrically for
//! `δ-` with `Re z ≤ Re p`.

use serde::{Deserialize, Serialize};

use crate::extents::{alpha, check_radius};
use crate::geometry::{Domain, HalfPlane};
use crate::{Complex, Result, Side};

pub fn delta(dom: &Domain, p: Complex, t: f64, side: Side) -> Result<f64> {
    check_radius(dom, p, t)?;
    let region = match side {
        Side::Minus => HalfPlane::LeftOf(p.re),
        Side::Plus => HalfPlane::RightOf(p.re),
    };
    Ok(dom.complement_distance(p + Complex::new(0.0, t), region, t))
}

pub fn delta_minus(dom: &Domain, p: Complex, t: f64) -> Result<f64> {
    delta(dom, p, t, Side::Minus)
}

pub fn delta_plus(dom: &Domain, p: Complex, t: f64) -> Result<f64> {
    delta(dom, p, t, Side::Plus)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DistanceProfile {
    pub p: Complex,
    pub t: Vec<f64>,
    pub delta_minus: Vec<f64>,
    pub delta_plus: Vec<f64>,
}

pub fn distance_profile(dom: &Domain, p: Complex, t_grid: &[f64]) -> Result<DistanceProfile> {
    use rayon::prelude::*;
    let pairs: Vec<(f64, f64)> = t_grid
        .par_iter()
        .map(|&t| Ok((delta_minus(dom, p, t)?, delta_plus(dom, p, t)?)))
        .collect::<Result<_>>()?;
    let (delta_minus, delta_plus) = pairs.into_iter().unzip();
    Ok(DistanceProfile { p, t: t_grid.to_vec(), delta_minus, delta_plus })
}

/// One violated inequality in the extent/distance bridge.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BridgeViolation {
    pub side: Side,
    pub inequality: String,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BridgeReport {
    pub t: f64,
    pub alpha_minus: f64,
    pub alpha_plus: f64,
    pub violations: Vec<BridgeViolation>,
}

impl BridgeReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks on both sides, with absolute slack `tol · max(t, 1)`:
///
/// * `δ(t) ≤ 2t sin(α/2) ≤ tα`
/// * `tα/π ≤ t sin(min(π/2, α)) ≤ δ(2t)`
pub fn check_angular_distance_bridge(dom: &Domain, p: Complex, t: f64, tol: f64, tol_theta: f64) -> Result<BridgeReport> {
    let slack = tol * t.max(1.0);
    let mut violations = Vec::new();
    let mut alphas = [0.0; 2];
    for (i, side) in [Side::Minus, Side::Plus].into_iter().enumerate() {
        let a = alpha(dom, p, t, side, tol_theta)?;
        alphas[i] = a;
        let d1 = delta(dom, p, t, side)?;
        let d2 = delta(dom, p, 2.0 * t, side)?;
        let chord = 2.0 * t * (a / 2.0).sin();
        let lower = t * a.min(std::f64::consts::FRAC_PI_2).sin();
        let checks = [
            ("delta(t) <= 2t sin(alpha/2)", d1, chord),
            ("2t sin(alpha/2) <= t alpha", chord, t * a),
            ("t alpha / pi <= t sin(min(pi/2, alpha))", t * a / std::f64::consts::PI, lower),
            ("t sin(min(pi/2, alpha)) <= delta(2t)", lower, d2),
        ];
        for (name, lhs, rhs) in checks {
            if !(lhs <= rhs + slack) {
                violations.push(BridgeViolation { side, inequality: name.to_string(), lhs, rhs });
            }
        }
    }
    Ok(BridgeReport { t, alpha_minus: alphas[0], alpha_plus: alphas[1], violations })
}

/// Ratios `δ_q / δ_p` over a grid, on both sides.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Comparability {
    pub c1: f64,
    pub c2: f64,
    pub comparable: bool,
    /// Radii skipped because a distance at `p` vanished.
    pub skipped: Vec<f64>,
}

pub fn check_same_delta_comparability(dom: &Domain, p: Complex, q: Complex, t_grid: &[f64]) -> Result<Comparability> {
    let mut c1 = f64::INFINITY;
    let mut c2 = 0.0f64;
    let mut skipped = Vec::new();
    let mut used = 0usize;
    for &t in t_grid {
        for side in [Side::Minus, Side::Plus] {
            let dp = delta(dom, p, t, side)?;
            let dq = delta(dom, q, t, side)?;
            if dp <= 0.0 {
                skipped.push(t);
                continue;
            }
            let r = dq / dp;
            c1 = c1.min(r);
            c2 = c2.max(r);
            used += 1;
        }
    }
    let comparable = used > 0 && c1 > 0.0 && c2.is_finite();
    Ok(Comparability { c1, c2, comparable, skipped })
}
