use serde::{Deserialize, Serialize};

use super::koenigs::KoenigsMap;
use crate::{Complex, Error, Result};

/// Samples of `t ↦ φ_t(z0)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Trajectory {
    pub z0: Complex,
    pub t: Vec<f64>,
    pub points: Vec<Complex>,
    /// `1 - τ̄ φ_t(z0)`; may underflow to zero far out on hyperbolic orbits.
    pub defects: Vec<Complex>,
    /// `Arg(1 - τ̄ φ_t(z0))`, computed from `log ψ` so it survives underflow.
    pub slopes: Vec<f64>,
    /// `|h(φ_t(z0)) - h(z0) - it| / max(1, |h(z0) + it|)`.
    pub abel_residual: Vec<f64>,
    pub dw_point: Complex,
    /// Set when the integrator stopped early.
    pub truncated_at: Option<f64>,
}

fn check_start(z0: Complex, t_grid: &[f64]) -> Result<()> {
    if !(z0.norm() < 1.0) {
        return Err(Error::Precondition(format!("z0 = {z0} is not in the unit disk")));
    }
    if t_grid.iter().any(|t| !(t.is_finite() && *t >= 0.0)) || t_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Precondition("time grid must be finite, nonnegative and nondecreasing".into()));
    }
    Ok(())
}

fn residual(k: &KoenigsMap, psi: Complex, target: Complex) -> f64 {
    (k.h_from_defect(psi) - target).norm() / target.norm().max(1.0)
}

/// `φ_t(z0) = h⁻¹(h(z0) + it)` on each grid time.
pub fn trajectory_closed_form(k: &KoenigsMap, z0: Complex, t_grid: &[f64]) -> Result<Trajectory> {
    check_start(z0, t_grid)?;
    let w0 = k.h(z0);
    let mut tr = empty(k, z0);
    for &t in t_grid {
        let w = w0 + Complex::new(0.0, t);
        let lpsi = k.inverse_log_defect(w);
        if !(lpsi.re.is_finite() && lpsi.im.is_finite()) {
            return Err(Error::Precondition(format!("inverse Koenigs map failed at t = {t}")));
        }
        let psi = lpsi.exp();
        push(&mut tr, k, t, psi, lpsi.im, residual(k, psi, w));
    }
    Ok(tr)
}

fn empty(k: &KoenigsMap, z0: Complex) -> Trajectory {
    Trajectory {
        z0,
        t: Vec::new(),
        points: Vec::new(),
        defects: Vec::new(),
        slopes: Vec::new(),
        abel_residual: Vec::new(),
        dw_point: k.tau(),
        truncated_at: None,
    }
}

fn push(tr: &mut Trajectory, k: &KoenigsMap, t: f64, psi: Complex, slope: f64, res: f64) {
    if t == 0.0 {
        let psi0 = k.defect(tr.z0);
        tr.t.push(t);
        tr.points.push(tr.z0);
        tr.defects.push(psi0);
        tr.slopes.push(psi0.arg());
        tr.abel_residual.push(0.0);
        return;
    }
    tr.t.push(t);
    tr.points.push(k.from_defect(psi));
    tr.defects.push(psi);
    tr.slopes.push(slope);
    tr.abel_residual.push(res);
}

/// Step control for [`trajectory_ode`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OdeControl {
    /// Local error tolerance on `log ψ` per step.
    pub tol: f64,
    pub initial_step: f64,
    pub min_step: f64,
    pub max_steps: usize,
    /// Largest scaled Abel residual accepted at a grid time before the
    /// segment is retried with a tighter tolerance.
    pub abel_guard: f64,
}

impl Default for OdeControl {
    fn default() -> Self {
        OdeControl { tol: 1e-13, initial_step: 1e-3, min_step: 1e-12, max_steps: 5_000_000, abel_guard: 1e-8 }
    }
}

/// Integrates `d(log ψ)/dt = -τ̄ i / (h'(z) ψ)`, the generator equation in
/// log-defect form, with classical RK4 and step doubling. Steps land
/// exactly on the grid times.
pub fn trajectory_ode(k: &KoenigsMap, z0: Complex, t_grid: &[f64], ctrl: &OdeControl) -> Result<Trajectory> {
    check_start(z0, t_grid)?;
    let rhs = |u: Complex| {
        let psi = u.exp();
        -k.tau().conj() * Complex::new(0.0, 1.0) / (k.dh_from_defect(psi) * psi)
    };
    let rk4 = |u: Complex, h: f64| {
        let k1 = rhs(u);
        let k2 = rhs(u + k1 * (h / 2.0));
        let k3 = rhs(u + k2 * (h / 2.0));
        let k4 = rhs(u + k3 * h);
        u + (k1 + 2.0 * k2 + 2.0 * k3 + k4) * (h / 6.0)
    };
    let w0 = k.h(z0);
    let mut tr = empty(k, z0);
    let mut u = k.defect(z0).ln();
    let mut t = 0.0;
    let mut h = ctrl.initial_step;
    let mut steps = 0usize;
    'grid: for &target in t_grid {
        let (u_start, t_start, h_start) = (u, t, h);
        let mut tol = ctrl.tol;
        for attempt in 0..3 {
            u = u_start;
            t = t_start;
            h = h_start;
            while t < target {
                if steps >= ctrl.max_steps || h < ctrl.min_step * t.max(1.0) {
                    log::warn!("integration stopped at t = {t} (step {h:e}, {steps} steps)");
                    tr.truncated_at = Some(t);
                    break 'grid;
                }
                let hh = h.min(target - t);
                let full = rk4(u, hh);
                let half = rk4(rk4(u, hh / 2.0), hh / 2.0);
                let err = (half - full).norm() / 15.0;
                steps += 1;
                if err <= tol || hh <= ctrl.min_step * t.max(1.0) {
                    u = half + (half - full) / 15.0;
                    t = if hh == target - t { target } else { t + hh };
                    let grow = if err == 0.0 { 4.0 } else { (0.9 * (tol / err).powf(0.2)).clamp(0.2, 4.0) };
                    if hh == h {
                        h *= grow;
                    }
                } else {
                    h = hh * (0.9 * (tol / err).powf(0.2)).clamp(0.1, 0.9);
                }
            }
            let psi = u.exp();
            let res = residual(k, psi, w0 + Complex::new(0.0, target));
            if res <= ctrl.abel_guard || attempt == 2 {
                if res > ctrl.abel_guard {
                    log::warn!("Abel residual {res:e} above guard at t = {target}");
                }
                push(&mut tr, k, target, psi, u.im, res);
                break;
            }
            tol /= 100.0;
        }
    }
    Ok(tr)
}
