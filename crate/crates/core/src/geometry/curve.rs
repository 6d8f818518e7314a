use serde::{Deserialize, Serialize};

use super::cell::{arc_point, Cell};
use crate::{Complex, Error, Result};

/// Floor curve `y = f(x)` of an epigraph domain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Curve {
    /// Linear interpolation through `(xs[i], ys[i])`, continued by
    /// `ys[0] + kappa_left (xs[0] - x)` on the left and
    /// `ys[n-1] + kappa_right (x - xs[n-1])` on the right.
    PiecewiseLinear { xs: Vec<f64>, ys: Vec<f64>, kappa_left: f64, kappa_right: f64 },
    /// `Σ coeffs[i] x^i`.
    Polynomial { coeffs: Vec<f64> },
    /// `kappa_left |x|` for `x < 0`, `kappa_right x` for `x >= 0`,
    /// plus `amplitude sin(frequency x)`.
    Wedge { kappa_left: f64, kappa_right: f64, amplitude: f64, frequency: f64 },
}

impl Curve {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidDomain(m.to_string()));
        match self {
            Curve::PiecewiseLinear { xs, ys, kappa_left, kappa_right } => {
                if xs.is_empty() || xs.len() != ys.len() {
                    return bad("piecewise-linear curve needs matching, non-empty xs and ys");
                }
                if xs.iter().chain(ys).chain([kappa_left, kappa_right]).any(|v| !v.is_finite()) {
                    return bad("piecewise-linear curve has non-finite data");
                }
                if xs.windows(2).any(|w| w[1] <= w[0]) {
                    return bad("piecewise-linear curve needs strictly increasing xs");
                }
            }
            Curve::Polynomial { coeffs } => {
                if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
                    return bad("polynomial curve needs finite coefficients");
                }
            }
            Curve::Wedge { kappa_left, kappa_right, amplitude, frequency } => {
                if [kappa_left, kappa_right, amplitude, frequency].iter().any(|v| !v.is_finite()) {
                    return bad("wedge curve has non-finite data");
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Curve::PiecewiseLinear { xs, ys, kappa_left, kappa_right } => {
                let n = xs.len();
                if x <= xs[0] {
                    return ys[0] + kappa_left * (xs[0] - x);
                }
                if x >= xs[n - 1] {
                    return ys[n - 1] + kappa_right * (x - xs[n - 1]);
                }
                let j = xs.partition_point(|&v| v <= x);
                let (x0, x1, y0, y1) = (xs[j - 1], xs[j], ys[j - 1], ys[j]);
                y0 + (y1 - y0) * (x - x0) / (x1 - x0)
            }
            Curve::Polynomial { coeffs } => coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c),
            Curve::Wedge { kappa_left, kappa_right, amplitude, frequency } => {
                let lin = if x < 0.0 { -kappa_left * x } else { kappa_right * x };
                if *amplitude == 0.0 {
                    lin
                } else {
                    lin + amplitude * (frequency * x).sin()
                }
            }
        }
    }

    /// Exact convex decomposition of the hypograph, when the curve is piecewise linear.
    pub fn cells(&self) -> Option<Vec<Cell>> {
        match self {
            Curve::PiecewiseLinear { xs, ys, kappa_left, kappa_right } => {
                let n = xs.len();
                let mut cells = vec![Cell::sloped(f64::NEG_INFINITY, xs[0], xs[0], ys[0], -kappa_left)];
                for j in 1..n {
                    let m = (ys[j] - ys[j - 1]) / (xs[j] - xs[j - 1]);
                    cells.push(Cell::sloped(xs[j - 1], xs[j], xs[j - 1], ys[j - 1], m));
                }
                cells.push(Cell::sloped(xs[n - 1], f64::INFINITY, xs[n - 1], ys[n - 1], *kappa_right));
                Some(cells)
            }
            Curve::Polynomial { coeffs } if coeffs.len() <= 2 => {
                let m = coeffs.get(1).copied().unwrap_or(0.0);
                Some(vec![Cell::sloped(f64::NEG_INFINITY, f64::INFINITY, 0.0, coeffs[0], m)])
            }
            Curve::Wedge { kappa_left, kappa_right, amplitude, .. } if *amplitude == 0.0 => Some(vec![
                Cell::sloped(f64::NEG_INFINITY, 0.0, 0.0, 0.0, -kappa_left),
                Cell::sloped(0.0, f64::INFINITY, 0.0, 0.0, *kappa_right),
            ]),
            _ => None,
        }
    }

    fn oscillation(&self) -> f64 {
        match self {
            Curve::Wedge { amplitude, frequency, .. } if *amplitude != 0.0 => frequency.abs(),
            _ => 0.0,
        }
    }

    /// Number of samples needed to resolve the curve over a window of the given width.
    fn samples_for(&self, width: f64) -> usize {
        let osc = (width * self.oscillation() * 1.5).min(2e6);
        (osc as usize).max(2048)
    }

    /// First `θ ∈ [0, π]` where the arc leaves the strict epigraph, located to `tol`.
    pub fn arc_exit(&self, c: Complex, r: f64, s: f64, tol: f64) -> Option<f64> {
        let g = |th: f64| {
            let p = arc_point(c, r, s, th);
            p.im - self.eval(p.re)
        };
        if g(0.0) <= 0.0 {
            return Some(0.0);
        }
        let tol = tol.max(1e-15);
        let mut lo = 0.0;
        let mut hi = std::f64::consts::PI;
        let mut n = self.samples_for(2.0 * r);
        loop {
            let step = (hi - lo) / n as f64;
            let mut hit = None;
            for k in 1..=n {
                let th = if k == n { hi } else { lo + step * k as f64 };
                if g(th) <= 0.0 {
                    hit = Some(k);
                    break;
                }
            }
            let k = hit?;
            let new_lo = lo + step * (k - 1) as f64;
            hi = if k == n { hi } else { lo + step * k as f64 };
            lo = new_lo;
            if hi - lo <= tol {
                return Some(hi);
            }
            if hi - lo < 64.0 * tol {
                break;
            }
            n = 64;
        }
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if g(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    }

    /// Distance from `w` to the closed hypograph restricted to `lo <= x <= hi`.
    pub fn distance(&self, w: Complex, lo: f64, hi: f64, cap: f64) -> f64 {
        if lo > hi {
            return f64::INFINITY;
        }
        let (u, v) = (w.re, w.im);
        let phi = |x: f64| (x - u).hypot((v - self.eval(x)).max(0.0));
        let mut best = cap;
        if u >= lo && u <= hi {
            let f = self.eval(u);
            if v <= f {
                return 0.0;
            }
            best = best.min(v - f);
        } else {
            let e = if u < lo { lo } else { hi };
            best = best.min(phi(e));
        }
        if !best.is_finite() {
            return best;
        }
        let a = lo.max(u - best);
        let b = hi.min(u + best);
        if b <= a {
            return best;
        }
        let n = self.samples_for(b - a);
        let step = (b - a) / n as f64;
        let mut kbest = 0;
        let mut vbest = f64::INFINITY;
        for k in 0..=n {
            let val = phi(a + step * k as f64);
            if val < vbest {
                vbest = val;
                kbest = k;
            }
        }
        best = best.min(vbest);
        let x0 = (a + step * kbest.saturating_sub(1) as f64).max(a);
        let x1 = (a + step * (kbest + 1) as f64).min(b);
        best.min(golden_min(&phi, x0, x1, 1e-14 * (1.0 + u.abs() + best)))
    }
}

fn golden_min(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut best = fc.min(fd);
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
        best = best.min(fc).min(fd);
    }
    best
}
