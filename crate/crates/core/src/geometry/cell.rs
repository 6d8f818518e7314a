//! Closed convex pieces of a complement and exact arc/distance queries on them.

use std::f64::consts::PI;

use crate::Complex;

/// Relative tolerance for an arc touching a slit tip.
pub const TIP_RTOL: f64 = 1e-12;

/// Height above the centre of a circle of radius `r` at horizontal offset `dx`.
///
/// Slit tips placed on a circle are computed with this same expression, so a
/// tip and the arc crossing it agree to the last bit.
pub fn arc_height(r: f64, dx: f64) -> f64 {
    (r * r - dx * dx).max(0.0).sqrt()
}

/// Point on the arc `c + r (s sin θ, cos θ)`.
pub fn arc_point(c: Complex, r: f64, s: f64, theta: f64) -> Complex {
    Complex::new(c.re + s * r * theta.sin(), c.im + r * theta.cos())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Top {
    /// `y <= m x + k`
    Line { m: f64, k: f64 },
    /// No upper bound.
    Unbounded,
}

impl Top {
    pub fn at(self, x: f64) -> f64 {
        match self {
            Top::Line { m, k } => {
                if m == 0.0 {
                    k
                } else {
                    m * x + k
                }
            }
            Top::Unbounded => f64::INFINITY,
        }
    }
}

/// `{x_lo <= x <= x_hi, y <= top(x)}`; a vertical ray when `x_lo == x_hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell {
    pub x_lo: f64,
    pub x_hi: f64,
    pub top: Top,
}

impl Cell {
    pub fn ray(x: f64, y_top: f64) -> Self {
        Cell { x_lo: x, x_hi: x, top: Top::Line { m: 0.0, k: y_top } }
    }

    /// Cell whose top passes through `(x0, y0)` with slope `m`.
    pub fn sloped(x_lo: f64, x_hi: f64, x0: f64, y0: f64, m: f64) -> Self {
        Cell { x_lo, x_hi, top: Top::Line { m, k: y0 - m * x0 } }
    }

    pub fn contains(&self, w: Complex) -> bool {
        w.re >= self.x_lo && w.re <= self.x_hi && w.im <= self.top.at(w.re)
    }

    /// Smallest `θ ∈ [0, π]` at which the arc `c + r (s sin θ, cos θ)` meets the cell.
    pub fn arc_entry(&self, c: Complex, r: f64, s: f64) -> Option<f64> {
        if self.contains(Complex::new(c.re, c.im + r)) {
            return Some(0.0);
        }
        let mut best: Option<f64> = None;
        let mut take = |th: f64| {
            if best.is_none_or(|b| th < b) {
                best = Some(th);
            }
        };
        for (i, xv) in [self.x_lo, self.x_hi].into_iter().enumerate() {
            if i == 1 && self.x_hi == self.x_lo {
                break;
            }
            if xv.is_finite() {
                if let Some(th) = vertical_ray_entry(xv, self.top.at(xv), c, r, s) {
                    take(th);
                }
            }
        }
        if let Top::Line { m, k } = self.top {
            if self.x_hi > self.x_lo {
                let a = r;
                let b = -m * s * r;
                let rhs = m * c.re + k - c.im;
                let big_r = a.hypot(b);
                let q = rhs / big_r;
                if q.abs() <= 1.0 + 1e-15 {
                    let phi = b.atan2(a);
                    let d = q.clamp(-1.0, 1.0).acos();
                    let span = self.x_hi - self.x_lo;
                    let xtol = 1e-12 * (1.0 + c.re.abs() + r + if span.is_finite() { span } else { 0.0 });
                    for th in [phi - d, phi + d] {
                        let mut th = th;
                        if th < 0.0 {
                            th += 2.0 * PI;
                        }
                        if th > PI && th <= PI + 1e-12 {
                            th = PI;
                        }
                        if !(0.0..=PI).contains(&th) {
                            continue;
                        }
                        let x = c.re + s * r * th.sin();
                        if x >= self.x_lo - xtol && x <= self.x_hi + xtol {
                            take(th);
                        }
                    }
                }
            }
        }
        best
    }

    /// Distance from `w` to the part of the cell with `lo <= x <= hi`.
    pub fn distance(&self, w: Complex, lo: f64, hi: f64) -> f64 {
        let a = self.x_lo.max(lo);
        let b = self.x_hi.min(hi);
        if a > b {
            return f64::INFINITY;
        }
        let (u, v) = (w.re, w.im);
        if u >= a && u <= b && v <= self.top.at(u) {
            return 0.0;
        }
        match self.top {
            Top::Unbounded => {
                if u < a {
                    a - u
                } else {
                    u - b
                }
            }
            Top::Line { m, k } => {
                let mut d = f64::INFINITY;
                if a.is_finite() {
                    d = d.min(down_ray_distance(w, a, self.top.at(a)));
                }
                if b.is_finite() && b != a {
                    d = d.min(down_ray_distance(w, b, self.top.at(b)));
                }
                if b > a {
                    let xs = ((u + m * (v - k)) / (1.0 + m * m)).clamp(a, b);
                    if xs.is_finite() {
                        let ys = m * xs + k;
                        d = d.min((u - xs).hypot(v - ys));
                    }
                }
                d
            }
        }
    }
}

/// First contact of the arc with the vertical ray `{x = xv, y <= top}`.
pub fn vertical_ray_entry(xv: f64, top: f64, c: Complex, r: f64, s: f64) -> Option<f64> {
    let dx = xv - c.re;
    if dx * s < 0.0 {
        return None;
    }
    let adx = dx.abs();
    if adx > r {
        return None;
    }
    let h = arc_height(r, adx);
    let tol = TIP_RTOL * (r + c.im.abs() + top.abs().min(1e300));
    let th_up = (adx / r).min(1.0).asin();
    if c.im + h <= top + tol {
        return Some(th_up);
    }
    if c.im - h <= top + tol {
        return Some(PI - th_up);
    }
    None
}

/// Distance from `w` to `{x = xv, y <= top}`.
pub fn down_ray_distance(w: Complex, xv: f64, top: f64) -> f64 {
    let dx = w.re - xv;
    if w.im <= top {
        dx.abs()
    } else {
        dx.hypot(w.im - top)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn ray_entry_upper_and_lower() {
        let c = Complex::new(0.0, 0.0);
        let th = vertical_ray_entry(-1.0, 1.0, c, 1.2, -1.0).unwrap();
        assert!((th - (1.0f64 / 1.2).asin()).abs() < 1e-15);
        let th = vertical_ray_entry(-1.0, 0.0, c, 2.0, -1.0).unwrap();
        assert!((th - (PI - 0.5f64.asin())).abs() < 1e-15);
        assert!(vertical_ray_entry(1.0, 5.0, c, 2.0, -1.0).is_none());
    }

    #[test]
    fn half_plane_cell_is_reached_at_right_angle() {
        let cell = Cell { x_lo: f64::NEG_INFINITY, x_hi: f64::INFINITY, top: Top::Line { m: 0.0, k: 0.0 } };
        let th = cell.arc_entry(Complex::new(0.0, 0.0), 3.0, 1.0).unwrap();
        assert!((th - FRAC_PI_2).abs() < 1e-15);
        let d = cell.distance(Complex::new(2.0, 3.0), 0.0, f64::INFINITY);
        assert_eq!(d, 3.0);
    }

    #[test]
    fn sloped_cell_distance() {
        // y <= sqrt(3) x on x >= 0, point i: distance 1/2
        let cell = Cell::sloped(0.0, f64::INFINITY, 0.0, 0.0, 3f64.sqrt());
        let d = cell.distance(Complex::new(0.0, 1.0), 0.0, f64::INFINITY);
        assert!((d - 0.5).abs() < 1e-15);
    }
}
