//! Domains starlike at infinity, represented by their floor function.
//!
//! Every domain here is `{w : Im w > F(Re w)}` for some `F: ℝ → [-∞, +∞]`.
//! Membership is strict, so boundary points are never inside. The complement
//! is handled as a union of closed convex cells (for sectors, half-planes,
//! strips and piecewise-linear floors), analytic hypographs, and vertical
//! slits; the extent and distance queries run exactly on those pieces.

mod cell;
mod curve;
mod slits;

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use cell::TIP_RTOL;
pub use cell::{arc_height, arc_point, down_ray_distance, vertical_ray_entry, Cell, Top};
pub use curve::Curve;
pub use slits::{SlitFamily, SlitSet, VerticalSlit, MAX_MATERIALIZED};

use crate::{Complex, Error, Result, Side};

/// A domain starlike at infinity.
#[derive(Clone, Debug)]
pub enum Domain {
    /// `{p + i t e^{iθ} : t > 0, -β2 < θ < β1}`.
    Sector { p: Complex, beta1: f64, beta2: f64 },
    /// `{Im w > 0}`.
    HalfPlaneUpper,
    /// `{a < Re w < b}`; either side may be infinite.
    VerticalStrip { a: f64, b: f64 },
    /// `{Im w > f(Re w)}`.
    Epigraph(Curve),
    /// The base domain with vertical slits removed.
    SlitComplement { base: Box<Domain>, slits: SlitSet },
    /// `c · base` with `c > 0`.
    Scaled { base: Box<Domain>, c: f64 },
    /// `base + w0`.
    Translated { base: Box<Domain>, w0: Complex },
}

/// Restriction of a distance query to one side of a vertical line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HalfPlane {
    LeftOf(f64),
    RightOf(f64),
    Both,
}

impl HalfPlane {
    fn bounds(self) -> (f64, f64) {
        match self {
            HalfPlane::LeftOf(x) => (f64::NEG_INFINITY, x),
            HalfPlane::RightOf(x) => (x, f64::INFINITY),
            HalfPlane::Both => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }
}

/// Outcome of the sampled starlike check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StarlikeCounterexample {
    pub w: Complex,
    pub s: f64,
}

fn log_spaced(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let n = n.max(2);
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(move |k| (a + (b - a) * k as f64 / (n - 1) as f64).exp())
}

fn sector_floor(p: Complex, beta1: f64, beta2: f64, x: f64) -> f64 {
    let side = |beta: f64, run: f64| {
        if beta <= 0.0 {
            f64::INFINITY
        } else if beta >= PI {
            f64::NEG_INFINITY
        } else {
            p.im + run * beta.cos() / beta.sin()
        }
    };
    if x < p.re {
        side(beta1, p.re - x)
    } else if x > p.re {
        side(beta2, x - p.re)
    } else if beta1 > 0.0 && beta2 > 0.0 {
        p.im
    } else {
        f64::INFINITY
    }
}

impl Domain {
    pub fn sector(p: Complex, beta1: f64, beta2: f64) -> Result<Domain> {
        let d = Domain::Sector { p, beta1, beta2 };
        d.validate()?;
        Ok(d)
    }

    pub fn half_plane_upper() -> Domain {
        Domain::HalfPlaneUpper
    }

    pub fn vertical_strip(a: f64, b: f64) -> Result<Domain> {
        let d = Domain::VerticalStrip { a, b };
        d.validate()?;
        Ok(d)
    }

    pub fn epigraph(curve: Curve) -> Result<Domain> {
        let d = Domain::Epigraph(curve);
        d.validate()?;
        Ok(d)
    }

    pub fn slit_complement(base: Domain, slits: SlitSet) -> Result<Domain> {
        let d = Domain::SlitComplement { base: Box::new(base), slits };
        d.validate()?;
        Ok(d)
    }

    /// The whole plane minus the given slits.
    pub fn plane_minus(slits: SlitSet) -> Result<Domain> {
        Domain::slit_complement(Domain::VerticalStrip { a: f64::NEG_INFINITY, b: f64::INFINITY }, slits)
    }

    pub fn scaled(self, c: f64) -> Result<Domain> {
        let d = Domain::Scaled { base: Box::new(self), c };
        d.validate()?;
        Ok(d)
    }

    pub fn translated(self, w0: Complex) -> Result<Domain> {
        let d = Domain::Translated { base: Box::new(self), w0 };
        d.validate()?;
        Ok(d)
    }

    /// Short name of the outermost constructor.
    pub fn kind(&self) -> &'static str {
        match self {
            Domain::Sector { .. } => "sector",
            Domain::HalfPlaneUpper => "half_plane",
            Domain::VerticalStrip { .. } => "strip",
            Domain::Epigraph(_) => "epigraph",
            Domain::SlitComplement { .. } => "slit_complement",
            Domain::Scaled { .. } => "scaled",
            Domain::Translated { .. } => "translated",
        }
    }

    fn is_plane(&self) -> bool {
        matches!(self, Domain::VerticalStrip { a, b } if *a == f64::NEG_INFINITY && *b == f64::INFINITY)
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_inner(false)
    }

    fn validate_inner(&self, allow_plane: bool) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDomain(m));
        match self {
            Domain::Sector { p, beta1, beta2 } => {
                if !(p.re.is_finite() && p.im.is_finite()) {
                    return bad("sector vertex must be finite".into());
                }
                for b in [beta1, beta2] {
                    if !(0.0..=PI).contains(b) {
                        return bad(format!("sector angle {b} outside [0, π]"));
                    }
                }
                if beta1 + beta2 <= 0.0 {
                    return bad("sector is empty".into());
                }
            }
            Domain::HalfPlaneUpper => {}
            Domain::VerticalStrip { a, b } => {
                if a.is_nan() || b.is_nan() || a >= b || *a == f64::INFINITY || *b == f64::NEG_INFINITY {
                    return bad(format!("strip needs a < b, got a = {a}, b = {b}"));
                }
                if self.is_plane() && !allow_plane {
                    return bad("the whole plane is not a proper domain".into());
                }
            }
            Domain::Epigraph(c) => c.validate()?,
            Domain::SlitComplement { base, slits } => {
                base.validate_inner(!slits.is_empty())?;
                let check = |s: &VerticalSlit| -> Result<()> {
                    if !(s.x.is_finite() && s.y_top.is_finite()) {
                        return bad(format!("slit at x = {} has a non-finite endpoint", s.x));
                    }
                    if let Some(yb) = s.y_bottom {
                        let floor = base.floor(s.x);
                        let tol = 1e-9 * (1.0 + floor.abs().min(1e300));
                        if !(yb <= s.y_top) {
                            return bad(format!("slit at x = {} has bottom above top", s.x));
                        }
                        if !(yb <= floor + tol) {
                            return bad(format!(
                                "bounded slit at x = {} does not reach the base complement (bottom {} above floor {})",
                                s.x, yb, floor
                            ));
                        }
                    }
                    Ok(())
                };
                for s in &slits.fixed {
                    check(s)?;
                }
                for fam in &slits.families {
                    for s in fam.prefix(64) {
                        check(&s)?;
                    }
                }
            }
            Domain::Scaled { base, c } => {
                if !(c.is_finite() && *c > 0.0) {
                    return bad(format!("scale factor must be positive and finite, got {c}"));
                }
                base.validate_inner(false)?;
            }
            Domain::Translated { base, w0 } => {
                if !(w0.re.is_finite() && w0.im.is_finite()) {
                    return bad("translation must be finite".into());
                }
                base.validate_inner(false)?;
            }
        }
        Ok(())
    }

    /// The floor function `F`, with `Ω = {Im w > F(Re w)}`.
    pub fn floor(&self, x: f64) -> f64 {
        match self {
            Domain::Sector { p, beta1, beta2 } => sector_floor(*p, *beta1, *beta2, x),
            Domain::HalfPlaneUpper => 0.0,
            Domain::VerticalStrip { a, b } => {
                if x > *a && x < *b {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                }
            }
            Domain::Epigraph(c) => c.eval(x),
            Domain::SlitComplement { base, slits } => {
                let mut f = base.floor(x);
                slits.for_each_within(x, x, &mut |s| f = f.max(s.y_top));
                f
            }
            Domain::Scaled { base, c } => c * base.floor(x / c),
            Domain::Translated { base, w0 } => base.floor(x - w0.re) + w0.im,
        }
    }

    pub fn contains(&self, w: Complex) -> bool {
        match self {
            Domain::SlitComplement { base, slits } => {
                if !base.contains(w) {
                    return false;
                }
                let mut hit = false;
                slits.for_each_within(w.re, w.re, &mut |s| {
                    hit |= w.im <= s.y_top && s.y_bottom.is_none_or(|b| w.im > b);
                });
                !hit
            }
            Domain::Scaled { base, c } => base.contains(w / c),
            Domain::Translated { base, w0 } => base.contains(w - w0),
            _ => w.im > self.floor(w.re),
        }
    }

    /// `p + i t e^{iθ}`.
    pub fn ray_point(p: Complex, t: f64, theta: f64) -> Complex {
        Complex::new(p.re - t * theta.sin(), p.im + t * theta.cos())
    }

    pub fn ray_membership(&self, p: Complex, t: f64, theta: f64) -> bool {
        self.contains(Self::ray_point(p, t, theta))
    }

    /// `t0 = inf{t ≥ 0 : p + it ∈ Ω}`, or `None` when `p` is not natural.
    pub fn natural_point_t0(&self, p: Complex) -> Option<f64> {
        let f = self.floor(p.re);
        if f == f64::INFINITY || f.is_nan() {
            return None;
        }
        Some((f - p.im).max(0.0))
    }

    /// `(inf Re Ω, sup Re Ω)`.
    pub fn projection_interval(&self) -> (f64, f64) {
        match self {
            Domain::Sector { p, beta1, beta2 } => (
                if *beta1 == 0.0 { p.re } else { f64::NEG_INFINITY },
                if *beta2 == 0.0 { p.re } else { f64::INFINITY },
            ),
            Domain::HalfPlaneUpper | Domain::Epigraph(_) => (f64::NEG_INFINITY, f64::INFINITY),
            Domain::VerticalStrip { a, b } => (*a, *b),
            Domain::SlitComplement { base, .. } => base.projection_interval(),
            Domain::Scaled { base, c } => {
                let (lo, hi) = base.projection_interval();
                (lo * c, hi * c)
            }
            Domain::Translated { base, w0 } => {
                let (lo, hi) = base.projection_interval();
                (lo + w0.re, hi + w0.re)
            }
        }
    }

    fn base_cells(&self) -> Option<Vec<Cell>> {
        match self {
            Domain::Sector { p, beta1, beta2 } => {
                let mut cells = vec![Cell::ray(p.re, p.im)];
                let mut side = |beta: f64, lo: f64, hi: f64, sgn: f64| {
                    if beta <= 0.0 {
                        cells.push(Cell { x_lo: lo, x_hi: hi, top: Top::Unbounded });
                    } else if beta < PI {
                        cells.push(Cell::sloped(lo, hi, p.re, p.im, sgn * beta.cos() / beta.sin()));
                    }
                };
                side(*beta1, f64::NEG_INFINITY, p.re, -1.0);
                side(*beta2, p.re, f64::INFINITY, 1.0);
                Some(cells)
            }
            Domain::HalfPlaneUpper => Some(vec![Cell { x_lo: f64::NEG_INFINITY, x_hi: f64::INFINITY, top: Top::Line { m: 0.0, k: 0.0 } }]),
            Domain::VerticalStrip { a, b } => {
                let mut cells = Vec::new();
                if a.is_finite() {
                    cells.push(Cell { x_lo: f64::NEG_INFINITY, x_hi: *a, top: Top::Unbounded });
                }
                if b.is_finite() {
                    cells.push(Cell { x_lo: *b, x_hi: f64::INFINITY, top: Top::Unbounded });
                }
                Some(cells)
            }
            Domain::Epigraph(c) => c.cells(),
            _ => None,
        }
    }

    /// First angle `θ ∈ [0, π]` at which the arc `c + r (s sin θ, cos θ)`
    /// leaves the domain, with `s = -1` on the minus side and `+1` on the plus
    /// side. `None` when the whole half-circle stays inside. `tol` bounds the
    /// error for analytic floors; all other pieces are solved in closed form.
    pub fn arc_exit(&self, c: Complex, r: f64, side: Side, tol: f64) -> Option<f64> {
        let s = side.sign();
        let min = |a: Option<f64>, b: Option<f64>| match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        };
        match self {
            Domain::Scaled { base, c: k } => base.arc_exit(c / k, r / k, side, tol),
            Domain::Translated { base, w0 } => base.arc_exit(c - w0, r, side, tol),
            Domain::SlitComplement { base, slits } => {
                let mut best = base.arc_exit(c, r, side, tol);
                let (lo, hi) = if s < 0.0 { (c.re - r, c.re) } else { (c.re, c.re + r) };
                slits.for_each_within(lo, hi, &mut |sl| {
                    if let Some(th) = vertical_ray_entry(sl.x, sl.y_top, c, r, s) {
                        if best.is_none_or(|b| th < b) {
                            best = Some(th);
                        }
                    }
                });
                best
            }
            Domain::Epigraph(curve) if curve.cells().is_none() => curve.arc_exit(c, r, s, tol),
            _ => self
                .base_cells()
                .unwrap_or_default()
                .iter()
                .fold(None, |acc, cell| min(acc, cell.arc_entry(c, r, s))),
        }
    }

    /// Distance from `w` to the complement inside the half-plane, capped at `cap`.
    pub fn complement_distance(&self, w: Complex, region: HalfPlane, cap: f64) -> f64 {
        let (lo, hi) = region.bounds();
        self.dist(w, lo, hi, cap).min(cap)
    }

    fn dist(&self, w: Complex, lo: f64, hi: f64, cap: f64) -> f64 {
        match self {
            Domain::Scaled { base, c } => c * base.dist(w / c, lo / c, hi / c, cap / c),
            Domain::Translated { base, w0 } => base.dist(w - w0, lo - w0.re, hi - w0.re, cap),
            Domain::SlitComplement { base, slits } => {
                let mut d = base.dist(w, lo, hi, cap).min(cap);
                let visit = |d: &mut f64, s: &VerticalSlit| {
                    *d = d.min(down_ray_distance(w, s.x, s.y_top));
                };
                if !d.is_finite() {
                    for s in slits.fixed.iter().filter(|s| s.x >= lo && s.x <= hi) {
                        visit(&mut d, s);
                    }
                    for fam in &slits.families {
                        let mut n = 64;
                        while !d.is_finite() {
                            let pre = fam.prefix(n);
                            for s in pre.iter().filter(|s| s.x >= lo && s.x <= hi) {
                                visit(&mut d, s);
                            }
                            if pre.len() < n || n >= MAX_MATERIALIZED {
                                break;
                            }
                            n *= 2;
                        }
                    }
                }
                if d.is_finite() {
                    let a = lo.max(w.re - d);
                    let b = hi.min(w.re + d);
                    if a <= b {
                        slits.for_each_within(a, b, &mut |s| d = d.min(down_ray_distance(w, s.x, s.y_top)));
                    }
                }
                d
            }
            Domain::Epigraph(curve) if curve.cells().is_none() => curve.distance(w, lo, hi, cap),
            _ => self
                .base_cells()
                .unwrap_or_default()
                .iter()
                .map(|cell| cell.distance(w, lo, hi))
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// Calls `f` on every slit (in global coordinates) with `x_lo <= x <= x_hi`.
    pub fn visit_slits(&self, x_lo: f64, x_hi: f64, f: &mut dyn FnMut(VerticalSlit)) {
        match self {
            Domain::Scaled { base, c } => base.visit_slits(x_lo / c, x_hi / c, &mut |s| f(s.map(*c, 0.0, 0.0))),
            Domain::Translated { base, w0 } => {
                base.visit_slits(x_lo - w0.re, x_hi - w0.re, &mut |s| f(s.map(1.0, w0.re, w0.im)))
            }
            Domain::SlitComplement { base, slits } => {
                base.visit_slits(x_lo, x_hi, f);
                slits.for_each_within(x_lo, x_hi, &mut |s| f(*s));
            }
            _ => {}
        }
    }

    fn raw_boundary_samples(&self, r_max: f64, n: usize, out: &mut Vec<Complex>) {
        let rs: Vec<f64> = log_spaced(1e-6 * r_max, r_max, n).collect();
        match self {
            Domain::Sector { p, beta1, beta2 } => {
                out.push(*p);
                for &s in &rs {
                    out.push(*p + s * Complex::new(-beta1.sin(), beta1.cos()));
                    out.push(*p + s * Complex::new(beta2.sin(), beta2.cos()));
                }
            }
            Domain::HalfPlaneUpper => {
                for &s in &rs {
                    out.push(Complex::new(s, 0.0));
                    out.push(Complex::new(-s, 0.0));
                }
            }
            Domain::VerticalStrip { a, b } => {
                for x in [a, b].into_iter().filter(|x| x.is_finite()) {
                    for &s in &rs {
                        out.push(Complex::new(*x, s));
                        out.push(Complex::new(*x, -s));
                    }
                }
            }
            Domain::Epigraph(c) => {
                out.push(Complex::new(0.0, c.eval(0.0)));
                for &s in &rs {
                    out.push(Complex::new(s, c.eval(s)));
                    out.push(Complex::new(-s, c.eval(-s)));
                }
            }
            Domain::SlitComplement { base, slits } => {
                base.raw_boundary_samples(r_max, n, out);
                let mut count = 0usize;
                slits.for_each_within(-r_max, r_max, &mut |s| {
                    count += 1;
                    if count > 4096 {
                        return;
                    }
                    out.push(Complex::new(s.x, s.y_top));
                    let len = s.y_bottom.map_or(2.0 * r_max, |b| s.y_top - b);
                    if len > 0.0 {
                        for d in log_spaced(1e-6 * len.min(r_max), len.min(2.0 * r_max), n) {
                            out.push(Complex::new(s.x, s.y_top - d));
                        }
                    }
                });
                if count > 4096 {
                    log::warn!("boundary sampling used the first 4096 of {count} slits");
                }
            }
            Domain::Scaled { base, c } => {
                let start = out.len();
                base.raw_boundary_samples(r_max / c, n, out);
                out[start..].iter_mut().for_each(|z| *z *= *c);
            }
            Domain::Translated { base, w0 } => {
                let start = out.len();
                base.raw_boundary_samples(r_max + w0.norm(), n, out);
                out[start..].iter_mut().for_each(|z| *z += *w0);
            }
        }
    }

    /// Points of `∂Ω` with `|z| <= r_max`, about `per_primitive` per boundary piece.
    pub fn boundary_samples(&self, r_max: f64, per_primitive: usize) -> Vec<Complex> {
        let mut raw = Vec::new();
        self.raw_boundary_samples(r_max, per_primitive, &mut raw);
        raw.into_iter()
            .filter(|z| z.re.is_finite() && z.im.is_finite() && z.norm() <= r_max)
            .filter(|z| self.is_boundary_point(*z))
            .collect()
    }

    fn is_boundary_point(&self, z: Complex) -> bool {
        let eps = 1e-9 * (1.0 + z.norm());
        let probes = [
            z,
            z + Complex::new(0.0, eps),
            z - Complex::new(0.0, eps),
            z + Complex::new(eps, 0.0),
            z - Complex::new(eps, 0.0),
        ];
        let inside = probes.iter().filter(|w| self.contains(**w)).count();
        inside > 0 && inside < probes.len()
    }

    /// Samples `(w, s)` in the box `[-half, half]²` × `[0, s_max]` and looks
    /// for `w ∈ Ω` with `w + is ∉ Ω`.
    pub fn is_starlike_sampled(
        &self,
        seed: u64,
        samples: usize,
        half: f64,
        s_max: f64,
    ) -> std::result::Result<(), StarlikeCounterexample> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let w = Complex::new(rng.gen_range(-half..=half), rng.gen_range(-half..=half));
            let s = rng.gen_range(0.0..=s_max);
            if self.contains(w) && !self.contains(w + Complex::new(0.0, s)) {
                return Err(StarlikeCounterexample { w, s });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn sector_membership_along_rays() {
        let d = Domain::sector(c(0.0, 0.0), FRAC_PI_4, FRAC_PI_4).unwrap();
        assert!(d.ray_membership(c(0.0, 0.0), 1.0, 0.0));
        assert!(!d.ray_membership(c(0.0, 0.0), 1.0, PI / 3.0));
        assert!(!d.contains(c(0.0, 0.0)));
    }

    #[test]
    fn invalid_domains_are_rejected() {
        assert!(Domain::sector(c(0.0, 0.0), 0.0, 0.0).is_err());
        assert!(Domain::sector(c(0.0, 0.0), 4.0, 0.1).is_err());
        assert!(Domain::vertical_strip(1.0, 1.0).is_err());
        assert!(Domain::vertical_strip(f64::NEG_INFINITY, f64::INFINITY).is_err());
        assert!(Domain::plane_minus(SlitSet::default()).is_err());
        assert!(Domain::half_plane_upper().scaled(-1.0).is_err());
        let floating = SlitSet::fixed(vec![VerticalSlit::bounded(0.0, 1.0, 2.0)]);
        assert!(Domain::slit_complement(Domain::half_plane_upper(), floating).is_err());
        let grounded = SlitSet::fixed(vec![VerticalSlit::bounded(0.0, 0.0, 2.0)]);
        assert!(Domain::slit_complement(Domain::half_plane_upper(), grounded).is_ok());
    }

    #[test]
    fn natural_points() {
        let strip = Domain::vertical_strip(0.0, 1.0).unwrap();
        assert_eq!(strip.natural_point_t0(c(2.0, 0.0)), None);
        assert_eq!(strip.natural_point_t0(c(0.5, -3.0)), Some(0.0));
        let h = Domain::half_plane_upper();
        assert_eq!(h.natural_point_t0(c(1.0, -2.0)), Some(2.0));
    }

    #[test]
    fn scaled_and_translated_floor() {
        let s = Domain::sector(c(0.0, 0.0), FRAC_PI_4, FRAC_PI_2).unwrap();
        let t = s.clone().scaled(2.0).unwrap().translated(c(1.0, 1.0)).unwrap();
        assert!((t.floor(-1.0) - 3.0).abs() < 1e-12);
        assert!(t.contains(c(-1.0, 3.1)));
        assert!(!t.contains(c(-1.0, 2.9)));
    }

    #[test]
    fn boundary_samples_stay_on_boundary() {
        let d = Domain::sector(c(0.0, 0.0), 1.0, 0.5).unwrap();
        let pts = d.boundary_samples(10.0, 100);
        assert!(pts.len() > 150);
        for z in pts {
            assert!(z.norm() <= 10.0);
        }
    }

    #[test]
    fn starlike_sampling_passes_for_sector() {
        let d = Domain::sector(c(0.3, -0.2), 1.0, 2.0).unwrap();
        assert!(d.is_starlike_sampled(7, 10_000, 5.0, 5.0).is_ok());
    }
}
