//! Independent oracles: each domain is rebuilt here from explicit formulas,
//! extents come from a dense polyline sweep with bisection, and distances
//! from brute-force minima over sampled boundary points.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use starlike::corpus;
use starlike::distances::{check_angular_distance_bridge, delta};
use starlike::extents::{alpha, check_close_radii};
use starlike::geometry::{Curve, Domain};
use starlike::kernels::{classify_kernel_shape, subsequence_kernel_sampled, KernelGrid};
use starlike::semigroup::{koenigs_catalog, trajectory_closed_form, trajectory_ode, OdeControl};
use starlike::slope::{check_cr3, SampleSpec};
use starlike::{Complex, Side};

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn fact(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Closed vertical segment `{x} × [bottom, top]`.
#[derive(Clone, Copy, Debug)]
struct Seg {
    x: f64,
    top: f64,
    bottom: f64,
}

fn ray(x: f64, top: f64) -> Seg {
    Seg { x, top, bottom: f64::NEG_INFINITY }
}

/// `{y > base(x)}` minus the segments.
struct Oracle {
    base: Box<dyn Fn(f64) -> f64 + Sync>,
    segs: Vec<Seg>,
}

impl Oracle {
    fn new(base: impl Fn(f64) -> f64 + Sync + 'static, mut segs: Vec<Seg>) -> Self {
        segs.sort_by(|a, b| a.x.total_cmp(&b.x));
        Oracle { base: Box::new(base), segs }
    }

    fn in_base(&self, w: Complex) -> bool {
        w.im > (self.base)(w.re)
    }

    fn point(p: Complex, t: f64, s: f64, th: f64) -> Complex {
        c(p.re + s * t * th.sin(), p.im + t * th.cos())
    }

    /// First angle where the arc of radius `t` about `p` on side `s` leaves
    /// the domain, or `π`.
    fn alpha(&self, p: Complex, t: f64, s: f64) -> f64 {
        const HALF_STEPS: usize = 80_000;
        let h = FRAC_PI_2 / HALF_STEPS as f64;
        let mut prev = 0.0;
        for k in 1..=2 * HALF_STEPS {
            let th = if k == HALF_STEPS { FRAC_PI_2 } else { k as f64 * h };
            if let Some(e) = self.exit_in(p, t, s, prev, th) {
                return e;
            }
            prev = th;
        }
        PI
    }

    fn exit_in(&self, p: Complex, t: f64, s: f64, a: f64, b: f64) -> Option<f64> {
        let pa = Self::point(p, t, s, a);
        let pb = Self::point(p, t, s, b);
        let mut best: Option<f64> = None;
        if !self.in_base(pb) {
            let (mut lo, mut hi) = (a, b);
            for _ in 0..200 {
                let m = 0.5 * (lo + hi);
                if self.in_base(Self::point(p, t, s, m)) {
                    lo = m;
                } else {
                    hi = m;
                }
            }
            best = Some(hi);
        }
        let (x0, x1) = (pa.re.min(pb.re), pa.re.max(pb.re));
        let start = self.segs.partition_point(|g| g.x < x0);
        for g in self.segs[start..].iter().take_while(|g| g.x <= x1) {
            let f = |th: f64| Self::point(p, t, s, th).re - g.x;
            let (mut lo, mut hi) = (a, b);
            let rising = f(b) >= f(a);
            for _ in 0..200 {
                let m = 0.5 * (lo + hi);
                if (f(m) < 0.0) == rising {
                    lo = m;
                } else {
                    hi = m;
                }
            }
            let th = if f(lo) == 0.0 { lo } else { hi };
            let y = Self::point(p, t, s, th).im;
            let tol = 1e-12 * (1.0 + y.abs());
            if y <= g.top + tol && y >= g.bottom - tol {
                best = Some(best.map_or(th, |b: f64| b.min(th)));
            }
        }
        best
    }

    /// Distance from `w` to the sampled complement boundary within the
    /// half-plane `lo ≤ Re ≤ hi`, capped at `cap`.
    fn distance(&self, w: Complex, lo: f64, hi: f64, cap: f64) -> f64 {
        let mut d = cap;
        let n = 100_000;
        let (xa, xb) = ((w.re - cap).max(lo), (w.re + cap).min(hi));
        let (mut a, mut b) = (xa, xb);
        for _ in 0..4 {
            let mut best_x = None;
            for k in 0..=n {
                let x = a + (b - a) * k as f64 / n as f64;
                let y = (self.base)(x);
                if y.is_finite() {
                    let e = (c(x, y) - w).norm();
                    if e < d {
                        d = e;
                        best_x = Some(x);
                    }
                }
            }
            let Some(x) = best_x else { break };
            let step = (b - a) / n as f64;
            (a, b) = ((x - step).max(xa), (x + step).min(xb));
        }
        for g in &self.segs {
            if g.x < lo || g.x > hi || (g.x - w.re).abs() > d {
                continue;
            }
            let ylo = g.bottom.max(w.im - cap);
            if ylo > g.top {
                continue;
            }
            let clamp = w.im.clamp(ylo, g.top);
            d = d.min((c(g.x, clamp) - w).norm());
        }
        d
    }
}

fn plane(_: f64) -> f64 {
    f64::NEG_INFINITY
}

fn slit_halfplane() -> Oracle {
    Oracle::new(|_| 0.0, vec![Seg { x: -1.0, top: 1.0, bottom: 0.0 }])
}

fn manolo(n_max: usize) -> Oracle {
    let mut segs = vec![ray(0.0, 0.0)];
    for n in 2..=n_max {
        let x = fact(n) * (1.0 / n as f64);
        let y = (fact(n + 1).powi(2) - x * x).sqrt();
        segs.push(ray(-x, y));
        segs.push(ray(x, y - 1.0));
    }
    Oracle::new(plane, segs)
}

fn santiago(n_max: usize) -> Oracle {
    let g = FRAC_PI_4.sin();
    let mut segs = vec![ray(0.0, 0.0)];
    for n in 1..=n_max {
        let x = fact(n) * g;
        segs.push(ray(x, (fact(n + 1).powi(2) - x * x).sqrt() - 1.0));
    }
    Oracle::new(plane, segs)
}

fn e1e2(n_max: usize) -> Oracle {
    let (b1, b2) = (PI / 3.0, PI / 5.0);
    let mut segs = Vec::new();
    for n in 1..=n_max {
        let n = n as f64;
        segs.push(ray(-n * b1.sin(), n * b1.cos()));
        segs.push(ray(n * b2.sin(), n * b2.cos()));
    }
    Oracle::new(plane, segs)
}

fn dyadic() -> Oracle {
    let segs = (0..=60).map(|n| {
        let x = 2f64.powi(n);
        Seg { x: -x, top: x * (1.0 + x), bottom: x }
    });
    Oracle::new(|x| if x < 0.0 { -x } else { 0.0 }, segs.collect())
}

fn betsakos() -> Oracle {
    let mut segs = vec![ray(0.0, 0.0)];
    for n in 2..=4 {
        let x = fact(n - 1);
        let y = (fact(n + 1).powi(2) - x * x).sqrt();
        segs.push(ray(-x, y.min(1.0)));
        segs.push(ray(x, (y - 1.0).min(1.0)));
    }
    Oracle::new(plane, segs)
}

fn cases() -> Vec<(&'static str, Domain, Oracle, f64)> {
    vec![
        ("slit_halfplane", corpus::build_default("slit_halfplane").unwrap(), slit_halfplane(), 50.0),
        ("manolo", corpus::build_default("manolo").unwrap(), manolo(8), 1e5),
        ("santiago", corpus::build_default("santiago").unwrap(), santiago(8), 1e5),
        ("e1e2", corpus::build_default("e1e2").unwrap(), e1e2(400), 200.0),
        ("dyadic_sector", corpus::build_default("dyadic_sector").unwrap(), dyadic(), 1e5),
        ("betsakos", corpus::build_default("betsakos").unwrap(), betsakos(), 100.0),
        ("cubic", corpus::build_default("cubic").unwrap(), Oracle::new(|x| x * x * x, vec![]), 1e3),
        (
            "sinusoidal_sector",
            corpus::build_default("sinusoidal_sector").unwrap(),
            Oracle::new(|x| x.abs() + 0.5 * x.sin(), vec![]),
            1e3,
        ),
        (
            "sector",
            Domain::sector(c(1.0, -1.0), 1.2, 0.4).unwrap(),
            Oracle::new(|x| if x < 1.0 { -1.0 + (1.0 - x) / 1.2f64.tan() } else { -1.0 + (x - 1.0) / 0.4f64.tan() }, vec![]),
            1e4,
        ),
    ]
}

fn draw(rng: &mut ChaCha8Rng, dom: &Domain, t_max: f64) -> Option<(Complex, f64)> {
    let p = c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
    let t0 = dom.natural_point_t0(p)?;
    let lo = t0 + 0.05;
    Some((p, lo * (t_max / lo).powf(rng.gen_range(0.0..1.0))))
}

#[test]
fn extents_match_dense_sweep() {
    let cases = cases();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut checked = 0;
    while checked < 1000 {
        let (name, dom, oracle, t_max) = &cases[checked % cases.len()];
        let Some((p, t)) = draw(&mut rng, dom, *t_max) else { continue };
        for side in [Side::Minus, Side::Plus] {
            let got = alpha(dom, p, t, side, 1e-12).unwrap();
            let want = oracle.alpha(p, t, side.sign());
            assert!(got > 0.0 && got <= PI);
            assert!((got - want).abs() <= 1e-9, "{name} p = {p} t = {t} {side:?}: {got} vs {want}");
        }
        checked += 1;
    }
}

#[test]
fn distances_match_sampled_boundary() {
    let cases = cases();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut checked = 0;
    while checked < 150 {
        let (name, dom, oracle, t_max) = &cases[checked % cases.len()];
        let Some((p, t)) = draw(&mut rng, dom, t_max.min(1e3)) else { continue };
        let w = p + c(0.0, t);
        for side in [Side::Minus, Side::Plus] {
            let got = delta(dom, p, t, side).unwrap();
            let (lo, hi) = match side {
                Side::Minus => (f64::NEG_INFINITY, p.re),
                Side::Plus => (p.re, f64::INFINITY),
            };
            let want = oracle.distance(w, lo, hi, t);
            assert!(got >= 0.0 && got <= t);
            assert!(got <= want * (1.0 + 1e-9) + 1e-12, "{name} p = {p} t = {t} {side:?}: {got} above {want}");
            assert!(got >= want * (1.0 - 1e-3), "{name} p = {p} t = {t} {side:?}: {got} vs {want}");
        }
        checked += 1;
    }
}

#[test]
fn sector_right_distance_from_i() {
    let d = Domain::sector(c(0.0, 0.0), FRAC_PI_2, PI / 6.0).unwrap();
    let o = Oracle::new(|x| if x < 0.0 { 0.0 } else { x / (PI / 6.0).tan() }, vec![]);
    let want = o.distance(c(0.0, 1.0), 0.0, f64::INFINITY, 1.0);
    assert!((want - 0.5).abs() < 1e-6);
    assert!((delta(&d, c(0.0, 0.0), 1.0, Side::Plus).unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn line_epigraph_extents() {
    let d = Domain::epigraph(Curve::Polynomial { coeffs: vec![0.0, 1.0] }).unwrap();
    let o = Oracle::new(|x| x, vec![]);
    for t in [10.0, 1e3, 1e5] {
        let m = alpha(&d, c(0.0, 0.0), t, Side::Minus, 1e-12).unwrap();
        let p = alpha(&d, c(0.0, 0.0), t, Side::Plus, 1e-12).unwrap();
        assert!((m - 3.0 * FRAC_PI_4).abs() < 1e-9 && (p - FRAC_PI_4).abs() < 1e-9);
        assert!((o.alpha(c(0.0, 0.0), t, -1.0) - m).abs() < 1e-9);
        assert!((o.alpha(c(0.0, 0.0), t, 1.0) - p).abs() < 1e-9);
    }
}

#[test]
fn two_sided_factorial_minus_extent_closed_form() {
    let d = corpus::build_default("manolo").unwrap();
    let o = manolo(8);
    for n in 2..=7 {
        let t = fact(n + 1);
        let want = (1.0 / (n * (n + 1)) as f64).asin();
        let got = alpha(&d, c(0.0, 0.0), t, Side::Minus, 1e-12).unwrap();
        assert!((got - want).abs() < 1e-12, "n = {n}: {got} vs {want}");
        assert!((o.alpha(c(0.0, 0.0), t, -1.0) - want).abs() < 1e-9);
    }
}

#[test]
fn factorial_slits_close_radii() {
    let d = corpus::build_default("santiago").unwrap();
    let o = santiago(8);
    for n in 2..=6 {
        let t = fact(n + 1);
        let r = check_close_radii(&d, c(0.0, 0.0), t, FRAC_PI_4, PI / 16.0, 1e-12).unwrap();
        assert!(r.holds, "n = {n}");
        let delta = r.delta.unwrap();
        for j in 0..=20 {
            let x = t * (1.0 + delta * j as f64 / 20.0);
            assert!(o.alpha(c(0.0, 0.0), x, 1.0) >= FRAC_PI_4 - PI / 16.0);
        }
    }
}

#[test]
fn bridge_examples_against_oracle_values() {
    let d = corpus::build_default("santiago").unwrap();
    let r = check_angular_distance_bridge(&d, c(0.0, 0.0), 24.0, 1e-12, 1e-12).unwrap();
    assert!(r.holds(), "{:?}", r.violations);
    assert!((r.alpha_plus - santiago(8).alpha(c(0.0, 0.0), 24.0, 1.0)).abs() < 1e-9);
    let d = corpus::build_default("slit_halfplane").unwrap();
    let r = check_angular_distance_bridge(&d, c(0.0, 0.0), 1.3, 1e-12, 1e-12).unwrap();
    assert!(r.holds(), "{:?}", r.violations);
    assert!((r.alpha_minus - (1.0 / 1.3f64).asin()).abs() < 1e-12);
}

#[test]
fn half_plane_orbit_through_cayley() {
    let k = koenigs_catalog(&Domain::half_plane_upper()).unwrap();
    let cayley_inv = |w: Complex| (c(0.0, 1.0) - w) / (c(0.0, 1.0) + w);
    let grid: Vec<f64> = (0..=100).map(|j| j as f64).collect();
    let cf = trajectory_closed_form(&k, c(0.0, 0.0), &grid).unwrap();
    let ode = trajectory_ode(&k, c(0.0, 0.0), &grid, &OdeControl::default()).unwrap();
    for (j, &t) in grid.iter().enumerate() {
        let want = cayley_inv(c(0.0, 1.0 + t));
        assert!((want - c(-t / (2.0 + t), 0.0)).norm() < 1e-15);
        assert!((cf.points[j] - want).norm() < 1e-14);
        assert!((ode.points[j] - want).norm() < 1e-6);
    }
    assert!(cf.slopes.iter().skip(1).all(|s| s.abs() < 1e-12));
}

#[test]
fn catalog_maps_sampled_against_their_images() {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let maps = [
        (Domain::half_plane_upper(), Box::new(|z: Complex| c(0.0, 1.0) * (c(1.0, 0.0) - z) / (c(1.0, 0.0) + z)) as Box<dyn Fn(Complex) -> Complex>),
        (
            Domain::vertical_strip(0.0, PI).unwrap(),
            Box::new(|z: Complex| c(FRAC_PI_2, 0.0) - c(0.0, 1.0) * ((c(1.0, 0.0) + z) / (c(1.0, 0.0) - z)).ln()),
        ),
        (
            Domain::sector(c(0.0, 0.0), 1.1, 0.7).unwrap(),
            Box::new(|z: Complex| {
                c(0.0, 1.0) * Complex::from_polar(1.0, 0.2) * ((c(1.0, 0.0) - z) / (c(1.0, 0.0) + z)).powf(1.8 / PI)
            }),
        ),
    ];
    for (dom, h) in &maps {
        let k = koenigs_catalog(dom).unwrap();
        for _ in 0..500 {
            let z = Complex::from_polar(rng.gen_range(0.0f64..0.999).sqrt(), rng.gen_range(-PI..PI));
            assert!((k.h(z) - h(z)).norm() <= 1e-10 * (1.0 + h(z).norm()), "{} at {z}", dom.kind());
            assert!(dom.contains(h(z)));
            let edge = Complex::from_polar(1.0 - 1e-9, rng.gen_range(-3.1..3.1));
            let w = h(edge);
            let gap = (w.im - dom.floor(w.re)).min(w.re - dom.projection_interval().0).min(dom.projection_interval().1 - w.re);
            assert!(gap < 1e-3 * (1.0 + w.norm()), "{} near-boundary image {w} is deep inside", dom.kind());
        }
    }
}

#[test]
fn abel_residual_on_sector_up_to_1000() {
    let d = Domain::sector(c(0.0, 0.0), PI / 3.0, FRAC_PI_4).unwrap();
    let k = koenigs_catalog(&d).unwrap();
    let grid: Vec<f64> = (0..=1000).map(|j| j as f64).collect();
    let tr = trajectory_ode(&k, c(0.2, -0.1), &grid, &OdeControl::default()).unwrap();
    assert!(tr.truncated_at.is_none());
    let worst = tr.abel_residual.iter().copied().fold(0.0, f64::max);
    assert!(worst <= 1e-8, "{worst}");
    let cf = trajectory_closed_form(&k, c(0.2, -0.1), &grid).unwrap();
    assert!(cf.abel_residual.iter().all(|r| *r <= 1e-8));
}

#[test]
fn dyadic_kernel_shapes() {
    let dom = corpus::build("dyadic_sector", &serde_json::json!({"beta": FRAC_PI_2})).unwrap();
    let grid = KernelGrid { half: 2.0, n: 128 };
    let r_family: Vec<f64> = (0..160).map(|k| 1e3 * 1.09f64.powi(k)).collect();
    let k = subsequence_kernel_sampled(&dom, &r_family, c(0.5, 0.5), &grid).unwrap();
    let fit = classify_kernel_shape(k.region.as_ref().unwrap());
    assert!(fit.consistent_with_sector);
    assert!(fit.beta1 < 0.1 && (fit.beta2 - FRAC_PI_2).abs() < 0.1, "{fit:?}");
    let r_dyadic: Vec<f64> = (1..=40).map(|n| 2f64.powi(n)).collect();
    let k = subsequence_kernel_sampled(&dom, &r_dyadic, c(-0.75, 1.0), &grid).unwrap();
    assert!(!classify_kernel_shape(k.region.as_ref().unwrap()).consistent_with_sector);
}

#[test]
fn sandwich_examples() {
    let spec = SampleSpec { r_max: 1e4, per_primitive: 500 };
    let m = c(0.3, 0.3);
    let s = Domain::sector(m, 0.9, 1.3).unwrap();
    assert!(check_cr3(&s, m - c(0.0, 0.5), m + c(0.0, 0.5), 0.9, 1.3, &spec, 4000, 1).unwrap().holds);
    let sin = corpus::build_default("sinusoidal_sector").unwrap();
    let r = check_cr3(&sin, c(0.0, -0.6), c(0.0, 0.6), FRAC_PI_4, FRAC_PI_4, &spec, 4000, 2).unwrap();
    assert!(r.holds, "{:?}", r.witness);
    let cubic = corpus::build_default("cubic").unwrap();
    for (b1, b2) in [(PI, 0.5), (2.0, 2.0), (3.0, 0.1)] {
        let r = check_cr3(&cubic, c(0.0, -50.0), c(0.0, 50.0), b1, b2, &spec, 4000, 3).unwrap();
        assert!(!r.holds, "({b1}, {b2})");
    }
}
