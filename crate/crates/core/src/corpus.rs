//! Reference domains with known closed-form behaviour, and fixtures that pin
//! their extents and distances at specific radii.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::distances::delta;
use crate::extents::alpha;
use crate::geometry::{arc_height, Curve, Domain, SlitFamily, SlitSet, VerticalSlit};
use crate::slope::PredictConfig;
use crate::{Complex, Error, Result, Side};

pub const NAMES: [&str; 9] = [
    "slit_halfplane",
    "dyadic_sector",
    "epigraph_asymptotic",
    "cubic",
    "e1e2",
    "santiago",
    "manolo",
    "betsakos",
    "sinusoidal_sector",
];

/// Largest factorial index used by the factorial slit families.
pub const MAX_FACTORIAL_N: usize = 90;

/// `n!` as a float.
pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Catalogue information for one entry.
#[derive(Clone, Debug, Serialize)]
pub struct CorpusInfo {
    pub name: &'static str,
    pub summary: &'static str,
    pub p: Complex,
    /// Grid on which extent-based prediction settles for this entry.
    pub predict: PredictConfig,
}

pub fn info(name: &str) -> Result<CorpusInfo> {
    let base = PredictConfig::default();
    let (summary, predict) = match name {
        "slit_halfplane" => ("upper half-plane minus the segment {-1 + iy : 0 < y <= 1}", base),
        "dyadic_sector" => (
            "S_0(pi/4, beta) minus the slits {-2^n + iy : 2^n <= y <= 2^n (1 + 2^n)}",
            PredictConfig { t_start: 1e4, t_end: 1e14, ..base },
        ),
        "epigraph_asymptotic" => (
            "epigraph of kl|x| (x<0), kr x (x>=0) plus a sin(w x)",
            PredictConfig { t_start: 1e2, t_end: 1e7, ..base },
        ),
        "cubic" => ("epigraph of x^3", PredictConfig { t_start: 1e2, t_end: 1e10, ..base }),
        "e1e2" => (
            "plane minus downward slits from i n e^{i b1} and/or i n e^{-i b2}, n >= 1",
            PredictConfig { t_start: 1e2, t_end: 1e5, ..base },
        ),
        "santiago" => ("plane minus downward slits at x = 0 and x = n! sqrt(2)/2", base),
        "manolo" => ("plane minus downward slits at x = 0 and x = +-(n-1)!", base),
        "betsakos" => (
            "plane minus finitely many downward slits with tops clipped to a height",
            PredictConfig { t_start: 1e3, t_end: 1e7, ..base },
        ),
        "sinusoidal_sector" => ("epigraph of k|x| + a sin(w x)", base),
        _ => return Err(Error::UnknownCorpus(name.to_string())),
    };
    let name = NAMES.iter().find(|n| **n == name).unwrap();
    Ok(CorpusInfo { name, summary, p: Complex::new(0.0, 0.0), predict })
}

fn params<T: DeserializeOwned + Default>(v: &Value) -> Result<T> {
    if v.is_null() {
        return Ok(T::default());
    }
    serde_json::from_value(v.clone()).map_err(|e| Error::Config(format!("corpus parameters: {e}")))
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct SlitHalfplane {
    x: f64,
    height: f64,
}

impl Default for SlitHalfplane {
    fn default() -> Self {
        SlitHalfplane { x: -1.0, height: 1.0 }
    }
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct Dyadic {
    beta: f64,
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic { beta: FRAC_PI_2 }
    }
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct Asymptotic {
    kappa_left: f64,
    kappa_right: f64,
    amplitude: f64,
    frequency: f64,
}

impl Default for Asymptotic {
    fn default() -> Self {
        Asymptotic { kappa_left: 0.0, kappa_right: 0.0, amplitude: 1.0, frequency: 1.0 }
    }
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct Sinusoidal {
    kappa: f64,
    amplitude: f64,
    frequency: f64,
}

impl Default for Sinusoidal {
    fn default() -> Self {
        Sinusoidal { kappa: 1.0, amplitude: 0.5, frequency: 1.0 }
    }
}

#[derive(Debug, Deserialize, Default, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
enum Sides {
    Left,
    Right,
    #[default]
    Both,
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct E1E2 {
    beta1: f64,
    beta2: f64,
    sides: Sides,
}

impl Default for E1E2 {
    fn default() -> Self {
        E1E2 { beta1: PI / 3.0, beta2: PI / 5.0, sides: Sides::Both }
    }
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct Factorial {
    n_max: usize,
}

impl Default for Factorial {
    fn default() -> Self {
        Factorial { n_max: 8 }
    }
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct Betsakos {
    n_max: usize,
    clip: f64,
}

impl Default for Betsakos {
    fn default() -> Self {
        Betsakos { n_max: 4, clip: 1.0 }
    }
}

/// `sin(π/4)`. Ray points at `θ = -π/4` are built with the same sine, so
/// they land exactly on the factorial slits.
pub fn santiago_gamma() -> f64 {
    FRAC_PI_4.sin()
}

/// `(x_n, y_n)` for the factorial example with slits at `x = n! γ`.
pub fn santiago_tip(n: usize) -> (f64, f64) {
    let x = factorial(n) * santiago_gamma();
    (x, arc_height(factorial(n + 1), x))
}

/// `(x_n, y_n)` with `x_n = (n-1)!` and `y_n` on the circle of radius `(n+1)!`.
pub fn manolo_tip(n: usize) -> (f64, f64) {
    let x = factorial(n - 1);
    (x, arc_height(factorial(n + 1), x))
}

fn check_n_max(n_max: usize, min: usize) -> Result<()> {
    if n_max < min || n_max > MAX_FACTORIAL_N {
        return Err(Error::Config(format!("n_max must lie in [{min}, {MAX_FACTORIAL_N}], got {n_max}")));
    }
    Ok(())
}

/// Builds a corpus domain from its name and JSON parameters (`null` for defaults).
pub fn build(name: &str, raw: &Value) -> Result<Domain> {
    match name {
        "slit_halfplane" => {
            let p: SlitHalfplane = params(raw)?;
            Domain::slit_complement(
                Domain::half_plane_upper(),
                SlitSet::fixed(vec![VerticalSlit::bounded(p.x, 0.0, p.height)]),
            )
        }
        "dyadic_sector" => {
            let p: Dyadic = params(raw)?;
            let fam = SlitFamily::new("dyadic", |n| {
                (n <= 500).then(|| {
                    let x = 2f64.powi(n as i32);
                    VerticalSlit::bounded(-x, x, x * (1.0 + x))
                })
            });
            Domain::slit_complement(Domain::sector(Complex::new(0.0, 0.0), FRAC_PI_4, p.beta)?, SlitSet::default().with_family(fam))
        }
        "epigraph_asymptotic" => {
            let p: Asymptotic = params(raw)?;
            Domain::epigraph(Curve::Wedge {
                kappa_left: p.kappa_left,
                kappa_right: p.kappa_right,
                amplitude: p.amplitude,
                frequency: p.frequency,
            })
        }
        "cubic" => {
            let _: Option<Value> = params(raw)?;
            Domain::epigraph(Curve::Polynomial { coeffs: vec![0.0, 0.0, 0.0, 1.0] })
        }
        "e1e2" => {
            let p: E1E2 = params(raw)?;
            let mut set = SlitSet::default();
            if p.sides != Sides::Right {
                let (s, c) = (p.beta1.sin(), p.beta1.cos());
                set = set.with_family(SlitFamily::new("e1", move |n| Some(VerticalSlit::ray(-((n + 1) as f64) * s, (n + 1) as f64 * c))));
            }
            if p.sides != Sides::Left {
                let (s, c) = (p.beta2.sin(), p.beta2.cos());
                set = set.with_family(SlitFamily::new("e2", move |n| Some(VerticalSlit::ray((n + 1) as f64 * s, (n + 1) as f64 * c))));
            }
            if !(p.beta1 > 0.0 && p.beta1 < PI && p.beta2 > 0.0 && p.beta2 < PI) {
                return Err(Error::Config("e1e2 angles must lie in (0, π)".into()));
            }
            Domain::plane_minus(set)
        }
        "santiago" => {
            let p: Factorial = params(raw)?;
            check_n_max(p.n_max, 1)?;
            let n_max = p.n_max;
            let fam = SlitFamily::new("santiago", move |k| {
                let n = k + 1;
                (n <= n_max).then(|| {
                    let (x, y) = santiago_tip(n);
                    VerticalSlit::ray(x, y - 1.0)
                })
            });
            Domain::plane_minus(SlitSet::fixed(vec![VerticalSlit::ray(0.0, 0.0)]).with_family(fam))
        }
        "manolo" => {
            let p: Factorial = params(raw)?;
            check_n_max(p.n_max, 2)?;
            Domain::plane_minus(manolo_slits(p.n_max, f64::INFINITY))
        }
        "betsakos" => {
            let p: Betsakos = params(raw)?;
            check_n_max(p.n_max, 2)?;
            Domain::plane_minus(manolo_slits(p.n_max, p.clip))
        }
        "sinusoidal_sector" => {
            let p: Sinusoidal = params(raw)?;
            Domain::epigraph(Curve::Wedge {
                kappa_left: p.kappa,
                kappa_right: p.kappa,
                amplitude: p.amplitude,
                frequency: p.frequency,
            })
        }
        _ => Err(Error::UnknownCorpus(name.to_string())),
    }
}

/// `Γ` at `x = 0` plus `Γ_n` (right) and `Λ_n` (left) for `2 <= n <= n_max`,
/// with every top clipped to `clip`.
fn manolo_slits(n_max: usize, clip: f64) -> SlitSet {
    let fam = SlitFamily::new("manolo", move |k| {
        let n = 2 + k / 2;
        (n <= n_max).then(|| {
            let (x, y) = manolo_tip(n);
            if k % 2 == 0 {
                VerticalSlit::ray(-x, y.min(clip))
            } else {
                VerticalSlit::ray(x, (y - 1.0).min(clip))
            }
        })
    });
    SlitSet::fixed(vec![VerticalSlit::ray(0.0, clip.min(0.0))]).with_family(fam)
}

/// Builds a corpus domain with default parameters.
pub fn build_default(name: &str) -> Result<Domain> {
    build(name, &Value::Null)
}

/// What a fixture measures on the domain, with base point `p`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Quantity {
    AlphaMinus { p: Complex, t: f64 },
    AlphaPlus { p: Complex, t: f64 },
    DeltaMinusSquared { p: Complex, t: f64 },
    DeltaPlusSquared { p: Complex, t: f64 },
    DeltaPlus { p: Complex, t: f64 },
    /// `sin α-(t) / sin α+(t)`.
    SineRatio { p: Complex, t: f64 },
    /// `δ+(t)² / δ-(t)²`.
    DeltaSquaredRatio { p: Complex, t: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "tol", rename_all = "snake_case")]
pub enum Check {
    Absolute(f64),
    Relative(f64),
    /// Passes when `got <= expected`.
    AtMost,
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    /// A closed form stated with the construction of the domain.
    Published,
    /// Immediate from the definitions.
    Elementary,
    /// Frozen from an independent computation.
    Computed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub label: String,
    pub quantity: Quantity,
    pub expected: f64,
    pub check: Check,
    pub origin: Origin,
}

pub const FIXTURE_TOL_THETA: f64 = 1e-12;

impl Fixture {
    pub fn evaluate(&self, dom: &Domain) -> Result<f64> {
        let tt = FIXTURE_TOL_THETA;
        Ok(match self.quantity {
            Quantity::AlphaMinus { p, t } => alpha(dom, p, t, Side::Minus, tt)?,
            Quantity::AlphaPlus { p, t } => alpha(dom, p, t, Side::Plus, tt)?,
            Quantity::DeltaMinusSquared { p, t } => delta(dom, p, t, Side::Minus)?.powi(2),
            Quantity::DeltaPlusSquared { p, t } => delta(dom, p, t, Side::Plus)?.powi(2),
            Quantity::DeltaPlus { p, t } => delta(dom, p, t, Side::Plus)?,
            Quantity::SineRatio { p, t } => alpha(dom, p, t, Side::Minus, tt)?.sin() / alpha(dom, p, t, Side::Plus, tt)?.sin(),
            Quantity::DeltaSquaredRatio { p, t } => (delta(dom, p, t, Side::Plus)? / delta(dom, p, t, Side::Minus)?).powi(2),
        })
    }

    pub fn passes(&self, got: f64) -> bool {
        match self.check {
            Check::Absolute(tol) => (got - self.expected).abs() <= tol,
            Check::Relative(tol) => (got - self.expected).abs() <= tol * self.expected.abs(),
            Check::AtMost => got <= self.expected,
        }
    }

    pub fn tolerance_label(&self) -> String {
        match self.check {
            Check::Absolute(t) => format!("abs {t:e}"),
            Check::Relative(t) => format!("rel {t:e}"),
            Check::AtMost => "upper bound".to_string(),
        }
    }
}

/// `t_{n+1} - y_n` computed as `x_n² / (t_{n+1} + y_n)`.
pub fn stable_gap(t: f64, x: f64, y: f64) -> f64 {
    x * x / (t + y)
}

/// Fixtures of a corpus entry evaluated with default parameters.
pub fn fixtures(name: &str) -> Result<Vec<Fixture>> {
    let o = Complex::new(0.0, 0.0);
    let fx = |label: String, quantity, expected, check, origin| Fixture { label, quantity, expected, check, origin };
    let mut out = Vec::new();
    match name {
        "slit_halfplane" => {
            for t in [0.3, 0.9, 1.0, 1.1, 1.3, 1.414, 1.5, 3.0, 100.0] {
                let expected = if t <= 1.0 || t > 2f64.sqrt() { FRAC_PI_2 } else { (1.0 / t).asin() };
                out.push(fx(format!("alpha- at t = {t}"), Quantity::AlphaMinus { p: o, t }, expected, Check::Absolute(1e-6), Origin::Published));
            }
        }
        "santiago" => {
            for n in 2..=7 {
                let t = factorial(n + 1);
                out.push(fx(format!("alpha+ at t = {}!", n + 1), Quantity::AlphaPlus { p: o, t }, FRAC_PI_4, Check::Absolute(1e-8), Origin::Published));
                let (_, y) = santiago_tip(n);
                let theta = (t - y) / t * 4.0 * ((n + 1) as f64).powi(2);
                let bound = (theta / 2.0).sqrt() * t / (n + 1) as f64 + 1.0;
                out.push(fx(format!("delta+ bound at t = {}!", n + 1), Quantity::DeltaPlus { p: o, t }, bound, Check::AtMost, Origin::Published));
            }
        }
        "manolo" => {
            for n in 2..=7 {
                let t = factorial(n + 1);
                let (x, y) = manolo_tip(n);
                let gap = stable_gap(t, x, y);
                let dm2 = 2.0 * t * gap;
                let dp2 = 2.0 * t * gap + 2.0 * gap + 1.0;
                let ratio = 1.0 + 1.0 / t + 1.0 / (2.0 * t * gap);
                out.push(fx(format!("sin ratio at t = {}!", n + 1), Quantity::SineRatio { p: o, t }, 1.0 / n as f64, Check::Absolute(1e-8), Origin::Published));
                out.push(fx(format!("delta-^2 at t = {}!", n + 1), Quantity::DeltaMinusSquared { p: o, t }, dm2, Check::Relative(1e-8), Origin::Published));
                out.push(fx(format!("delta+^2 at t = {}!", n + 1), Quantity::DeltaPlusSquared { p: o, t }, dp2, Check::Relative(1e-8), Origin::Published));
                out.push(fx(format!("delta ratio at t = {}!", n + 1), Quantity::DeltaSquaredRatio { p: o, t }, ratio, Check::Relative(1e-8), Origin::Published));
            }
        }
        "e1e2" => {
            let (b1, b2) = (PI / 3.0, PI / 5.0);
            for t in [7.0f64, 10.5, 100.5, 1000.25] {
                let law = |beta: f64| (t.ceil() * beta.sin() / t).asin();
                out.push(fx(format!("alpha- at t = {t}"), Quantity::AlphaMinus { p: o, t }, law(b1), Check::Absolute(1e-9), Origin::Elementary));
                out.push(fx(format!("alpha+ at t = {t}"), Quantity::AlphaPlus { p: o, t }, law(b2), Check::Absolute(1e-9), Origin::Elementary));
            }
        }
        "dyadic_sector" | "epigraph_asymptotic" | "cubic" | "betsakos" | "sinusoidal_sector" => {}
        _ => return Err(Error::UnknownCorpus(name.to_string())),
    }
    Ok(out)
}
