//! Slope prediction from extent limits, plus the sufficient conditions that
//! certify a slope directly from the shape of the boundary.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::extents::{alpha, extent_profile, geometric_grid, profile_limits, AngularProfile, LimitEstimate};
use crate::geometry::{Domain, TIP_RTOL};
use crate::{Complex, Error, Result, Side};

/// Grid and tolerances for extent-based prediction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PredictConfig {
    pub t_start: f64,
    pub t_end: f64,
    pub q: f64,
    pub tol_theta: f64,
    pub tol_limit: f64,
}

impl Default for PredictConfig {
    fn default() -> Self {
        PredictConfig { t_start: 1.0, t_end: 1e6, q: 1.05, tol_theta: 1e-9, tol_limit: 1e-3 }
    }
}

impl PredictConfig {
    /// Threshold below which a limit counts as zero.
    pub fn tol_zero(&self) -> f64 {
        2.0 * self.tol_limit
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Singleton { theta: f64 },
    NontangentialUnresolved,
    /// Slope `{π/2}`.
    TangentialPlus,
    /// Slope `{-π/2}`.
    TangentialMinus,
    Inconclusive,
}

impl Verdict {
    /// The single slope value, when the verdict pins one down.
    pub fn theta(&self) -> Option<f64> {
        match self {
            Verdict::Singleton { theta } => Some(*theta),
            Verdict::TangentialPlus => Some(FRAC_PI_2),
            Verdict::TangentialMinus => Some(-FRAC_PI_2),
            _ => None,
        }
    }
}

/// Which sufficient condition produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// Both extents converge to positive limits.
    ConvergedExtents,
    /// Both extents stay bounded away from zero.
    PositiveExtents,
    /// Minus extent positive, plus extent vanishing.
    VanishingPlusExtent,
    /// Plus extent positive, minus extent vanishing.
    VanishingMinusExtent,
    /// Boundary within a sublinear envelope of a sector boundary.
    SectorEnvelope,
    /// Boundary inside a lower half-strip.
    HalfStripBoundary,
    /// Domain sandwiched between two translates of a sector.
    SectorSandwich,
    /// Boundary meets a sector's edges at uniformly spaced radii.
    UniformMeeting,
    /// Comparable extents under the doubling condition.
    ComparableExtents,
}

/// Numbers behind an extent-based verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub p: Complex,
    pub t_window: (f64, f64),
    pub grid_points: usize,
    pub alpha_minus: LimitEstimate,
    pub alpha_plus: LimitEstimate,
    pub tol_zero: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlopePrediction {
    pub verdict: Verdict,
    pub eta: Option<f64>,
    pub rule: Option<Rule>,
    pub certificate: Option<Certificate>,
}

impl SlopePrediction {
    fn from_rule(rule: Rule, eta: f64) -> Self {
        let verdict = if eta == 1.0 {
            Verdict::TangentialPlus
        } else if eta == -1.0 {
            Verdict::TangentialMinus
        } else {
            Verdict::Singleton { theta: eta * FRAC_PI_2 }
        };
        SlopePrediction { verdict, eta: Some(eta), rule: Some(rule), certificate: None }
    }
}

fn eta_of(b1: f64, b2: f64) -> f64 {
    (b1 - b2) / (b1 + b2)
}

/// Applies the decision cascade to an extent profile.
pub fn predict_from_profile(profile: &AngularProfile, cfg: &PredictConfig) -> Result<SlopePrediction> {
    let (am, ap) = profile_limits(profile, cfg.tol_limit)?;
    let tz = cfg.tol_zero();
    let certificate = Certificate {
        p: profile.p,
        t_window: am.window,
        grid_points: profile.t.len(),
        alpha_minus: am,
        alpha_plus: ap,
        tol_zero: tz,
    };
    let positive = |l: &LimitEstimate| l.liminf > tz && !l.collapsing;
    let vanishing = |l: &LimitEstimate| l.limsup <= tz;
    let (verdict, eta, rule) = if am.converged && ap.converged && am.liminf > tz && ap.liminf > tz {
        let (a, b) = (am.limit.unwrap(), ap.limit.unwrap());
        let eta = eta_of(a, b);
        (Verdict::Singleton { theta: eta * FRAC_PI_2 }, Some(eta), Some(Rule::ConvergedExtents))
    } else if positive(&am) && positive(&ap) {
        (Verdict::NontangentialUnresolved, None, Some(Rule::PositiveExtents))
    } else if positive(&am) && vanishing(&ap) {
        (Verdict::TangentialPlus, Some(1.0), Some(Rule::VanishingPlusExtent))
    } else if positive(&ap) && vanishing(&am) {
        (Verdict::TangentialMinus, Some(-1.0), Some(Rule::VanishingMinusExtent))
    } else {
        (Verdict::Inconclusive, None, None)
    };
    Ok(SlopePrediction { verdict, eta, rule, certificate: Some(certificate) })
}

/// Extent-based slope prediction at a natural point `p`.
pub fn predict(dom: &Domain, p: Complex, cfg: &PredictConfig) -> Result<SlopePrediction> {
    let t0 = dom.natural_point_t0(p).ok_or(Error::NotNatural { re: p.re, im: p.im })?;
    if cfg.t_start <= t0 {
        return Err(Error::OutsideNaturalDomain { t: cfg.t_start, t0 });
    }
    let grid = geometric_grid(cfg.t_start, cfg.t_end, cfg.q)?;
    let profile = extent_profile(dom, p, &grid, cfg.tol_theta)?;
    predict_from_profile(&profile, cfg)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PendientesReport {
    pub applicable: bool,
    pub ratio_liminf_minus: f64,
    pub ratio_liminf_plus: f64,
    pub c1: f64,
    pub c2: f64,
    pub comparable: bool,
}

/// Doubling condition `liminf α(t/2)/α(t) ≥ 1/2` on both sides, and
/// comparability `C1 α+ ≤ α- ≤ C2 α+` on the trailing window.
pub fn check_pendientes(dom: &Domain, p: Complex, cfg: &PredictConfig) -> Result<PendientesReport> {
    let grid = geometric_grid(cfg.t_start, cfg.t_end, cfg.q)?;
    let tail = &grid[grid.len() / 2..];
    let mut rm = f64::INFINITY;
    let mut rp = f64::INFINITY;
    let mut c1 = f64::INFINITY;
    let mut c2 = 0.0f64;
    for &t in tail {
        let m = alpha(dom, p, t, Side::Minus, cfg.tol_theta)?;
        let pl = alpha(dom, p, t, Side::Plus, cfg.tol_theta)?;
        let mh = alpha(dom, p, t / 2.0, Side::Minus, cfg.tol_theta)?;
        let ph = alpha(dom, p, t / 2.0, Side::Plus, cfg.tol_theta)?;
        rm = rm.min(mh / m);
        rp = rp.min(ph / pl);
        c1 = c1.min(m / pl);
        c2 = c2.max(m / pl);
    }
    let applicable = rm >= 0.5 && rp >= 0.5;
    let tz = cfg.tol_zero();
    let comparable = c1 > tz && c2 < 1.0 / tz;
    Ok(PendientesReport { applicable, ratio_liminf_minus: rm, ratio_liminf_plus: rp, c1, c2, comparable })
}

/// A sample that broke a boundary condition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub condition: String,
    pub point: Complex,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorollaryReport {
    pub holds: bool,
    pub samples: usize,
    pub witness: Option<Witness>,
    pub implied: Option<SlopePrediction>,
}

/// How densely boundaries are sampled by the corollary checks.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub r_max: f64,
    pub per_primitive: usize,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec { r_max: 1e6, per_primitive: 1000 }
    }
}

fn ray_distance(w: Complex, p: Complex, dir: Complex) -> f64 {
    let d = w - p;
    let s = (d.re * dir.re + d.im * dir.im).max(0.0);
    (d - dir * s).norm()
}

/// Distance from `w` to the boundary of `S_p(β1, β2)`.
pub fn sector_boundary_distance(w: Complex, p: Complex, beta1: f64, beta2: f64) -> f64 {
    let left = Complex::new(-beta1.sin(), beta1.cos());
    let right = Complex::new(beta2.sin(), beta2.cos());
    ray_distance(w, p, left).min(ray_distance(w, p, right))
}

fn log_radii(r_max: f64) -> impl Iterator<Item = f64> {
    (0..=60).map(move |k| r_max * 10f64.powf(-3.0 + 3.0 * k as f64 / 60.0))
}

/// Every sampled boundary point lies within `ρ(w)` of `∂S_p(β1, β2)`, plus
/// the bisector conditions required when an angle is `0` or `π`.
pub fn check_cr1(
    dom: &Domain,
    p: Complex,
    beta1: f64,
    beta2: f64,
    rho: &dyn Fn(Complex) -> f64,
    spec: &SampleSpec,
) -> Result<CorollaryReport> {
    if !(0.0..=PI).contains(&beta1) || !(0.0..=PI).contains(&beta2) || beta1 + beta2 <= 0.0 {
        return Err(Error::Precondition(format!("bad sector angles ({beta1}, {beta2})")));
    }
    let pts = dom.boundary_samples(spec.r_max, spec.per_primitive);
    let fail = |condition: &str, point: Complex, lhs: f64, rhs: f64| CorollaryReport {
        holds: false,
        samples: pts.len(),
        witness: Some(Witness { condition: condition.to_string(), point, lhs, rhs }),
        implied: None,
    };
    for &w in &pts {
        let d = sector_boundary_distance(w, p, beta1, beta2);
        let r = rho(w);
        if d > r {
            return Ok(fail("boundary envelope", w, d, r));
        }
        if w.norm() >= spec.r_max / 100.0 && r / w.norm() > 0.1 {
            return Ok(fail("sublinear envelope", w, r / w.norm(), 0.1));
        }
    }
    let bis = Complex::new(0.0, 1.0) * Complex::from_polar(1.0, (beta1 - beta2) / 2.0);
    if beta1 * beta2 == 0.0 {
        for r in log_radii(spec.r_max) {
            let w = p + bis * r;
            if !dom.contains(w) {
                return Ok(fail("bisector inside", w, r, 0.0));
            }
        }
    }
    if (beta1 == PI) != (beta2 == PI) {
        for r in log_radii(spec.r_max) {
            let w = p - bis * r;
            if dom.contains(w) {
                return Ok(fail("opposite bisector outside", w, r, 0.0));
            }
        }
    }
    Ok(CorollaryReport {
        holds: true,
        samples: pts.len(),
        witness: None,
        implied: Some(SlopePrediction::from_rule(Rule::SectorEnvelope, eta_of(beta1, beta2))),
    })
}

/// Every sampled boundary point lies in `{a1 < x < a2, y < b}`.
pub fn check_cr2(dom: &Domain, a1: f64, a2: f64, b: f64, spec: &SampleSpec) -> Result<CorollaryReport> {
    let pts = dom.boundary_samples(spec.r_max, spec.per_primitive);
    for &w in &pts {
        if !(w.re > a1 && w.re < a2 && w.im < b) {
            return Ok(CorollaryReport {
                holds: false,
                samples: pts.len(),
                witness: Some(Witness { condition: "half-strip".into(), point: w, lhs: w.re, rhs: w.im }),
                implied: None,
            });
        }
    }
    let holds = !pts.is_empty();
    Ok(CorollaryReport {
        holds,
        samples: pts.len(),
        witness: None,
        implied: holds.then(|| SlopePrediction::from_rule(Rule::HalfStripBoundary, 0.0)),
    })
}

/// Samples both inclusions `S_q(β1, β2) ⊆ Ω ⊆ S_p(β1, β2)`.
#[allow(clippy::too_many_arguments)]
pub fn check_cr3(
    dom: &Domain,
    p: Complex,
    q: Complex,
    beta1: f64,
    beta2: f64,
    spec: &SampleSpec,
    samples: usize,
    seed: u64,
) -> Result<CorollaryReport> {
    if !(beta1 + beta2 > 0.0 && beta1 + beta2 < 2.0 * PI) {
        return Err(Error::Precondition("need 0 < β1 + β2 < 2π".into()));
    }
    let outer = Domain::sector(p, beta1, beta2)?;
    let inner = Domain::sector(q, beta1, beta2)?;
    if !outer.contains(q) {
        return Err(Error::Precondition("q must lie in S_p(β1, β2)".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = 1.0 + (q - p).norm();
    let mut checked = 0;
    let fail = |condition: &str, w: Complex, checked: usize| {
        Ok(CorollaryReport {
            holds: false,
            samples: checked,
            witness: Some(Witness { condition: condition.into(), point: w, lhs: w.re, rhs: w.im }),
            implied: None,
        })
    };
    for _ in 0..samples {
        let r = scale * (spec.r_max / scale).powf(rng.gen_range(-0.5..1.0));
        let phi = rng.gen_range(-PI..PI);
        let w = p + Complex::from_polar(r, phi);
        checked += 1;
        if inner.contains(w) && !dom.contains(w) {
            return fail("inner sector inside domain", w, checked);
        }
        if dom.contains(w) && !outer.contains(w) {
            return fail("domain inside outer sector", w, checked);
        }
    }
    for w in dom.boundary_samples(spec.r_max, spec.per_primitive.min(200)) {
        checked += 1;
        if inner.contains(w) {
            return fail("boundary outside inner sector", w, checked);
        }
    }
    Ok(CorollaryReport {
        holds: true,
        samples: checked,
        witness: None,
        implied: Some(SlopePrediction::from_rule(Rule::SectorSandwich, eta_of(beta1, beta2))),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeetsReport {
    pub meets: bool,
    pub times: Vec<f64>,
    pub max_gap: f64,
}

/// Radii in `t_window` where the edge `p + i t e^{iβ1}` (minus side) or
/// `p + i t e^{-iβ2}` (plus side) of `S_p(β1, β2)` touches a slit.
///
/// Only slit contacts count. `meets` needs at least four contacts, contact
/// gaps no larger than a quarter of the window, and no growth of the maximal
/// gap between the two halves of the window.
pub fn check_meets_uniform_times(
    dom: &Domain,
    p: Complex,
    beta1: f64,
    beta2: f64,
    side: Side,
    t_window: (f64, f64),
    seed: u64,
) -> Result<MeetsReport> {
    let sector = Domain::sector(p, beta1, beta2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..4000 {
        let r = t_window.1 * 10f64.powf(rng.gen_range(-6.0..0.0));
        let th = rng.gen_range(-beta2..beta1);
        let w = Domain::ray_point(p, r, th);
        if sector.contains(w) && !dom.contains(w) {
            return Err(Error::Precondition(format!("S_p(β1, β2) is not inside the domain: {w}")));
        }
    }
    let beta = match side {
        Side::Minus => beta1,
        Side::Plus => beta2,
    };
    if !(beta > 0.0 && beta < PI) {
        return Err(Error::Precondition("edge angle must lie in (0, π)".into()));
    }
    let s = side.sign();
    let (sn, cs) = (beta.sin(), beta.cos());
    let (lo, hi) = t_window;
    let xs = [p.re + s * lo * sn, p.re + s * hi * sn];
    let mut times = Vec::new();
    dom.visit_slits(xs[0].min(xs[1]), xs[0].max(xs[1]), &mut |sl| {
        let t = s * (sl.x - p.re) / sn;
        if t < lo || t > hi {
            return;
        }
        let y = p.im + t * cs;
        let tol = TIP_RTOL * (t + p.im.abs() + sl.y_top.abs());
        if y <= sl.y_top + tol && sl.y_bottom.is_none_or(|b| y > b - tol) {
            times.push(t);
        }
    });
    times.sort_by(f64::total_cmp);
    times.dedup();
    let gaps: Vec<f64> = times.windows(2).map(|w| w[1] - w[0]).collect();
    let max_gap = gaps.iter().copied().fold(0.0, f64::max);
    let meets = if times.len() < 4 {
        false
    } else {
        let (a, b) = gaps.split_at(gaps.len() / 2);
        let first = a.iter().copied().fold(0.0, f64::max);
        let second = b.iter().copied().fold(0.0, f64::max);
        let ends = (times[0] - lo).max(hi - times[times.len() - 1]);
        second <= 2.0 * first + 1e-12 && max_gap.max(ends) <= 0.25 * (hi - lo)
    };
    Ok(MeetsReport { meets, times, max_gap })
}

/// Prediction implied by meeting on both sides (or one side with `π` on the other).
pub fn meets_prediction(beta1: f64, beta2: f64) -> SlopePrediction {
    SlopePrediction::from_rule(Rule::UniformMeeting, eta_of(beta1, beta2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_6;

    #[test]
    fn quarter_turn_sector_prediction() {
        let d = Domain::sector(Complex::new(0.0, 0.0), FRAC_PI_2, FRAC_PI_6).unwrap();
        let pr = predict(&d, Complex::new(0.0, 0.0), &PredictConfig::default()).unwrap();
        assert_eq!(pr.rule, Some(Rule::ConvergedExtents));
        assert!((pr.eta.unwrap() - 0.5).abs() < 1e-12);
        assert!((pr.verdict.theta().unwrap() - PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn prediction_needs_natural_point() {
        let d = Domain::vertical_strip(0.0, 1.0).unwrap();
        assert!(matches!(
            predict(&d, Complex::new(2.0, 0.0), &PredictConfig::default()),
            Err(Error::NotNatural { .. })
        ));
    }

    #[test]
    fn sector_boundary_distance_basics() {
        let p = Complex::new(0.0, 0.0);
        assert!((sector_boundary_distance(Complex::new(3.0, 5.0), p, PI, 0.0) - 3.0).abs() < 1e-15);
        assert!((sector_boundary_distance(Complex::new(0.0, 2.0), p, FRAC_PI_2, FRAC_PI_2) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn cr2_rejects_unbounded_boundaries() {
        let spec = SampleSpec { r_max: 1e4, per_primitive: 100 };
        let s = Domain::sector(Complex::new(0.0, 0.0), PI / 3.0, PI / 3.0).unwrap();
        assert!(!check_cr2(&s, -10.0, 10.0, 10.0, &spec).unwrap().holds);
        let st = Domain::vertical_strip(0.0, 1.0).unwrap();
        assert!(!check_cr2(&st, -10.0, 10.0, 10.0, &spec).unwrap().holds);
    }

    #[test]
    fn cr3_on_sector_itself() {
        let m = Complex::new(0.5, 0.5);
        let d = Domain::sector(m, 1.0, 0.7).unwrap();
        let r = check_cr3(&d, m - Complex::new(0.0, 1.0), m + Complex::new(0.0, 1.0), 1.0, 0.7, &SampleSpec::default(), 5000, 1)
            .unwrap();
        assert!(r.holds, "{:?}", r.witness);
    }

    #[test]
    fn plain_sector_has_no_slit_contacts() {
        let d = Domain::sector(Complex::new(0.0, 0.0), 1.0, 1.0).unwrap();
        let r = check_meets_uniform_times(&d, Complex::new(0.0, 0.0), 1.0, 1.0, Side::Minus, (1.0, 100.0), 3).unwrap();
        assert!(!r.meets && r.times.is_empty());
    }
}
