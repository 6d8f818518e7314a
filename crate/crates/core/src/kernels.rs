//! Kernel limits of the rescaled domains `Ω_r = Ω / r` as `r → ∞`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::extents::{extent_profile, geometric_grid, profile_limits, LimitEstimate};
use crate::geometry::{Domain, HalfPlane};
use crate::slope::PredictConfig;
use crate::{Complex, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelKind {
    /// `S_0(β1, β2)`.
    Sector,
    /// The degenerate kernel `{ω}`.
    TrivialPoint,
    Empty,
    /// The extents did not settle on the grid.
    Undetermined,
}

/// Row-major occupancy mask over an axis-aligned box.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledRegion {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
    pub mask: Vec<bool>,
}

impl SampledRegion {
    pub fn cell_size(&self) -> (f64, f64) {
        ((self.x_max - self.x_min) / self.nx as f64, (self.y_max - self.y_min) / self.ny as f64)
    }

    /// Centre of cell `(i, j)`, column `i`, row `j`.
    pub fn center(&self, i: usize, j: usize) -> Complex {
        let (hx, hy) = self.cell_size();
        Complex::new(self.x_min + (i as f64 + 0.5) * hx, self.y_min + (j as f64 + 0.5) * hy)
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.mask[j * self.nx + i]
    }

    pub fn marked(&self) -> impl Iterator<Item = Complex> + '_ {
        (0..self.ny).flat_map(move |j| (0..self.nx).filter(move |&i| self.get(i, j)).map(move |i| self.center(i, j)))
    }

    pub fn count(&self) -> usize {
        self.mask.iter().filter(|b| **b).count()
    }

    /// Run-length encoding as `(value, run)` pairs.
    pub fn rle(&self) -> Vec<(bool, usize)> {
        let mut out: Vec<(bool, usize)> = Vec::new();
        for &b in &self.mask {
            match out.last_mut() {
                Some((v, n)) if *v == b => *n += 1,
                _ => out.push((b, 1)),
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelEvidence {
    pub r_min: f64,
    pub r_max: f64,
    pub r_count: usize,
    pub alpha_limits: Option<(LimitEstimate, LimitEstimate)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelEstimate {
    pub kind: KernelKind,
    pub beta1: Option<f64>,
    pub beta2: Option<f64>,
    pub point: Option<Complex>,
    pub evidence: KernelEvidence,
    pub region: Option<SampledRegion>,
}

/// Kernel `S_0(α-, α+)` read from the extent limits at `p`.
pub fn kernel_via_extents(dom: &Domain, p: Complex, cfg: &PredictConfig) -> Result<KernelEstimate> {
    let grid = geometric_grid(cfg.t_start, cfg.t_end, cfg.q)?;
    let prof = extent_profile(dom, p, &grid, cfg.tol_theta)?;
    let (am, ap) = profile_limits(&prof, cfg.tol_limit)?;
    let evidence = KernelEvidence {
        r_min: grid[0],
        r_max: *grid.last().unwrap(),
        r_count: grid.len(),
        alpha_limits: Some((am, ap)),
    };
    let settled = am.converged && ap.converged && am.liminf + ap.liminf > cfg.tol_zero();
    Ok(KernelEstimate {
        kind: if settled { KernelKind::Sector } else { KernelKind::Undetermined },
        beta1: settled.then(|| am.limit.unwrap()),
        beta2: settled.then(|| ap.limit.unwrap()),
        point: None,
        evidence,
        region: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    Yes,
    No,
    Boundary,
}

/// Whether the disk `D(rω, r·radius)` lies in `Ω` (so `D(ω, radius) ⊆ Ω_r`).
pub fn disk_inside(dom: &Domain, omega: Complex, radius: f64, r: f64) -> bool {
    let need = r * radius;
    dom.complement_distance(omega * r, HalfPlane::Both, 2.0 * need) > need
}

/// Kernel membership of `ω` from the disks `D(ω, radius) ⊆ Ω_r` along `r_grid`.
///
/// `Yes` when the disk fits for every radius in the trailing half of the
/// grid; `No` when it fails in both quarters of that trailing half;
/// `Boundary` otherwise.
pub fn point_in_kernel_sampled(dom: &Domain, omega: Complex, radius: f64, r_grid: &[f64]) -> Result<Membership> {
    if r_grid.len() < 4 {
        return Err(Error::Precondition("kernel sampling needs at least four radii".into()));
    }
    let tail = &r_grid[r_grid.len() / 2..];
    let (a, b) = tail.split_at(tail.len() / 2);
    let fails = |rs: &[f64]| rs.iter().filter(|&&r| !disk_inside(dom, omega, radius, r)).count();
    let (fa, fb) = (fails(a), fails(b));
    Ok(if fa + fb == 0 {
        Membership::Yes
    } else if fa > 0 && fb > 0 {
        Membership::No
    } else {
        Membership::Boundary
    })
}

/// Square sampling box `[-half, half]²` with `n × n` cells.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelGrid {
    pub half: f64,
    pub n: usize,
}

impl Default for KernelGrid {
    fn default() -> Self {
        KernelGrid { half: 2.0, n: 256 }
    }
}

/// Connected component of `ω` in the interior of `∩_m Ω_{r_m}` over the
/// trailing half of `r_seq`, sampled on a grid and flood-filled.
pub fn subsequence_kernel_sampled(dom: &Domain, r_seq: &[f64], omega: Complex, grid: &KernelGrid) -> Result<KernelEstimate> {
    use rayon::prelude::*;
    if r_seq.len() < 2 || grid.n < 4 {
        return Err(Error::Precondition("kernel flood fill needs two radii and a 4x4 grid".into()));
    }
    let tail: Vec<f64> = r_seq[r_seq.len() / 2..].to_vec();
    let n = grid.n;
    let h = 2.0 * grid.half / n as f64;
    let mut region = SampledRegion {
        x_min: -grid.half,
        x_max: grid.half,
        y_min: -grid.half,
        y_max: grid.half,
        nx: n,
        ny: n,
        mask: vec![false; n * n],
    };
    let inside: Vec<bool> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let z = region.center(idx % n, idx / n);
            tail.iter().all(|&r| disk_inside(dom, z, h / 2.0, r))
        })
        .collect();
    let evidence = KernelEvidence { r_min: tail[0], r_max: *tail.last().unwrap(), r_count: tail.len(), alpha_limits: None };
    let ci = ((omega.re + grid.half) / h).floor();
    let cj = ((omega.im + grid.half) / h).floor();
    let in_box = ci >= 0.0 && cj >= 0.0 && (ci as usize) < n && (cj as usize) < n;
    if !in_box || !inside[cj as usize * n + ci as usize] {
        let witness = tail.iter().all(|&r| dom.contains(omega * r));
        return Ok(KernelEstimate {
            kind: if witness { KernelKind::TrivialPoint } else { KernelKind::Empty },
            beta1: None,
            beta2: None,
            point: witness.then_some(omega),
            evidence,
            region: None,
        });
    }
    let mut queue = VecDeque::from([(ci as usize, cj as usize)]);
    region.mask[cj as usize * n + ci as usize] = true;
    while let Some((i, j)) = queue.pop_front() {
        let nbrs = [(i.wrapping_sub(1), j), (i + 1, j), (i, j.wrapping_sub(1)), (i, j + 1)];
        for (a, b) in nbrs {
            if a < n && b < n && inside[b * n + a] && !region.mask[b * n + a] {
                region.mask[b * n + a] = true;
                queue.push_back((a, b));
            }
        }
    }
    let fit = classify_kernel_shape(&region);
    Ok(KernelEstimate {
        kind: if fit.consistent_with_sector { KernelKind::Sector } else { KernelKind::Empty },
        beta1: fit.consistent_with_sector.then_some(fit.beta1),
        beta2: fit.consistent_with_sector.then_some(fit.beta2),
        point: None,
        evidence,
        region: Some(region),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShapeFit {
    pub consistent_with_sector: bool,
    pub beta1: f64,
    pub beta2: f64,
}

fn angle_from_vertical(z: Complex) -> f64 {
    (-z.re).atan2(z.im)
}

/// Fits `S_0(β1, β2)` to the marked cells: the angles span the fit, and
/// every cell well inside the fitted sector must be marked.
pub fn classify_kernel_shape(region: &SampledRegion) -> ShapeFit {
    let (hx, hy) = region.cell_size();
    let h = hx.max(hy);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for z in region.marked() {
        let a = angle_from_vertical(z);
        lo = lo.min(a);
        hi = hi.max(a);
    }
    if !lo.is_finite() {
        return ShapeFit { consistent_with_sector: false, beta1: 0.0, beta2: 0.0 };
    }
    let beta1 = hi.max(0.0);
    let beta2 = (-lo).max(0.0);
    let edge = |b: f64, s: f64| Complex::new(s * b.sin(), b.cos());
    let (left, right) = (edge(beta1, -1.0), edge(beta2, 1.0));
    let ray_dist = |z: Complex, d: Complex| {
        let s = (z.re * d.re + z.im * d.im).max(0.0);
        (z - d * s).norm()
    };
    let mut consistent = true;
    'scan: for j in 0..region.ny {
        for i in 0..region.nx {
            let z = region.center(i, j);
            let a = angle_from_vertical(z);
            let deep = z.norm() > 2.0 * h && ray_dist(z, left).min(ray_dist(z, right)) > 2.0 * h;
            if a > -beta2 && a < beta1 && deep && !region.get(i, j) {
                consistent = false;
                break 'scan;
            }
        }
    }
    ShapeFit { consistent_with_sector: consistent, beta1, beta2 }
}
