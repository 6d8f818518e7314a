//! Closed-form Koenigs maps `h: 𝔻 → Ω` for the catalog domains.
//!
//! Every map is written in the defect coordinate `ψ = 1 - τ̄z`, which tends
//! to zero along trajectories. Working with `ψ` (or `log ψ`) keeps the
//! inverse and the slope `Arg ψ` accurate when `z` is within rounding of `τ`.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::geometry::Domain;
use crate::{Complex, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Shape {
    /// `h = p + c g^γ`, `g = (1 - z)/(1 + z)`, `τ = -1`.
    Sector { p: Complex, c: Complex, gamma: f64 },
    /// `h = a + (b - a)/π (π/2 - i log((1 + z)/(1 - z)))`, `τ = -1`.
    Strip { a: f64, b: f64 },
    /// `h = a + (1 + z)/(1 - z)`, `τ = 1`.
    RightHalfPlane { a: f64 },
    /// `h = b - (1 + z)/(1 - z)`, `τ = 1`.
    LeftHalfPlane { b: f64 },
}

/// `scale · h_shape + shift`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KoenigsMap {
    pub shape: Shape,
    pub scale: f64,
    pub shift: Complex,
}

fn i() -> Complex {
    Complex::new(0.0, 1.0)
}

/// `log(1 + e^u)` without overflow.
fn log1p_exp(u: Complex) -> Complex {
    if u.re <= 0.0 {
        (Complex::new(1.0, 0.0) + u.exp()).ln()
    } else {
        u + (Complex::new(1.0, 0.0) + (-u).exp()).ln()
    }
}

impl KoenigsMap {
    pub fn new(shape: Shape) -> Self {
        KoenigsMap { shape, scale: 1.0, shift: Complex::new(0.0, 0.0) }
    }

    pub fn sector(p: Complex, beta1: f64, beta2: f64) -> Self {
        let c = i() * Complex::from_polar(1.0, (beta1 - beta2) / 2.0);
        KoenigsMap::new(Shape::Sector { p, c, gamma: (beta1 + beta2) / PI })
    }

    /// Denjoy–Wolff point.
    pub fn tau(&self) -> Complex {
        match self.shape {
            Shape::Sector { .. } | Shape::Strip { .. } => Complex::new(-1.0, 0.0),
            Shape::RightHalfPlane { .. } | Shape::LeftHalfPlane { .. } => Complex::new(1.0, 0.0),
        }
    }

    pub fn defect(&self, z: Complex) -> Complex {
        Complex::new(1.0, 0.0) - self.tau().conj() * z
    }

    pub fn from_defect(&self, psi: Complex) -> Complex {
        self.tau() * (Complex::new(1.0, 0.0) - psi)
    }

    fn h_shape(&self, psi: Complex) -> Complex {
        let two = Complex::new(2.0, 0.0);
        match self.shape {
            Shape::Sector { p, c, gamma } => p + c * ((two - psi) / psi).powf(gamma),
            Shape::Strip { a, b } => {
                let l = psi.ln() - (two - psi).ln();
                a + (b - a) / PI * (PI / 2.0 - i() * l)
            }
            Shape::RightHalfPlane { a } => a + (two - psi) / psi,
            Shape::LeftHalfPlane { b } => b - (two - psi) / psi,
        }
    }

    /// `h` evaluated at the point with defect `ψ`.
    pub fn h_from_defect(&self, psi: Complex) -> Complex {
        self.scale * self.h_shape(psi) + self.shift
    }

    pub fn h(&self, z: Complex) -> Complex {
        self.h_from_defect(self.defect(z))
    }

    /// `h'(z)` evaluated at the point with defect `ψ`.
    pub fn dh_from_defect(&self, psi: Complex) -> Complex {
        let two = Complex::new(2.0, 0.0);
        let d = match self.shape {
            Shape::Sector { c, gamma, .. } => {
                let g = (two - psi) / psi;
                -2.0 * c * gamma * g.powf(gamma - 1.0) / (psi * psi)
            }
            Shape::Strip { a, b } => -i() * (b - a) / PI * 2.0 / ((two - psi) * psi),
            Shape::RightHalfPlane { .. } => 2.0 / (psi * psi),
            Shape::LeftHalfPlane { .. } => -2.0 / (psi * psi),
        };
        self.scale * d
    }

    /// `log ψ` of the preimage `h⁻¹(w)`.
    pub fn inverse_log_defect(&self, w: Complex) -> Complex {
        let w = (w - self.shift) / self.scale;
        let one = Complex::new(1.0, 0.0);
        match self.shape {
            Shape::Sector { p, c, gamma } => {
                let g = ((w - p) / c).powf(1.0 / gamma);
                LN_2 - (one + g).ln()
            }
            Shape::Strip { a, b } => {
                let l = -i() * (PI / 2.0 - (w - a) * PI / (b - a));
                LN_2 + l - log1p_exp(l)
            }
            Shape::RightHalfPlane { a } => LN_2 - (one + (w - a)).ln(),
            Shape::LeftHalfPlane { b } => LN_2 - (one + (b - w)).ln(),
        }
    }

    pub fn inverse(&self, w: Complex) -> Result<Complex> {
        let z = self.from_defect(self.inverse_log_defect(w).exp());
        if !(z.re.is_finite() && z.im.is_finite()) || z.norm() > 1.0 + 1e-12 {
            return Err(Error::Precondition(format!("{w} is not in the image of the Koenigs map")));
        }
        Ok(z)
    }

    /// The image domain `h(𝔻)`.
    pub fn domain(&self) -> Result<Domain> {
        let base = match self.shape {
            Shape::Sector { p, c, gamma } => {
                let half = gamma * PI / 2.0;
                let mid = (c / i()).arg();
                Domain::sector(p, mid + half, half - mid)?
            }
            Shape::Strip { a, b } => Domain::vertical_strip(a, b)?,
            Shape::RightHalfPlane { a } => Domain::vertical_strip(a, f64::INFINITY)?,
            Shape::LeftHalfPlane { b } => Domain::vertical_strip(f64::NEG_INFINITY, b)?,
        };
        let mut d = base;
        if self.scale != 1.0 {
            d = d.scaled(self.scale)?;
        }
        if self.shift != Complex::new(0.0, 0.0) {
            d = d.translated(self.shift)?;
        }
        Ok(d)
    }
}

/// Closed-form Koenigs map for sectors, half-planes and strips, and their
/// scaled or translated images.
pub fn koenigs_catalog(dom: &Domain) -> Result<KoenigsMap> {
    match dom {
        Domain::Sector { p, beta1, beta2 } => Ok(KoenigsMap::sector(*p, *beta1, *beta2)),
        Domain::HalfPlaneUpper => Ok(KoenigsMap::sector(Complex::new(0.0, 0.0), PI / 2.0, PI / 2.0)),
        Domain::VerticalStrip { a, b } => Ok(KoenigsMap::new(match (a.is_finite(), b.is_finite()) {
            (true, true) => Shape::Strip { a: *a, b: *b },
            (true, false) => Shape::RightHalfPlane { a: *a },
            (false, true) => Shape::LeftHalfPlane { b: *b },
            (false, false) => return Err(Error::Unsupported("the whole plane".into())),
        })),
        Domain::Scaled { base, c } => {
            let mut k = koenigs_catalog(base)?;
            k.scale *= c;
            k.shift *= c;
            Ok(k)
        }
        Domain::Translated { base, w0 } => {
            let mut k = koenigs_catalog(base)?;
            k.shift += w0;
            Ok(k)
        }
        other => Err(Error::Unsupported(format!("no closed-form Koenigs map for a {} domain", other.kind()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn half_plane_is_cayley() {
        let k = koenigs_catalog(&Domain::half_plane_upper()).unwrap();
        for z in [c(0.0, 0.0), c(0.3, -0.4), c(-0.5, 0.2)] {
            let want = i() * (c(1.0, 0.0) - z) / (c(1.0, 0.0) + z);
            assert!((k.h(z) - want).norm() < 1e-14);
        }
        let z = k.inverse(c(0.0, 3.0)).unwrap();
        assert!((z - c(-0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn maps_land_in_their_domains() {
        let doms = [
            Domain::sector(c(1.0, -1.0), 0.4, 2.9).unwrap(),
            Domain::vertical_strip(-1.0, 2.0).unwrap(),
            Domain::vertical_strip(0.5, f64::INFINITY).unwrap(),
            Domain::vertical_strip(f64::NEG_INFINITY, 0.5).unwrap(),
            Domain::sector(c(0.0, 0.0), 1.0, 1.0).unwrap().scaled(3.0).unwrap().translated(c(2.0, 1.0)).unwrap(),
        ];
        for d in &doms {
            let k = koenigs_catalog(d).unwrap();
            for r in [0.0, 0.5, 0.9, 0.999] {
                for a in 0..12 {
                    let z = Complex::from_polar(r, a as f64 * PI / 6.0 + 0.1);
                    let w = k.h(z);
                    assert!(d.contains(w), "{} {z} -> {w}", d.kind());
                    let back = k.inverse(w).unwrap();
                    assert!((back - z).norm() < 1e-9, "{z} vs {back}");
                }
            }
        }
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let k = KoenigsMap::sector(c(0.0, 0.0), 1.2, 0.3);
        let z = c(0.2, 0.1);
        let e = 1e-6;
        let fd = (k.h(z + e) - k.h(z - e)) / (2.0 * e);
        assert!((k.dh_from_defect(k.defect(z)) - fd).norm() < 1e-7);
        let k = KoenigsMap::new(Shape::Strip { a: 0.0, b: 1.0 });
        let fd = (k.h(z + e) - k.h(z - e)) / (2.0 * e);
        assert!((k.dh_from_defect(k.defect(z)) - fd).norm() < 1e-7);
    }

    #[test]
    fn image_domain_round_trip() {
        let d = Domain::sector(c(0.5, 0.0), 2.0, 0.25).unwrap();
        let k = koenigs_catalog(&d).unwrap();
        match k.domain().unwrap() {
            Domain::Sector { beta1, beta2, .. } => {
                assert!((beta1 - 2.0).abs() < 1e-14 && (beta2 - 0.25).abs() < 1e-14);
            }
            _ => panic!(),
        }
    }
}
