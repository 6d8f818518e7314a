//! Geometry of planar domains that are starlike at infinity, and the
//! asymptotic slope of the parabolic semigroups they model.
//!
//! A domain `Ω` is starlike at infinity when `Ω + it ⊆ Ω` for every `t ≥ 0`.
//! Every such domain is the strict epigraph of a floor function
//! `F: ℝ → [-∞, +∞]`, and this crate represents all of its domains that way.
//!
//! * [`geometry`] builds domains: sectors, half-planes, strips, epigraphs,
//!   slit complements (with lazily generated slit families) and their
//!   scaled or translated images.
//! * [`extents`] measures the angular extents `α±(t)` swept by arcs of
//!   radius `t` around a point before they leave the domain.
//! * [`distances`] measures the one-sided boundary distances `δ±(t)`.
//! * [`kernels`] approximates kernel limits of the rescaled domains `Ω / r`.
//! * [`slope`] turns extent limits into a slope prediction with a certificate.
//! * [`semigroup`] simulates trajectories through closed-form Koenigs maps
//!   or an ODE integrator, and measures their slope.
//! * [`corpus`] ships the reference domains with their fixtures and
//!   [`verify`] runs the acceptance checks against them.
//!
//! ```
//! use starlike::{geometry::Domain, extents::alpha_minus, Complex};
//!
//! let dom = Domain::sector(Complex::new(0.0, 0.0), 1.0, 0.5).unwrap();
//! let a = alpha_minus(&dom, Complex::new(0.0, 0.0), 2.0, 1e-10).unwrap();
//! assert!((a - 1.0).abs() < 1e-12);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod corpus;
pub mod distances;
pub mod error;
pub mod extents;
pub mod geometry;
pub mod kernels;
pub mod numfmt;
pub mod semigroup;
pub mod slope;
pub mod spec_file;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64 as Complex;

/// Side of the base point an arc or distance query looks at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// Counterclockwise from `p + it`, towards `Re z < Re p`.
    Minus,
    /// Clockwise from `p + it`, towards `Re z > Re p`.
    Plus,
}

impl Side {
    /// `-1` for [`Side::Minus`], `+1` for [`Side::Plus`].
    pub fn sign(self) -> f64 {
        match self {
            Side::Minus => -1.0,
            Side::Plus => 1.0,
        }
    }

    pub fn mirror(self) -> Side {
        match self {
            Side::Minus => Side::Plus,
            Side::Plus => Side::Minus,
        }
    }
}
