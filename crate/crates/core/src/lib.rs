//! Numerical analysis of constant-width ribbons on smooth knots.
//!
//! A *ribbon frame* is a pair `(x, u)`: a smooth closed base curve in 3-space
//! together with a smooth unit vector field along it, viewed as a closed curve
//! on the unit sphere. Growing the ribbon `x(s) + r u(s)`, `r in [0, R]`,
//! moves the outer edge through a finite set of self-crossing widths; past the
//! largest one the knot type of the outer edge freezes. This crate detects
//! those crossing widths, the *goal posts* that obstruct stabilization,
//! extracts the limiting knot type as a resolved spherical diagram, and
//! conversely builds a frame connecting any two prescribed knot types.
//!
//! Module map:
//! - [`curves`] — truncated-Fourier closed curves, spherical curves, frames,
//!   metrics, validation.
//! - [`intersect`] — double points of spherical curves, crossing widths,
//!   goal-post detection and repair, stabilization width, edge embedding.
//! - [`diagram`] — signed Gauss codes, PD codes, projections of space curves,
//!   resolutions of a spherical curve, Reidemeister cleanup.
//! - [`invariants`] — Kauffman bracket, Jones polynomial, knot determinant,
//!   invariant profiles (exact integer arithmetic).
//! - [`constructor`] — builds a frame whose base is a prescribed knot type and
//!   whose limiting outer-edge type is another prescribed diagram.
//! - [`fixtures`] — the bundled analytic frames and codes used across tests
//!   and the CLI examples.
//!
//! All geometry is generic over the scalar via [`Scalar`]; the `f64` aliases
//! below are what the CLI and the fixtures use.

use nalgebra::RealField;
use num_traits::FromPrimitive;

pub mod constructor;
pub mod curves;
pub mod diagram;
pub mod error;
pub mod fixtures;
pub mod intersect;
pub mod invariants;
pub mod io;
pub(crate) mod smooth;

pub use error::Error;

/// Scalar type for all curve geometry (f32 or f64).
pub trait Scalar: RealField + FromPrimitive + Copy {}

impl<T> Scalar for T where T: RealField + FromPrimitive + Copy {}

/// Shorthand for 3-vectors over a generic scalar.
pub type Vec3<T> = nalgebra::Vector3<T>;

/// Convert an `f64` constant into the working scalar.
#[inline]
pub(crate) fn conv<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("constant representable in scalar type")
}

/// Default-precision aliases; the CLI and fixtures work at `f64`.
pub type Curve = curves::ClosedCurve3<f64>;
pub type Sphere = curves::SphericalCurve<f64>;
pub type Frame = curves::RibbonFrame<f64>;
pub type Tolerances = curves::ToleranceSet<f64>;

pub type Result<V> = std::result::Result<V, Error>;
