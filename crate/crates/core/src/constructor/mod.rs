//! Build a ribbon frame connecting two prescribed knot types: the base curve
//! carries one, the limiting resolution of the field carries the other.
//!
//! The field realizes the target diagram on the sphere with over-crossings in
//! the north polar cap and under-crossings in the south cap; the base follows
//! the pole-to-pole meridian (optionally with the base knot spliced into a
//! small ball) and is reparameterized so each crossing's first visit happens
//! near the north pole and its second near the south pole. That radial
//! separation is what pins every over/under bit of the limiting outer edge.

mod arc;
mod base;
mod build;
mod field;
mod layout;

pub use arc::{hamiltonian_arc_check, ArcDiagram};
pub use base::{build_base, meridian, BaseKnot};
pub use build::{build_frame, project_base, BuildReport};
pub use field::{build_field, BuiltField};
