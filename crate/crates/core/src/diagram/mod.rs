//! Combinatorial knot diagrams: signed Gauss codes, planar-diagram codes,
//! projections of space curves, and resolutions of spherical curves.

pub(crate) mod assemble;
mod gauss;
mod pd;
mod reidemeister;
mod resolution;
mod spatial;

pub use gauss::{GaussToken, Pass, SignedGaussCode};
pub use pd::{gauss_to_pd, PDCode};
pub use reidemeister::reidemeister_reduce;
pub use resolution::{
    limiting_choice, limiting_resolution, radial_margin, resolve, ResolutionChoice,
};
pub use spatial::{gauss_from_spatial, gauss_from_spatial_auto, Projection};

pub(crate) use pd::trace_faces;
pub(crate) use spatial::handedness as spatial_handedness;
