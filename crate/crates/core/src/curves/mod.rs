//! Closed curves, spherical curves, ribbon frames, and frame validation.

mod curve;
mod frame;
mod ops;
mod sphere;

pub use curve::{ClosedCurve3, REFIT_TOL};
pub use frame::{validate_frame, RibbonFrame, ToleranceSet, ValidationReport};
pub use ops::{
    arclength_normalize, frame_distance, hausdorff_distance, outer_edge, outer_edge_points,
    point_to_curve_distance, reparameterize, rescaled_edge, spherical_projection,
};
pub use sphere::SphericalCurve;

