//! Self-intersection machinery: double points of spherical curves, crossing
//! widths of the outer edge, goal posts and their repair, embeddedness, and
//! the field-to-projection double-point correspondence.

mod crossings;
mod double_points;
mod embedded;
mod goalposts;
mod matching;
pub(crate) mod scan;

pub use crossings::{crossing_residual_at, crossing_widths, CrossingRecord};
pub use double_points::{line_angle, sphere_double_points, DoublePoint};
pub use embedded::{curve_embedded, edge_embedded, stabilization_width, Stabilization};
pub use goalposts::{
    chord_direction, detect_goalposts, detect_goalposts_in, remove_goalposts,
    worst_orthogonality, GoalPost,
};
pub use matching::{match_double_points, MatchReport};
pub use scan::circ_dist;

use crate::curves::ToleranceSet;
use crate::{Result, Scalar, Vec3};

/// Coincidence pairs of an arbitrary closed map (projections, edges).
pub(crate) fn coincidence_pairs_of<T: Scalar>(
    point: &dyn Fn(T) -> Vec3<T>,
    deriv: &dyn Fn(T) -> Vec3<T>,
    grid_points: &[Vec3<T>],
    speed_hi: T,
    tol: &ToleranceSet<T>,
) -> Result<Vec<(T, T)>> {
    Ok(double_points::coincidence_pairs(point, deriv, grid_points, speed_hi, tol)?
        .into_iter()
        .map(|p| (p.s, p.s_bar))
        .collect())
}
