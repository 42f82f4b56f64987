//! Bundled analytic frames, curves, and codes.
//!
//! Everything here has exact Fourier coefficients, so tests can reason about
//! the geometry in closed form. The constructor-built frames are cached
//! because re-detection during construction is not free.

use std::sync::OnceLock;

use crate::curves::{ClosedCurve3, RibbonFrame, SphericalCurve};
use crate::diagram::SignedGaussCode;
use crate::{Curve, Frame, Sphere, Vec3};

fn c3(
    constant: [f64; 3],
    cos: &[[f64; 3]],
    sin: &[[f64; 3]],
) -> Curve {
    ClosedCurve3::new(
        Vec3::new(constant[0], constant[1], constant[2]),
        cos.iter().map(|v| Vec3::new(v[0], v[1], v[2])).collect(),
        sin.iter().map(|v| Vec3::new(v[0], v[1], v[2])).collect(),
    )
}

/// Standard trefoil space curve `((2+cos 3t) cos 2t, (2+cos 3t) sin 2t, sin 3t) / 3`,
/// `t = 2 pi s`, expanded to exact Fourier coefficients.
pub fn trefoil_curve() -> Curve {
    let k = 1.0 / 3.0;
    c3(
        [0.0, 0.0, 0.0],
        &[
            [0.5 * k, 0.0, 0.0],
            [2.0 * k, 0.0, 0.0],
            [0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0],
            [0.5 * k, 0.0, 0.0],
        ],
        &[
            [0.0, -0.5 * k, 0.0],
            [0.0, 2.0 * k, 0.0],
            [0.0, 0.0, k],
            [0.0, 0.0, 0.0],
            [0.0, 0.5 * k, 0.0],
        ],
    )
}

/// Figure-eight space curve `((2+cos 2t) cos 3t, (2+cos 2t) sin 3t, sin 4t) / 3`.
pub fn figure_eight_curve() -> Curve {
    let k = 1.0 / 3.0;
    c3(
        [0.0, 0.0, 0.0],
        &[
            [0.5 * k, 0.0, 0.0],
            [0.0, 0.0, 0.0],
            [2.0 * k, 0.0, 0.0],
            [0.0, 0.0, 0.0],
            [0.5 * k, 0.0, 0.0],
        ],
        &[
            [0.0, 0.5 * k, 0.0],
            [0.0, 0.0, 0.0],
            [0.0, 2.0 * k, 0.0],
            [0.0, 0.0, k],
            [0.0, 0.5 * k, 0.0],
        ],
    )
}

/// Planar ellipse through `(0,0,0)` at `s=0` and `(1,0,0)` at `s=1/2`.
pub fn two_point_base() -> Curve {
    c3(
        [0.5, 0.0, 0.0],
        &[[-0.5, 0.0, 0.0]],
        &[[0.0, 0.0, 0.25]],
    )
}

/// Tilted ellipse through `(0,0,0)` and `(1,0,0.3)`; the chord at the field's
/// double point is not orthogonal to the pole, so the frame has no goal posts.
pub fn bent_base() -> Curve {
    c3(
        [0.5, 0.0, 0.15],
        &[[-0.5, 0.0, -0.15]],
        &[[0.0, 0.0, 0.25]],
    )
}

/// Unit circle `(sin t, cos t, 0)`: its symmetric chords are all parallel to
/// the y-axis, which makes the pole-crossing field below produce genuinely
/// divergent crossing widths.
pub fn goalpost_base() -> Curve {
    c3([0.0, 0.0, 0.0], &[[0.0, 1.0, 0.0]], &[[1.0, 0.0, 0.0]])
}

/// Spherical figure-eight: generator `(0.6 sin t, -0.4 sin 2t, 1)` crosses
/// itself exactly once, at the north pole, transversally.
pub fn figure_eight_field() -> Sphere {
    SphericalCurve::from_unit_generator(c3(
        [0.0, 0.0, 1.0],
        &[[0.0, 0.0, 0.0], [0.0, 0.0, 0.0]],
        &[[0.6, 0.0, 0.0], [0.0, -0.4, 0.0]],
    ))
}

/// Two lobes crossing at an angle of about `1e-4`: below the default
/// transversality floor.
pub fn near_tangent_field() -> Sphere {
    SphericalCurve::from_unit_generator(c3(
        [0.0, 0.0, 1.0],
        &[[0.0, 0.0, 0.0], [0.0, 0.0, 0.0]],
        &[[5e-5, 0.0, 0.0], [0.0, 0.5, 0.0]],
    ))
}

/// Deltoid-like generator `(cos 2t + cos t, sin 2t - sin t, 2)/2`: passes the
/// north pole three times with pairwise transversal tangents.
pub fn triple_point_field() -> Sphere {
    SphericalCurve::from_unit_generator(c3(
        [0.0, 0.0, 1.0],
        &[[0.5, 0.0, 0.0], [0.5, 0.0, 0.0]],
        &[[0.0, -0.5, 0.0], [0.0, 0.5, 0.0]],
    ))
}

/// Field with the exact values `(+-cos 60, sin 60, 0)` at `s = 0, 1/2`: the
/// analytic crossing-width configuration. The `sin 2t` term breaks the
/// mirror symmetry `t -> pi - t`, so the crossing equation has a single
/// positive solution instead of a degenerate family.
pub fn crossing_field() -> Sphere {
    let c60 = 0.5;
    let s60 = 0.75f64.sqrt();
    SphericalCurve::from_unit_generator(c3(
        [0.0, s60, 0.0],
        &[[c60, 0.0, 0.0], [0.0, 0.0, 0.0]],
        &[[0.0, 0.0, c60], [0.0, 0.15, 0.0]],
    ))
}

/// Tilted great circle; embedded on the sphere, no double points at all.
pub fn great_circle_field() -> Sphere {
    let a: f64 = 0.7;
    SphericalCurve::from_unit_generator(c3(
        [0.0, 0.0, 0.0],
        &[[1.0, 0.0, 0.0]],
        &[[0.0, a.cos(), a.sin()]],
    ))
}

/// Frame with a goal post at `(0, 1/2)` and unbounded crossing widths.
pub fn goalpost_frame() -> Frame {
    RibbonFrame::with_defaults(goalpost_base(), figure_eight_field())
}

/// Tiny field petals over a large base: projections drift out of the matching
/// intervals already at moderate rescale factors.
pub fn crowded_frame() -> Frame {
    let field = SphericalCurve::from_unit_generator(c3(
        [0.0, 0.0, 1.0],
        &[[0.0, 0.0, 0.0], [0.0, 0.0, 0.0]],
        &[[0.05, 0.0, 0.0], [0.0, -0.03, 0.0]],
    ));
    RibbonFrame::with_defaults(trefoil_curve().scale(3.0), field)
}

/// Goal-post-free frame with a single field double point; its limiting edge
/// is an unknot with one kink.
pub fn bent_frame() -> Frame {
    RibbonFrame::with_defaults(bent_base(), figure_eight_field())
}

/// The analytic two-point crossing configuration: one positive crossing width
/// `R = 1/(2 cos 60 deg) = 1` at parameters `(0, 1/2)`.
pub fn two_point_frame() -> Frame {
    RibbonFrame::with_defaults(two_point_base(), crossing_field())
}

/// Trefoil base with a constant vertical field (regularity of `u` waived).
pub fn parallel_frame() -> Frame {
    let field = SphericalCurve::from_unit_generator(ClosedCurve3::constant(Vec3::z()));
    RibbonFrame::with_defaults(trefoil_curve(), field)
}

/// Standard trefoil code with a Hamiltonian arc prefix `O1 U2 O3`.
pub fn trefoil_code() -> SignedGaussCode {
    "O1+ U2+ O3+ U1+ O2+ U3+".parse().expect("valid fixture code")
}

/// Alternating figure-eight code; signs make the writhe zero.
pub fn figure_eight_code() -> SignedGaussCode {
    "O1+ U2+ O3- U4- O2+ U1+ O4- U3-".parse().expect("valid fixture code")
}

/// Constructor-built frame whose base is the round unknot and whose limiting
/// outer edge is a trefoil. This is the bundled "trefoil flip" frame.
pub fn trefoil_flip_frame() -> Frame {
    static CACHE: OnceLock<Frame> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            crate::constructor::build_frame(crate::constructor::BaseKnot::Unknot, &trefoil_code())
                .expect("bundled trefoil frame builds")
                .frame
        })
        .clone()
}

/// Constructor-built frame with figure-eight limiting type.
pub fn figure_eight_flip_frame() -> Frame {
    static CACHE: OnceLock<Frame> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            crate::constructor::build_frame(
                crate::constructor::BaseKnot::Unknot,
                &figure_eight_code(),
            )
            .expect("bundled figure-eight frame builds")
            .frame
        })
        .clone()
}

/// Every bundled goal-post-free frame with at least one field double point.
pub fn stabilizing_frames() -> Vec<(&'static str, Frame)> {
    vec![
        ("bent", bent_frame()),
        ("trefoil-flip", trefoil_flip_frame()),
        ("figure-eight-flip", figure_eight_flip_frame()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analytic_fixtures_are_regular() {
        for (name, c) in [
            ("trefoil", trefoil_curve()),
            ("fig8", figure_eight_curve()),
            ("two-point", two_point_base()),
            ("bent", bent_base()),
            ("goalpost", goalpost_base()),
        ] {
            let (lo, _) = c.speed_extrema(1024);
            assert!(lo > 1e-3, "{name} nearly singular: min speed {lo}");
        }
    }

    #[test]
    fn crossing_field_values_are_exact_where_it_matters() {
        let f = crossing_field();
        assert!((f.generator().eval(0.0).norm() - 1.0).abs() < 1e-15);
        assert!((f.generator().eval(0.5).norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fixture_field_values_match_construction() {
        let u = crossing_field();
        assert!((u.point(0.0) - Vec3::new(0.5, 0.75f64.sqrt(), 0.0)).norm() < 1e-14);
        assert!((u.point(0.5) - Vec3::new(-0.5, 0.75f64.sqrt(), 0.0)).norm() < 1e-14);
        let g = goalpost_base();
        assert!((g.eval(0.0) - Vec3::new(0.0, 1.0, 0.0)).norm() < 1e-15);
        assert!((g.eval(0.5) - Vec3::new(0.0, -1.0, 0.0)).norm() < 1e-14);
    }
}
