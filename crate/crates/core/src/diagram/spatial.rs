use nalgebra::Matrix3;

use super::assemble::{assemble_code, VisitPair};
use super::gauss::SignedGaussCode;
use crate::curves::{ClosedCurve3, SphericalCurve, ToleranceSet};
use crate::intersect::line_angle;
use crate::{Error, Result, Scalar, Vec3};

/// How to flatten a space curve into a diagram.
#[derive(Debug, Clone, Copy)]
pub enum Projection<T> {
    /// Project radially onto the unit sphere; depth is the distance from the
    /// origin, so the strand farther out passes over.
    Radial,
    /// Orthographic projection along a direction; the viewer sits on the
    /// positive side, so larger depth along the direction passes over.
    Along(Vec3<T>),
}

/// Signed Gauss code of the projected diagram of a space curve.
///
/// Fails with `NonGenericProjection` on tangential or triple crossings and on
/// crossings whose two strands sit at equal depth; callers retry with a
/// perturbed direction.
pub fn gauss_from_spatial<T: Scalar>(
    curve: &ClosedCurve3<T>,
    projection: Projection<T>,
    grid_n: usize,
    tol: &ToleranceSet<T>,
) -> Result<SignedGaussCode> {
    match projection {
        Projection::Radial => radial_code(curve, grid_n, tol),
        Projection::Along(dir) => planar_code(curve, dir, grid_n, tol),
    }
}

/// Planar code along the first direction of a fixed well-spread ladder that
/// is generic for this curve.
pub fn gauss_from_spatial_auto<T: Scalar>(
    curve: &ClosedCurve3<T>,
    grid_n: usize,
    tol: &ToleranceSet<T>,
) -> Result<SignedGaussCode> {
    let dirs: [[f64; 3]; 8] = [
        [0.13, 0.91, 0.39],
        [-0.21, 0.87, 0.45],
        [0.05, 0.97, -0.24],
        [0.33, -0.12, 0.94],
        [0.52, 0.41, 0.75],
        [-0.27, 0.55, 0.79],
        [0.71, 0.12, -0.69],
        [0.91, -0.35, 0.22],
    ];
    let mut last = Error::NonGenericProjection("no direction tried".into());
    for d in dirs {
        let dir = Vec3::new(
            crate::conv::<T>(d[0]),
            crate::conv::<T>(d[1]),
            crate::conv::<T>(d[2]),
        )
        .normalize();
        match planar_code(curve, dir, grid_n, tol) {
            // a projection that dropped or invented a crossing shows up as a
            // non-realizable code: treat it as non-generic and move on
            Ok(code) => match super::pd::gauss_to_pd(&code) {
                Ok(_) => return Ok(code),
                Err(_) => {
                    last = Error::NonGenericProjection(
                        "projection produced a non-realizable code".into(),
                    );
                }
            },
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn non_generic(e: Error) -> Error {
    match e {
        Error::TriplePointDetected { s0, s1, s2 } => Error::NonGenericProjection(format!(
            "triple point near parameters {s0}, {s1}, {s2}"
        )),
        Error::TangencyDetected { s, s_bar, angle } => Error::NonGenericProjection(format!(
            "tangential crossing at ({s}, {s_bar}), angle {angle}"
        )),
        Error::VanishingGenerator { min_norm } => Error::NonGenericProjection(format!(
            "curve passes within {min_norm} of the projection center"
        )),
        other => other,
    }
}

fn radial_code<T: Scalar>(
    curve: &ClosedCurve3<T>,
    grid_n: usize,
    tol: &ToleranceSet<T>,
) -> Result<SignedGaussCode> {
    let u = SphericalCurve::from_generator(curve.clone(), grid_n, tol.eq_tol).map_err(non_generic)?;
    let dps = crate::intersect::sphere_double_points(&u, grid_n, tol).map_err(non_generic)?;

    let mut pairs = Vec::with_capacity(dps.len());
    for dp in &dps {
        let depth_s = curve.eval(dp.s).norm();
        let depth_sb = curve.eval(dp.s_bar).norm();
        if (depth_s - depth_sb).abs() < tol.eq_tol {
            return Err(Error::NonGenericProjection(format!(
                "equal radial depth at ({:?}, {:?})",
                dp.s, dp.s_bar
            )));
        }
        let over_first = depth_s > depth_sb;
        let sign = handedness(
            &u.tangent(dp.s),
            &u.tangent(dp.s_bar),
            &dp.point,
            over_first,
        );
        pairs.push(VisitPair { s: dp.s, s_bar: dp.s_bar, over_first, sign });
    }
    Ok(assemble_code(&pairs))
}

fn planar_code<T: Scalar>(
    curve: &ClosedCurve3<T>,
    dir: Vec3<T>,
    grid_n: usize,
    tol: &ToleranceSet<T>,
) -> Result<SignedGaussCode> {
    let d = dir.normalize();
    let project = move |p: Vec3<T>| p - d * p.dot(&d);
    let point = |s: T| project(curve.eval(s));
    let deriv = |s: T| project(curve.eval_deriv(s));

    let grid: Vec<Vec3<T>> = curve.eval_grid(grid_n).into_iter().map(project).collect();
    let speed_hi = curve
        .eval_grid_deriv(grid_n)
        .iter()
        .map(|v| project(*v).norm())
        .fold(T::zero(), |a, b| if b > a { b } else { a });

    let raw = crate::intersect::coincidence_pairs_of(&point, &deriv, &grid, speed_hi, tol)
        .map_err(non_generic)?;

    let mut pairs = Vec::with_capacity(raw.len());
    for (s, s_bar) in raw {
        let t1 = deriv(s);
        let t2 = deriv(s_bar);
        let angle = line_angle(&t1, &t2);
        if angle < tol.angle_tol {
            return Err(Error::NonGenericProjection(format!(
                "tangential crossing at ({s:?}, {s_bar:?})"
            )));
        }
        let depth_s = curve.eval(s).dot(&d);
        let depth_sb = curve.eval(s_bar).dot(&d);
        if (depth_s - depth_sb).abs() < tol.eq_tol {
            return Err(Error::NonGenericProjection(format!(
                "equal depth at ({s:?}, {s_bar:?})"
            )));
        }
        let over_first = depth_s > depth_sb;
        let sign = handedness(&t1, &t2, &d, over_first);
        pairs.push(VisitPair { s, s_bar, over_first, sign });
    }
    Ok(assemble_code(&pairs))
}

/// Right-handed crossing iff `det[over tangent, under tangent, normal] > 0`,
/// with the normal pointing at the viewer.
pub(crate) fn handedness<T: Scalar>(
    t_first: &Vec3<T>,
    t_second: &Vec3<T>,
    normal: &Vec3<T>,
    over_first: bool,
) -> i8 {
    let (t_over, t_under) = if over_first { (t_first, t_second) } else { (t_second, t_first) };
    let det = Matrix3::from_columns(&[*t_over, *t_under, *normal]).determinant();
    if det > T::zero() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::gauss::Pass;

    fn tol() -> ToleranceSet<f64> {
        ToleranceSet::default()
    }

    #[test]
    fn planar_circle_has_empty_code() {
        let c = ClosedCurve3::<f64>::unit_circle_xy();
        let code = gauss_from_spatial(&c, Projection::Along(Vec3::z()), 1024, &tol()).unwrap();
        assert!(code.is_empty());
    }

    #[test]
    fn trefoil_projects_to_three_alternating_crossings() {
        let c = crate::fixtures::trefoil_curve();
        let code = gauss_from_spatial(&c, Projection::Along(Vec3::z()), 4096, &tol()).unwrap();
        assert_eq!(code.crossing_count(), 3);
        // alternating over/under along the traversal
        for w in code.tokens().windows(2) {
            assert_ne!(w[0].pass, w[1].pass);
        }
        // brute-force oracle: pairwise scan of the projected polygon
        assert_eq!(projected_crossing_count_oracle(&c, 1 << 14), 3);
        // torus-knot chirality: all three crossings share one sign
        let s0 = code.tokens()[0].sign;
        assert!(code.tokens().iter().all(|t| t.sign == s0));
    }

    #[test]
    fn figure_eight_projects_to_four_crossings_writhe_zero() {
        let c = crate::fixtures::figure_eight_curve();
        let code = gauss_from_spatial(&c, Projection::Along(Vec3::z()), 4096, &tol()).unwrap();
        assert_eq!(code.crossing_count(), 4);
        assert_eq!(code.writhe(), 0);
        assert_eq!(projected_crossing_count_oracle(&c, 1 << 14), 4);
    }

    /// Dense segment-intersection count of the z-projection (independent of
    /// the detector: straight polygon edges, exact segment tests).
    fn projected_crossing_count_oracle(c: &ClosedCurve3<f64>, n: usize) -> usize {
        let pts: Vec<(f64, f64)> = (0..n)
            .map(|k| {
                let p = c.eval((k as f64 + 0.37) / n as f64);
                (p.x, p.y)
            })
            .collect();
        let seg = |i: usize| (pts[i], pts[(i + 1) % n]);
        let mut count = 0usize;
        for i in 0..n {
            let (a, b) = seg(i);
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (c2, d2) = seg(j);
                if segments_cross(a, b, c2, d2) {
                    count += 1;
                }
            }
        }
        count
    }

    fn segments_cross(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> bool {
        let orient = |p: (f64, f64), q: (f64, f64), r: (f64, f64)| {
            (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0)
        };
        let d1 = orient(a, b, c);
        let d2 = orient(a, b, d);
        let d3 = orient(c, d, a);
        let d4 = orient(c, d, b);
        (d1 * d2 < 0.0) && (d3 * d4 < 0.0)
    }

    #[test]
    fn radial_mode_agrees_with_its_own_depth_rule() {
        let c = crate::fixtures::trefoil_curve().translate(Vec3::new(0.0, 0.0, 2.0));
        let code = gauss_from_spatial(&c, Projection::Radial, 4096, &tol()).unwrap();
        // the same curve seen radially from far below the plane looks like the
        // planar projection; crossing count is stable
        assert_eq!(code.crossing_count(), 3);
        let planar = gauss_from_spatial(
            &crate::fixtures::trefoil_curve(),
            Projection::Along(Vec3::z()),
            4096,
            &tol(),
        )
        .unwrap();
        assert_eq!(code.canonical(), planar.canonical());
    }

    #[test]
    fn degenerate_direction_is_rejected() {
        // projecting the unit circle along x flattens it onto a segment:
        // every symmetric pair is a tangential coincidence
        let c = ClosedCurve3::<f64>::unit_circle_xy();
        let err = gauss_from_spatial(&c, Projection::Along(Vec3::x()), 1024, &tol());
        assert!(matches!(err, Err(Error::NonGenericProjection(_))));
    }

    #[test]
    fn projected_passes_respect_depth() {
        let c = crate::fixtures::trefoil_curve();
        let code = gauss_from_spatial(&c, Projection::Along(Vec3::z()), 4096, &tol()).unwrap();
        assert_eq!(
            code.tokens().iter().filter(|t| t.pass == Pass::Over).count(),
            3
        );
    }
}
