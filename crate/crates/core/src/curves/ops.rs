use super::curve::ClosedCurve3;
use super::frame::RibbonFrame;
use super::sphere::SphericalCurve;
use crate::{conv, Error, Result, Scalar, Vec3};

/// Grid samples of the outer ribbon edge `y_R(s) = x(s) + R u(s)` before any refit.
pub fn outer_edge_points<T: Scalar>(frame: &RibbonFrame<T>, width: T) -> Vec<Vec3<T>> {
    let x = frame.base().eval_grid(frame.grid_n());
    let u = frame.field().point_grid(frame.grid_n());
    x.iter().zip(u.iter()).map(|(x, u)| x + u * width).collect()
}

/// Outer ribbon edge at width `R >= 0`, refit to the Fourier basis on the grid.
pub fn outer_edge<T: Scalar>(frame: &RibbonFrame<T>, width: T) -> Result<ClosedCurve3<T>> {
    assert!(width >= T::zero(), "ribbon width must be nonnegative");
    ClosedCurve3::refit(&outer_edge_points(frame, width), frame.grid_n())
}

/// Rescaled outer edge `z_t(s) = t x(s) + u(s)` for `t > 0`; same knot type as
/// the outer edge at width `1/t`.
pub fn rescaled_edge<T: Scalar>(frame: &RibbonFrame<T>, t: T) -> Result<ClosedCurve3<T>> {
    assert!(t > T::zero(), "rescale factor must be positive");
    let x = frame.base().eval_grid(frame.grid_n());
    let u = frame.field().point_grid(frame.grid_n());
    let samples: Vec<Vec3<T>> = x.iter().zip(u.iter()).map(|(x, u)| x * t + u).collect();
    ClosedCurve3::refit(&samples, frame.grid_n())
}

/// Radial projection of a space curve to the sphere.
pub fn spherical_projection<T: Scalar>(
    curve: &ClosedCurve3<T>,
    grid_n: usize,
    eq_tol: T,
) -> Result<SphericalCurve<T>> {
    SphericalCurve::from_generator(curve.clone(), grid_n, eq_tol)
}

/// `C^1` distance between frames: `d_1(x_1, x_2) + d_2(u_1, u_2)` as grid sups.
pub fn frame_distance<T: Scalar>(f1: &RibbonFrame<T>, f2: &RibbonFrame<T>) -> Result<T> {
    if f1.grid_n() != f2.grid_n() {
        return Err(Error::GridMismatch(f1.grid_n(), f2.grid_n()));
    }
    let n = f1.grid_n();
    let sup = |a: &[Vec3<T>], b: &[Vec3<T>]| {
        a.iter()
            .zip(b.iter())
            .map(|(p, q)| (p - q).norm())
            .fold(T::zero(), |m, v| if v > m { v } else { m })
    };
    let d1 = sup(&f1.base().eval_grid(n), &f2.base().eval_grid(n))
        + sup(&f1.base().eval_grid_deriv(n), &f2.base().eval_grid_deriv(n));
    let d2 = sup(&f1.field().point_grid(n), &f2.field().point_grid(n))
        + sup(&f1.field().tangent_grid(n), &f2.field().tangent_grid(n));
    Ok(d1 + d2)
}

/// Precompose a curve with a warp of the circle.
///
/// The warp is given in lifted form: `warp(s + 1) = warp(s) + 1`, strictly
/// increasing. The image of the curve is unchanged; only the parameterization
/// moves.
pub fn reparameterize<T: Scalar>(
    curve: &ClosedCurve3<T>,
    warp: impl Fn(T) -> T,
    grid_n: usize,
) -> Result<ClosedCurve3<T>> {
    let n = grid_n;
    let mut w = Vec::with_capacity(n + 1);
    for k in 0..=n {
        w.push(warp(conv::<T>(k as f64 / n as f64)));
    }
    for k in 0..n {
        if w[k + 1] <= w[k] {
            return Err(Error::NonMonotoneWarp);
        }
    }
    if ((w[n] - w[0]) - T::one()).abs() > conv(1e-9) {
        return Err(Error::NonMonotoneWarp);
    }
    let samples: Vec<Vec3<T>> = w[..n].iter().map(|&s| curve.eval(s)).collect();
    ClosedCurve3::refit(&samples, n)
}

/// Reparameterize to approximately unit speed: the grid speed ratio
/// `max|x'| / min|x'|` of the result is at most 1.01.
pub fn arclength_normalize<T: Scalar>(
    curve: &ClosedCurve3<T>,
    grid_n: usize,
) -> Result<ClosedCurve3<T>> {
    const TARGET_RATIO: f64 = 1.01;
    let mut current = curve.clone();
    for _ in 0..10 {
        let (lo, hi) = current.speed_extrema(grid_n);
        if lo < conv(1e-6) {
            return Err(Error::IrregularCurve {
                min_speed: lo.to_subset().unwrap_or(f64::NAN),
            });
        }
        if hi / lo <= conv(TARGET_RATIO) {
            return Ok(current);
        }
        current = equalize_speed_once(&current, grid_n)?;
    }
    let (lo, hi) = current.speed_extrema(grid_n);
    if hi / lo <= conv(TARGET_RATIO) {
        Ok(current)
    } else {
        Err(Error::IrregularCurve {
            min_speed: lo.to_subset().unwrap_or(f64::NAN),
        })
    }
}

/// One arclength equalization pass: integrate `d sigma / ds = L / |x'(sigma)|`
/// with RK4 and refit the composed samples.
fn equalize_speed_once<T: Scalar>(
    curve: &ClosedCurve3<T>,
    grid_n: usize,
) -> Result<ClosedCurve3<T>> {
    let n = grid_n;
    let substeps = 8usize;
    let fine = n * substeps;
    // total length by composite trapezoid on the fine grid
    let speeds: Vec<T> = curve.eval_grid_deriv(fine).iter().map(|v| v.norm()).collect();
    let mut total = T::zero();
    for k in 0..fine {
        let next = speeds[(k + 1) % fine];
        total += (speeds[k] + next) * conv::<T>(0.5 / fine as f64);
    }

    let speed_at = |s: T| curve.eval_deriv(s).norm();
    let h = conv::<T>(1.0 / fine as f64);
    let mut sigma = T::zero();
    let mut samples = Vec::with_capacity(n);
    for k in 0..fine {
        if k % substeps == 0 {
            samples.push(curve.eval(sigma));
        }
        let f = |sg: T| total / speed_at(sg);
        let k1 = f(sigma);
        let k2 = f(sigma + k1 * h * conv(0.5));
        let k3 = f(sigma + k2 * h * conv(0.5));
        let k4 = f(sigma + k3 * h);
        sigma += (k1 + (k2 + k3) * conv(2.0) + k4) * h / conv(6.0);
        let _ = k;
    }
    ClosedCurve3::refit(&samples, n)
}

/// Distance from a point to the curve: dense grid seed plus Newton polish.
pub fn point_to_curve_distance<T: Scalar>(
    p: &Vec3<T>,
    curve: &ClosedCurve3<T>,
    seed_grid: &[Vec3<T>],
) -> T {
    let n = seed_grid.len();
    let mut best = T::max_value().unwrap();
    let mut best_k = 0usize;
    for (k, q) in seed_grid.iter().enumerate() {
        let d = (q - p).norm_squared();
        if d < best {
            best = d;
            best_k = k;
        }
    }
    let d2 = curve.derivative();
    let mut s = conv::<T>(best_k as f64 / n as f64);
    for _ in 0..4 {
        let c = curve.eval(s);
        let dc = curve.eval_deriv(s);
        let ddc = d2.eval_deriv(s);
        let g = (c - p).dot(&dc);
        let h = dc.dot(&dc) + (c - p).dot(&ddc);
        if h <= T::zero() {
            break;
        }
        let step = (g / h).max(conv(-0.5 / n as f64)).min(conv(0.5 / n as f64));
        s -= step;
    }
    (curve.eval(s) - p).norm().min(best.sqrt())
}

/// Two-sided grid Hausdorff distance between curve images.
pub fn hausdorff_distance<T: Scalar>(a: &ClosedCurve3<T>, b: &ClosedCurve3<T>, n: usize) -> T {
    let one_sided = |from: &ClosedCurve3<T>, to: &ClosedCurve3<T>| {
        let to_grid = to.eval_grid(4 * n);
        from.eval_grid(n)
            .iter()
            .map(|p| point_to_curve_distance(p, to, &to_grid))
            .fold(T::zero(), |m, v| if v > m { v } else { m })
    };
    let d1 = one_sided(a, b);
    let d2 = one_sided(b, a);
    if d1 > d2 {
        d1
    } else {
        d2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{RibbonFrame, SphericalCurve};

    #[test]
    fn zero_width_edge_equals_base() {
        let frame = crate::fixtures::bent_frame();
        let edge = outer_edge(&frame, 0.0).unwrap();
        for k in 0..31 {
            let s = k as f64 / 31.0;
            assert!((edge.eval(s) - frame.base().eval(s)).norm() < 1e-9);
        }
    }

    #[test]
    fn constant_field_edge_is_a_translate() {
        let frame = crate::fixtures::parallel_frame();
        let edge = outer_edge(&frame, 2.0).unwrap();
        for k in 0..31 {
            let s = k as f64 / 31.0;
            let expect = frame.base().eval(s) + Vec3::new(0.0, 0.0, 2.0);
            assert!((edge.eval(s) - expect).norm() < 1e-9);
        }
    }

    #[test]
    fn radial_field_scales_the_circle() {
        let base = ClosedCurve3::<f64>::unit_circle_xy();
        let field = SphericalCurve::from_unit_generator(base.clone());
        let frame = RibbonFrame::with_defaults(base, field);
        let edge = outer_edge(&frame, 1.0).unwrap();
        for k in 0..31 {
            let s = k as f64 / 31.0;
            assert!((edge.eval(s).norm() - 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn edge_points_match_algebra_exactly() {
        let frame = crate::fixtures::bent_frame();
        let n = frame.grid_n();
        let pts = outer_edge_points(&frame, 3.0);
        let x = frame.base().eval_grid(n);
        let u = frame.field().point_grid(n);
        for k in (0..n).step_by(97) {
            assert!((pts[k] - (x[k] + u[k] * 3.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn rescaled_edge_is_the_scaled_outer_edge() {
        let frame = crate::fixtures::bent_frame();
        let r = 4.0;
        let z = rescaled_edge(&frame, 1.0 / r).unwrap();
        let y = outer_edge(&frame, r).unwrap();
        for k in 0..31 {
            let s = k as f64 / 31.0;
            assert!((z.eval(s) - y.eval(s) / r).norm() < 1e-12);
        }
    }

    #[test]
    fn rescaled_edge_approaches_the_field() {
        let frame = crate::fixtures::bent_frame();
        let z = rescaled_edge(&frame, 1e-3).unwrap();
        let n = frame.grid_n();
        let zg = z.eval_grid(n);
        let ug = frame.field().point_grid(n);
        let max_dev = zg
            .iter()
            .zip(ug.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        assert!(max_dev < 1e-2, "deviation {max_dev}");
        let bound = 1e-3 * frame.base().max_norm(n) + 1e-9;
        assert!(max_dev <= bound);
    }

    #[test]
    fn projection_is_idempotent_on_unit_curves() {
        let circle = ClosedCurve3::<f64>::unit_circle_xy();
        let proj = spherical_projection(&circle, 512, 1e-6).unwrap();
        for k in 0..17 {
            let s = k as f64 / 17.0;
            assert!((proj.point(s) - circle.eval(s)).norm() < 1e-13);
        }
    }

    #[test]
    fn projection_distance_to_field_decreases_in_t() {
        // d_2(z_hat_t, u) falls monotonically as t -> 0
        let frame = crate::fixtures::bent_frame();
        let n = frame.grid_n();
        let d2_at = |t: f64| {
            let z = rescaled_edge(&frame, t).unwrap();
            let zh = spherical_projection(&z, n, 1e-6).unwrap();
            let sup = |a: &[Vec3<f64>], b: &[Vec3<f64>]| {
                a.iter()
                    .zip(b.iter())
                    .map(|(p, q)| (p - q).norm())
                    .fold(0.0f64, f64::max)
            };
            sup(&zh.point_grid(n), &frame.field().point_grid(n))
                + sup(&zh.tangent_grid(n), &frame.field().tangent_grid(n))
        };
        let ds: Vec<f64> = [1e-1, 1e-2, 1e-3, 1e-4].iter().map(|&t| d2_at(t)).collect();
        for w in ds.windows(2) {
            assert!(w[1] < w[0], "d2 sequence {ds:?}");
        }
    }

    #[test]
    fn frame_distance_identity_translation_and_symmetry() {
        let f1 = crate::fixtures::bent_frame();
        assert_eq!(frame_distance(&f1, &f1).unwrap(), 0.0);
        let shifted = RibbonFrame::new(
            f1.base().translate(Vec3::new(0.3, -0.1, 0.2)),
            f1.field().clone(),
            f1.grid_n(),
            *f1.tol(),
        )
        .unwrap();
        let d = frame_distance(&f1, &shifted).unwrap();
        let v = Vec3::<f64>::new(0.3, -0.1, 0.2).norm();
        assert!((d - v).abs() < 1e-12, "distance {d} vs translation {v}");
        assert_eq!(
            frame_distance(&shifted, &f1).unwrap(),
            frame_distance(&f1, &shifted).unwrap()
        );
    }

    #[test]
    fn frame_distance_grid_mismatch() {
        let f1 = crate::fixtures::bent_frame();
        let f2 = f1.with_grid_n(1024).unwrap();
        assert!(matches!(
            frame_distance(&f1, &f2),
            Err(Error::GridMismatch(4096, 1024))
        ));
    }

    #[test]
    fn field_rotation_moves_frames_a_bounded_distance() {
        let f1 = crate::fixtures::bent_frame();
        let rot = nalgebra::Rotation3::from_axis_angle(&Vec3::z_axis(), 0.01);
        let f2 = f1.with_field(f1.field().rotated(&rot));
        let d = frame_distance(&f1, &f2).unwrap();
        let (_, hi_u) = f1.field().speed_extrema(f1.grid_n());
        assert!(d > 0.0);
        assert!(d <= 0.02 * (1.0 + hi_u), "distance {d}");
    }

    #[test]
    fn identity_and_shift_warps() {
        let c = crate::fixtures::trefoil_curve();
        let id = reparameterize(&c, |s| s, 1024).unwrap();
        for k in 0..17 {
            let s = k as f64 / 17.0;
            assert!((id.eval(s) - c.eval(s)).norm() < 1e-9);
        }
        let shifted = reparameterize(&c, |s| s + 0.25, 1024).unwrap();
        assert!((shifted.eval(0.0) - c.eval(0.25)).norm() < 1e-9);
        assert!(hausdorff_distance(&shifted, &c, 512) < 1e-6);
    }

    #[test]
    fn non_monotone_warp_rejected() {
        let c = crate::fixtures::trefoil_curve();
        let err = reparameterize(&c, |s| s + 0.3 * (std::f64::consts::TAU * s).sin(), 1024);
        assert!(matches!(err, Err(Error::NonMonotoneWarp)));
    }

    #[test]
    fn arclength_normalize_is_stable_on_circles_and_fixes_ellipses() {
        let circle = ClosedCurve3::<f64>::unit_circle_xy();
        let same = arclength_normalize(&circle, 1024).unwrap();
        for k in 0..17 {
            let s = k as f64 / 17.0;
            assert!((same.eval(s) - circle.eval(s)).norm() < 1e-9);
        }

        let ellipse = ClosedCurve3::new(
            Vec3::zeros(),
            vec![Vec3::new(2.0, 0.0, 0.0)],
            vec![Vec3::new(0.0, 1.0, 0.0)],
        );
        let fixed = arclength_normalize(&ellipse, 1024).unwrap();
        let (lo, hi) = fixed.speed_extrema(1024);
        assert!(hi / lo <= 1.01, "speed ratio {}", hi / lo);
        assert!(hausdorff_distance(&fixed, &ellipse, 512) < 1e-6);
    }

    #[test]
    fn cusped_curve_is_rejected() {
        // nephroid-style curve: the speed vanishes exactly at s = 0
        let cusp = ClosedCurve3::new(
            Vec3::zeros(),
            vec![Vec3::new(2.0, 0.0, 0.0), Vec3::new(1.0, 0.0, 0.0)],
            vec![Vec3::new(0.0, 2.0, 0.0), Vec3::new(0.0, -1.0, 0.0)],
        );
        assert!(matches!(
            arclength_normalize(&cusp, 2048),
            Err(Error::IrregularCurve { .. })
        ));
    }
}
