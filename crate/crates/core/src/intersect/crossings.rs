use nalgebra::Matrix3;

use super::scan::{circ_dist, dedup_pairs, local_minima, PairGrid};
use crate::curves::RibbonFrame;
use crate::{conv, Scalar};

/// A solved instance of the crossing equation
/// `x(s) - x(s_bar) = R (u(s_bar) - u(s))`: the rays from the two base points
/// meet at width `R`, with the residual of the vector equation recorded.
#[derive(Debug, Clone)]
pub struct CrossingRecord<T: Scalar> {
    pub s: T,
    pub s_bar: T,
    pub width: T,
    pub residual: T,
}

/// Residual of the crossing equation at an arbitrary trial width. The width
/// solving the equation is unique, so this grows on both sides of it.
pub fn crossing_residual_at<T: Scalar>(frame: &RibbonFrame<T>, s: T, s_bar: T, width: T) -> T {
    let v = frame.base().eval(s) - frame.base().eval(s_bar);
    let w = frame.field().point(s_bar) - frame.field().point(s);
    (v - w * width).norm()
}

/// All positive-width solutions of the crossing equation on the frame's grid.
///
/// The scan tests collinearity of the base chord against the field difference
/// with a least-squares width per cell; local minima seed a damped Newton
/// iteration on the full three-unknown system `(s, s_bar, R)`.
pub fn crossing_widths<T: Scalar>(frame: &RibbonFrame<T>) -> Vec<CrossingRecord<T>> {
    let n = frame.grid_n();
    let tol = *frame.tol();
    let x = frame.base().eval_grid(n);
    let u = frame.field().point_grid(n);
    let (_, hi_x) = frame.base().speed_extrema(n);
    let (_, hi_u) = frame.field().speed_extrema(n);

    let eq2 = tol.eq_tol * tol.eq_tol;
    let cell = conv::<T>(1.0 / n as f64);
    let value = |i: usize, d: usize| {
        let j = (i + d) % n;
        let v = x[i] - x[j];
        let w = u[j] - u[i];
        let ww = w.norm_squared();
        if ww < eq2 {
            return T::max_value().unwrap();
        }
        let r = v.dot(&w) / ww;
        if r <= T::zero() {
            return T::max_value().unwrap();
        }
        (v - w * r).norm_squared()
    };
    let accept = |i: usize, d: usize, f: T| {
        if f == T::max_value().unwrap() {
            return false;
        }
        let j = (i + d) % n;
        let v = x[i] - x[j];
        let w = u[j] - u[i];
        let r = v.dot(&w) / w.norm_squared();
        let scale = (hi_x + r * hi_u) * cell * conv(6.0);
        f < scale * scale
    };

    let grid = PairGrid::new(n, tol.sep_lambda);
    let candidates = local_minima(&grid, value, accept);

    let mut refined: Vec<(T, T, T, T)> = Vec::new();
    for (i, d) in candidates {
        let j = (i + d) % n;
        let s0 = cell * conv::<T>(i as f64);
        let sb0 = cell * conv::<T>(j as f64);
        let v = x[i] - x[j];
        let w = u[j] - u[i];
        let r0 = v.dot(&w) / w.norm_squared();
        if let Some((s, sb, width, res)) = refine_crossing(frame, s0, sb0, r0) {
            if res < tol.residual_tol && width > T::zero() && circ_dist(s, sb) >= tol.sep_lambda {
                let (s, sb, width) = if s <= sb { (s, sb, width) } else { (sb, s, width) };
                refined.push((s, sb, res, width));
            }
        }
    }
    refined.sort_by(|a, b| (a.0, a.1).partial_cmp(&(b.0, b.1)).unwrap());
    let merged = dedup_pairs(refined, tol.sep_lambda * conv(0.5));
    merged
        .into_iter()
        .map(|(s, s_bar, residual, width)| CrossingRecord { s, s_bar, width, residual })
        .collect()
}

/// Damped Newton on `r(s, s_bar, R) = x(s) - x(s_bar) - R (u(s_bar) - u(s))`.
fn refine_crossing<T: Scalar>(
    frame: &RibbonFrame<T>,
    mut s: T,
    mut sb: T,
    mut width: T,
) -> Option<(T, T, T, T)> {
    let n = frame.grid_n();
    let clamp = conv::<T>(1.5 / n as f64);
    let base = frame.base();
    let field = frame.field();
    for _ in 0..50 {
        let r = base.eval(s) - base.eval(sb) - (field.point(sb) - field.point(s)) * width;
        let js = base.eval_deriv(s) + field.tangent(s) * width;
        let jsb = -(base.eval_deriv(sb) + field.tangent(sb) * width);
        let jw = field.point(s) - field.point(sb);
        let jac = Matrix3::from_columns(&[js, jsb, jw]);
        let rhs = -r;
        let step = match jac.lu().solve(&rhs) {
            Some(st) if st.iter().all(|v| v.is_finite()) => st,
            _ => {
                // rank-deficient near a continuum of solutions: damped normal equations
                let jt = jac.transpose();
                let mut a = jt * jac;
                let mu = conv::<T>(1e-9) * (T::one() + width * width);
                for k in 0..3 {
                    a[(k, k)] += mu;
                }
                a.lu().solve(&(jt * rhs))?
            }
        };
        let ds = step[0].max(-clamp).min(clamp);
        let dsb = step[1].max(-clamp).min(clamp);
        let wcap = width.abs() * conv(0.5) + T::one();
        let dw = step[2].max(-wcap).min(wcap);
        s += ds;
        sb += dsb;
        width += dw;
        if width <= T::zero() {
            return None;
        }
        if ds.abs() + dsb.abs() + dw.abs() / (T::one() + width) < conv(1e-15) {
            break;
        }
    }
    s -= s.floor();
    sb -= sb.floor();
    let res = (base.eval(s) - base.eval(sb) - (field.point(sb) - field.point(s)) * width).norm();
    Some((s, sb, width, res))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{RibbonFrame, SphericalCurve};

    #[test]
    fn analytic_two_point_configuration_has_width_one() {
        let frame = crate::fixtures::two_point_frame();
        let records = crossing_widths(&frame);
        let hit = records
            .iter()
            .find(|r| circ_dist(r.s, 0.0) < 1e-4 && circ_dist(r.s_bar, 0.5) < 1e-4)
            .expect("crossing at (0, 1/2)");
        assert!((hit.width - 1.0).abs() < 1e-6, "width {}", hit.width);
        assert!(hit.residual < 1e-8);
    }

    #[test]
    fn width_is_the_unique_residual_minimizer() {
        let frame = crate::fixtures::two_point_frame();
        for rec in crossing_widths(&frame) {
            let at = |w: f64| crossing_residual_at(&frame, rec.s, rec.s_bar, w);
            assert!(at(rec.width + 0.1) > at(rec.width));
            assert!(at(rec.width - 0.1) > at(rec.width));
        }
    }

    #[test]
    fn constant_field_has_no_crossings() {
        let base = crate::fixtures::trefoil_curve();
        let field = SphericalCurve::from_unit_generator(
            crate::curves::ClosedCurve3::constant(crate::Vec3::z()),
        );
        let frame = RibbonFrame::with_defaults(base, field);
        assert!(crossing_widths(&frame).is_empty());
    }

    #[test]
    fn goalpost_frame_widths_grow_under_refinement() {
        let frame = crate::fixtures::goalpost_frame();
        let mut prev = 0.0f64;
        for g in [1024usize, 4096] {
            let f = frame.with_grid_n(g).unwrap();
            let max_w = crossing_widths(&f)
                .iter()
                .map(|r| r.width)
                .fold(0.0f64, f64::max);
            assert!(max_w > 2.0 * prev, "grid {g}: {max_w} vs {prev}");
            prev = max_w;
        }
    }
}
