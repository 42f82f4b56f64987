use super::crossings::crossing_widths;
use super::goalposts::detect_goalposts;
use super::scan::{local_minima, PairGrid};
use crate::curves::{outer_edge_points, ClosedCurve3, RibbonFrame, ToleranceSet};
use crate::{conv, Result, Scalar, Vec3};

/// Smallest distance between curve points at parameters separated by at least
/// `sep_lambda`, polished by Gauss-Newton from the best grid cells.
fn min_pair_gap<T: Scalar>(
    points: &[Vec3<T>],
    point: &dyn Fn(T) -> Vec3<T>,
    deriv: &dyn Fn(T) -> Vec3<T>,
    tol: &ToleranceSet<T>,
) -> T {
    let n = points.len();
    let grid = PairGrid::new(n, tol.sep_lambda);
    let value = |i: usize, d: usize| {
        let j = (i + d) % n;
        (points[i] - points[j]).norm_squared()
    };
    // global minimum cell
    let mut best = T::max_value().unwrap();
    let mut best_cell = (0usize, grid.d_min);
    for i in 0..n {
        for d in grid.d_min..=grid.d_max {
            let v = value(i, d);
            if v < best {
                best = v;
                best_cell = (i, d);
            }
        }
    }
    // local minima near the global floor are also polished; a touching pair
    // refines to nearly zero from any of its surrounding cells
    let floor = best * conv(4.0) + tol.eq_tol * tol.eq_tol;
    let mut cells = local_minima(&grid, value, |_, _, v| v <= floor);
    cells.push(best_cell);

    let mut min_gap = best.sqrt();
    for (i, d) in cells {
        let s0 = conv::<T>(i as f64 / n as f64);
        let sb0 = conv::<T>(((i + d) % n) as f64 / n as f64);
        if let Some((_, _, res)) =
            super::scan::refine_coincidence(point, deriv, s0, sb0, n, tol.sep_lambda)
        {
            if res < min_gap {
                min_gap = res;
            }
        }
    }
    min_gap
}

/// Is the curve embedded at grid resolution? Returns the flag and the
/// smallest off-diagonal gap found.
pub fn curve_embedded<T: Scalar>(
    curve: &ClosedCurve3<T>,
    grid_n: usize,
    tol: &ToleranceSet<T>,
) -> (bool, T) {
    let pts = curve.eval_grid(grid_n);
    let point = |s: T| curve.eval(s);
    let deriv = |s: T| curve.eval_deriv(s);
    let gap = min_pair_gap(&pts, &point, &deriv, tol);
    (gap > tol.eq_tol, gap)
}

/// Is the outer ribbon edge at width `R` embedded?
///
/// Pairs closer than `sep_lambda` in parameter are excluded; local injectivity
/// of the limit justifies the window.
pub fn edge_embedded<T: Scalar>(frame: &RibbonFrame<T>, width: T) -> (bool, T) {
    let pts = outer_edge_points(frame, width);
    let base = frame.base();
    let field = frame.field();
    let point = move |s: T| base.eval(s) + field.point(s) * width;
    let deriv = move |s: T| base.eval_deriv(s) + field.tangent(s) * width;
    let gap = min_pair_gap(&pts, &point, &deriv, frame.tol());
    (gap > frame.tol().eq_tol, gap)
}

/// Supremum of the crossing-width set, or the refusal to name one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Stabilization<T> {
    /// No goal posts: the set of non-embedding widths is bounded by this value
    /// (zero when the set is empty).
    Finite(T),
    /// Goal posts present: the supremum cannot be trusted.
    Unbounded,
}

/// Stabilization width `R*`: past it the outer edge's knot type is constant.
pub fn stabilization_width<T: Scalar>(frame: &RibbonFrame<T>) -> Result<Stabilization<T>> {
    if !detect_goalposts(frame)?.is_empty() {
        return Ok(Stabilization::Unbounded);
    }
    let max = crossing_widths(frame)
        .iter()
        .map(|r| r.width)
        .fold(T::zero(), |a, b| if b > a { b } else { a });
    Ok(Stabilization::Finite(max))
}
