use rayon::prelude::*;

use crate::{conv, Scalar, Vec3};

/// Circular distance between two parameters in `[0, 1)`.
pub fn circ_dist<T: Scalar>(a: T, b: T) -> T {
    let d = (a - b) - (a - b).floor();
    d.min(T::one() - d)
}

/// Cells of the pair grid, indexed as `(i, d)` for the unordered pair
/// `(i/n, (i+d)/n)`. Using the gap `d` as the second coordinate keeps the
/// quotient by pair symmetry free of seams.
pub struct PairGrid {
    pub n: usize,
    pub d_min: usize,
    pub d_max: usize,
}

impl PairGrid {
    pub fn new<T: Scalar>(n: usize, sep_lambda: T) -> Self {
        let lam = sep_lambda.to_subset().unwrap_or(0.01);
        let d_min = ((lam * n as f64).ceil() as usize).max(1);
        Self { n, d_min, d_max: n / 2 }
    }
}

/// All local minima of `value` over the pair grid that pass `accept`.
///
/// Rows are scanned in parallel; the output is ordered by `(i, d)` so the
/// result is deterministic.
pub fn local_minima<T, V, A>(grid: &PairGrid, value: V, accept: A) -> Vec<(usize, usize)>
where
    T: Scalar,
    V: Fn(usize, usize) -> T + Sync,
    A: Fn(usize, usize, T) -> bool + Sync,
{
    let n = grid.n;
    let (d_min, d_max) = (grid.d_min, grid.d_max);
    let mut rows: Vec<Vec<(usize, usize)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            for d in d_min..=d_max {
                let v = value(i, d);
                if !accept(i, d, v) {
                    continue;
                }
                let mut is_min = true;
                'nb: for di in -1i64..=1 {
                    for dd in -1i64..=1 {
                        if di == 0 && dd == 0 {
                            continue;
                        }
                        let ni = (i as i64 + di).rem_euclid(n as i64) as usize;
                        let nd = d as i64 + dd;
                        if nd < d_min as i64 || nd > d_max as i64 {
                            continue;
                        }
                        if value(ni, nd as usize) < v {
                            is_min = false;
                            break 'nb;
                        }
                    }
                }
                if is_min {
                    out.push((i, d));
                }
            }
            out
        })
        .collect();
    let mut flat = Vec::new();
    for r in rows.drain(..) {
        flat.extend(r);
    }
    flat
}

/// Gauss-Newton polish of a coincidence pair: drive `P(s) - P(s_bar)` to its
/// local minimum. Returns the refined parameters and the residual norm, or
/// `None` if the iteration collapses into the excluded diagonal band.
pub fn refine_coincidence<T: Scalar>(
    point: &dyn Fn(T) -> Vec3<T>,
    deriv: &dyn Fn(T) -> Vec3<T>,
    s0: T,
    sbar0: T,
    grid_n: usize,
    sep_lambda: T,
) -> Option<(T, T, T)> {
    let clamp = conv::<T>(1.5 / grid_n as f64);
    let mut s = s0;
    let mut sb = sbar0;
    for _ in 0..50 {
        let r = point(s) - point(sb);
        let j0 = deriv(s);
        let j1 = -deriv(sb);
        // 2x2 normal equations
        let a00 = j0.dot(&j0);
        let a01 = j0.dot(&j1);
        let a11 = j1.dot(&j1);
        let b0 = -j0.dot(&r);
        let b1 = -j1.dot(&r);
        let det = a00 * a11 - a01 * a01;
        if det.abs() < conv(1e-30) {
            break;
        }
        let mut ds = (b0 * a11 - b1 * a01) / det;
        let mut dsb = (a00 * b1 - a01 * b0) / det;
        ds = ds.max(-clamp).min(clamp);
        dsb = dsb.max(-clamp).min(clamp);
        s += ds;
        sb += dsb;
        if circ_dist(s, sb) < sep_lambda {
            return None;
        }
        if ds.abs() + dsb.abs() < conv(1e-16) {
            break;
        }
    }
    s -= s.floor();
    sb -= sb.floor();
    let res = (point(s) - point(sb)).norm();
    Some((s, sb, res))
}

/// Canonical ordering of a refined pair: `s < s_bar` in `[0, 1)`.
pub fn canonical_pair<T: Scalar>(s: T, sb: T) -> (T, T) {
    if s <= sb {
        (s, sb)
    } else {
        (sb, s)
    }
}

/// Cluster refined pairs that describe the same geometric event, in either
/// coordinate order (the wraparound at 1 can flip the canonical ordering).
/// `items` must be sorted by `(s, s_bar)`; keeps the item with smallest score.
pub fn dedup_pairs<T: Scalar, X>(
    items: Vec<(T, T, T, X)>,
    merge_tol: T,
) -> Vec<(T, T, T, X)> {
    let mut kept: Vec<(T, T, T, X)> = Vec::new();
    'outer: for item in items {
        for k in kept.iter_mut() {
            let direct = circ_dist(item.0, k.0) < merge_tol && circ_dist(item.1, k.1) < merge_tol;
            let swapped = circ_dist(item.0, k.1) < merge_tol && circ_dist(item.1, k.0) < merge_tol;
            if direct || swapped {
                if item.2 < k.2 {
                    *k = item;
                }
                continue 'outer;
            }
        }
        kept.push(item);
    }
    kept.sort_by(|a, b| (a.0, a.1).partial_cmp(&(b.0, b.1)).unwrap());
    kept
}
