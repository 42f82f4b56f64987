use super::scan::{canonical_pair, circ_dist, dedup_pairs, local_minima, refine_coincidence, PairGrid};
use crate::curves::{SphericalCurve, ToleranceSet};
use crate::{conv, Error, Result, Scalar, Vec3};

/// Transversal self-intersection of a spherical curve: the two parameters,
/// the common image point, and the angle between the tangent lines.
#[derive(Debug, Clone)]
pub struct DoublePoint<T: Scalar> {
    pub s: T,
    pub s_bar: T,
    pub point: Vec3<T>,
    pub crossing_angle: T,
}

/// A refined coincidence of any closed map `P`: `|P(s) - P(s_bar)| < eq_tol`.
#[derive(Debug, Clone)]
pub(crate) struct RawPair<T: Scalar> {
    pub s: T,
    pub s_bar: T,
    pub point: Vec3<T>,
}

/// Find all coincidence pairs of a closed map from grid candidates.
///
/// Local minima of the squared gap (outside the `sep_lambda` band) seed a
/// damped Gauss-Newton polish; pairs whose images agree to `eq_tol` are kept,
/// deduplicated, and screened for triple points.
pub(crate) fn coincidence_pairs<T: Scalar>(
    point: &dyn Fn(T) -> Vec3<T>,
    deriv: &dyn Fn(T) -> Vec3<T>,
    grid_points: &[Vec3<T>],
    speed_hi: T,
    tol: &ToleranceSet<T>,
) -> Result<Vec<RawPair<T>>> {
    let n = grid_points.len();
    let thresh = conv::<T>(6.0 / n as f64) * speed_hi;
    let thresh2 = thresh * thresh;

    let grid = PairGrid::new(n, tol.sep_lambda);
    let value = |i: usize, d: usize| {
        let j = (i + d) % n;
        (grid_points[i] - grid_points[j]).norm_squared()
    };
    let candidates = local_minima(&grid, value, |_, _, v| v < thresh2);

    let h = conv::<T>(1.0 / n as f64);
    let mut refined: Vec<(T, T, T, Vec3<T>)> = Vec::new();
    for (i, d) in candidates {
        let s0 = h * conv::<T>(i as f64);
        let sb0 = h * conv::<T>(((i + d) % n) as f64);
        if let Some((s, sb, res)) = refine_coincidence(point, deriv, s0, sb0, n, tol.sep_lambda) {
            if res < tol.eq_tol {
                let (s, sb) = canonical_pair(s, sb);
                let p = (point(s) + point(sb)) * conv::<T>(0.5);
                refined.push((s, sb, res, p));
            }
        }
    }
    refined.sort_by(|a, b| (a.0, a.1).partial_cmp(&(b.0, b.1)).unwrap());
    let merged = dedup_pairs(refined, tol.sep_lambda * conv(0.5));

    check_no_triples(&merged, tol)?;
    Ok(merged
        .into_iter()
        .map(|(s, s_bar, _res, point)| RawPair { s, s_bar, point })
        .collect())
}

/// All double points of the spherical curve on the grid.
///
/// Suspected triple points and near-tangential crossings are rejected rather
/// than reported: the downstream diagram machinery has no meaning for them.
pub fn sphere_double_points<T: Scalar>(
    u: &SphericalCurve<T>,
    grid_n: usize,
    tol: &ToleranceSet<T>,
) -> Result<Vec<DoublePoint<T>>> {
    let points = u.point_grid(grid_n);
    let (_, hi_speed) = u.speed_extrema(grid_n);
    let point = |s: T| u.point(s);
    let deriv = |s: T| u.tangent(s);
    let raw = coincidence_pairs(&point, &deriv, &points, hi_speed, tol)?;

    let mut out = Vec::with_capacity(raw.len());
    for pair in raw {
        let angle = line_angle(&u.tangent(pair.s), &u.tangent(pair.s_bar));
        if angle < tol.angle_tol {
            return Err(Error::TangencyDetected {
                s: pair.s.to_subset().unwrap_or(f64::NAN),
                s_bar: pair.s_bar.to_subset().unwrap_or(f64::NAN),
                angle: angle.to_subset().unwrap_or(f64::NAN),
            });
        }
        out.push(DoublePoint {
            s: pair.s,
            s_bar: pair.s_bar,
            point: pair.point.normalize(),
            crossing_angle: angle,
        });
    }
    Ok(out)
}

/// Angle between the tangent *lines*, folded to `[0, pi/2]`.
pub fn line_angle<T: Scalar>(t1: &Vec3<T>, t2: &Vec3<T>) -> T {
    let denom = t1.norm() * t2.norm();
    if denom == T::zero() {
        return T::zero();
    }
    let c = (t1.dot(t2) / denom).abs().min(T::one());
    c.acos()
}

/// Three pairwise-coincident parameters within one image ball of radius
/// `2 eq_tol` mean the curve has (numerically) a triple point.
fn check_no_triples<T: Scalar>(
    pairs: &[(T, T, T, Vec3<T>)],
    tol: &ToleranceSet<T>,
) -> Result<()> {
    let ball = tol.eq_tol * conv(2.0);
    for (a_idx, a) in pairs.iter().enumerate() {
        for b in pairs.iter().skip(a_idx + 1) {
            if (a.3 - b.3).norm() > ball {
                continue;
            }
            let params = [a.0, a.1, b.0, b.1];
            let mut distinct: Vec<T> = Vec::new();
            for p in params {
                if distinct.iter().all(|q| circ_dist(p, *q) >= tol.sep_lambda) {
                    distinct.push(p);
                }
            }
            if distinct.len() >= 3 {
                return Err(Error::TriplePointDetected {
                    s0: distinct[0].to_subset().unwrap_or(f64::NAN),
                    s1: distinct[1].to_subset().unwrap_or(f64::NAN),
                    s2: distinct[2].to_subset().unwrap_or(f64::NAN),
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::ClosedCurve3;

    #[test]
    fn great_circle_has_no_double_points() {
        let u = SphericalCurve::from_unit_generator(ClosedCurve3::<f64>::unit_circle_xy());
        let dps = sphere_double_points(&u, 1024, &ToleranceSet::default()).unwrap();
        assert!(dps.is_empty());
    }

    #[test]
    fn figure_eight_field_has_one_double_point() {
        let u = crate::fixtures::figure_eight_field();
        let tol = ToleranceSet::default();
        let dps = sphere_double_points(&u, 4096, &tol).unwrap();
        assert_eq!(dps.len(), 1);
        let dp = &dps[0];
        assert!(circ_dist(dp.s, 0.0) < 1e-6);
        assert!(circ_dist(dp.s_bar, 0.5) < 1e-6);
        assert!((dp.point - Vec3::new(0.0, 0.0, 1.0)).norm() < 1e-6);
        assert!(dp.crossing_angle > tol.angle_tol);
    }

    #[test]
    fn brute_force_oracle_agrees_on_the_figure_eight_field() {
        // independent oracle: hash-bucketed dense scan at 2^16 samples,
        // counting coincidence clusters without any local refinement
        let u = crate::fixtures::figure_eight_field();
        let n = 1 << 16;
        let pts = u.point_grid(n);
        let clusters = brute_force_cluster_count(&pts, 1e-2, 4.0 * 6.0 / n as f64);
        assert_eq!(clusters, 1);
        let tol = ToleranceSet::default();
        assert_eq!(sphere_double_points(&u, 4096, &tol).unwrap().len(), clusters);
    }

    /// Bucket points on a coarse spatial hash; a coincidence is a pair of
    /// parameter-distant samples in nearby buckets, and clusters are grown by
    /// parameter adjacency.
    fn brute_force_cluster_count(pts: &[Vec3<f64>], sep: f64, radius: f64) -> usize {
        use std::collections::HashMap;
        let n = pts.len();
        let cell = radius.max(1e-9);
        let key = |p: &Vec3<f64>| {
            (
                (p.x / cell).floor() as i64,
                (p.y / cell).floor() as i64,
                (p.z / cell).floor() as i64,
            )
        };
        let mut buckets: HashMap<(i64, i64, i64), Vec<usize>> = HashMap::new();
        for (i, p) in pts.iter().enumerate() {
            buckets.entry(key(p)).or_default().push(i);
        }
        let mut hits: Vec<(usize, usize)> = Vec::new();
        for (i, p) in pts.iter().enumerate() {
            let (kx, ky, kz) = key(p);
            for dx in -1..=1 {
                for dy in -1..=1 {
                    for dz in -1..=1 {
                        if let Some(list) = buckets.get(&(kx + dx, ky + dy, kz + dz)) {
                            for &j in list {
                                if j <= i {
                                    continue;
                                }
                                let pd = (j - i).min(n - (j - i)) as f64 / n as f64;
                                if pd >= sep && (pts[i] - pts[j]).norm() < radius {
                                    hits.push((i, j));
                                }
                            }
                        }
                    }
                }
            }
        }
        // grow clusters by index adjacency on both coordinates, in either
        // order (the wraparound can flip the pair)
        let close = |a: usize, b: usize| {
            let d = (a as i64 - b as i64).unsigned_abs() as usize;
            d.min(n - d) < n / 100
        };
        let mut clusters: Vec<Vec<(usize, usize)>> = Vec::new();
        'pair: for h in hits {
            for c in clusters.iter_mut() {
                if c.iter().any(|&(a, b)| {
                    (close(a, h.0) && close(b, h.1)) || (close(a, h.1) && close(b, h.0))
                }) {
                    c.push(h);
                    continue 'pair;
                }
            }
            clusters.push(vec![h]);
        }
        clusters.len()
    }

    #[test]
    fn near_tangential_crossing_is_rejected() {
        // lobes cross at an angle of about 1e-4, below the 1e-3 floor
        let u = crate::fixtures::near_tangent_field();
        let err = sphere_double_points(&u, 4096, &ToleranceSet::default()).unwrap_err();
        assert!(matches!(err, Error::TangencyDetected { .. }));
    }

    #[test]
    fn triple_point_is_rejected() {
        let u = crate::fixtures::triple_point_field();
        let err = sphere_double_points(&u, 4096, &ToleranceSet::default()).unwrap_err();
        assert!(matches!(err, Error::TriplePointDetected { .. }));
    }
}
