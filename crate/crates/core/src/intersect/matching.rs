use super::double_points::{sphere_double_points, DoublePoint};
use super::scan::circ_dist;
use crate::curves::{SphericalCurve, ToleranceSet};
use crate::{Error, Result, Scalar};

/// Correspondence between the double points of the field `u` and those of a
/// spherical projection of the rescaled edge.
#[derive(Debug, Clone)]
pub struct MatchReport<T: Scalar> {
    /// `(u double point, projected double point)` pairs, matched interval to
    /// matched interval.
    pub pairs: Vec<(DoublePoint<T>, DoublePoint<T>)>,
    pub max_parameter_drift: T,
    pub unmatched_u: Vec<DoublePoint<T>>,
    pub unmatched_z: Vec<DoublePoint<T>>,
}

impl<T: Scalar> MatchReport<T> {
    pub fn is_bijective(&self) -> bool {
        self.unmatched_u.is_empty() && self.unmatched_z.is_empty()
    }
}

/// Match the double points of `z` (a projected rescaled edge) against those
/// of the field.
///
/// A projected pair matches a field pair when both parameters land in the
/// field pair's `sep_lambda`-intervals, matched interval to matched interval.
/// Two projected pairs claiming one interval is an error: the interval
/// machinery guarantees at most one per interval once the scale is small.
pub fn match_double_points<T: Scalar>(
    u_dps: &[DoublePoint<T>],
    z: &SphericalCurve<T>,
    grid_n: usize,
    tol: &ToleranceSet<T>,
) -> Result<MatchReport<T>> {
    let z_dps = sphere_double_points(z, grid_n, tol)?;
    let delta = tol.sep_lambda;

    let mut claimed: Vec<Option<usize>> = vec![None; u_dps.len()];
    let mut pairs: Vec<(DoublePoint<T>, DoublePoint<T>)> = Vec::new();
    let mut unmatched_z: Vec<DoublePoint<T>> = Vec::new();
    let mut max_drift = T::zero();

    for (zi, zdp) in z_dps.iter().enumerate() {
        let mut found = None;
        for (ui, udp) in u_dps.iter().enumerate() {
            let direct = circ_dist(zdp.s, udp.s) < delta && circ_dist(zdp.s_bar, udp.s_bar) < delta;
            let swapped =
                circ_dist(zdp.s, udp.s_bar) < delta && circ_dist(zdp.s_bar, udp.s) < delta;
            if direct || swapped {
                let drift = if direct {
                    circ_dist(zdp.s, udp.s).max(circ_dist(zdp.s_bar, udp.s_bar))
                } else {
                    circ_dist(zdp.s, udp.s_bar).max(circ_dist(zdp.s_bar, udp.s))
                };
                found = Some((ui, drift));
                break;
            }
        }
        match found {
            Some((ui, drift)) => {
                if claimed[ui].is_some() {
                    return Err(Error::AmbiguousMatch {
                        s: u_dps[ui].s.to_subset().unwrap_or(f64::NAN),
                    });
                }
                claimed[ui] = Some(zi);
                if drift > max_drift {
                    max_drift = drift;
                }
                pairs.push((u_dps[ui].clone(), zdp.clone()));
            }
            None => unmatched_z.push(zdp.clone()),
        }
    }

    let unmatched_u = u_dps
        .iter()
        .enumerate()
        .filter(|(ui, _)| claimed[*ui].is_none())
        .map(|(_, dp)| dp.clone())
        .collect();

    Ok(MatchReport { pairs, max_parameter_drift: max_drift, unmatched_u, unmatched_z })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{rescaled_edge, spherical_projection};

    #[test]
    fn matching_u_against_itself_is_exact() {
        let frame = crate::fixtures::bent_frame();
        let tol = *frame.tol();
        let dps = sphere_double_points(frame.field(), frame.grid_n(), &tol).unwrap();
        let report = match_double_points(&dps, frame.field(), frame.grid_n(), &tol).unwrap();
        assert!(report.is_bijective());
        assert!(report.max_parameter_drift < 1e-9);
    }

    #[test]
    fn small_t_projection_matches_with_small_drift() {
        let frame = crate::fixtures::bent_frame();
        let tol = *frame.tol();
        let n = frame.grid_n();
        let dps = sphere_double_points(frame.field(), n, &tol).unwrap();
        let z = rescaled_edge(&frame, 1e-3).unwrap();
        let zhat = spherical_projection(&z, n, tol.eq_tol).unwrap();
        let report = match_double_points(&dps, &zhat, n, &tol).unwrap();
        assert!(report.is_bijective());
        assert!(report.max_parameter_drift < 1e-2);
    }

    #[test]
    fn drift_shrinks_with_t() {
        let frame = crate::fixtures::bent_frame();
        let tol = *frame.tol();
        let n = frame.grid_n();
        let dps = sphere_double_points(frame.field(), n, &tol).unwrap();
        let drift_at = |t: f64| {
            let z = rescaled_edge(&frame, t).unwrap();
            let zhat = spherical_projection(&z, n, tol.eq_tol).unwrap();
            match_double_points(&dps, &zhat, n, &tol)
                .unwrap()
                .max_parameter_drift
        };
        assert!(drift_at(1e-4) <= drift_at(1e-2));
    }

    #[test]
    fn oversized_t_is_not_silently_accepted() {
        // tiny petals plus a large base: at t = 0.5 the projection's double
        // points leave the matching intervals entirely
        let frame = crate::fixtures::crowded_frame();
        let tol = *frame.tol();
        let n = frame.grid_n();
        let dps = sphere_double_points(frame.field(), n, &tol).unwrap();
        assert!(!dps.is_empty());
        let z = rescaled_edge(&frame, 0.5).unwrap();
        let zhat = spherical_projection(&z, n, tol.eq_tol).unwrap();
        match match_double_points(&dps, &zhat, n, &tol) {
            Err(Error::AmbiguousMatch { .. }) => {}
            Err(_) => {}
            Ok(report) => assert!(!report.is_bijective(), "breakdown must be visible"),
        }
    }
}
