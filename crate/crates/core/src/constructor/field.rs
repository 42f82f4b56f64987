use super::arc::ArcDiagram;
use super::layout::{arc_waypoints, chord_waypoints, plan_layout, Layout, CAP_POLAR_ANGLE};
use crate::curves::{ClosedCurve3, SphericalCurve, ToleranceSet};
use crate::diagram::{gauss_to_pd, SignedGaussCode};
use crate::intersect::sphere_double_points;
use crate::{Error, Result, Vec3};

/// A constructed field together with the double-point parameters it realized.
#[derive(Debug, Clone)]
pub struct BuiltField {
    pub field: SphericalCurve<f64>,
    /// arc-side parameters `s_1 < ... < s_k`
    pub arc_params: Vec<f64>,
    /// return-side parameters `s_bar_j`, indexed by crossing label
    pub return_params: Vec<f64>,
}

const FIT_SAMPLES: usize = 16384;
const FIT_TOL: f64 = 1e-7;

/// Build the spherical curve realizing the diagram: crossings inside the
/// polar caps by over/under, the straightened arc along the equator, and the
/// return connectors nested around it. The construction is verified by
/// re-detecting the double points and re-deriving the code.
pub fn build_field(arc: &ArcDiagram) -> Result<BuiltField> {
    // reject combinatorial garbage early: the code must be a sphere diagram
    gauss_to_pd(&arc.code)?;
    let layout = plan_layout(arc)?;

    let mut chart: Vec<(f64, f64)> = arc_waypoints(&layout);
    for chord in &layout.chords {
        let piece = chord_waypoints(&layout, chord);
        chart.extend(piece);
    }
    // last point returns to the start
    if let (Some(&last), Some(&first)) = (chart.last(), chart.first()) {
        assert!(
            (last.0 - first.0).abs() + (last.1 - first.1).abs() < 1e-9,
            "path must close"
        );
        chart.pop();
    }

    let samples = smooth_closed_chart_path(&chart, &layout);
    let generator = ClosedCurve3::fit_grid(&samples, FIT_TOL)
        .map_err(|_| Error::LayoutFailed("field refit did not converge".into()))?;
    let field = SphericalCurve::from_generator(generator, FIT_SAMPLES, 1e-9)
        .map_err(|_| Error::LayoutFailed("field generator vanishes".into()))?;

    verify_field(arc, &layout, field)
}

/// Subdivide, resample uniformly by spherical arclength, round the corners
/// with a flat smooth kernel, and map onto the sphere.
fn smooth_closed_chart_path(chart: &[(f64, f64)], layout: &Layout) -> Vec<Vec3<f64>> {
    // subdivide long segments so the polyline is dense
    let max_seg = 0.008;
    let mut dense: Vec<(f64, f64)> = Vec::new();
    let n0 = chart.len();
    for i in 0..n0 {
        let a = chart[i];
        let b = chart[(i + 1) % n0];
        let len = seg_len(a, b);
        if len < 1e-12 {
            continue;
        }
        let pieces = (len / max_seg).ceil() as usize;
        for p in 0..pieces {
            let t = p as f64 / pieces as f64;
            dense.push((a.0 + (b.0 - a.0) * t, a.1 + (b.1 - a.1) * t));
        }
    }

    // uniform arclength resampling
    let n = FIT_SAMPLES;
    let m = dense.len();
    let mut cum = Vec::with_capacity(m + 1);
    cum.push(0.0);
    for i in 0..m {
        cum.push(cum[i] + seg_len(dense[i], dense[(i + 1) % m]));
    }
    let total = cum[m];
    let mut uniform: Vec<(f64, f64)> = Vec::with_capacity(n);
    let mut seg = 0usize;
    for i in 0..n {
        let target = total * i as f64 / n as f64;
        while cum[seg + 1] < target {
            seg += 1;
        }
        let a = dense[seg];
        let b = dense[(seg + 1) % m];
        let t = (target - cum[seg]) / (cum[seg + 1] - cum[seg]).max(1e-300);
        uniform.push((a.0 + (b.0 - a.0) * t, a.1 + (b.1 - a.1) * t));
    }

    // corner rounding: periodic convolution with a flat-ended bump kernel;
    // straight stretches are affine in arclength, so they do not move
    let corner_radius = layout.delta / 3.0;
    let spacing = total / n as f64;
    let half = ((2.5 * corner_radius / spacing).round() as usize).max(4);
    let mut kernel = Vec::with_capacity(2 * half + 1);
    let mut ksum = 0.0;
    for i in 0..=(2 * half) {
        let x = (i as f64 - half as f64) / (half as f64 + 0.5);
        let w = crate::smooth::bump(x);
        kernel.push(w);
        ksum += w;
    }
    let smoothed: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let mut phi = 0.0;
            let mut eta = 0.0;
            for (ki, w) in kernel.iter().enumerate() {
                let idx = (i + n + ki - half) % n;
                phi += w * uniform[idx].0;
                eta += w * uniform[idx].1;
            }
            (phi / ksum, eta / ksum)
        })
        .collect();

    smoothed
        .into_iter()
        .map(|(phi, eta)| Vec3::new(eta.cos() * phi.cos(), eta.cos() * phi.sin(), eta.sin()))
        .collect()
}

/// Spherical length of a chart segment (latitude-weighted longitude).
fn seg_len(a: (f64, f64), b: (f64, f64)) -> f64 {
    let mid = 0.5 * (a.1 + b.1);
    let dphi = (b.0 - a.0) * mid.cos();
    let deta = b.1 - a.1;
    (dphi * dphi + deta * deta).sqrt()
}

/// Re-detect the double points of the built field and check the diagram
/// combinatorics: visit order, over/under by cap, and handedness.
fn verify_field(arc: &ArcDiagram, layout: &Layout, field: SphericalCurve<f64>) -> Result<BuiltField> {
    let k = arc.arc_end;
    let tol = ToleranceSet::default();
    let mut last_err = String::from("no detection attempted");
    for grid in [4096usize, 8192, 16384] {
        match sphere_double_points(&field, grid, &tol) {
            Err(e) => last_err = format!("detection failed at grid {grid}: {e}"),
            Ok(dps) => {
                if dps.len() != k {
                    last_err = format!("expected {k} double points, found {} at grid {grid}", dps.len());
                    continue;
                }
                match check_combinatorics(arc, layout, &field, &dps) {
                    Ok(built) => return Ok(built),
                    Err(e) => last_err = format!("grid {grid}: {e}"),
                }
            }
        }
    }
    Err(Error::LayoutFailed(last_err))
}

fn check_combinatorics(
    arc: &ArcDiagram,
    layout: &Layout,
    field: &SphericalCurve<f64>,
    dps: &[crate::intersect::DoublePoint<f64>],
) -> std::result::Result<BuiltField, String> {
    let k = arc.arc_end;
    // match detected points to planned crossings by position
    let mut arc_params = vec![f64::NAN; k];
    let mut return_params = vec![f64::NAN; k];
    for dp in dps {
        let planned = (0..k)
            .min_by(|&a, &b| {
                let pa = planned_point(layout, a);
                let pb = planned_point(layout, b);
                (dp.point - pa)
                    .norm()
                    .partial_cmp(&(dp.point - pb).norm())
                    .unwrap()
            })
            .ok_or("no crossings planned")?;
        let dist = (dp.point - planned_point(layout, planned)).norm();
        if dist > layout.delta {
            return Err(format!(
                "double point at {:?} is {dist} away from any planned crossing",
                dp.point
            ));
        }
        if !arc_params[planned].is_nan() {
            return Err(format!("two double points matched crossing {}", planned + 1));
        }
        // the traversal starts on the arc, so the smaller parameter is the
        // arc-side visit
        arc_params[planned] = dp.s;
        return_params[planned] = dp.s_bar;
        // cap membership per over/under
        let polar = if arc.omega[planned] > 0 {
            dp.point.z.acos()
        } else {
            (-dp.point.z).acos()
        };
        if polar >= std::f64::consts::FRAC_PI_2 / 6.0 {
            return Err(format!(
                "crossing {} sits at polar angle {polar}, outside its cap",
                planned + 1
            ));
        }
    }
    // arc visits must come in arc order and before every return visit
    for j in 0..k.saturating_sub(1) {
        if arc_params[j] >= arc_params[j + 1] {
            return Err("arc-side parameters out of order".into());
        }
    }
    let max_arc = arc_params.iter().cloned().fold(0.0, f64::max);
    if return_params.iter().any(|&r| r <= max_arc) {
        return Err("a return parameter precedes the arc".into());
    }
    // return visit order must be tau
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| return_params[a].partial_cmp(&return_params[b]).unwrap());
    let visited: Vec<usize> = order.iter().map(|&j| j + 1).collect();
    if visited != arc.tau {
        return Err(format!("return order {visited:?} differs from tau {:?}", arc.tau));
    }
    // handedness: rebuild the code geometrically and compare
    let rebuilt = rebuild_code(arc, field, &arc_params, &return_params);
    if rebuilt.canonical() != arc.code.canonical() {
        return Err(format!("rebuilt code {rebuilt} differs from target {}", arc.code));
    }
    Ok(BuiltField { field: field.clone(), arc_params, return_params })
}

fn planned_point(layout: &Layout, idx: usize) -> Vec3<f64> {
    let phi = layout.phi[idx];
    let eta = layout.eta_peak[idx];
    Vec3::new(eta.cos() * phi.cos(), eta.cos() * phi.sin(), eta.sin())
}

/// Assemble the signed code of the built field using the arc's over/under
/// assignment and the detected geometry.
fn rebuild_code(
    arc: &ArcDiagram,
    field: &SphericalCurve<f64>,
    arc_params: &[f64],
    return_params: &[f64],
) -> SignedGaussCode {
    use crate::diagram::assemble::{assemble_code, VisitPair};
    let pairs: Vec<VisitPair<f64>> = (0..arc.arc_end)
        .map(|j| {
            let s = arc_params[j];
            let s_bar = return_params[j];
            let over_first = arc.omega[j] > 0;
            let point = field.point(s);
            let sign = crate::diagram::spatial_handedness(
                &field.tangent(s),
                &field.tangent(s_bar),
                &point,
                over_first,
            );
            VisitPair { s, s_bar, over_first, sign }
        })
        .collect();
    assemble_code(&pairs)
}

/// Cap polar radius used by the base construction to aim the reparameterized
/// base points.
pub(crate) fn cap_polar_angle() -> f64 {
    CAP_POLAR_ANGLE
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructor::arc::hamiltonian_arc_check;

    #[test]
    fn empty_diagram_builds_an_embedded_curve() {
        let arc = hamiltonian_arc_check(&SignedGaussCode::empty()).unwrap();
        let built = build_field(&arc).unwrap();
        let dps = sphere_double_points(&built.field, 4096, &ToleranceSet::default()).unwrap();
        assert!(dps.is_empty());
    }

    #[test]
    fn trefoil_field_realizes_the_diagram() {
        let arc = hamiltonian_arc_check(&crate::fixtures::trefoil_code()).unwrap();
        let built = build_field(&arc).unwrap();
        assert_eq!(built.arc_params.len(), 3);
        // over-crossings in the north cap, under-crossings in the south cap
        for (j, &s) in built.arc_params.iter().enumerate() {
            let z = built.field.point(s).z;
            if arc.omega[j] > 0 {
                assert!(z > (std::f64::consts::FRAC_PI_2 / 6.0).cos());
            } else {
                assert!(z < -(std::f64::consts::FRAC_PI_2 / 6.0).cos());
            }
        }
    }

    #[test]
    fn figure_eight_field_has_two_peaks_per_cap() {
        let arc = hamiltonian_arc_check(&crate::fixtures::figure_eight_code()).unwrap();
        let built = build_field(&arc).unwrap();
        let north = built
            .arc_params
            .iter()
            .filter(|&&s| built.field.point(s).z > 0.0)
            .count();
        assert_eq!(north, 2);
    }
}
