use super::field::{cap_polar_angle, BuiltField};
use crate::curves::{ClosedCurve3, ToleranceSet};
use crate::smooth::step;
use crate::{Error, Result, Vec3};

/// The base knot the frame should carry.
#[derive(Debug, Clone)]
pub enum BaseKnot {
    /// The round meridian circle through the poles.
    Unknot,
    /// Any smoothly embedded closed curve; it is scaled into a small ball on
    /// the meridian and spliced in as a connected summand.
    Curve(ClosedCurve3<f64>),
}

/// Meridian great circle: north pole at `s = 0`, `(1,0,0)` at `s = 1/4`,
/// south pole at `s = 1/2`.
pub fn meridian() -> ClosedCurve3<f64> {
    ClosedCurve3::new(
        Vec3::zeros(),
        vec![Vec3::new(0.0, 0.0, 1.0)],
        vec![Vec3::new(1.0, 0.0, 0.0)],
    )
}

/// Build the base curve: the meridian, or the meridian with the knotted part
/// spliced into a ball at `(1,0,0)`, reparameterized so the field's arc-side
/// double-point parameters land in the north cap and the return-side
/// parameters in the south cap.
pub fn build_base(k1: &BaseKnot, built: &BuiltField) -> Result<ClosedCurve3<f64>> {
    let geometric = match k1 {
        BaseKnot::Unknot => meridian(),
        BaseKnot::Curve(c) => splice_into_ball(c)?,
    };
    // re-anchor the parameter so s = 0 sits at the north pole
    let t_np = argmax_z(&geometric);
    let anchored = geometric.shifted(t_np);
    let warp = cap_warp(&anchored, built)?;
    crate::curves::reparameterize(&anchored, |s| warp.eval(s), 8192)
}

fn argmax_z(curve: &ClosedCurve3<f64>) -> f64 {
    let grid = 8192;
    let pts = curve.eval_grid(grid);
    let mut t = (0..grid)
        .max_by(|&a, &b| pts[a].z.partial_cmp(&pts[b].z).unwrap())
        .unwrap() as f64
        / grid as f64;
    let dd = curve.derivative().derivative();
    for _ in 0..8 {
        let d1 = curve.eval_deriv(t).z;
        let d2 = dd.eval(t).z;
        if d2.abs() < 1e-12 {
            break;
        }
        t -= d1 / d2;
    }
    t
}

/// Monotone smooth warp through fixed anchor points, with a strictly
/// positive slope floor.
pub(crate) struct AnchorWarp {
    anchors: Vec<(f64, f64)>,
    floor: f64,
}

impl AnchorWarp {
    /// Anchors must be strictly increasing in both coordinates within (0,1).
    pub fn new(mut anchors: Vec<(f64, f64)>, floor: f64) -> Result<Self> {
        anchors.insert(0, (0.0, 0.0));
        anchors.push((1.0, 1.0));
        for w in anchors.windows(2) {
            if w[1].0 <= w[0].0 || w[1].1 <= w[0].1 {
                return Err(Error::NonMonotoneWarp);
            }
        }
        Ok(Self { anchors, floor })
    }

    pub fn eval(&self, s: f64) -> f64 {
        let frac = s - s.floor();
        let lift = s - frac;
        let mut w = 1.0;
        for win in self.anchors.windows(2) {
            let ((a0, v0), (a1, v1)) = (win[0], win[1]);
            if frac < a1 {
                w = v0 + (v1 - v0) * step((frac - a0) / (a1 - a0));
                break;
            }
        }
        let mixed = self.floor * frac + (1.0 - self.floor) * w;
        lift + mixed
    }
}

/// The four-step reparameterization: compress the arc range into the north
/// cap, stretch to the south cap, hold the return range inside it, stretch
/// back to close. Cap entry parameters are measured on the actual base curve,
/// so a spliced base works the same as the round meridian.
fn cap_warp(base: &ClosedCurve3<f64>, built: &BuiltField) -> Result<AnchorWarp> {
    let k = built.arc_params.len();
    if k == 0 {
        return AnchorWarp::new(Vec::new(), 1e-3);
    }
    let z_gate = (0.7 * cap_polar_angle()).cos();
    let grid = 16384;
    let pts = base.eval_grid(grid);
    // first parameter leaving the north cap, first entering and last leaving
    // the south cap
    let mut t_n = None;
    let mut t_s_in = None;
    let mut t_s_out = None;
    for (i, p) in pts.iter().enumerate() {
        let t = i as f64 / grid as f64;
        if t_n.is_none() && p.z < z_gate {
            t_n = Some(t);
        }
        if t_s_in.is_none() && p.z < -z_gate {
            t_s_in = Some(t);
        }
        if p.z < -z_gate {
            t_s_out = Some(t);
        }
    }
    let (t_n, t_s_in, t_s_out) = match (t_n, t_s_in, t_s_out) {
        (Some(a), Some(b), Some(c)) if a < b && b <= c && c < 1.0 => (a, b, c),
        _ => {
            return Err(Error::LayoutFailed(
                "base curve does not traverse both polar caps".into(),
            ))
        }
    };

    let s_last_arc = built.arc_params[k - 1];
    let mut returns: Vec<f64> = built.return_params.clone();
    returns.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let (r_first, r_last) = (returns[0], returns[k - 1]);

    let mut anchors = vec![(s_last_arc, 0.9 * t_n)];
    if r_last > r_first && t_s_out > t_s_in {
        anchors.push((r_first, t_s_in + 0.05 * (t_s_out - t_s_in)));
        anchors.push((r_last, t_s_out - 0.05 * (t_s_out - t_s_in)));
    } else {
        anchors.push((r_first, 0.5 * (t_s_in + t_s_out)));
    }
    AnchorWarp::new(anchors, 1e-3)
}

/// Scale the knot into a ball of radius 0.03 at `(0.95, 0, 0)`, open it at
/// its outermost point, and splice it into the meridian through a twin cable
/// along the x-axis.
fn splice_into_ball(k1: &ClosedCurve3<f64>) -> Result<ClosedCurve3<f64>> {
    const BALL_CENTER: Vec3<f64> = Vec3::new(0.95, 0.0, 0.0);
    const BALL_RADIUS: f64 = 0.03;
    let tol = ToleranceSet::default();

    // normalize: centroid to the origin, radius to the ball
    let grid = 4096;
    let pts = k1.eval_grid(grid);
    let centroid = pts.iter().sum::<Vec3<f64>>() / grid as f64;
    let radius = pts
        .iter()
        .map(|p| (p - centroid).norm())
        .fold(0.0f64, f64::max);
    if radius <= 0.0 {
        return Err(Error::BallTooSmall);
    }
    let scaled = k1.translate(-centroid).scale(BALL_RADIUS / radius);

    // still embedded and regular at the shrunken scale?
    let (min_speed, _) = scaled.speed_extrema(grid);
    let (embedded, _) = crate::intersect::curve_embedded(&scaled, grid, &tol);
    if min_speed < tol.eq_tol || !embedded {
        return Err(Error::BallTooSmall);
    }

    // deterministic retry ladder over spin angles and tangent flips
    let golden = std::f64::consts::TAU * 0.381966;
    for attempt in 0..24 {
        let rot = nalgebra::Rotation3::from_axis_angle(
            &Vec3::x_axis(),
            golden * (attempt / 2) as f64,
        );
        let spun = scaled.map_coeffs(|v| rot * v);
        let flip = attempt % 2 == 1;
        if let Some(curve) = try_splice(&spun, BALL_CENTER, flip) {
            let (ok, _) = crate::intersect::curve_embedded(&curve, 8192, &tol);
            if ok {
                return Ok(curve);
            }
        }
    }
    Err(Error::BallTooSmall)
}

/// One splice attempt: open the knot at its +x extremum and cable the two
/// ends into the meridian near `(1, 0, 0)`.
fn try_splice(
    k_scaled: &ClosedCurve3<f64>,
    center: Vec3<f64>,
    flip: bool,
) -> Option<ClosedCurve3<f64>> {
    let grid = 4096;

    // opening parameter: maximum of x, polished by a few Newton steps
    let pts = k_scaled.eval_grid(grid);
    let mut t0 = (0..grid)
        .max_by(|&a, &b| pts[a].x.partial_cmp(&pts[b].x).unwrap())
        .unwrap() as f64
        / grid as f64;
    let ddk = k_scaled.derivative().derivative();
    for _ in 0..8 {
        let d1 = k_scaled.eval_deriv(t0).x;
        let d2 = ddk.eval(t0).x;
        if d2.abs() < 1e-12 {
            break;
        }
        t0 -= d1 / d2;
    }

    // align the opening tangent with z (the tangent at an x-extremum already
    // lies in the yz-plane)
    let tangent = k_scaled.eval_deriv(t0);
    let mut angle = tangent.z.atan2(tangent.y);
    if flip {
        angle += std::f64::consts::PI;
    }
    let align = nalgebra::Rotation3::from_axis_angle(
        &Vec3::x_axis(),
        std::f64::consts::FRAC_PI_2 - angle,
    );
    let k_open = k_scaled.map_coeffs(|v| align * v).translate(center);

    let gamma = 0.012;
    let p0 = k_open.eval(t0);
    let p_up = k_open.eval(t0 + gamma);
    let p_dn = k_open.eval(t0 - gamma);
    if p_up.z <= p0.z || p_dn.z >= p0.z {
        return None;
    }
    // clearance corridor east of the opening: no other strand may block the
    // cable lane
    let pts_open = k_open.eval_grid(grid);
    for (i, p) in pts_open.iter().enumerate() {
        let t = i as f64 / grid as f64;
        let param_gap = (t - t0).rem_euclid(1.0).min((t0 - t).rem_euclid(1.0));
        if param_gap < 6.0 * gamma {
            continue;
        }
        if p.x > p0.x - 0.004 && (p.y - p0.y).abs() < 0.01 && (p.z - p0.z).abs() < 0.03 {
            return None;
        }
    }

    // waypoints: meridian around the long way, upper cable lane, the knot,
    // lower cable lane
    let meridian = meridian();
    let beta = 0.006;
    let e_up = meridian.eval(0.25 - beta);
    let e_dn = meridian.eval(0.25 + beta);

    let mut way: Vec<Vec3<f64>> = Vec::new();
    let m_steps = 4096;
    for i in 0..=m_steps {
        let s = 0.25 + beta + (1.0 - 2.0 * beta) * i as f64 / m_steps as f64;
        way.push(meridian.eval(s));
    }
    let dir_up = meridian.eval_deriv(0.25 - beta).normalize();
    way.push(e_up + dir_up * 0.004);
    way.push(Vec3::new(p0.x + 0.008, p_up.y, p_up.z));
    way.push(p_up);
    let k_steps = 8192;
    for i in 1..k_steps {
        let t = t0 + gamma + (1.0 - 2.0 * gamma) * i as f64 / k_steps as f64;
        way.push(k_open.eval(t));
    }
    way.push(p_dn);
    way.push(Vec3::new(p0.x + 0.008, p_dn.y, p_dn.z));
    let dir_dn = meridian.eval_deriv(0.25 + beta).normalize();
    way.push(e_dn - dir_dn * 0.004);

    let samples = resample_smooth_3d(&way, 16384, 0.004);
    ClosedCurve3::fit_grid(&samples, 1e-7).ok()
}

/// Uniform arclength resampling of a closed 3d polyline followed by one
/// bump-kernel smoothing pass.
pub(crate) fn resample_smooth_3d(way: &[Vec3<f64>], n: usize, radius: f64) -> Vec<Vec3<f64>> {
    let m = way.len();
    let mut cum = Vec::with_capacity(m + 1);
    cum.push(0.0);
    for i in 0..m {
        cum.push(cum[i] + (way[(i + 1) % m] - way[i]).norm());
    }
    let total = cum[m];
    let mut uniform = Vec::with_capacity(n);
    let mut seg = 0usize;
    for i in 0..n {
        let target = total * i as f64 / n as f64;
        while cum[seg + 1] < target {
            seg += 1;
        }
        let a = way[seg];
        let b = way[(seg + 1) % m];
        let t = (target - cum[seg]) / (cum[seg + 1] - cum[seg]).max(1e-300);
        uniform.push(a + (b - a) * t);
    }
    let spacing = total / n as f64;
    let half = ((radius / spacing).round() as usize).max(2);
    let mut kernel = Vec::with_capacity(2 * half + 1);
    let mut ksum = 0.0;
    for i in 0..=(2 * half) {
        let x = (i as f64 - half as f64) / (half as f64 + 0.5);
        let w = crate::smooth::bump(x);
        kernel.push(w);
        ksum += w;
    }
    (0..n)
        .map(|i| {
            let mut acc = Vec3::zeros();
            for (ki, w) in kernel.iter().enumerate() {
                acc += uniform[(i + n + ki - half) % n] * *w;
            }
            acc / ksum
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meridian_hits_the_pinned_points() {
        let m = meridian();
        assert!((m.eval(0.0) - Vec3::new(0.0, 0.0, 1.0)).norm() < 1e-15);
        assert!((m.eval(0.25) - Vec3::new(1.0, 0.0, 0.0)).norm() < 1e-15);
        assert!((m.eval(0.5) - Vec3::new(0.0, 0.0, -1.0)).norm() < 1e-14);
    }

    #[test]
    fn anchor_warp_is_monotone_and_hits_anchors() {
        let w = AnchorWarp::new(vec![(0.3, 0.05), (0.6, 0.45), (0.8, 0.55)], 1e-3).unwrap();
        let mut prev = w.eval(0.0);
        assert!(prev.abs() < 1e-12);
        for i in 1..=1000 {
            let v = w.eval(i as f64 / 1000.0);
            assert!(v > prev);
            prev = v;
        }
        assert!((w.eval(1.0) - 1.0).abs() < 1e-12);
        assert!((w.eval(0.3) - 0.05).abs() < 1e-3);
        assert!((w.eval(1.3) - w.eval(0.3) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spliced_trefoil_base_is_embedded_and_knotted() {
        let tol = ToleranceSet::default();
        let spliced = splice_into_ball(&crate::fixtures::trefoil_curve()).unwrap();
        let (ok, gap) = crate::intersect::curve_embedded(&spliced, 8192, &tol);
        assert!(ok, "spliced base self-gap {gap}");
        let code = crate::diagram::gauss_from_spatial_auto(&spliced, 8192, &tol).unwrap();
        let p = crate::invariants::profile(&code).unwrap();
        assert_eq!(p.determinant, 3);
    }
}
