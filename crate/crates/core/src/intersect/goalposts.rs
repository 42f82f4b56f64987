use nalgebra::{Rotation3, Unit};

use super::double_points::{sphere_double_points, DoublePoint};
use super::scan::circ_dist;
use crate::curves::{ClosedCurve3, RibbonFrame};
use crate::{conv, Error, Result, Scalar, Vec3};

/// A field double point whose base chord is orthogonal to the shared field
/// vector. Goal posts are the obstruction to the outer edge stabilizing.
#[derive(Debug, Clone)]
pub struct GoalPost<T: Scalar> {
    pub s: T,
    pub s_bar: T,
    /// `|u . (x - x_bar)| / |x - x_bar|`
    pub orthogonality_residual: T,
    pub separation: T,
}

/// Normalized chord `(x(s_bar) - x(s)) / |x(s_bar) - x(s)|`.
pub fn chord_direction<T: Scalar>(
    curve: &ClosedCurve3<T>,
    s: T,
    s_bar: T,
    eq_tol: T,
) -> Result<Vec3<T>> {
    let v = curve.eval(s_bar) - curve.eval(s);
    let norm = v.norm();
    if norm < eq_tol {
        return Err(Error::CoincidentPoints {
            s: s.to_subset().unwrap_or(f64::NAN),
            s_bar: s_bar.to_subset().unwrap_or(f64::NAN),
        });
    }
    Ok(v / norm)
}

/// Goal posts among the given double points of the frame's field.
pub fn detect_goalposts_in<T: Scalar>(
    frame: &RibbonFrame<T>,
    dps: &[DoublePoint<T>],
) -> Result<Vec<GoalPost<T>>> {
    let eq_tol = frame.tol().eq_tol;
    let mut out = Vec::new();
    for dp in dps {
        let chord = frame.base().eval(dp.s_bar) - frame.base().eval(dp.s);
        let sep = chord.norm();
        if sep < eq_tol {
            return Err(Error::CoincidentPoints {
                s: dp.s.to_subset().unwrap_or(f64::NAN),
                s_bar: dp.s_bar.to_subset().unwrap_or(f64::NAN),
            });
        }
        let residual = dp.point.dot(&chord).abs() / sep;
        if residual < eq_tol {
            out.push(GoalPost {
                s: dp.s,
                s_bar: dp.s_bar,
                orthogonality_residual: residual,
                separation: sep,
            });
        }
    }
    Ok(out)
}

/// Detect the field's double points and filter for goal posts.
pub fn detect_goalposts<T: Scalar>(frame: &RibbonFrame<T>) -> Result<Vec<GoalPost<T>>> {
    let dps = sphere_double_points(frame.field(), frame.grid_n(), frame.tol())?;
    detect_goalposts_in(frame, &dps)
}

/// Smallest orthogonality residual over the double points (the margin that
/// separates the frame from having a goal post). `None` when there are no
/// double points or a chord is degenerate.
pub fn worst_orthogonality<T: Scalar>(
    frame: &RibbonFrame<T>,
    dps: &[DoublePoint<T>],
) -> Option<T> {
    let mut worst: Option<T> = None;
    for dp in dps {
        let chord = frame.base().eval(dp.s_bar) - frame.base().eval(dp.s);
        let sep = chord.norm();
        if sep < frame.tol().eq_tol {
            return None;
        }
        let r = dp.point.dot(&chord).abs() / sep;
        worst = Some(match worst {
            Some(w) if w < r => w,
            _ => r,
        });
    }
    worst
}

/// Replace the field by a rotated copy that has no goal posts.
///
/// Rotating the field does not move its double-point parameters, so the
/// search only has to re-test the finitely many orthogonality residuals:
/// axes come from a Fibonacci sphere, angles from a geometric ladder up to
/// `max_angle`, smallest first. The winning rotation is verified by a full
/// re-scan before it is returned.
pub fn remove_goalposts<T: Scalar>(
    frame: &RibbonFrame<T>,
    max_angle: T,
) -> Result<RibbonFrame<T>> {
    let tol = *frame.tol();
    let dps = sphere_double_points(frame.field(), frame.grid_n(), &tol)?;
    let posts = detect_goalposts_in(frame, &dps)?;
    if posts.is_empty() {
        return Ok(frame.clone());
    }
    let max_angle_f = max_angle.to_subset().unwrap_or(0.0);
    if max_angle_f <= 0.0 {
        return Err(Error::RepairFailed { max_angle: max_angle_f });
    }

    // chords and field vectors at the double points; both are rotation targets
    let chords: Vec<Vec3<T>> = dps
        .iter()
        .map(|dp| chord_direction(frame.base(), dp.s, dp.s_bar, tol.eq_tol))
        .collect::<Result<_>>()?;
    let points: Vec<Vec3<T>> = dps.iter().map(|dp| dp.point).collect();

    let margin = tol.eq_tol * conv(4.0);
    let axes = fibonacci_sphere::<T>(1000);
    for level in (0..=6).rev() {
        let angle = max_angle / conv::<T>(f64::powi(2.0, level));
        for axis in &axes {
            let rot = Rotation3::from_axis_angle(&Unit::new_normalize(*axis), angle);
            let ok = points
                .iter()
                .zip(chords.iter())
                .all(|(p, f)| ((rot * p).dot(f)).abs() >= margin);
            if !ok {
                continue;
            }
            let candidate = frame.with_field(frame.field().rotated(&rot));
            if let Ok(new_dps) = sphere_double_points(candidate.field(), candidate.grid_n(), &tol)
            {
                let combinatorics_kept = new_dps.len() == dps.len()
                    && new_dps.iter().zip(dps.iter()).all(|(a, b)| {
                        circ_dist(a.s, b.s) < tol.sep_lambda
                            && circ_dist(a.s_bar, b.s_bar) < tol.sep_lambda
                    });
                let clean = matches!(detect_goalposts_in(&candidate, &new_dps), Ok(v) if v.is_empty());
                if combinatorics_kept && clean {
                    return Ok(candidate);
                }
            }
        }
    }
    Err(Error::RepairFailed { max_angle: max_angle_f })
}

/// Deterministic well-spread axis set.
fn fibonacci_sphere<T: Scalar>(count: usize) -> Vec<Vec3<T>> {
    let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
    (0..count)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / count as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = std::f64::consts::TAU * (i as f64 / golden).fract();
            Vec3::new(conv(r * phi.cos()), conv(r * phi.sin()), conv(z))
        })
        .collect()
}
