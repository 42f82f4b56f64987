use super::assemble::{assemble_code, VisitPair};
use super::gauss::SignedGaussCode;
use super::spatial::handedness;
use crate::curves::RibbonFrame;
use crate::intersect::{sphere_double_points, DoublePoint};
use crate::{Error, Result, Scalar};

/// Per-crossing choice of which strand passes over: `true` means the
/// first-visited parameter `s_i` is the over strand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionChoice(pub Vec<bool>);

impl ResolutionChoice {
    /// All `2^k` choices for `k` double points, in bit order.
    pub fn enumerate(k: usize) -> impl Iterator<Item = ResolutionChoice> {
        assert!(k < usize::BITS as usize);
        (0..(1usize << k)).map(move |bits| {
            ResolutionChoice((0..k).map(|i| bits >> i & 1 == 1).collect())
        })
    }
}

/// The radial comparison that picks the limiting over-strand at one double
/// point: positive means the first visit passes over.
///
/// This is the first-order term of `|z_t(s)|^2 - |z_t(s_bar)|^2`; its sign
/// agrees with the norm comparison for every `t` below `margin / (2 max|x|^2)`,
/// and the no-goal-post condition is exactly what keeps it away from zero.
pub fn radial_margin<T: Scalar>(frame: &RibbonFrame<T>, dp: &DoublePoint<T>) -> T {
    let u = frame.field();
    let x = frame.base();
    u.point(dp.s).dot(&x.eval(dp.s)) - u.point(dp.s_bar).dot(&x.eval(dp.s_bar))
}

/// Resolve the field's double points with prescribed over/under bits;
/// handedness comes from the field geometry.
pub fn resolve<T: Scalar>(
    frame: &RibbonFrame<T>,
    dps: &[DoublePoint<T>],
    choice: &ResolutionChoice,
) -> SignedGaussCode {
    assert_eq!(choice.0.len(), dps.len(), "one bit per double point");
    let u = frame.field();
    let pairs: Vec<VisitPair<T>> = dps
        .iter()
        .zip(choice.0.iter())
        .map(|(dp, &over_first)| {
            let sign = handedness(
                &u.tangent(dp.s),
                &u.tangent(dp.s_bar),
                &dp.point,
                over_first,
            );
            VisitPair { s: dp.s, s_bar: dp.s_bar, over_first, sign }
        })
        .collect();
    assemble_code(&pairs)
}

/// The limiting resolution's over/under bits, with the double points they
/// refer to.
pub fn limiting_choice<T: Scalar>(
    frame: &RibbonFrame<T>,
) -> Result<(Vec<DoublePoint<T>>, ResolutionChoice)> {
    let dps = sphere_double_points(frame.field(), frame.grid_n(), frame.tol())?;
    let mut bits = Vec::with_capacity(dps.len());
    for dp in &dps {
        let margin = radial_margin(frame, dp);
        if margin.abs() <= frame.tol().eq_tol {
            return Err(Error::GoalPostObstruction {
                s: dp.s.to_subset().unwrap_or(f64::NAN),
                s_bar: dp.s_bar.to_subset().unwrap_or(f64::NAN),
            });
        }
        bits.push(margin > T::zero());
    }
    Ok((dps, ResolutionChoice(bits)))
}

/// Signed Gauss code of the limiting outer-edge knot type: each field double
/// point resolves by the radial comparison, handedness by the field tangents.
///
/// Requires a frame passing validation (in particular no goal posts); a
/// degenerate radial comparison is reported as `GoalPostObstruction`.
pub fn limiting_resolution<T: Scalar>(frame: &RibbonFrame<T>) -> Result<SignedGaussCode> {
    let (dps, choice) = limiting_choice(frame)?;
    Ok(resolve(frame, &dps, &choice))
}
