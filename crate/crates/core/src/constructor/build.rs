use super::arc::hamiltonian_arc_check;
use super::base::{build_base, BaseKnot};
use super::field::build_field;
use crate::curves::{validate_frame, RibbonFrame, ToleranceSet, ValidationReport};
use crate::diagram::{limiting_resolution, SignedGaussCode};
use crate::intersect::{stabilization_width, Stabilization};
use crate::invariants::{profile, InvariantProfile};
use crate::{Error, Frame, Result};

/// Everything `build_frame` proves about the frame it returns.
#[derive(Debug, Clone)]
pub struct BuildReport {
    pub frame: Frame,
    pub validation: ValidationReport<f64>,
    pub r_star: Stabilization<f64>,
    /// Limiting resolution of the built frame; equals the requested code up
    /// to rotation and relabeling.
    pub limiting: SignedGaussCode,
    pub limiting_profile: InvariantProfile,
    /// Projected diagram of the base curve.
    pub base_code: SignedGaussCode,
    pub base_profile: InvariantProfile,
}

/// Construct a ribbon frame whose base is `k1` and whose limiting outer-edge
/// knot type is the diagram `k2_code` (which must admit a Hamiltonian arc).
pub fn build_frame(k1: BaseKnot, k2_code: &SignedGaussCode) -> Result<BuildReport> {
    let arc = hamiltonian_arc_check(k2_code)?;
    let built = build_field(&arc)?;
    let base = build_base(&k1, &built)?;
    let frame = RibbonFrame::new(base, built.field.clone(), 4096, ToleranceSet::default())?;

    let validation = validate_frame(&frame);
    if !validation.all_pass() {
        return Err(Error::LayoutFailed(format!(
            "constructed frame failed validation: {validation:?}"
        )));
    }

    let limiting = limiting_resolution(&frame)?;
    if limiting.canonical() != arc.code.canonical() {
        return Err(Error::LayoutFailed(format!(
            "limiting resolution {limiting} does not match the requested diagram {}",
            arc.code
        )));
    }
    let limiting_profile = profile(&limiting)?;

    let base_code = project_base(&frame)?;
    let base_profile = profile(&base_code)?;

    let r_star = stabilization_width(&frame)?;

    Ok(BuildReport {
        frame,
        validation,
        r_star,
        limiting,
        limiting_profile,
        base_code,
        base_profile,
    })
}

/// Project the base along a ladder of directions until one is generic.
pub fn project_base(frame: &Frame) -> Result<SignedGaussCode> {
    crate::diagram::gauss_from_spatial_auto(frame.base(), frame.grid_n() * 2, frame.tol())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::radial_margin;
    use crate::intersect::sphere_double_points;

    #[test]
    fn empty_code_gives_the_great_circle_frame() {
        let report = build_frame(BaseKnot::Unknot, &SignedGaussCode::empty()).unwrap();
        assert!(report.limiting.is_empty());
        assert!(report.base_code.is_empty());
        assert_eq!(report.base_profile.determinant, 1);
        // the base is the meridian itself: every point at unit radius
        for k in 0..64 {
            let p = report.frame.base().eval(k as f64 / 64.0);
            assert!((p.norm() - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn trefoil_frame_satisfies_the_radial_margin() {
        let report = build_frame(BaseKnot::Unknot, &crate::fixtures::trefoil_code()).unwrap();
        let frame = &report.frame;
        let dps = sphere_double_points(frame.field(), frame.grid_n(), frame.tol()).unwrap();
        assert_eq!(dps.len(), 3);
        for dp in &dps {
            let margin = radial_margin(frame, dp);
            assert!(margin.abs() > 1.5, "margin {margin}");
            // the sign-adjusted paper condition: u(s_j) . x(s_j) close to +-1
            let ux = frame.field().point(dp.s).dot(&frame.base().eval(dp.s));
            let ux_bar = frame.field().point(dp.s_bar).dot(&frame.base().eval(dp.s_bar));
            assert!(ux.abs() > 0.9 && ux_bar.abs() > 0.9);
            assert!((ux + ux_bar).abs() < 0.2, "{ux} vs {ux_bar}");
        }
    }
}
