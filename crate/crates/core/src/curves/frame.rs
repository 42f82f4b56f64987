use serde::{Deserialize, Serialize};

use super::curve::ClosedCurve3;
use super::sphere::SphericalCurve;
use crate::{conv, Error, Result, Scalar};

/// Numerical tolerances shared by detection and validation.
///
/// The scales are deliberately separated: `sep_lambda` (parameter space)
/// excludes the diagonal of the pair scan, `eq_tol` (image space) decides
/// coincidence, `angle_tol` is the transversality floor, and `residual_tol`
/// accepts solutions of the crossing-width equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceSet<T> {
    #[serde(rename = "eq")]
    pub eq_tol: T,
    #[serde(rename = "angle")]
    pub angle_tol: T,
    #[serde(rename = "lambda")]
    pub sep_lambda: T,
    #[serde(rename = "residual")]
    pub residual_tol: T,
}

impl<T: Scalar> Default for ToleranceSet<T> {
    fn default() -> Self {
        Self {
            eq_tol: conv(1e-6),
            angle_tol: conv(1e-3),
            sep_lambda: conv(1e-2),
            residual_tol: conv(1e-8),
        }
    }
}

impl<T: Scalar> ToleranceSet<T> {
    pub fn validate(&self) -> Result<()> {
        let pos = |v: T, name: &str| {
            if v > T::zero() {
                Ok(())
            } else {
                Err(Error::InvalidTolerance(format!("{name} must be positive")))
            }
        };
        pos(self.eq_tol, "eq_tol")?;
        pos(self.angle_tol, "angle_tol")?;
        pos(self.sep_lambda, "sep_lambda")?;
        pos(self.residual_tol, "residual_tol")?;
        if self.sep_lambda >= conv(0.25) {
            return Err(Error::InvalidTolerance(
                "sep_lambda must be below 0.25".into(),
            ));
        }
        Ok(())
    }
}

/// A ribbon frame: base curve `x`, unit field `u`, and the grid/tolerance
/// contract under which all sup-metrics and scans are evaluated.
#[derive(Debug, Clone)]
pub struct RibbonFrame<T: Scalar> {
    base: ClosedCurve3<T>,
    field: SphericalCurve<T>,
    grid_n: usize,
    tol: ToleranceSet<T>,
}

impl<T: Scalar> RibbonFrame<T> {
    pub fn new(
        base: ClosedCurve3<T>,
        field: SphericalCurve<T>,
        grid_n: usize,
        tol: ToleranceSet<T>,
    ) -> Result<Self> {
        if grid_n < 256 || !grid_n.is_power_of_two() {
            return Err(Error::InvalidGrid(grid_n));
        }
        tol.validate()?;
        Ok(Self { base, field, grid_n, tol })
    }

    /// Frame with the default grid (4096) and tolerances.
    pub fn with_defaults(base: ClosedCurve3<T>, field: SphericalCurve<T>) -> Self {
        Self::new(base, field, 4096, ToleranceSet::default()).expect("defaults are valid")
    }

    pub fn base(&self) -> &ClosedCurve3<T> {
        &self.base
    }

    pub fn field(&self) -> &SphericalCurve<T> {
        &self.field
    }

    pub fn grid_n(&self) -> usize {
        self.grid_n
    }

    pub fn tol(&self) -> &ToleranceSet<T> {
        &self.tol
    }

    pub fn with_field(&self, field: SphericalCurve<T>) -> Self {
        Self { field, ..self.clone() }
    }

    pub fn with_grid_n(&self, grid_n: usize) -> Result<Self> {
        Self::new(self.base.clone(), self.field.clone(), grid_n, self.tol)
    }
}

/// Outcome of checking the five frame conditions on the grid:
/// both maps regular, base embedded, field free of triple points, field
/// self-intersections transversal, and no goal posts.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport<T> {
    pub regular_x: bool,
    pub min_speed_x: T,
    pub regular_u: bool,
    pub min_speed_u: T,
    pub x_embedded: bool,
    pub u_no_triples: bool,
    pub u_transversal: bool,
    pub min_crossing_angle: Option<T>,
    pub no_goalposts: bool,
    pub worst_orthogonality: Option<T>,
}

impl<T> ValidationReport<T> {
    pub fn all_pass(&self) -> bool {
        self.regular_x
            && self.regular_u
            && self.x_embedded
            && self.u_no_triples
            && self.u_transversal
            && self.no_goalposts
    }
}

/// Check the five frame conditions; failures are reported, not raised.
pub fn validate_frame<T: Scalar>(frame: &RibbonFrame<T>) -> ValidationReport<T> {
    let n = frame.grid_n();
    let tol = frame.tol();

    let (min_speed_x, _) = frame.base().speed_extrema(n);
    let (min_speed_u, _) = frame.field().speed_extrema(n);
    let regular_x = min_speed_x >= tol.eq_tol;
    let regular_u = min_speed_u >= tol.eq_tol;

    let x_embedded = crate::intersect::curve_embedded(frame.base(), n, tol).0;

    let mut u_no_triples = true;
    let mut u_transversal = true;
    let mut min_crossing_angle = None;
    let mut no_goalposts = true;
    let mut worst_orthogonality = None;

    if regular_u {
        match crate::intersect::sphere_double_points(frame.field(), n, tol) {
            Err(Error::TriplePointDetected { .. }) => u_no_triples = false,
            Err(Error::TangencyDetected { angle, .. }) => {
                u_transversal = false;
                min_crossing_angle = T::from_f64(angle);
            }
            Err(_) => u_transversal = false,
            Ok(dps) => {
                min_crossing_angle = dps
                    .iter()
                    .map(|d| d.crossing_angle)
                    .min_by(|a, b| a.partial_cmp(b).unwrap());
                match crate::intersect::detect_goalposts_in(frame, &dps) {
                    Ok(gps) => {
                        worst_orthogonality = crate::intersect::worst_orthogonality(frame, &dps);
                        no_goalposts = gps.is_empty();
                    }
                    Err(_) => no_goalposts = false,
                }
            }
        }
    }

    ValidationReport {
        regular_x,
        min_speed_x,
        regular_u,
        min_speed_u,
        x_embedded,
        u_no_triples,
        u_transversal,
        min_crossing_angle,
        no_goalposts,
        worst_orthogonality,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Vec3;

    #[test]
    fn grid_must_be_power_of_two_at_least_256() {
        let base = ClosedCurve3::<f64>::unit_circle_xy();
        let field = SphericalCurve::from_unit_generator(ClosedCurve3::constant(Vec3::z()));
        assert!(matches!(
            RibbonFrame::new(base.clone(), field.clone(), 100, ToleranceSet::default()),
            Err(Error::InvalidGrid(100))
        ));
        assert!(matches!(
            RibbonFrame::new(base.clone(), field.clone(), 300, ToleranceSet::default()),
            Err(Error::InvalidGrid(300))
        ));
        assert!(RibbonFrame::new(base, field, 256, ToleranceSet::default()).is_ok());
    }

    #[test]
    fn tolerances_must_be_positive_and_lambda_small() {
        let mut tol = ToleranceSet::<f64>::default();
        tol.sep_lambda = 0.3;
        assert!(tol.validate().is_err());
        tol.sep_lambda = 0.01;
        tol.eq_tol = 0.0;
        assert!(tol.validate().is_err());
    }

    #[test]
    fn constant_field_fails_regularity_only() {
        let base = ClosedCurve3::<f64>::unit_circle_xy();
        let field = SphericalCurve::from_unit_generator(ClosedCurve3::constant(Vec3::z()));
        let frame = RibbonFrame::with_defaults(base, field);
        let report = validate_frame(&frame);
        assert!(!report.regular_u);
        assert!(report.regular_x);
        assert!(report.x_embedded);
    }
}
