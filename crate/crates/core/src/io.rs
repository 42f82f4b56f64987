//! Serialization schema for frames and curves.
//!
//! Frame JSON:
//! `{"x": {"constant": [..], "cos": [[..],..], "sin": [[..],..]},
//!   "u_generator": {..}, "grid_n": n,
//!   "tol": {"eq": .., "angle": .., "lambda": .., "residual": ..}}`

use serde::{Deserialize, Serialize};

use crate::curves::{ClosedCurve3, RibbonFrame, SphericalCurve, ToleranceSet};
use crate::{Result, Vec3};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveSchema {
    pub constant: [f64; 3],
    pub cos: Vec<[f64; 3]>,
    pub sin: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrameSchema {
    pub x: CurveSchema,
    pub u_generator: CurveSchema,
    pub grid_n: usize,
    pub tol: ToleranceSet<f64>,
}

impl From<&ClosedCurve3<f64>> for CurveSchema {
    fn from(c: &ClosedCurve3<f64>) -> Self {
        let v = |p: &Vec3<f64>| [p.x, p.y, p.z];
        Self {
            constant: v(&c.constant_term()),
            cos: c.cos_coeffs().iter().map(v).collect(),
            sin: c.sin_coeffs().iter().map(v).collect(),
        }
    }
}

impl From<&CurveSchema> for ClosedCurve3<f64> {
    fn from(s: &CurveSchema) -> Self {
        let v = |p: &[f64; 3]| Vec3::new(p[0], p[1], p[2]);
        ClosedCurve3::new(
            v(&s.constant),
            s.cos.iter().map(v).collect(),
            s.sin.iter().map(v).collect(),
        )
    }
}

impl From<&RibbonFrame<f64>> for FrameSchema {
    fn from(f: &RibbonFrame<f64>) -> Self {
        Self {
            x: f.base().into(),
            u_generator: f.field().generator().into(),
            grid_n: f.grid_n(),
            tol: *f.tol(),
        }
    }
}

impl FrameSchema {
    /// Reconstruct the frame, re-checking the grid, tolerance, and generator
    /// invariants.
    pub fn into_frame(&self) -> Result<RibbonFrame<f64>> {
        let base: ClosedCurve3<f64> = (&self.x).into();
        let generator: ClosedCurve3<f64> = (&self.u_generator).into();
        let tol = self.tol;
        tol.validate()?;
        let field = SphericalCurve::from_generator(generator, self.grid_n.max(256), tol.eq_tol)?;
        RibbonFrame::new(base, field, self.grid_n, tol)
    }
}
