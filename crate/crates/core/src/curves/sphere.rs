use super::curve::ClosedCurve3;
use crate::{Error, Result, Scalar, Vec3};

/// Closed curve on the unit sphere, stored as a normalized generator curve.
///
/// Points are `generator(s) / |generator(s)|`; the same representation serves
/// the field `u` and the spherical projections of rescaled outer edges, and
/// rotating the generator coefficients rotates the spherical curve exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalCurve<T: Scalar> {
    generator: ClosedCurve3<T>,
}

impl<T: Scalar> SphericalCurve<T> {
    /// Wrap a generator after checking it stays away from the origin on the grid.
    pub fn from_generator(generator: ClosedCurve3<T>, grid_n: usize, eq_tol: T) -> Result<Self> {
        let mut min_norm = T::max_value().unwrap();
        for p in generator.eval_grid(grid_n) {
            let r = p.norm();
            if r < min_norm {
                min_norm = r;
            }
        }
        if min_norm < eq_tol {
            return Err(Error::VanishingGenerator {
                min_norm: min_norm.to_subset().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { generator })
    }

    /// Wrap a generator known to be nonvanishing (exact constructions).
    pub fn from_unit_generator(generator: ClosedCurve3<T>) -> Self {
        Self { generator }
    }

    pub fn generator(&self) -> &ClosedCurve3<T> {
        &self.generator
    }

    /// Unit point at parameter `s`.
    pub fn point(&self, s: T) -> Vec3<T> {
        self.generator.eval(s).normalize()
    }

    /// Derivative of the normalized curve.
    pub fn tangent(&self, s: T) -> Vec3<T> {
        let g = self.generator.eval(s);
        let dg = self.generator.eval_deriv(s);
        normalized_deriv(&g, &dg)
    }

    pub fn point_grid(&self, n: usize) -> Vec<Vec3<T>> {
        self.generator.eval_grid(n).into_iter().map(|g| g.normalize()).collect()
    }

    pub fn tangent_grid(&self, n: usize) -> Vec<Vec3<T>> {
        let g = self.generator.eval_grid(n);
        let dg = self.generator.eval_grid_deriv(n);
        g.iter().zip(dg.iter()).map(|(g, dg)| normalized_deriv(g, dg)).collect()
    }

    /// Rotate the spherical curve (exact on the coefficients).
    pub fn rotated(&self, rot: &nalgebra::Rotation3<T>) -> Self {
        Self { generator: self.generator.map_coeffs(|v| rot * v) }
    }

    /// `(min, max)` of the spherical speed `|tangent|` over the grid.
    pub fn speed_extrema(&self, n: usize) -> (T, T) {
        let t = self.tangent_grid(n);
        let mut lo = T::max_value().unwrap();
        let mut hi = T::zero();
        for v in &t {
            let s = v.norm();
            if s < lo {
                lo = s;
            }
            if s > hi {
                hi = s;
            }
        }
        (lo, hi)
    }
}

/// d/ds of `g/|g|`.
pub(crate) fn normalized_deriv<T: Scalar>(g: &Vec3<T>, dg: &Vec3<T>) -> Vec3<T> {
    let r = g.norm();
    let u = g / r;
    (dg - u * u.dot(dg)) / r
}
