use crate::{conv, Error, Result, Scalar, Vec3};

/// Default absolute residual target for grid refits.
pub const REFIT_TOL: f64 = 1e-10;

/// Smooth closed curve in 3-space as a truncated Fourier series,
/// parameterized over `s` in the circle `[0, 1)`.
///
/// `eval(s) = constant + sum_j cos(2 pi j s) a_j + sin(2 pi j s) b_j`.
///
/// The representation is smoothly closed by construction and differentiates
/// exactly, term by term.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedCurve3<T: Scalar> {
    constant: Vec3<T>,
    cos_coeffs: Vec<Vec3<T>>,
    sin_coeffs: Vec<Vec3<T>>,
}

impl<T: Scalar> ClosedCurve3<T> {
    pub fn new(constant: Vec3<T>, cos_coeffs: Vec<Vec3<T>>, sin_coeffs: Vec<Vec3<T>>) -> Self {
        let mut cos_coeffs = cos_coeffs;
        let mut sin_coeffs = sin_coeffs;
        let deg = cos_coeffs.len().max(sin_coeffs.len());
        cos_coeffs.resize(deg, Vec3::zeros());
        sin_coeffs.resize(deg, Vec3::zeros());
        Self { constant, cos_coeffs, sin_coeffs }
    }

    pub fn constant(c: Vec3<T>) -> Self {
        Self { constant: c, cos_coeffs: Vec::new(), sin_coeffs: Vec::new() }
    }

    /// Round unit circle in the xy-plane: `(cos 2 pi s, sin 2 pi s, 0)`.
    pub fn unit_circle_xy() -> Self {
        Self::new(
            Vec3::zeros(),
            vec![Vec3::new(T::one(), T::zero(), T::zero())],
            vec![Vec3::new(T::zero(), T::one(), T::zero())],
        )
    }

    pub fn degree(&self) -> usize {
        self.cos_coeffs.len()
    }

    pub fn constant_term(&self) -> Vec3<T> {
        self.constant
    }

    pub fn cos_coeffs(&self) -> &[Vec3<T>] {
        &self.cos_coeffs
    }

    pub fn sin_coeffs(&self) -> &[Vec3<T>] {
        &self.sin_coeffs
    }

    /// Apply a linear map to every coefficient. Rotations and scalings of the
    /// curve are exact in this representation.
    pub fn map_coeffs(&self, f: impl Fn(&Vec3<T>) -> Vec3<T>) -> Self {
        Self {
            constant: f(&self.constant),
            cos_coeffs: self.cos_coeffs.iter().map(&f).collect(),
            sin_coeffs: self.sin_coeffs.iter().map(&f).collect(),
        }
    }

    pub fn scale(&self, factor: T) -> Self {
        self.map_coeffs(|v| v * factor)
    }

    /// Exact parameter shift: the returned curve evaluates to `self(s + c)`.
    pub fn shifted(&self, c: T) -> Self {
        let deg = self.degree();
        let mut cos_coeffs = Vec::with_capacity(deg);
        let mut sin_coeffs = Vec::with_capacity(deg);
        for j in 0..deg {
            let theta = T::two_pi() * conv::<T>((j + 1) as f64) * c;
            let (sn, cs) = theta.sin_cos();
            cos_coeffs.push(self.cos_coeffs[j] * cs + self.sin_coeffs[j] * sn);
            sin_coeffs.push(self.sin_coeffs[j] * cs - self.cos_coeffs[j] * sn);
        }
        Self { constant: self.constant, cos_coeffs, sin_coeffs }
    }

    pub fn translate(&self, offset: Vec3<T>) -> Self {
        let mut out = self.clone();
        out.constant += offset;
        out
    }

    /// Evaluate at parameter `s` (any real; reduced mod 1).
    pub fn eval(&self, s: T) -> Vec3<T> {
        let theta = T::two_pi() * (s - s.floor());
        let (sin1, cos1) = theta.sin_cos();
        let mut c = T::one();
        let mut sn = T::zero();
        let mut acc = self.constant;
        for j in 0..self.degree() {
            // rotate (c, sn) from angle j*theta to (j+1)*theta
            let cn = c * cos1 - sn * sin1;
            sn = c * sin1 + sn * cos1;
            c = cn;
            acc += self.cos_coeffs[j] * c + self.sin_coeffs[j] * sn;
        }
        acc
    }

    /// First derivative with respect to `s`.
    pub fn eval_deriv(&self, s: T) -> Vec3<T> {
        let theta = T::two_pi() * (s - s.floor());
        let (sin1, cos1) = theta.sin_cos();
        let mut c = T::one();
        let mut sn = T::zero();
        let mut acc = Vec3::zeros();
        for j in 0..self.degree() {
            let cn = c * cos1 - sn * sin1;
            sn = c * sin1 + sn * cos1;
            c = cn;
            let w = T::two_pi() * conv::<T>((j + 1) as f64);
            acc += (self.sin_coeffs[j] * c - self.cos_coeffs[j] * sn) * w;
        }
        acc
    }

    /// The derivative as a curve in its own right (constant term zero).
    pub fn derivative(&self) -> Self {
        let deg = self.degree();
        let mut cos_d = Vec::with_capacity(deg);
        let mut sin_d = Vec::with_capacity(deg);
        for j in 0..deg {
            let w = T::two_pi() * conv::<T>((j + 1) as f64);
            cos_d.push(self.sin_coeffs[j] * w);
            sin_d.push(-self.cos_coeffs[j] * w);
        }
        Self { constant: Vec3::zeros(), cos_coeffs: cos_d, sin_coeffs: sin_d }
    }

    /// Values at the uniform grid `s_k = k / n`.
    ///
    /// Uses the shared angle table, so `cos(2 pi j k / n)` is looked up at
    /// index `j k mod n` with no trigonometric drift across harmonics.
    pub fn eval_grid(&self, n: usize) -> Vec<Vec3<T>> {
        let table = AngleTable::new(n);
        (0..n).map(|k| self.eval_on_table(&table, k)).collect()
    }

    pub fn eval_grid_deriv(&self, n: usize) -> Vec<Vec3<T>> {
        self.derivative().eval_grid(n)
    }

    fn eval_on_table(&self, table: &AngleTable<T>, k: usize) -> Vec3<T> {
        let n = table.len();
        let mut acc = self.constant;
        for j in 0..self.degree() {
            let idx = ((j + 1) * k) % n;
            acc += self.cos_coeffs[j] * table.cos[idx] + self.sin_coeffs[j] * table.sin[idx];
        }
        acc
    }

    /// Least-squares Fourier fit of grid samples, degree raised until the
    /// reconstruction residual on the grid drops below `tol` (absolute).
    ///
    /// On a uniform grid the discrete projections are the exact least-squares
    /// coefficients, so the fit never oscillates as the degree grows.
    pub fn fit_grid(samples: &[Vec3<T>], tol: T) -> Result<Self> {
        let n = samples.len();
        assert!(n >= 8, "need at least 8 samples to fit");
        let max_deg = n / 2 - 1;
        let table = AngleTable::<T>::new(n);
        let inv_n = conv::<T>(1.0 / n as f64);
        let two_inv_n = inv_n + inv_n;

        let mut constant = Vec3::zeros();
        for p in samples {
            constant += *p;
        }
        constant *= inv_n;

        let mut cos_coeffs: Vec<Vec3<T>> = Vec::new();
        let mut sin_coeffs: Vec<Vec3<T>> = Vec::new();
        let mut deg = 8.min(max_deg);
        loop {
            while cos_coeffs.len() < deg {
                let j = cos_coeffs.len() + 1;
                let mut a = Vec3::zeros();
                let mut b = Vec3::zeros();
                for (k, p) in samples.iter().enumerate() {
                    let idx = (j * k) % n;
                    a += *p * table.cos[idx];
                    b += *p * table.sin[idx];
                }
                cos_coeffs.push(a * two_inv_n);
                sin_coeffs.push(b * two_inv_n);
            }
            let curve = Self {
                constant,
                cos_coeffs: cos_coeffs.clone(),
                sin_coeffs: sin_coeffs.clone(),
            };
            let mut worst = T::zero();
            for (k, p) in samples.iter().enumerate() {
                let r = (curve.eval_on_table(&table, k) - p).norm();
                if r > worst {
                    worst = r;
                }
            }
            if worst <= tol {
                return Ok(curve.trimmed(tol * conv(1e-3)));
            }
            if deg == max_deg {
                return Err(Error::LayoutFailed(format!(
                    "Fourier refit residual {:?} above target at max degree {}",
                    worst, max_deg
                )));
            }
            deg = (deg * 2).min(max_deg);
        }
    }

    /// Refit with the default tolerance, loosened to what the scalar's
    /// epsilon and the sample magnitudes can support.
    pub fn refit(samples: &[Vec3<T>], _grid_hint: usize) -> Result<Self> {
        let scale = samples
            .iter()
            .map(|p| p.norm())
            .fold(T::one(), |a, b| if b > a { b } else { a });
        let eps_floor = T::default_epsilon() * conv::<T>(64.0) * scale;
        let tol = conv::<T>(REFIT_TOL).max(eps_floor);
        Self::fit_grid(samples, tol)
    }

    /// Drop trailing harmonics with negligible coefficients.
    fn trimmed(mut self, floor: T) -> Self {
        while let (Some(a), Some(b)) = (self.cos_coeffs.last(), self.sin_coeffs.last()) {
            if a.norm() <= floor && b.norm() <= floor && self.degree() > 1 {
                self.cos_coeffs.pop();
                self.sin_coeffs.pop();
            } else {
                break;
            }
        }
        self
    }

    /// Largest `|eval|` over the grid.
    pub fn max_norm(&self, n: usize) -> T {
        self.eval_grid(n)
            .iter()
            .map(|p| p.norm())
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    /// `(min, max)` of the speed `|eval_deriv|` over the grid.
    pub fn speed_extrema(&self, n: usize) -> (T, T) {
        let d = self.eval_grid_deriv(n);
        let mut lo = T::max_value().unwrap();
        let mut hi = T::zero();
        for v in &d {
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

/// Shared table of `cos`/`sin` at the grid angles `2 pi i / n`.
pub(crate) struct AngleTable<T> {
    pub cos: Vec<T>,
    pub sin: Vec<T>,
}

impl<T: Scalar> AngleTable<T> {
    pub fn new(n: usize) -> Self {
        let mut cos = Vec::with_capacity(n);
        let mut sin = Vec::with_capacity(n);
        for i in 0..n {
            let theta = T::two_pi() * conv::<T>(i as f64 / n as f64);
            let (s, c) = theta.sin_cos();
            cos.push(c);
            sin.push(s);
        }
        Self { cos, sin }
    }

    pub fn len(&self) -> usize {
        self.cos.len()
    }
}
