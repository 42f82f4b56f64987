use thiserror::Error;

/// Unified error type for the ribbon pipelines.
///
/// Detection and construction failures carry enough context to diagnose the
/// offending parameters; tolerance and grid violations are construction-time.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid_n must be a power of two >= 256, got {0}")]
    InvalidGrid(usize),
    #[error("tolerance set invalid: {0}")]
    InvalidTolerance(String),
    #[error("generator norm {min_norm} below eq_tol on the grid; spherical projection undefined")]
    VanishingGenerator { min_norm: f64 },
    #[error("frames have different grid_n ({0} vs {1})")]
    GridMismatch(usize, usize),
    #[error("warp is not a strictly increasing degree-1 bijection of the circle")]
    NonMonotoneWarp,
    #[error("curve is irregular on the grid (min speed {min_speed})")]
    IrregularCurve { min_speed: f64 },
    #[error("suspected triple point of the spherical curve near parameters {s0}, {s1}, {s2}")]
    TriplePointDetected { s0: f64, s1: f64, s2: f64 },
    #[error("near-tangential self-intersection at ({s}, {s_bar}): angle {angle} below angle_tol")]
    TangencyDetected { s: f64, s_bar: f64, angle: f64 },
    #[error("chord undefined: curve points at {s} and {s_bar} coincide")]
    CoincidentPoints { s: f64, s_bar: f64 },
    #[error("no rotation within max_angle {max_angle} removes the goal posts")]
    RepairFailed { max_angle: f64 },
    #[error("two double-point parameters of the projected curve fall in the interval around {s}")]
    AmbiguousMatch { s: f64 },
    #[error("radial comparison degenerate at double point ({s}, {s_bar}): resolution undefined")]
    GoalPostObstruction { s: f64, s_bar: f64 },
    #[error("projection is not generic: {0}")]
    NonGenericProjection(String),
    #[error("Gauss code invalid: {0}")]
    InvalidCode(String),
    #[error("Gauss code is not realizable as a knot diagram on the sphere")]
    NonRealizableCode,
    #[error("diagram has {0} crossings; state sum capped at {max}", max = crate::invariants::MAX_STATE_SUM_CROSSINGS)]
    TooManyCrossings(usize),
    #[error("no rotation of the code has a Hamiltonian arc prefix")]
    NoArc,
    #[error("field layout failed: {0}")]
    LayoutFailed(String),
    #[error("base knot cannot be fit into the splice ball at the requested tolerance")]
    BallTooSmall,
}
