//! Flat-ended smooth transition functions.
//!
//! Everything here is built from `sigma(x) = exp(-1/x)` so that pieced-together
//! paths and warps stay smooth at the joints with all derivatives matching.
//! Fourier refits of curves assembled from these blends converge fast, which
//! keeps the working degree low.

use crate::{conv, Scalar};

/// `exp(-1/x)` for `x > 0`, `0` otherwise.
fn sigma<T: Scalar>(x: T) -> T {
    if x <= T::zero() {
        T::zero()
    } else {
        (-x.recip()).exp()
    }
}

/// Smooth step: 0 for `x <= 0`, 1 for `x >= 1`, strictly increasing between,
/// flat (all derivatives zero) at both ends.
pub fn step<T: Scalar>(x: T) -> T {
    let a = sigma(x);
    let b = sigma(T::one() - x);
    a / (a + b)
}

/// Smooth bump: 1 at `x = 0`, 0 for `|x| >= 1`, flat at both the peak and the feet.
pub fn bump<T: Scalar>(x: T) -> T {
    let x = x.abs();
    if x >= T::one() {
        T::zero()
    } else {
        step(conv::<T>(2.0) * (T::one() - x))
    }
}
