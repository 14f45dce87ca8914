//! Small dense 4×4 helpers shared by the real (Lorentz) and complex (spinor)
//! sides: max-abs norms and a scaling-and-squaring matrix exponential.

use nalgebra::{ComplexField, Matrix4, Vector4};

pub use nalgebra::Complex;

pub type C64 = Complex<f64>;
/// Complex 4×4 matrix acting on spinor indices.
pub type CMatrix = Matrix4<C64>;
/// Column spinor.
pub type Spinor = Vector4<C64>;
/// Real 4×4 matrix acting on spacetime indices.
pub type RMatrix = Matrix4<f64>;

pub const I: C64 = Complex { re: 0.0, im: 1.0 };

pub fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

/// Largest absolute entry. All matrix residuals in the crate use this norm.
pub fn max_abs<T: ComplexField<RealField = f64>>(m: &Matrix4<T>) -> f64 {
    m.iter().map(|z| z.clone().abs()).fold(0.0, nan_max)
}

pub fn max_abs_vec<T: ComplexField<RealField = f64>>(v: &Vector4<T>) -> f64 {
    v.iter().map(|z| z.clone().abs()).fold(0.0, nan_max)
}

/// `f64::max` that lets NaN win, so a poisoned residual can never pass a check.
pub fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

pub fn complexify(m: &RMatrix) -> CMatrix {
    m.map(|x| c(x, 0.0))
}

const MAX_TERMS: usize = 64;
const TERM_CUTOFF: f64 = 1e-16;

/// Matrix exponential by scaling and squaring a truncated Taylor series.
///
/// The argument is halved until its max-abs norm is at most 1/2, the series
/// is summed until the next term drops below 1e-16, and the result is squared
/// back. Returns `None` if the series fails to converge (non-finite input).
pub fn expm<T: ComplexField<RealField = f64>>(a: &Matrix4<T>) -> Option<Matrix4<T>> {
    let norm = max_abs(a);
    if !norm.is_finite() {
        return None;
    }
    let mut squarings = 0u32;
    if norm > 0.5 {
        squarings = (norm / 0.5).log2().ceil() as u32;
    }
    let scale = T::from_real(0.5f64.powi(squarings as i32));
    let scaled = a * scale;

    let mut sum = Matrix4::<T>::identity();
    let mut term = Matrix4::<T>::identity();
    let mut converged = false;
    for k in 1..=MAX_TERMS {
        term = &term * &scaled * T::from_real(1.0 / k as f64);
        sum += &term;
        if max_abs(&term) < TERM_CUTOFF {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    Some(sum)
}
