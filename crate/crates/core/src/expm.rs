//! Matrix exponential of small fixed-size matrices by scaling and squaring.

use nalgebra::Matrix4;

/// Taylor terms used once the scaled matrix has norm ≤ 1/2. The truncation
/// error is below (1/2)^19 / 19! ≈ 1e-23 relative.
const TAYLOR_TERMS: usize = 18;

/// exp(A) for a 4×4 matrix.
pub fn expm(a: &Matrix4<f64>) -> Matrix4<f64> {
    // Infinity norm: max row sum.
    let norm = a
        .row_iter()
        .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0_f64, f64::max);
    if !norm.is_finite() {
        return Matrix4::from_element(f64::NAN);
    }
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a * 0.5_f64.powi(squarings);

    let mut result = Matrix4::identity();
    let mut term = Matrix4::identity();
    for k in 1..=TAYLOR_TERMS {
        term = term * scaled / k as f64;
        result += term;
    }
    for _ in 0..squarings {
        result = result * result;
    }
    result
}
