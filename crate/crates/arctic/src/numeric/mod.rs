//! Numeric foundations: exact and floating determinants, quadrature rules,
//! resolution-doubling drivers.

pub mod linalg;
pub mod quad;

use num_complex::Complex64;

/// `z^k` for any integer `k`.
pub fn pow_i64(z: Complex64, k: i64) -> Complex64 {
    if k >= 0 {
        z.powu(k as u32)
    } else {
        z.powu((-k) as u32).inv()
    }
}
