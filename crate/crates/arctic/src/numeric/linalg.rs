//! Small dense linear algebra helpers.
//!
//! Floating point paths go through nalgebra's LU with partial pivoting. The
//! exact path is a plain Gaussian elimination over any field, used for the
//! rational/Gaussian-rational determinants that back the exact counting and
//! enumeration checks.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::ops::{Div, Mul, Sub};

/// Determinant over an arbitrary field, by Gaussian elimination with the
/// first nonzero pivot. Exact when `T` is exact (e.g. `BigRational`,
/// `Complex<BigRational>`).
pub fn det_field<T>(mut m: Vec<Vec<T>>) -> T
where
    T: Clone + Zero + One + PartialEq + Sub<Output = T> + Mul<Output = T> + Div<Output = T>,
{
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    if n == 0 {
        return T::one();
    }
    let mut det = T::one();
    let mut neg = false;
    for col in 0..n {
        let pivot_row = match (col..n).find(|&r| m[r][col] != T::zero()) {
            Some(r) => r,
            None => return T::zero(),
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            neg = !neg;
        }
        let pivot = m[col][col].clone();
        det = det * pivot.clone();
        for r in col + 1..n {
            if m[r][col] == T::zero() {
                continue;
            }
            let factor = m[r][col].clone() / pivot.clone();
            for c in col..n {
                let sub = factor.clone() * m[col][c].clone();
                m[r][c] = m[r][c].clone() - sub;
            }
        }
    }
    if neg {
        T::zero() - det
    } else {
        det
    }
}

/// Complex determinant via LU with partial pivoting.
pub fn det_complex(m: &DMatrix<Complex64>) -> Complex64 {
    if m.nrows() == 0 {
        return Complex64::new(1.0, 0.0);
    }
    m.clone().lu().determinant()
}

/// Solve `A x = b` for complex dense `A`; returns `None` if singular.
pub fn solve_complex(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Option<DMatrix<Complex64>> {
    a.clone().lu().solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rational_determinant_matches_hand_value() {
        // det [[1,2],[3,4]] = -2
        let d = det_field(vec![vec![r(1), r(2)], vec![r(3), r(4)]]);
        assert_eq!(d, r(-2));
    }

    #[test]
    fn zero_pivot_column_is_handled() {
        let d = det_field(vec![
            vec![r(0), r(1), r(2)],
            vec![r(1), r(0), r(3)],
            vec![r(4), r(5), r(0)],
        ]);
        // Expansion: 0*(0-15) - 1*(0-12) + 2*(5-0) = 12 + 10 = 22? Laplace:
        // det = 0*(0*0-3*5) - 1*(1*0-3*4) + 2*(1*5-0*4) = 0 +12 +10 = 22.
        assert_eq!(d, r(22));
    }

    #[test]
    fn empty_matrix_has_unit_determinant() {
        let d: BigRational = det_field(Vec::new());
        assert_eq!(d, r(1));
    }
}
