//! The common callable-kernel value used by every discrete model: a function
//! of two space-time points `(level, position)` together with metadata about
//! the ground set, gauge and quadrature budget.

use crate::dpp::FiniteKernel;
use crate::error::Result;
use num_complex::Complex64;
use std::sync::Arc;

/// A space-time point of a discrete determinantal process.
pub type Point = (i64, i64);

/// Quadrature budget carried by evaluators that integrate.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub start_nodes: usize,
    pub tolerance: f64,
    pub max_doublings: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            start_nodes: 64,
            tolerance: 1e-10,
            max_doublings: 10,
        }
    }
}

/// A correlation kernel as a callable value.
#[derive(Clone)]
pub struct KernelEvaluator {
    eval: Arc<dyn Fn(Point, Point) -> Result<Complex64> + Send + Sync>,
    /// human-readable ground-set / gauge description
    pub info: String,
    pub budget: Budget,
}

impl KernelEvaluator {
    pub fn new(
        info: impl Into<String>,
        budget: Budget,
        eval: impl Fn(Point, Point) -> Result<Complex64> + Send + Sync + 'static,
    ) -> Self {
        KernelEvaluator {
            eval: Arc::new(eval),
            info: info.into(),
            budget,
        }
    }

    pub fn eval(&self, x: Point, y: Point) -> Result<Complex64> {
        (self.eval)(x, y)
    }

    /// Tabulates the kernel on a finite point set.
    pub fn finite_kernel(&self, points: &[Point]) -> Result<FiniteKernel<Point>> {
        let n = points.len();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.eval(points[i], points[j])?);
            }
        }
        Ok(FiniteKernel::from_matrix(
            points.to_vec(),
            nalgebra::DMatrix::from_row_iterator(n, n, entries),
        ))
    }

    /// `rho(points) = det(K(x_i, x_j))`.
    pub fn correlation(&self, points: &[Point]) -> Result<Complex64> {
        self.finite_kernel(points)?.correlation(points)
    }

    /// Conjugated evaluator `c(x) K(x, y) / c(y)`.
    pub fn conjugate(
        &self,
        gauge: impl Fn(Point) -> Complex64 + Send + Sync + 'static,
    ) -> KernelEvaluator {
        let inner = self.eval.clone();
        KernelEvaluator {
            eval: Arc::new(move |x, y| Ok(gauge(x) * inner(x, y)? / gauge(y))),
            info: format!("{} (conjugated)", self.info),
            budget: self.budget,
        }
    }
}
