//! Fredholm determinants of integral operators on an interval, by the
//! Nystrom method: `det(I - W^{1/2} K W^{1/2})` on Gauss-Legendre nodes,
//! doubling the node count until two successive values agree.

use crate::error::{Error, Result};
use crate::numeric::quad::gauss_legendre_on;
use nalgebra::DMatrix;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    /// Analytic kernels; Gauss-Legendre converges spectrally.
    Analytic,
    /// Merely continuous kernels; convergence is slower, more doublings are
    /// allowed.
    Continuous,
}

/// A symmetric-or-not kernel on an interval `(a, b]`. The caller supplies the
/// truncation point: the operator must be negligible past `b`.
#[derive(Clone)]
pub struct IntervalKernel {
    pub eval: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    pub a: f64,
    pub b: f64,
    pub smoothness: Smoothness,
}

impl IntervalKernel {
    pub fn new(
        a: f64,
        b: f64,
        smoothness: Smoothness,
        eval: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        IntervalKernel {
            eval: Arc::new(eval),
            a,
            b,
            smoothness,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FredholmOptions {
    pub start_nodes: usize,
    pub tolerance: f64,
    pub max_doublings: usize,
}

impl Default for FredholmOptions {
    fn default() -> Self {
        FredholmOptions {
            start_nodes: 32,
            tolerance: 1e-10,
            max_doublings: 5,
        }
    }
}

fn nystrom_det(kernel: &IntervalKernel, n: usize) -> f64 {
    let (xs, ws) = gauss_legendre_on(kernel.a, kernel.b, n);
    let sqrt_w: Vec<f64> = ws.iter().map(|w| w.sqrt()).collect();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = -sqrt_w[i] * (kernel.eval)(xs[i], xs[j]) * sqrt_w[j];
        }
        m[(i, i)] += 1.0;
    }
    m.lu().determinant()
}

/// `det(I - K)_{L^2(a, b)}` with resolution doubling. Returns the value and
/// the self-reported error (difference of the last two refinements).
pub fn fredholm_det_interval(kernel: &IntervalKernel, opts: FredholmOptions) -> Result<(f64, f64)> {
    let max_doublings = match kernel.smoothness {
        Smoothness::Analytic => opts.max_doublings,
        Smoothness::Continuous => opts.max_doublings + 3,
    };
    let mut n = opts.start_nodes;
    let mut prev = nystrom_det(kernel, n);
    for _ in 0..max_doublings {
        n *= 2;
        let cur = nystrom_det(kernel, n);
        let diff = (cur - prev).abs();
        if diff <= opts.tolerance * (1.0 + cur.abs()) {
            return Ok((cur, diff));
        }
        prev = cur;
    }
    let last = nystrom_det(kernel, 2 * n);
    Err(Error::NoConvergence {
        context: "fredholm_det_interval".into(),
        last: last.into(),
        previous: prev.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_kernel_gives_one() {
        let k = IntervalKernel::new(0.0, 1.0, Smoothness::Analytic, |_, _| 0.0);
        let (v, _) = fredholm_det_interval(&k, FredholmOptions::default()).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rank_one_kernel_has_closed_form() {
        // K(x,y) = phi(x) phi(y) on [0,1]: det(I-K) = 1 - ||phi||^2.
        let k = IntervalKernel::new(0.0, 1.0, Smoothness::Analytic, |x, y| {
            (x + 0.5) * (y + 0.5)
        });
        let (v, _) = fredholm_det_interval(&k, FredholmOptions::default()).unwrap();
        // int_0^1 (x+1/2)^2 dx = [ (x+1/2)^3/3 ] = (27/8 - 1/8)/3 = 13/12
        assert!((v - (1.0 - 13.0 / 12.0)).abs() < 1e-12);
    }

    #[test]
    fn doubling_halves_error_for_analytic_kernels() {
        // Observed spectral convergence: errors should drop at least 4x per
        // doubling while above rounding noise, for a smooth kernel.
        let k = IntervalKernel::new(0.0, 2.0, Smoothness::Analytic, |x, y| {
            0.3 * (-(x - y) * (x - y)).exp()
        });
        let exact = nystrom_det(&k, 256);
        let mut errors = Vec::new();
        for n in [4usize, 8, 16] {
            errors.push((nystrom_det(&k, n) - exact).abs());
        }
        for w in errors.windows(2) {
            if w[0] > 1e-13 {
                assert!(w[1] <= w[0] / 4.0, "errors {errors:?}");
            }
        }
    }
}
