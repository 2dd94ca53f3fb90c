//! Quadrature building blocks.
//!
//! Two families cover everything in this crate: the trapezoid rule on circles
//! (spectrally accurate for integrands analytic in an annulus) and
//! Gauss-Legendre panels on intervals and rays. Both are wrapped in a
//! resolution-doubling driver that stops when two successive refinements
//! agree to the requested tolerance.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Gauss-Legendre nodes and weights on `[-1, 1]` (Golub-Welsch).
pub fn gauss_legendre(n: usize) -> Arc<(Vec<f64>, Vec<f64>)> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<(Vec<f64>, Vec<f64>)>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    assert!(n >= 1, "need at least one node");
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        let b = i as f64 / ((4 * i * i - 1) as f64).sqrt();
        m[(i, i - 1)] = b;
        m[(i - 1, i)] = b;
    }
    let eigen = SymmetricEigen::new(m);
    let mut pairs: Vec<(f64, f64)> = eigen
        .eigenvalues
        .iter()
        .zip(eigen.eigenvectors.column_iter())
        .map(|(&x, v)| (x, 2.0 * v[0] * v[0]))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let out = Arc::new((
        pairs.iter().map(|p| p.0).collect::<Vec<_>>(),
        pairs.iter().map(|p| p.1).collect::<Vec<_>>(),
    ));
    cache.lock().unwrap().insert(n, out.clone());
    out
}

/// Gauss-Legendre nodes and weights mapped to `[a, b]`.
pub fn gauss_legendre_on(a: f64, b: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let gl = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (
        gl.0.iter().map(|&x| mid + half * x).collect(),
        gl.1.iter().map(|&w| half * w).collect(),
    )
}

/// A circle contour `center + radius * e^{i theta}`, positively oriented.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Complex64,
    pub radius: f64,
}

impl Circle {
    pub fn origin(radius: f64) -> Self {
        Circle {
            center: Complex64::new(0.0, 0.0),
            radius,
        }
    }

    pub fn at(center: f64, radius: f64) -> Self {
        Circle {
            center: Complex64::new(center, 0.0),
            radius,
        }
    }

    /// Trapezoid nodes `z_k` with weights `mu_k` such that
    /// `(1/2 pi i) \oint f(z) dz ~ sum_k mu_k f(z_k)`.
    pub fn nodes(&self, n: usize) -> Vec<(Complex64, Complex64)> {
        (0..n)
            .map(|k| {
                let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / n as f64;
                let dir = Complex64::new(theta.cos(), theta.sin());
                let z = self.center + self.radius * dir;
                // dz = i r e^{i theta} d theta; divided by 2 pi i and the
                // step 2 pi / n this leaves r e^{i theta} / n.
                let mu = self.radius * dir / n as f64;
                (z, mu)
            })
            .collect()
    }

    pub fn contains(&self, p: Complex64) -> bool {
        (p - self.center).norm() < self.radius
    }
}

/// `(1/2 pi i) \oint_C f(z) dz` by the trapezoid rule with `n` nodes.
pub fn circle_integral(c: Circle, n: usize, f: impl Fn(Complex64) -> Complex64) -> Complex64 {
    c.nodes(n).into_iter().map(|(z, mu)| mu * f(z)).sum()
}

/// Default starting node count for circle quadrature.
pub const CIRCLE_START_NODES: usize = 64;
/// Default doubling limit (64 -> 65536 nodes).
pub const MAX_DOUBLINGS: usize = 10;

/// Resolution-doubling driver. `eval(n)` computes the quantity at resolution
/// `n`; resolution doubles until two successive values agree to `tol`
/// (absolute plus relative). Returns the converged value and the last
/// observed difference.
pub fn refine(
    context: &str,
    start: usize,
    tol: f64,
    max_doublings: usize,
    mut eval: impl FnMut(usize) -> Complex64,
) -> Result<(Complex64, f64)> {
    let mut n = start;
    let mut prev = eval(n);
    for _ in 0..max_doublings {
        n *= 2;
        let cur = eval(n);
        let diff = (cur - prev).norm();
        if diff <= tol * (1.0 + cur.norm()) {
            return Ok((cur, diff));
        }
        prev = cur;
    }
    let last = eval(2 * n);
    Err(Error::NoConvergence {
        context: context.to_string(),
        last,
        previous: prev,
    })
}

/// Same driver for real-valued quantities.
pub fn refine_real(
    context: &str,
    start: usize,
    tol: f64,
    max_doublings: usize,
    mut eval: impl FnMut(usize) -> f64,
) -> Result<(f64, f64)> {
    let (v, e) = refine(context, start, tol, max_doublings, |n| {
        Complex64::new(eval(n), 0.0)
    })?;
    Ok((v.re, e))
}

/// The quadrature carriers used across the crate: nodes and weights on a
/// circle, a ray, or an interval, plus the doubling control.
#[derive(Debug, Clone)]
pub enum QuadratureGrid {
    Circle { circle: Circle, nodes: usize },
    Interval { a: f64, b: f64, nodes: usize },
    /// Ray from `base` in direction `dir` (unit), truncated at length `len`.
    Ray {
        base: Complex64,
        dir: Complex64,
        len: f64,
        nodes: usize,
    },
}

impl QuadratureGrid {
    /// Nodes with complex weights: `\int f ~ sum w_k f(z_k)` along the carrier
    /// (for circles the weight already includes the `1/2 pi i`).
    pub fn nodes(&self) -> Vec<(Complex64, Complex64)> {
        match *self {
            QuadratureGrid::Circle { circle, nodes } => circle.nodes(nodes),
            QuadratureGrid::Interval { a, b, nodes } => {
                let (xs, ws) = gauss_legendre_on(a, b, nodes);
                xs.into_iter()
                    .zip(ws)
                    .map(|(x, w)| (Complex64::new(x, 0.0), Complex64::new(w, 0.0)))
                    .collect()
            }
            QuadratureGrid::Ray {
                base,
                dir,
                len,
                nodes,
            } => {
                let (ts, ws) = gauss_legendre_on(0.0, len, nodes);
                ts.into_iter()
                    .zip(ws)
                    .map(|(t, w)| (base + dir * t, dir * w))
                    .collect()
            }
        }
    }

    pub fn doubled(&self) -> Self {
        let mut g = self.clone();
        match &mut g {
            QuadratureGrid::Circle { nodes, .. }
            | QuadratureGrid::Interval { nodes, .. }
            | QuadratureGrid::Ray { nodes, .. } => *nodes *= 2,
        }
        g
    }

    pub fn node_count(&self) -> usize {
        match *self {
            QuadratureGrid::Circle { nodes, .. }
            | QuadratureGrid::Interval { nodes, .. }
            | QuadratureGrid::Ray { nodes, .. } => nodes,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        // 8 nodes integrate degree <= 15 exactly.
        let (xs, ws) = gauss_legendre_on(0.0, 1.0, 8);
        let val: f64 = xs
            .iter()
            .zip(&ws)
            .map(|(&x, &w)| w * x.powi(9))
            .sum();
        assert!((val - 0.1).abs() < 1e-14);
    }

    #[test]
    fn circle_picks_residues() {
        // (1/2 pi i) \oint z^{-1} dz = 1 on any circle around 0.
        let v = circle_integral(Circle::origin(0.7), 64, |z| 1.0 / z);
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        // z^{-2} integrates to 0.
        let v2 = circle_integral(Circle::origin(0.7), 64, |z| 1.0 / (z * z));
        assert!(v2.norm() < 1e-13);
    }

    #[test]
    fn off_center_circle_residue() {
        // Pole at 1 inside a circle centered at 0.8.
        let c = Circle::at(0.8, 0.5);
        let v = circle_integral(c, 128, |z| 1.0 / (z - 1.0));
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        // Pole at 0 is outside that circle.
        let v0 = circle_integral(c, 128, |z| 1.0 / z);
        assert!(v0.norm() < 1e-12);
    }

    #[test]
    fn refine_reports_failure_with_last_two_values() {
        // A sequence that never settles.
        let mut flip = 0.0f64;
        let err = refine("flip", 4, 1e-12, 3, |_| {
            flip = 1.0 - flip;
            Complex64::new(flip, 0.0)
        })
        .unwrap_err();
        match err {
            Error::NoConvergence { last, previous, .. } => {
                assert_ne!(last, previous);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}
