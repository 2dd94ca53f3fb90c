//! Product-of-determinants measures and their correlation kernels.

use crate::error::{Error, Result};
use crate::kernel::{Budget, KernelEvaluator, Point};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// An ensemble of `M` paths with levels `left..=right`, transition functions
/// `p_{r,r+1}` and pinned boundary configurations. Positions live inside a
/// finite window (all transitions vanish outside it).
pub struct TransitionEnsemble {
    pub left: i64,
    pub right: i64,
    pub boundary_left: Vec<i64>,
    pub boundary_right: Vec<i64>,
    window: (i64, i64),
    trans: Arc<dyn Fn(i64, i64, i64) -> Complex64 + Send + Sync>,
}

impl TransitionEnsemble {
    pub fn new(
        left: i64,
        right: i64,
        boundary_left: Vec<i64>,
        boundary_right: Vec<i64>,
        window: (i64, i64),
        trans: impl Fn(i64, i64, i64) -> Complex64 + Send + Sync + 'static,
    ) -> Result<Arc<Self>> {
        if left >= right {
            return Err(Error::domain("need left < right"));
        }
        if boundary_left.len() != boundary_right.len() || boundary_left.is_empty() {
            return Err(Error::domain("boundary tuples must have equal positive length"));
        }
        if window.0 > window.1 {
            return Err(Error::domain("empty position window"));
        }
        Ok(Arc::new(TransitionEnsemble {
            left,
            right,
            boundary_left,
            boundary_right,
            window,
            trans: Arc::new(trans),
        }))
    }

    pub fn particle_count(&self) -> usize {
        self.boundary_left.len()
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    /// Single-step transition `p_{r,r+1}(x, y)`.
    pub fn transition(&self, r: i64, x: i64, y: i64) -> Complex64 {
        (self.trans)(r, x, y)
    }

    fn window_len(&self) -> usize {
        (self.window.1 - self.window.0 + 1) as usize
    }

    fn pos_index(&self, x: i64) -> Option<usize> {
        if x < self.window.0 || x > self.window.1 {
            None
        } else {
            Some((x - self.window.0) as usize)
        }
    }

    /// Forward propagation of a unit mass from `(r, x)` to level `s`:
    /// the vector `p_{r,s}(x, .)` over the window (`s > r`).
    fn forward(&self, r: i64, x: i64, s: i64) -> Vec<Complex64> {
        let len = self.window_len();
        let mut cur = vec![Complex64::new(0.0, 0.0); len];
        if let Some(i) = self.pos_index(x) {
            cur[i] = Complex64::new(1.0, 0.0);
        }
        for t in r..s {
            let mut next = vec![Complex64::new(0.0, 0.0); len];
            for (ix, &vx) in cur.iter().enumerate() {
                if vx == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let xv = self.window.0 + ix as i64;
                for (iy, nv) in next.iter_mut().enumerate() {
                    let yv = self.window.0 + iy as i64;
                    let w = (self.trans)(t, xv, yv);
                    if w != Complex64::new(0.0, 0.0) {
                        *nv += vx * w;
                    }
                }
            }
            cur = next;
        }
        cur
    }

    /// `p_{r,s}(x, y)`: zero for `r >= s`, composition of the single-step
    /// transitions otherwise.
    pub fn composite(&self, r: i64, x: i64, s: i64, y: i64) -> Complex64 {
        if r >= s {
            return Complex64::new(0.0, 0.0);
        }
        match self.pos_index(y) {
            Some(iy) => self.forward(r, x, s)[iy],
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// The boundary-to-boundary matrix `A = (p_{L,R}(x_j^L, x_k^R))`.
    pub fn boundary_matrix(&self) -> DMatrix<Complex64> {
        let m = self.particle_count();
        DMatrix::from_fn(m, m, |j, k| {
            self.composite(self.left, self.boundary_left[j], self.right, self.boundary_right[k])
        })
    }
}

struct SharedState {
    ens: Arc<TransitionEnsemble>,
    lu: nalgebra::LU<Complex64, nalgebra::Dyn, nalgebra::Dyn>,
    forward_cache: Mutex<HashMap<(i64, i64, i64), Arc<Vec<Complex64>>>>,
}

impl SharedState {
    fn forward(&self, r: i64, x: i64, s: i64) -> Arc<Vec<Complex64>> {
        let key = (r, x, s);
        if let Some(hit) = self.forward_cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let v = Arc::new(self.ens.forward(r, x, s));
        self.forward_cache.lock().unwrap().insert(key, v.clone());
        v
    }
}

fn build_state(ens: &Arc<TransitionEnsemble>) -> Result<Arc<SharedState>> {
    let a = ens.boundary_matrix();
    let lu = a.lu();
    if lu.determinant().norm() == 0.0 {
        return Err(Error::model(
            "boundary matrix A is singular: measure not normalizable",
        ));
    }
    Ok(Arc::new(SharedState {
        ens: ens.clone(),
        lu,
        forward_cache: Mutex::new(HashMap::new()),
    }))
}

/// The correlation kernel of the product measure,
/// `K(r,u;s,v) = -p_{r,s}(u,v) + sum_{i,j} p_{r,R}(u, x_j^R) (A^{-1})_{ji}
/// p_{L,s}(x_i^L, v)`.
pub fn general_kernel(ens: &Arc<TransitionEnsemble>) -> Result<KernelEvaluator> {
    let state = build_state(ens)?;
    let info = format!(
        "product-measure kernel on levels {}..{} with M={}",
        ens.left,
        ens.right,
        ens.particle_count()
    );
    Ok(KernelEvaluator::new(
        info,
        Budget::default(),
        move |(r, u): Point, (s, v): Point| {
            let ens = &state.ens;
            if r <= ens.left || r >= ens.right || s <= ens.left || s >= ens.right {
                return Err(Error::domain("level outside the interior of the ensemble"));
            }
            let m = ens.particle_count();
            // c_i = p_{L,s}(x_i^L, v)
            let mut c = DVector::from_element(m, Complex64::new(0.0, 0.0));
            for i in 0..m {
                let f = state.forward(ens.left, ens.boundary_left[i], s);
                c[i] = ens
                    .pos_index(v)
                    .map(|iv| f[iv])
                    .unwrap_or(Complex64::new(0.0, 0.0));
            }
            let sol = state
                .lu
                .solve(&c)
                .ok_or_else(|| Error::model("singular boundary matrix"))?;
            // b_j = p_{r,R}(u, x_j^R)
            let fwd = state.forward(r, u, ens.right);
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..m {
                let b = ens
                    .pos_index(ens.boundary_right[j])
                    .map(|ib| fwd[ib])
                    .unwrap_or(Complex64::new(0.0, 0.0));
                acc += b * sol[j];
            }
            let p = ens.composite(r, u, s, v);
            Ok(acc - p)
        },
    ))
}

/// The same kernel through Cramer's rule: the caller supplies the operator
/// `T_v` (as `apply_t(base, s, v)`, applying `T` to the function
/// `y -> base(y)` at the substituted argument `g(s, v)`) satisfying
/// `p_{L,s}(x, v) = T_v p_{L,R}(x, g(s, v))`. `base(y)` is
/// `sum_j p_{r,R}(u, x_j^R) det A[j, y] / det A` with the `j`-th column of
/// `A` replaced by `p_{L,R}(x^L, y)`.
pub fn kernel_via_cramer<F>(ens: &Arc<TransitionEnsemble>, apply_t: F) -> Result<KernelEvaluator>
where
    F: Fn(&dyn Fn(i64) -> Result<Complex64>, i64, i64) -> Result<Complex64>
        + Send
        + Sync
        + 'static,
{
    let state = build_state(ens)?;
    let info = format!(
        "Cramer-route kernel on levels {}..{} with M={}",
        ens.left,
        ens.right,
        ens.particle_count()
    );
    Ok(KernelEvaluator::new(
        info,
        Budget::default(),
        move |(r, u): Point, (s, v): Point| {
            let ens = &state.ens;
            if r <= ens.left || r >= ens.right || s <= ens.left || s >= ens.right {
                return Err(Error::domain("level outside the interior of the ensemble"));
            }
            let m = ens.particle_count();
            let fwd = state.forward(r, u, ens.right);
            let b: Vec<Complex64> = (0..m)
                .map(|j| {
                    ens.pos_index(ens.boundary_right[j])
                        .map(|ib| fwd[ib])
                        .unwrap_or(Complex64::new(0.0, 0.0))
                })
                .collect();
            let base = |y: i64| -> Result<Complex64> {
                // det A[j, y]/det A = (A^{-1} col(y))_j
                let mut col = DVector::from_element(m, Complex64::new(0.0, 0.0));
                for i in 0..m {
                    col[i] = ens.composite(ens.left, ens.boundary_left[i], ens.right, y);
                }
                let sol = state
                    .lu
                    .solve(&col)
                    .ok_or_else(|| Error::model("singular boundary matrix"))?;
                Ok((0..m).map(|j| b[j] * sol[j]).sum())
            };
            let tilde = apply_t(&base, s, v)?;
            let p = ens.composite(r, u, s, v);
            Ok(tilde - p)
        },
    ))
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;

    /// The size-n Aztec particle ensemble: levels 0..2n, M = n paths pinned
    /// at 1-j on both sides, transitions `a d_{y-x,1} + d_{y-x,0}` on even
    /// steps and `a^{x-y} 1_{y<=x}` on odd steps.
    pub fn aztec_ensemble(n: usize, a: f64) -> Arc<TransitionEnsemble> {
        let m = n as i64;
        TransitionEnsemble::new(
            0,
            2 * m,
            (1..=m).map(|j| 1 - j).collect(),
            (1..=m).map(|j| 1 - j).collect(),
            (1 - m - (m + 1), m + 1),
            move |r, x, y| {
                if r.rem_euclid(2) == 0 {
                    if y - x == 1 {
                        Complex64::new(a, 0.0)
                    } else if y == x {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                } else if y <= x {
                    Complex64::new(a.powi((x - y) as i32), 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            },
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::test_support::aztec_ensemble;
    use super::*;

    #[test]
    fn m_equals_one_reduces_to_scalar_formula() {
        let ens = aztec_ensemble(1, 0.7);
        let k = general_kernel(&ens).unwrap();
        // K(r,u;s,v) = -p_{r,s}(u,v) + p_{r,R}(u,x^R) p_{L,s}(x^L,v)/p_{L,R}(x^L,x^R)
        let p_lr = ens.composite(0, 0, 2, 0);
        for (r, u, s, v) in [(1i64, 0i64, 1i64, 0i64), (1, 1, 1, 1), (1, 0, 1, 1)] {
            let got = k.eval((r, u), (s, v)).unwrap();
            let expect = ens.composite(r, u, 2, 0) * ens.composite(0, 0, s, v) / p_lr
                - ens.composite(r, u, s, v);
            assert!((got - expect).norm() < 1e-13);
        }
    }

    #[test]
    fn aztec_one_occupation_probabilities() {
        // single path: P[x^1 = 1] = a^2/(1+a^2), P[x^1 = 0] = 1/(1+a^2)
        let a = 0.7;
        let ens = aztec_ensemble(1, a);
        let k = general_kernel(&ens).unwrap();
        let z = 1.0 + a * a;
        let rho1 = k.eval((1, 1), (1, 1)).unwrap();
        assert!((rho1.re - a * a / z).abs() < 1e-12 && rho1.im.abs() < 1e-14);
        let rho0 = k.eval((1, 0), (1, 0)).unwrap();
        assert!((rho0.re - 1.0 / z).abs() < 1e-12);
        // exactly one particle on the interior level
        assert!((rho0.re + rho1.re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn level_particle_counts_sum_to_m() {
        let n = 3usize;
        let ens = aztec_ensemble(n, 0.6);
        let k = general_kernel(&ens).unwrap();
        let (lo, hi) = ens.window();
        for r in 1..(2 * n as i64) {
            let mut sum = 0.0;
            for u in lo..=hi {
                sum += k.eval((r, u), (r, u)).unwrap().re;
            }
            assert!(
                (sum - n as f64).abs() < 1e-9,
                "level {r}: particle count {sum}"
            );
        }
    }

    /// Ensemble with all-ones monotone steps `p_{r,r+1}(x,y) = 1_{y >= x}`,
    /// for which `p_{L,s}(x,v) = h_{v-x}(1^{s-L})` and the finite-difference
    /// operator route is exact:
    /// `p_{L,s}(x,v) = Delta_v^{R-s} p_{L,R}(x, v+s-R)`.
    fn monotone_ensemble() -> Arc<TransitionEnsemble> {
        TransitionEnsemble::new(0, 3, vec![0, -2], vec![4, 1], (-4, 8), |_r, x, y| {
            if y >= x {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .unwrap()
    }

    fn binomial(n: u32, k: u32) -> f64 {
        if k > n {
            return 0.0;
        }
        let mut acc = 1.0;
        for i in 0..k {
            acc = acc * (n - i) as f64 / (i + 1) as f64;
        }
        acc
    }

    #[test]
    fn cramer_route_matches_general_kernel() {
        let ens = monotone_ensemble();
        let right = ens.right;
        let k1 = general_kernel(&ens).unwrap();
        let k2 = kernel_via_cramer(&ens, move |base, s, v| {
            // T_v = Delta_v^{R-s}, g(s,v) = v + s - R
            let k = (right - s) as u32;
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..=k {
                let sign = if (k - i) % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * binomial(k, i) * base(v + i as i64 + s - right)?;
            }
            Ok(acc)
        })
        .unwrap();
        for r in 1..3i64 {
            for s in 1..3i64 {
                for u in -3..=5i64 {
                    for v in -3..=5i64 {
                        let a = k1.eval((r, u), (s, v)).unwrap();
                        let b = k2.eval((r, u), (s, v)).unwrap();
                        assert!(
                            (a - b).norm() <= 1e-10 * (1.0 + a.norm()),
                            "({r},{u};{s},{v}): {a} vs {b}"
                        );
                    }
                }
            }
        }
    }
}
