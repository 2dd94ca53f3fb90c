//! The two contour kernel engines built on Wiener-Hopf symbols: the
//! infinite-Toeplitz double-contour kernel and the finite-M resolvent kernel
//! (primary and dual).

use super::SymbolSpec;
use crate::error::{Error, Result};
use crate::kernel::{Budget, KernelEvaluator, Point};
use crate::numeric::quad::{refine, Circle};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::sync::Arc;

/// Per-level symbols `phi_r`, `r = left, ..., right - 1`.
#[derive(Clone)]
pub struct LevelSymbols {
    pub left: i64,
    pub right: i64,
    phis: Vec<SymbolSpec>,
}

impl LevelSymbols {
    pub fn new(left: i64, right: i64, phis: Vec<SymbolSpec>) -> Result<Self> {
        if right <= left || phis.len() != (right - left) as usize {
            return Err(Error::domain("need one symbol per level step"));
        }
        Ok(LevelSymbols { left, right, phis })
    }

    /// `phi_{r,s} = prod_{k in [r, s)} phi_k` (empty product for `r >= s`).
    pub fn product(&self, r: i64, s: i64) -> SymbolSpec {
        let mut acc = SymbolSpec::one();
        if r >= s {
            return acc;
        }
        for k in r.max(self.left)..s.min(self.right) {
            acc = acc.multiply(&self.phis[(k - self.left) as usize]);
        }
        acc
    }

    pub fn full(&self) -> SymbolSpec {
        self.product(self.left, self.right)
    }

    fn interior(&self, r: i64) -> bool {
        r > self.left && r < self.right
    }
}

/// Contour radii override for the double-contour kernels.
#[derive(Debug, Clone, Copy)]
pub struct ContourRadii {
    pub inner: f64,
    pub outer: f64,
}

fn single_integral(
    sym: &SymbolSpec,
    power: i64,
    radius: f64,
    budget: Budget,
) -> Result<Complex64> {
    let circle = Circle::origin(radius);
    let (v, _) = refine(
        "single contour integral",
        budget.start_nodes,
        budget.tolerance,
        budget.max_doublings,
        |n| {
            circle
                .nodes(n)
                .into_iter()
                .map(|(z, mu)| mu * pow_i64(z, power - 1) * sym.eval(z))
                .sum()
        },
    )?;
    Ok(v)
}

use crate::numeric::pow_i64;

/// `(1/2 pi i)^2` double contour sum of `f(z) g(w) / denom(z, w)` at a fixed
/// node count per circle.
fn double_contour_at(
    zc: Circle,
    wc: Circle,
    n: usize,
    f: &dyn Fn(Complex64) -> Complex64,
    g: &dyn Fn(Complex64) -> Complex64,
    w_minus_z: bool,
) -> Complex64 {
    let zs = zc.nodes(n);
    let ws = wc.nodes(n);
    let fz: Vec<Complex64> = zs.iter().map(|&(z, _)| f(z)).collect();
    let gw: Vec<Complex64> = ws.iter().map(|&(w, _)| g(w)).collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, &(z, mz)) in zs.iter().enumerate() {
        let fv = fz[i] * mz;
        for (j, &(w, mw)) in ws.iter().enumerate() {
            let d = if w_minus_z { w - z } else { z - w };
            acc += fv * gw[j] * mw / d;
        }
    }
    acc
}

/// The infinite-Toeplitz kernel: for interior levels `r, s`,
/// `K(r,u;s,v) = -1_{r<s} phihat_{r,s}(u - v ...) + double contour term`.
pub fn infinite_toeplitz_kernel(
    levels: &Arc<LevelSymbols>,
    d: i64,
    budget: Budget,
    radii: Option<ContourRadii>,
) -> Result<KernelEvaluator> {
    let full = levels.full();
    if full.eps() <= 0.0 {
        return Err(Error::domain(
            "levels do not satisfy the Wiener-Hopf condition on a common annulus",
        ));
    }
    let rs = full.radii(2);
    let (rho1, rho2) = match radii {
        Some(c) => {
            let (lo, hi) = full.annulus();
            if !(lo < c.inner && c.inner < c.outer && c.outer < hi) {
                return Err(Error::domain(format!(
                    "contour radii must satisfy {lo} < rho1 < rho2 < {hi}"
                )));
            }
            (c.inner, c.outer)
        }
        None => (rs[0], rs[1]),
    };
    let single_radius = (rho1 * rho2).sqrt();
    let levels = levels.clone();
    let info = format!(
        "infinite-Toeplitz contour kernel, levels {}..{}, d={d}",
        levels.left, levels.right
    );
    Ok(KernelEvaluator::new(
        info,
        budget,
        move |(r, u): Point, (s, v): Point| {
            if !levels.interior(r) || !levels.interior(s) {
                return Err(Error::domain("kernel arguments must be interior levels"));
            }
            let mut acc = Complex64::new(0.0, 0.0);
            if r < s {
                let phi_rs = levels.product(r, s);
                acc -= single_integral(&phi_rs, u - v, single_radius, budget)?;
            }
            let minus_r_right = levels.product(r, levels.right).minus_part();
            let plus_left_r = levels.product(levels.left, r).plus_part();
            let plus_left_s = levels.product(levels.left, s).plus_part();
            let minus_s_right = levels.product(s, levels.right).minus_part();
            let f = move |z: Complex64| {
                pow_i64(z, u - d) * minus_r_right.eval_minus(z) / plus_left_r.eval_plus(z)
            };
            let g = move |w: Complex64| {
                pow_i64(w, -(v - d + 1)) * plus_left_s.eval_plus(w) / minus_s_right.eval_minus(w)
            };
            let (dbl, _) = refine(
                "infinite-Toeplitz double contour",
                budget.start_nodes,
                budget.tolerance,
                budget.max_doublings,
                |n| {
                    double_contour_at(
                        Circle::origin(rho1),
                        Circle::origin(rho2),
                        n,
                        &f,
                        &g,
                        true,
                    )
                },
            )?;
            Ok(acc + dbl)
        },
    ))
}

struct FiniteMState {
    levels: Arc<LevelSymbols>,
    d: i64,
    m: usize,
    window: usize,
    budget: Budget,
    radii: [f64; 5], // rho3 < rho1 < sigma1 < sigma2 < rho2
    resolvent_lu: nalgebra::LU<Complex64, nalgebra::Dyn, nalgebra::Dyn>,
    dual: bool,
}

impl FiniteMState {
    /// a_{s,v}(j) over the window.
    fn a_vector(&self, s: i64, v: i64, n: usize) -> DVector<Complex64> {
        let lv = &self.levels;
        let full = lv.full();
        let plus_ls = lv.product(lv.left, s).plus_part();
        let minus_sr = lv.product(s, lv.right).minus_part();
        let wc = Circle::origin(self.radii[4]); // rho2
        let zc = Circle::origin(self.radii[3]); // sigma2 (zeta)
        let ws = wc.nodes(n);
        let zs = zc.nodes(n);
        let fw: Vec<Complex64> = ws
            .iter()
            .map(|&(w, _)| pow_i64(w, self.d - v - 1) * plus_ls.eval_plus(w) / minus_sr.eval_minus(w))
            .collect();
        let gz: Vec<Complex64> = zs
            .iter()
            .map(|&(z, _)| full.eval_minus(z) / full.eval_plus(z))
            .collect();
        let mut out = DVector::from_element(self.window, Complex64::new(0.0, 0.0));
        for (iz, &(zeta, mz)) in zs.iter().enumerate() {
            // zeta^{-j-1} built up iteratively over the window
            let mut zp = pow_i64(zeta, -(self.m as i64) - 1);
            let zinv = zeta.inv();
            let gmz = gz[iz] * mz;
            for jj in 0..self.window {
                let mut coupling = Complex64::new(0.0, 0.0);
                for (iw, &(w, mw)) in ws.iter().enumerate() {
                    coupling += fw[iw] * mw / (zeta - w);
                }
                out[jj] += gmz * zp * coupling;
                zp *= zinv;
            }
        }
        out
    }

    /// b_{r,u}(k) over the window.
    fn b_vector(&self, r: i64, u: i64, n: usize) -> DVector<Complex64> {
        let lv = &self.levels;
        let full = lv.full();
        let minus_rr = lv.product(r, lv.right).minus_part();
        let plus_lr = lv.product(lv.left, r).plus_part();
        let zc = Circle::origin(self.radii[1]); // rho1
        let oc = Circle::origin(self.radii[2]); // sigma1 (omega)
        let zs = zc.nodes(n);
        let os = oc.nodes(n);
        let fz: Vec<Complex64> = zs
            .iter()
            .map(|&(z, _)| pow_i64(z, u - self.d) * minus_rr.eval_minus(z) / plus_lr.eval_plus(z))
            .collect();
        let go: Vec<Complex64> = os
            .iter()
            .map(|&(o, _)| full.eval_plus(o) / full.eval_minus(o))
            .collect();
        let mut out = DVector::from_element(self.window, Complex64::new(0.0, 0.0));
        for (io, &(omega, mo)) in os.iter().enumerate() {
            let mut op = pow_i64(omega, self.m as i64);
            let gmo = go[io] * mo;
            let mut coupling = Complex64::new(0.0, 0.0);
            for (iz, &(z, mz)) in zs.iter().enumerate() {
                coupling += fz[iz] * mz / (omega - z);
            }
            for kk in 0..self.window {
                out[kk] += gmo * op * coupling;
                op *= omega;
            }
        }
        out
    }

    /// M_{L,R} (or M* for the dual) at resolution n.
    fn m_term(&self, r: i64, u: i64, s: i64, v: i64, n: usize) -> Complex64 {
        let lv = &self.levels;
        let minus_rr = lv.product(r, lv.right).minus_part();
        let plus_lr = lv.product(lv.left, r).plus_part();
        let plus_ls = lv.product(lv.left, s).plus_part();
        let minus_sr = lv.product(s, lv.right).minus_part();
        let d = self.d;
        let f = move |z: Complex64| {
            pow_i64(z, u - d) * minus_rr.eval_minus(z) / plus_lr.eval_plus(z)
        };
        let g = move |w: Complex64| {
            pow_i64(w, -(v - d + 1)) * plus_ls.eval_plus(w) / minus_sr.eval_minus(w)
        };
        if self.dual {
            // M*: w on rho3 inside z on rho1, denominator (z - w)
            double_contour_at(
                Circle::origin(self.radii[1]),
                Circle::origin(self.radii[0]),
                n,
                &f,
                &g,
                false,
            )
        } else {
            double_contour_at(
                Circle::origin(self.radii[1]),
                Circle::origin(self.radii[4]),
                n,
                &f,
                &g,
                true,
            )
        }
    }

    /// The single-integral term: `p_{r,s}(u,v)` for the primary kernel,
    /// `q_{s,r}(u,v)` for the dual.
    fn single_term(&self, r: i64, u: i64, s: i64, v: i64) -> Result<Complex64> {
        let lv = &self.levels;
        let radius = (self.radii[1] * self.radii[4]).sqrt();
        if self.dual {
            if s < r {
                let sym = lv.product(s, r).reciprocal();
                single_integral(&sym, u - v, radius, self.budget)
            } else {
                Ok(Complex64::new(0.0, 0.0))
            }
        } else if r < s {
            let sym = lv.product(r, s);
            single_integral(&sym, u - v, radius, self.budget)
        } else {
            Ok(Complex64::new(0.0, 0.0))
        }
    }
}

fn k0_matrix_impl(
    levels: &LevelSymbols,
    m: usize,
    window: usize,
    radii: &[f64; 5],
    n: usize,
) -> DMatrix<Complex64> {
    let full = levels.full();
    let oc = Circle::origin(radii[2]); // sigma1 (omega)
    let zc = Circle::origin(radii[3]); // sigma2 (zeta)
    let os = oc.nodes(n);
    let zs = zc.nodes(n);
    let ratio_o: Vec<Complex64> = os
        .iter()
        .map(|&(o, _)| full.eval_plus(o) / full.eval_minus(o))
        .collect();
    let ratio_z: Vec<Complex64> = zs
        .iter()
        .map(|&(z, _)| full.eval_minus(z) / full.eval_plus(z))
        .collect();
    let mut mat = DMatrix::from_element(window, window, Complex64::new(0.0, 0.0));
    // omega^k picking up k = m..m+window, zeta^{-j-1} for j = m..m+window
    for (io, &(omega, mo)) in os.iter().enumerate() {
        for (iz, &(zeta, mz)) in zs.iter().enumerate() {
            let base = mo * mz * ratio_o[io] * ratio_z[iz] / (zeta - omega);
            let mut op = pow_i64(omega, m as i64);
            for b in 0..window {
                let mut zp = pow_i64(zeta, -(m as i64) - 1);
                let zinv = zeta.inv();
                let t = base * op;
                for a in 0..window {
                    mat[(a, b)] += t * zp;
                    zp *= zinv;
                }
                op *= omega;
            }
        }
    }
    mat
}

/// The finite-M kernel `K_{L,R,M}` (or its dual when `dual` is set):
/// `-p_{r,s}(u,v) + M_{L,R}(r,u;s,v)
///  - sum_{k >= M} ((I - K0)_M^{-1} a_{s,v})(k) b_{r,u}(k)`,
/// with the sign of the resolvent sum flipped and `(p, M)` replaced by
/// `(q, M*)` in the dual.
pub fn finite_m_kernel(
    levels: &Arc<LevelSymbols>,
    m: usize,
    d: i64,
    budget: Budget,
    dual: bool,
) -> Result<KernelEvaluator> {
    let full = levels.full();
    if full.eps() <= 0.0 {
        return Err(Error::domain(
            "levels do not satisfy the Wiener-Hopf condition on a common annulus",
        ));
    }
    let rs = full.radii(5);
    let radii = [rs[0], rs[1], rs[2], rs[3], rs[4]];
    let (lo, hi) = full.annulus();
    let rate = lo.max(1.0 / hi).min(0.97);
    // truncation index from the exponential coefficient bound, safety factor 2
    let window = (((1e-15f64.ln() / rate.ln()).ceil() as usize) * 2).clamp(8, 600);

    // resolve K0 at increasing resolution until stable, then factorize
    let probe = |n: usize| -> Complex64 {
        let k0 = k0_matrix_impl(levels, m, window, &radii, n);
        Complex64::new(k0.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt(), 0.0)
    };
    let mut n_nodes = budget.start_nodes;
    let mut prev = probe(n_nodes);
    for _ in 0..budget.max_doublings {
        let cur = probe(n_nodes * 2);
        if (cur - prev).norm() <= budget.tolerance * (1.0 + cur.norm()) {
            break;
        }
        prev = cur;
        n_nodes *= 2;
    }
    let k0 = k0_matrix_impl(levels, m, window, &radii, n_nodes * 2);
    let mut id_minus = -k0;
    for i in 0..window {
        id_minus[(i, i)] += Complex64::new(1.0, 0.0);
    }
    let resolvent_lu = id_minus.lu();
    if resolvent_lu.determinant().norm() == 0.0 {
        return Err(Error::numeric(
            "resolvent (I - K0) is singular on the truncation window",
        ));
    }

    let state = Arc::new(FiniteMState {
        levels: levels.clone(),
        d,
        m,
        window,
        budget,
        radii,
        resolvent_lu,
        dual,
    });
    let info = format!(
        "finite-M {} kernel, levels {}..{}, M={m}, d={d}",
        if dual { "dual" } else { "primary" },
        levels.left,
        levels.right,
    );
    Ok(KernelEvaluator::new(
        info,
        budget,
        move |(r, u): Point, (s, v): Point| {
            if !state.levels.interior(r) || !state.levels.interior(s) {
                return Err(Error::domain("kernel arguments must be interior levels"));
            }
            let single = state.single_term(r, u, s, v)?;
            let (value, _) = refine(
                "finite-M kernel assembly",
                state.budget.start_nodes,
                state.budget.tolerance,
                state.budget.max_doublings,
                |n| {
                    let a = state.a_vector(s, v, n);
                    let b = state.b_vector(r, u, n);
                    let x = state
                        .resolvent_lu
                        .solve(&a)
                        .expect("resolvent factorization is non-singular");
                    let tail: Complex64 = (0..state.window).map(|k| x[k] * b[k]).sum();
                    let mterm = state.m_term(r, u, s, v, n);
                    if state.dual {
                        mterm + tail - single
                    } else {
                        mterm - tail - single
                    }
                },
            )?;
            Ok(value)
        },
    ))
}
