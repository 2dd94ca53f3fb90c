//! The double Aztec diamond: outlier-particle kernel as the reflected
//! one-Aztec kernel plus a finite-M resolvent correction.

use super::aztec::{aztec_kernel, AztecEnsembleSpec};
use crate::error::{Error, Result};
use crate::kernel::{Budget, KernelEvaluator, Point};
use crate::numeric::pow_i64;
use crate::numeric::quad::Circle;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::sync::Arc;

/// `N = 2n + 1` transition steps, `M = 2m + 1` inlier particles pinned at
/// `m + 1 - j`, vertical-edge weight `a`.
#[derive(Debug, Clone, Copy)]
pub struct DoubleAztecSpec {
    pub n: usize,
    pub m: usize,
    pub a: f64,
}

impl DoubleAztecSpec {
    pub fn new(n: usize, m: usize, a: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::domain("need n >= 1"));
        }
        if a <= 0.0 || a >= 1.0 {
            return Err(Error::domain("need 0 < a < 1"));
        }
        Ok(DoubleAztecSpec { n, m, a })
    }

    pub fn particle_count(&self) -> usize {
        2 * self.m + 1
    }
}

struct DaState {
    spec: DoubleAztecSpec,
    radii: [f64; 5], // rho3 < rho1 < sigma1 < sigma2 < rho2
    window: usize,
    resolvent_lu: nalgebra::LU<Complex64, nalgebra::Dyn, nalgebra::Dyn>,
    one_aztec: KernelEvaluator,
    nodes: usize,
}

impl DaState {
    /// `a_{2s+e2, v}(j)` over the window.
    fn a_vector(&self, s: i64, e2: i64, v: i64, nodes: usize) -> DVector<Complex64> {
        let sp = &self.spec;
        let a = sp.a;
        let n = sp.n as i32;
        let m0 = (2 * sp.m + 1) as i64;
        let wc = Circle::origin(self.radii[4]);
        let zc = Circle::origin(self.radii[3]); // zeta
        let ws = wc.nodes(nodes);
        let zs = zc.nodes(nodes);
        let fw: Vec<Complex64> = ws
            .iter()
            .map(|&(w, _)| {
                pow_i64(w, sp.m as i64 - v)
                    * (1.0 + a * w).powi(s as i32)
                    * (1.0 - a / w).powi(n - s as i32 + 1 - e2 as i32)
            })
            .collect();
        let gz: Vec<Complex64> = zs
            .iter()
            .map(|&(z, _)| ((1.0 + a * z).powi(n) * (1.0 - a / z).powi(n + 1)).inv())
            .collect();
        let mut out = DVector::from_element(self.window, Complex64::new(0.0, 0.0));
        for (iz, &(zeta, mz)) in zs.iter().enumerate() {
            let mut coupling = Complex64::new(0.0, 0.0);
            for (iw, &(w, mw)) in ws.iter().enumerate() {
                coupling += fw[iw] * mw / (zeta - w);
            }
            let base = gz[iz] * mz * coupling;
            let mut zp = pow_i64(zeta, -m0 - 1);
            let zinv = zeta.inv();
            for jj in 0..self.window {
                out[jj] += base * zp;
                zp *= zinv;
            }
        }
        out
    }

    /// `b_{2r+e1, u}(k)` over the window.
    fn b_vector(&self, r: i64, e1: i64, u: i64, nodes: usize) -> DVector<Complex64> {
        let sp = &self.spec;
        let a = sp.a;
        let n = sp.n as i32;
        let m0 = (2 * sp.m + 1) as i64;
        let zc = Circle::origin(self.radii[1]); // rho1 (z)
        let oc = Circle::origin(self.radii[2]); // sigma1 (omega)
        let zs = zc.nodes(nodes);
        let os = oc.nodes(nodes);
        let fz: Vec<Complex64> = zs
            .iter()
            .map(|&(z, _)| {
                pow_i64(z, -(sp.m as i64 + 1 - u))
                    / ((1.0 + a * z).powi(r as i32) * (1.0 - a / z).powi(n - r as i32 + 1 - e1 as i32))
            })
            .collect();
        let go: Vec<Complex64> = os
            .iter()
            .map(|&(o, _)| (1.0 + a * o).powi(n) * (1.0 - a / o).powi(n + 1))
            .collect();
        let mut out = DVector::from_element(self.window, Complex64::new(0.0, 0.0));
        for (io, &(omega, mo)) in os.iter().enumerate() {
            let mut coupling = Complex64::new(0.0, 0.0);
            for (iz, &(z, mz)) in zs.iter().enumerate() {
                coupling += fz[iz] * mz / (omega - z);
            }
            let base = go[io] * mo * coupling;
            let mut op = pow_i64(omega, m0);
            for kk in 0..self.window {
                out[kk] += base * op;
                op *= omega;
            }
        }
        out
    }
}

fn k0_matrix_impl(
    spec: &DoubleAztecSpec,
    radii: &[f64; 5],
    window: usize,
    nodes: usize,
) -> DMatrix<Complex64> {
    let a = spec.a;
    let n = spec.n as i32;
    let m0 = (2 * spec.m + 1) as i64;
    let oc = Circle::origin(radii[2]); // sigma1 (omega)
    let zc = Circle::origin(radii[3]); // sigma2 (zeta)
    let os = oc.nodes(nodes);
    let zs = zc.nodes(nodes);
    let ro: Vec<Complex64> = os
        .iter()
        .map(|&(o, _)| (1.0 + a * o).powi(n) * (1.0 - a / o).powi(n + 1))
        .collect();
    let rz: Vec<Complex64> = zs
        .iter()
        .map(|&(z, _)| ((1.0 + a * z).powi(n) * (1.0 - a / z).powi(n + 1)).inv())
        .collect();
    let mut mat = DMatrix::from_element(window, window, Complex64::new(0.0, 0.0));
    for (io, &(omega, mo)) in os.iter().enumerate() {
        for (iz, &(zeta, mz)) in zs.iter().enumerate() {
            let base = mo * mz * ro[io] * rz[iz] / (zeta - omega);
            let mut op = pow_i64(omega, m0);
            for b in 0..window {
                let mut zp = pow_i64(zeta, -m0 - 1);
                let zinv = zeta.inv();
                let t = base * op;
                for aa in 0..window {
                    mat[(aa, b)] += t * zp;
                    zp *= zinv;
                }
                op *= omega;
            }
        }
    }
    mat
}

/// The outlier correlation kernel
/// `K(l1,u; l2,v) = (-1)^{u-v} K^{OneAz}_{n+1}(2(n+1)-l1, m+1-u;
/// 2(n+1)-l2, m+1-v) + sum_{k >= 2m+1} ((I-K0)^{-1} a_{l2,v})(k) b_{l1,u}(k)`.
pub fn double_aztec_kernel(spec: DoubleAztecSpec) -> Result<KernelEvaluator> {
    let a = spec.a;
    let ratio = 1.0 / (a * a);
    let radii = [
        a * ratio.powf(1.0 / 6.0),
        a * ratio.powf(2.0 / 6.0),
        a * ratio.powf(3.0 / 6.0),
        a * ratio.powf(4.0 / 6.0),
        a * ratio.powf(5.0 / 6.0),
    ];
    let window = (((1e-15f64.ln() / a.ln()).ceil() as usize) * 2).clamp(8, 600);
    // resolve K0 resolution, then factorize I - K0
    let mut nodes = Budget::default().start_nodes;
    let mut prev = k0_matrix_impl(&spec, &radii, window, nodes);
    for _ in 0..Budget::default().max_doublings {
        let cur = k0_matrix_impl(&spec, &radii, window, nodes * 2);
        if (&cur - &prev).norm() <= 1e-11 * (1.0 + cur.norm()) {
            prev = cur;
            break;
        }
        prev = cur;
        nodes *= 2;
    }
    let mut id_minus = -prev;
    for i in 0..window {
        id_minus[(i, i)] += Complex64::new(1.0, 0.0);
    }
    let resolvent_lu = id_minus.lu();
    if resolvent_lu.determinant().norm() == 0.0 {
        return Err(Error::numeric("resolvent (I - K0) singular on the window"));
    }
    let one_aztec = aztec_kernel(AztecEnsembleSpec::new(spec.n + 1, a)?, None)?;
    let state = Arc::new(DaState {
        spec,
        radii,
        window,
        resolvent_lu,
        one_aztec,
        nodes,
    });
    Ok(KernelEvaluator::new(
        format!(
            "double-Aztec outlier kernel, n={}, m={}, a={}",
            spec.n, spec.m, spec.a
        ),
        Budget::default(),
        move |(l1, u): Point, (l2, v): Point| {
            let two_n = 2 * state.spec.n as i64;
            if l1 < 1 || l1 > two_n || l2 < 1 || l2 > two_n {
                return Err(Error::domain("level outside 1..2n"));
            }
            let m_off = state.spec.m as i64 + 1;
            let refl = state.one_aztec.eval(
                (2 * (state.spec.n as i64 + 1) - l1, m_off - u),
                (2 * (state.spec.n as i64 + 1) - l2, m_off - v),
            )?;
            let sign = if (u - v).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            let (r, e1) = (l1.div_euclid(2), l1.rem_euclid(2));
            let (s, e2) = (l2.div_euclid(2), l2.rem_euclid(2));
            // tail with one verification doubling
            let mut tail_prev = None;
            let mut nodes = state.nodes;
            for _ in 0..3 {
                let av = state.a_vector(s, e2, v, nodes);
                let bv = state.b_vector(r, e1, u, nodes);
                let xv = state
                    .resolvent_lu
                    .solve(&av)
                    .expect("resolvent factorization is non-singular");
                let tail: Complex64 = (0..state.window).map(|k| xv[k] * bv[k]).sum();
                if let Some(p) = tail_prev {
                    let diff: Complex64 = tail - p;
                    if diff.norm() <= 1e-10 * (1.0 + tail.norm()) {
                        return Ok(sign * refl + tail);
                    }
                }
                tail_prev = Some(tail);
                nodes *= 2;
            }
            Err(Error::NoConvergence {
                context: "double-Aztec resolvent tail".into(),
                last: tail_prev.unwrap(),
                previous: tail_prev.unwrap(),
            })
        },
    ))
}
