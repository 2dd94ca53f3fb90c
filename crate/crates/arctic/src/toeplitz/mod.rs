//! Symbol algebra and the Toeplitz kernel engines: Fourier coefficients by
//! circle quadrature, finite Toeplitz determinants and the bilinear inverse
//! identity, the Geronimo-Case/Borodin-Okounkov identity, and the
//! infinite-Toeplitz and finite-M contour kernels.

use crate::error::{Error, Result};
use crate::kernel::Budget;
use crate::numeric::quad::{refine, Circle};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::Mutex;

mod kernels;
mod symbol;
pub use kernels::{finite_m_kernel, infinite_toeplitz_kernel, ContourRadii, LevelSymbols};
pub use symbol::SymbolSpec;

/// `phi_hat(k) = (1/2 pi i) \oint z^{-k} phi(z) dz / z` by the trapezoid
/// rule on a circle inside the symbol's annulus, with node doubling.
pub fn fourier_coefficient(sym: &SymbolSpec, k: i64, budget: Budget) -> Result<Complex64> {
    let (lo, hi) = sym.annulus();
    if lo >= hi {
        return Err(Error::domain("symbol has an empty annulus"));
    }
    // stay near the unit circle: large radii amplify rounding in z^{-k-1}
    let radius = (lo.max(0.55) * hi.min(1.8)).sqrt();
    let circle = Circle::origin(radius);
    let (val, _err) = refine(
        "fourier_coefficient",
        budget.start_nodes,
        budget.tolerance,
        budget.max_doublings,
        |n| {
            circle
                .nodes(n)
                .into_iter()
                .map(|(z, mu)| mu * z.powi(-(k as i32) - 1) * sym.eval(z))
                .sum()
        },
    )?;
    Ok(val)
}

/// Cached Fourier coefficients of a symbol, with an exponential-decay check.
pub struct FourierCoefficientTable {
    sym: SymbolSpec,
    budget: Budget,
    cache: Mutex<HashMap<i64, Complex64>>,
}

impl FourierCoefficientTable {
    pub fn new(sym: SymbolSpec, budget: Budget) -> Self {
        FourierCoefficientTable {
            sym,
            budget,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn symbol(&self) -> &SymbolSpec {
        &self.sym
    }

    pub fn get(&self, k: i64) -> Result<Complex64> {
        if let Some(&hit) = self.cache.lock().unwrap().get(&k) {
            return Ok(hit);
        }
        let v = fourier_coefficient(&self.sym, k, self.budget)?;
        self.cache.lock().unwrap().insert(k, v);
        Ok(v)
    }

    /// Fits `|phi_hat(k)| <= C rho^{|k|}` over the computed range and checks
    /// it; returns the fitted `rho` (must be < 1 for a WH symbol).
    pub fn decay_rate(&self, range: i64) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for k in [range / 2, range] {
            for sign in [-1i64, 1] {
                let v = self.get(sign * k)?.norm();
                if v > 0.0 {
                    worst = worst.max(v.powf(1.0 / k as f64));
                }
            }
        }
        Ok(worst)
    }
}

/// The finite Toeplitz matrix `T_n(f)` with `(j,k)` entry `f_hat(j - k)`
/// given the coefficient function.
pub fn toeplitz_matrix(coeff: &dyn Fn(i64) -> Complex64, n: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(n, n, |j, k| coeff(j as i64 - k as i64))
}

/// `D_n[f] = det T_n(f)`; `D_0 = 1`.
pub fn toeplitz_det(coeff: &dyn Fn(i64) -> Complex64, n: usize) -> Complex64 {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    toeplitz_matrix(coeff, n).lu().determinant()
}

/// Both routes of the finite-Toeplitz bilinear identity
/// `sum_{i,j=1}^n z^j (T_n(f)^{-1})_{ji} w^{-i}
///  = (z/w) D_{n-1}[(1 - zeta/w)(1 - z/zeta) f] / D_n[f]`.
/// Returns `(direct, determinant_ratio)`.
pub fn finite_toeplitz_bilinear(
    coeff: &dyn Fn(i64) -> Complex64,
    n: usize,
    z: Complex64,
    w: Complex64,
) -> Result<(Complex64, Complex64)> {
    if n == 0 {
        return Err(Error::domain("need n >= 1"));
    }
    // direct route: solve T x = (w^{-1}, ..., w^{-n})
    let t = toeplitz_matrix(coeff, n);
    let lu = t.lu();
    let dn = lu.determinant();
    if dn.norm() == 0.0 {
        return Err(Error::domain("T_n(f) is singular"));
    }
    let rhs = DVector::from_fn(n, |i, _| w.powi(-(i as i32) - 1));
    let x = lu.solve(&rhs).ok_or_else(|| Error::domain("T_n(f) is singular"))?;
    let direct: Complex64 = (0..n).map(|j| z.powi(j as i32 + 1) * x[j]).sum();

    // determinant-ratio route with the modified symbol
    // (1 - zeta/w)(1 - z/zeta) f = (1 - zeta/w - z/zeta + z/w) f
    let modified = |k: i64| -> Complex64 {
        coeff(k) - coeff(k - 1) / w - z * coeff(k + 1) + (z / w) * coeff(k)
    };
    let ratio = (z / w) * toeplitz_det(&modified, n - 1) / dn;
    Ok((direct, ratio))
}

/// Both sides of the Geronimo-Case/Borodin-Okounkov identity
/// `D_n[g] = e^G det(I - K)_{l^2(n+1, n+2, ...)}`.
/// Returns `(toeplitz_det, bo_rhs)`.
pub fn borodin_okounkov(g: &SymbolSpec, n: usize, budget: Budget) -> Result<(Complex64, Complex64)> {
    if g.eps() <= 0.0 {
        return Err(Error::domain("symbol lacks a Wiener-Hopf factorization"));
    }
    // left side: direct Toeplitz determinant from exact coefficients
    let range = n + 2;
    let coeffs = g.fourier_exact(range);
    let at = |k: i64| -> Complex64 {
        let idx = k + range as i64;
        if idx < 0 || idx as usize >= coeffs.len() {
            Complex64::new(0.0, 0.0)
        } else {
            coeffs[idx as usize]
        }
    };
    let lhs = toeplitz_det(&at, n);

    // e^G in closed form: G = -sum_{p in plus, q in minus} m_p m_q
    // log(1 - c_p c_q)
    let mut big_g = Complex64::new(0.0, 0.0);
    for &(cp, mp) in g.plus_factors() {
        for &(cq, mq) in g.minus_factors() {
            big_g -= (mp * mq) as f64 * (Complex64::new(1.0, 0.0) - cp * cq).ln();
        }
    }

    // K(j,k) = sum_{l >= 0} (g^-/g^+)_hat(j + l) (g^+/g^-)_hat(-k - l) on
    // l^2({n+1, n+2, ...})
    let u = g.minus_part().multiply(&g.plus_part().reciprocal());
    let (lo, hi) = g.annulus();
    let rate = lo.max(1.0 / hi).min(0.97);
    // tail start N*: coefficient bound below 1e-16, with a safety factor 2
    let extent = ((1e-16f64.ln() / rate.ln()).ceil() as usize * 2).clamp(8, 4000);
    let m0 = n + 1;
    let reach = m0 + extent + extent; // kernel index + l sum reach
    let u_coeffs = u.fourier_exact(reach + 1);
    let v = u.reciprocal();
    let v_coeffs = v.fourier_exact(reach + 1);
    let uc = |k: i64| -> Complex64 {
        let idx = k + reach as i64 + 1;
        if idx < 0 || idx as usize >= u_coeffs.len() {
            Complex64::new(0.0, 0.0)
        } else {
            u_coeffs[idx as usize]
        }
    };
    let vc = |k: i64| -> Complex64 {
        let idx = k + reach as i64 + 1;
        if idx < 0 || idx as usize >= v_coeffs.len() {
            Complex64::new(0.0, 0.0)
        } else {
            v_coeffs[idx as usize]
        }
    };
    let window = extent.max(4);
    let mut kmat = DMatrix::from_element(window, window, Complex64::new(0.0, 0.0));
    for a in 0..window {
        let j = (m0 + a) as i64;
        for b in 0..window {
            let k = (m0 + b) as i64;
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 0..=(extent as i64) {
                acc += uc(j + l) * vc(-k - l);
            }
            kmat[(a, b)] = acc;
        }
    }
    let mut id_minus = -kmat;
    for i in 0..window {
        id_minus[(i, i)] += Complex64::new(1.0, 0.0);
    }
    let det = id_minus.lu().determinant();
    let _ = budget;
    Ok((lhs, big_g.exp() * det))
}

#[cfg(test)]
mod tests;
