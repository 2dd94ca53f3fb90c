//! Uniform discrete interlacing particle systems (Gelfand-Tsetlin patterns
//! with a fixed top row) and their correlation kernel.
//!
//! Both stated routes are implemented: the double-contour form and the
//! finite residue-sum form. The finite-difference identity behind the sum
//! runs over the full window `l = v-n+s, ..., v` (the printed bound `u-1`
//! does not close the telescope; route equivalence pins the corrected one).

use crate::error::{Error, Result};
use crate::kernel::{Budget, KernelEvaluator, Point};
use crate::numeric::quad::{refine, Circle};
use num_complex::Complex64;
use std::sync::Arc;

/// A Gelfand-Tsetlin pattern: rows `y^1, ..., y^n`, row `r` of length `r`,
/// strict interlacing `y_i^{r+1} >= y_i^r > y_{i+1}^{r+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GTPattern {
    rows: Vec<Vec<i64>>,
}

impl GTPattern {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        for (r, row) in rows.iter().enumerate() {
            if row.len() != r + 1 {
                return Err(Error::domain("row r must have r entries"));
            }
            if row.windows(2).any(|w| w[0] <= w[1]) {
                return Err(Error::domain("rows must be strictly decreasing"));
            }
        }
        for r in 0..rows.len().saturating_sub(1) {
            let lower = &rows[r];
            let upper = &rows[r + 1];
            for i in 0..lower.len() {
                if !(upper[i] >= lower[i] && lower[i] > upper[i + 1]) {
                    return Err(Error::domain("rows do not interlace"));
                }
            }
        }
        Ok(GTPattern { rows })
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.rows[r - 1]
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }
}

fn validate_top(top: &[i64]) -> Result<()> {
    if top.is_empty() {
        return Err(Error::domain("need a nonempty top row"));
    }
    if top.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::domain("top row must be strictly decreasing"));
    }
    Ok(())
}

/// `1_{r<s} 1_{u<=v} (v-u+1)_{s-r-1} / (s-r-1)!`, the free transition term,
/// computed in log space with sign tracking.
fn transition_term(r: i64, u: i64, s: i64, v: i64) -> f64 {
    if r >= s || u > v {
        return 0.0;
    }
    let k = (s - r - 1) as u32;
    // rising factorial (v-u+1)_k / k!
    let mut log_acc = 0.0f64;
    for i in 0..k {
        let factor = (v - u + 1 + i as i64) as f64 / (i + 1) as f64;
        if factor == 0.0 {
            return 0.0;
        }
        log_acc += factor.ln();
    }
    log_acc.exp()
}

/// The residue-sum form of the kernel.
pub fn interlacing_kernel_sum(top: &[i64]) -> Result<KernelEvaluator> {
    validate_top(top)?;
    let x: Arc<Vec<i64>> = Arc::new(top.to_vec());
    let n = x.len() as i64;
    Ok(KernelEvaluator::new(
        format!("interlacing kernel (residue sum), n={n}"),
        Budget::default(),
        move |(r, u): Point, (s, v): Point| {
            if r < 1 || r > n || s < 1 || s > n {
                return Err(Error::domain("row index outside 1..n"));
            }
            let tilde = ktilde_sum(&x, r, u, s, v);
            Ok(Complex64::new(tilde - transition_term(r, u, s, v), 0.0))
        },
    ))
}

fn ktilde_sum(x: &[i64], r: i64, u: i64, s: i64, v: i64) -> f64 {
    let n = x.len() as i64;
    let mut total = 0.0f64;
    for (j, &xj) in x.iter().enumerate() {
        if xj < u {
            continue;
        }
        // h_{x_j - u}(1^{n-r}) = prod_{k=u+r-n+1}^{u-1} (x_j - k)/(n-r-1)!
        // (for r = n this degenerates to the indicator x_j = u)
        let mut hterm = 1.0f64;
        if r == n {
            if xj != u {
                continue;
            }
        } else {
            let mut log_acc = 0.0f64;
            let mut sign = 1.0f64;
            let mut k = u + r - n + 1;
            let mut zero = false;
            while k <= u - 1 {
                let f = (xj - k) as f64;
                if f == 0.0 {
                    zero = true;
                    break;
                }
                if f < 0.0 {
                    sign = -sign;
                }
                log_acc += f.abs().ln();
                k += 1;
            }
            if zero {
                continue;
            }
            // divide by (n-r-1)!
            for i in 1..=(n - r - 1) {
                log_acc -= (i as f64).ln();
            }
            hterm = sign * log_acc.exp();
        }
        // Delta_v^{n-s} of prod_{i != j} (. - x_i)/(x_j - x_i) at v+s-n:
        // (n-s)! sum_{l = v-n+s}^{v} f(l) / prod_{k != l} (l - k)
        let mut dsum = 0.0f64;
        for l in (v - n + s)..=v {
            let mut log_num = 0.0f64;
            let mut sign = 1.0f64;
            let mut zero = false;
            for (i, &xi) in x.iter().enumerate() {
                if i == j {
                    continue;
                }
                let nf = (l - xi) as f64;
                let df = (xj - xi) as f64;
                if nf == 0.0 {
                    zero = true;
                    break;
                }
                if nf < 0.0 {
                    sign = -sign;
                }
                if df < 0.0 {
                    sign = -sign;
                }
                log_num += nf.abs().ln() - df.abs().ln();
            }
            if zero {
                continue;
            }
            for k in (v - n + s)..=v {
                if k == l {
                    continue;
                }
                let f = (l - k) as f64;
                if f < 0.0 {
                    sign = -sign;
                }
                log_num -= f.abs().ln();
            }
            dsum += sign * log_num.exp();
        }
        // (n-s)!
        let mut log_fact = 0.0f64;
        for i in 1..=(n - s) {
            log_fact += (i as f64).ln();
        }
        total += hterm * dsum * log_fact.exp();
    }
    total
}

/// The double-contour form: small circles around `{x_j >= u}` for `z` and a
/// large circle around everything (including `{v-n+s, ..., v}`) for `w`.
pub fn interlacing_kernel(top: &[i64]) -> Result<KernelEvaluator> {
    validate_top(top)?;
    let x: Arc<Vec<i64>> = Arc::new(top.to_vec());
    let n = x.len() as i64;
    Ok(KernelEvaluator::new(
        format!("interlacing kernel (contour form), n={n}"),
        Budget::default(),
        move |(r, u): Point, (s, v): Point| {
            if r < 1 || r > n || s < 1 || s > n {
                return Err(Error::domain("row index outside 1..n"));
            }
            if r == n {
                // the contour prefactor degenerates; fall back to the exact
                // finite sum, which is closed-form here
                let tilde = ktilde_sum(&x, r, u, s, v);
                return Ok(Complex64::new(tilde - transition_term(r, u, s, v), 0.0));
            }
            let enclosed: Vec<i64> = x.iter().copied().filter(|&xj| xj >= u).collect();
            if enclosed.is_empty() {
                return Ok(Complex64::new(-transition_term(r, u, s, v), 0.0));
            }
            // prefactor (n-s)!/(n-r-1)!
            let mut log_pref = 0.0f64;
            for i in 1..=(n - s) {
                log_pref += (i as f64).ln();
            }
            for i in 1..=(n - r - 1) {
                log_pref -= (i as f64).ln();
            }
            let pref = log_pref.exp();

            // z: tiny circles around each enclosed x_j; w: a big circle
            let zc: Vec<Circle> = enclosed
                .iter()
                .map(|&xj| Circle::at(xj as f64, 0.3))
                .collect();
            let all_lo = (v - n + s).min(*x.iter().min().unwrap()) as f64;
            let all_hi = v.max(*x.iter().max().unwrap()) as f64;
            let wc = Circle::at(
                (all_lo + all_hi) / 2.0,
                (all_hi - all_lo) / 2.0 + 1.5,
            );
            let xs = x.clone();
            let (val, _) = refine(
                "interlacing contour kernel",
                Budget::default().start_nodes,
                Budget::default().tolerance,
                Budget::default().max_doublings,
                |nn| {
                    let mut znodes = Vec::new();
                    for c in &zc {
                        znodes.extend(c.nodes(nn));
                    }
                    let wnodes = wc.nodes(2 * nn);
                    let fz: Vec<Complex64> = znodes
                        .iter()
                        .map(|&(z, _)| {
                            // prod_{k=u+r-n+1}^{u-1} (z-k) / prod_i (z-x_i)
                            let mut lg = Complex64::new(0.0, 0.0);
                            let mut k = u + r - n + 1;
                            while k <= u - 1 {
                                lg += (z - k as f64).ln();
                                k += 1;
                            }
                            for &xi in xs.iter() {
                                lg -= (z - xi as f64).ln();
                            }
                            lg.exp()
                        })
                        .collect();
                    let gw: Vec<Complex64> = wnodes
                        .iter()
                        .map(|&(w, _)| {
                            // prod_i (w-x_i) / prod_{k=v+s-n}^{v} (w-k)
                            let mut lg = Complex64::new(0.0, 0.0);
                            for &xi in xs.iter() {
                                lg += (w - xi as f64).ln();
                            }
                            for k in (v + s - n)..=v {
                                lg -= (w - k as f64).ln();
                            }
                            lg.exp()
                        })
                        .collect();
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (i, &(z, mz)) in znodes.iter().enumerate() {
                        let f = fz[i] * mz;
                        for (jj, &(w, mw)) in wnodes.iter().enumerate() {
                            acc += f * gw[jj] * mw / (w - z);
                        }
                    }
                    acc
                },
            )?;
            Ok(pref * val - Complex64::new(transition_term(r, u, s, v), 0.0))
        },
    ))
}
