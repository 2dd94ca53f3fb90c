//! Rational circle symbols kept in Wiener-Hopf factored form.
//!
//! A symbol is a product of elementary factors `(1 - c z)^m` (the plus part,
//! analytic and nonzero in a disk larger than the unit disk, normalized to 1
//! at 0) and `(1 - c / z)^m` (the minus part, analytic and nonzero outside a
//! smaller disk, normalized to 1 at infinity), with integer multiplicities.
//! Every symbol in this crate is of this form, so the factorization stays
//! symbolic and products just merge factor lists.

use crate::error::{Error, Result};
use num_complex::Complex64;

#[derive(Debug, Clone, Default)]
pub struct SymbolSpec {
    /// factors `(1 - c z)^m`
    plus: Vec<(Complex64, i32)>,
    /// factors `(1 - c / z)^m`
    minus: Vec<(Complex64, i32)>,
}

fn merge(list: &mut Vec<(Complex64, i32)>, c: Complex64, m: i32) {
    if m == 0 || c.norm() == 0.0 {
        return;
    }
    for entry in list.iter_mut() {
        if (entry.0 - c).norm() < 1e-15 {
            entry.1 += m;
            if entry.1 == 0 {
                let keep = entry.0;
                list.retain(|e| (e.0 - keep).norm() >= 1e-15 || e.1 != 0);
            }
            return;
        }
    }
    list.push((c, m));
}

impl SymbolSpec {
    /// The constant symbol 1.
    pub fn one() -> Self {
        SymbolSpec::default()
    }

    /// `(1 - c z)^m`; requires `|c| < 1` so the factor is analytic and
    /// nonzero on a neighbourhood of the closed unit disk.
    pub fn plus_factor(c: Complex64, m: i32) -> Result<Self> {
        if c.norm() >= 1.0 {
            return Err(Error::domain(format!(
                "plus factor root 1/{c} lies inside the closed unit disk"
            )));
        }
        let mut s = SymbolSpec::one();
        merge(&mut s.plus, c, m);
        Ok(s)
    }

    /// `(1 - c / z)^m`; requires `|c| < 1`.
    pub fn minus_factor(c: Complex64, m: i32) -> Result<Self> {
        if c.norm() >= 1.0 {
            return Err(Error::domain(format!(
                "minus factor singularity {c} reaches the unit circle"
            )));
        }
        let mut s = SymbolSpec::one();
        merge(&mut s.minus, c, m);
        Ok(s)
    }

    pub fn multiply(&self, other: &SymbolSpec) -> SymbolSpec {
        let mut out = self.clone();
        for &(c, m) in &other.plus {
            merge(&mut out.plus, c, m);
        }
        for &(c, m) in &other.minus {
            merge(&mut out.minus, c, m);
        }
        out
    }

    pub fn pow(&self, k: i32) -> SymbolSpec {
        SymbolSpec {
            plus: self.plus.iter().map(|&(c, m)| (c, m * k)).collect(),
            minus: self.minus.iter().map(|&(c, m)| (c, m * k)).collect(),
        }
    }

    pub fn reciprocal(&self) -> SymbolSpec {
        self.pow(-1)
    }

    /// Only the plus part `phi^+`.
    pub fn plus_part(&self) -> SymbolSpec {
        SymbolSpec {
            plus: self.plus.clone(),
            minus: Vec::new(),
        }
    }

    /// Only the minus part `phi^-`.
    pub fn minus_part(&self) -> SymbolSpec {
        SymbolSpec {
            plus: Vec::new(),
            minus: self.minus.clone(),
        }
    }

    pub fn plus_factors(&self) -> &[(Complex64, i32)] {
        &self.plus
    }

    pub fn minus_factors(&self) -> &[(Complex64, i32)] {
        &self.minus
    }

    pub fn eval_plus(&self, z: Complex64) -> Complex64 {
        self.plus
            .iter()
            .map(|&(c, m)| (Complex64::new(1.0, 0.0) - c * z).powi(m))
            .product()
    }

    pub fn eval_minus(&self, z: Complex64) -> Complex64 {
        self.minus
            .iter()
            .map(|&(c, m)| (Complex64::new(1.0, 0.0) - c / z).powi(m))
            .product()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.eval_plus(z) * self.eval_minus(z)
    }

    /// The annulus `(lo, hi)` on which the symbol is analytic and nonzero;
    /// `lo < 1 < hi` always. Contours must stay inside.
    pub fn annulus(&self) -> (f64, f64) {
        let lo = self
            .minus
            .iter()
            .map(|(c, _)| c.norm())
            .fold(0.0f64, f64::max);
        let hi = self
            .plus
            .iter()
            .map(|(c, _)| 1.0 / c.norm())
            .fold(f64::INFINITY, f64::min);
        (lo, hi.min(1e6))
    }

    /// Width parameter of Condition WH: both `1 - eps` and `1 + eps` must be
    /// inside the annulus.
    pub fn eps(&self) -> f64 {
        let (lo, hi) = self.annulus();
        (1.0 - lo).min(hi - 1.0)
    }

    /// `r` geometrically spaced radii strictly inside the annulus.
    pub fn radii(&self, r: usize) -> Vec<f64> {
        let (lo, hi) = self.annulus();
        let hi = hi.min(1.0 / lo.max(1e-6)).min(4.0).max(1.02);
        let lo = lo.max(1.0 / hi).min(0.98);
        (1..=r)
            .map(|i| lo * (hi / lo).powf(i as f64 / (r + 1) as f64))
            .collect()
    }

    /// Exact Fourier coefficients on `[-range, range]` by expanding every
    /// factor as a (truncated) series and convolving. The truncation error
    /// is controlled by the factor moduli; `pad` extra terms are carried.
    pub fn fourier_exact(&self, range: usize) -> Vec<Complex64> {
        // working band [-n, n]
        let decay = self.max_modulus();
        let pad = if decay < 1e-12 {
            4
        } else {
            ((1e-18f64.ln() / decay.ln()).ceil() as usize).min(4000)
        };
        let n = range + pad;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 2 * n + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let mut apply = |root: Complex64, m: i32, plus: bool| {
            for _ in 0..m.unsigned_abs() {
                let mut series = vec![Complex64::new(0.0, 0.0); 2 * n + 1];
                if m > 0 {
                    // multiply by (1 - c z^{+-1})
                    for k in 0..(2 * n + 1) {
                        series[k] = coeffs[k];
                        let src = if plus { k.checked_sub(1) } else { k.checked_add(1).filter(|&x| x < 2 * n + 1) };
                        if let Some(s) = src {
                            series[k] -= root * coeffs[s];
                        }
                    }
                } else {
                    // divide by (1 - c z^{+-1}): geometric recursion
                    if plus {
                        let mut prev = Complex64::new(0.0, 0.0);
                        for k in 0..(2 * n + 1) {
                            let v = coeffs[k] + root * prev;
                            series[k] = v;
                            prev = v;
                        }
                    } else {
                        let mut prev = Complex64::new(0.0, 0.0);
                        for k in (0..(2 * n + 1)).rev() {
                            let v = coeffs[k] + root * prev;
                            series[k] = v;
                            prev = v;
                        }
                    }
                }
                coeffs = series;
            }
            let _ = one;
        };
        for &(c, m) in &self.plus {
            apply(c, m, true);
        }
        for &(c, m) in &self.minus {
            apply(c, m, false);
        }
        coeffs[(n - range)..=(n + range)].to_vec()
    }

    fn max_modulus(&self) -> f64 {
        self.plus
            .iter()
            .chain(self.minus.iter())
            .map(|(c, _)| c.norm())
            .fold(0.0, f64::max)
    }
}
