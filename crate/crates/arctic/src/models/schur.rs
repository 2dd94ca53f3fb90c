//! Schur processes and the Schur measure.

use crate::error::{Error, Result};
use crate::kernel::{Budget, KernelEvaluator, Point};
use crate::numeric::quad::{refine, Circle};
use crate::toeplitz::{infinite_toeplitz_kernel, ContourRadii, LevelSymbols, SymbolSpec};
use num_complex::Complex64;
use std::sync::Arc;

/// `h` steps use complete symmetric functions (geometric factors), `e`
/// steps elementary ones (linear factors).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    H,
    E,
}

/// One transition of the process: kind `c_k`, direction `d_k`, and the
/// specialization tuple.
#[derive(Debug, Clone)]
pub struct SchurStep {
    pub kind: StepKind,
    pub direction: i8, // +1 or -1
    pub params: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct SchurProcessSpec {
    pub left: i64,
    /// steps indexed by `left, left+1, ...`
    pub steps: Vec<SchurStep>,
    /// particle convention `x_j^k = lambda_j^{(k)} - j + d`
    pub d: i64,
}

impl SchurProcessSpec {
    pub fn right(&self) -> i64 {
        self.left + self.steps.len() as i64
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps.is_empty() {
            return Err(Error::domain("need at least one transition"));
        }
        for s in &self.steps {
            if !(s.direction == 1 || s.direction == -1) {
                return Err(Error::domain("direction must be +1 or -1"));
            }
            if s.params.iter().any(|&a| a <= 0.0 || a >= 1.0) {
                return Err(Error::domain("specialization parameters must lie in (0,1)"));
            }
        }
        Ok(())
    }

    fn symbol(step: &SchurStep) -> Result<SymbolSpec> {
        let mut sym = SymbolSpec::one();
        for &a in &step.params {
            let factor = match (step.kind, step.direction) {
                // 1/(1 - a z)
                (StepKind::H, 1) => SymbolSpec::plus_factor(Complex64::new(a, 0.0), -1)?,
                // 1/(1 - a/z)
                (StepKind::H, -1) => SymbolSpec::minus_factor(Complex64::new(a, 0.0), -1)?,
                // 1 + a z
                (StepKind::E, 1) => SymbolSpec::plus_factor(Complex64::new(-a, 0.0), 1)?,
                // 1 + a/z
                (StepKind::E, -1) => SymbolSpec::minus_factor(Complex64::new(-a, 0.0), 1)?,
                _ => unreachable!(),
            };
            sym = sym.multiply(&factor);
        }
        Ok(sym)
    }

    pub fn level_symbols(&self) -> Result<Arc<LevelSymbols>> {
        self.validate()?;
        let phis = self
            .steps
            .iter()
            .map(Self::symbol)
            .collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(LevelSymbols::new(self.left, self.right(), phis)?))
    }

    /// The partition function: one Cauchy factor per creation step before an
    /// annihilation step,
    /// `prod (1 -+ a_i b_j)^{-+1}` with sign by matching/mixed kinds.
    pub fn partition_function(&self) -> Result<f64> {
        self.validate()?;
        let mut z = 1.0;
        for (k1, s1) in self.steps.iter().enumerate() {
            if s1.direction != 1 {
                continue;
            }
            for s2 in self.steps.iter().skip(k1 + 1) {
                if s2.direction != -1 {
                    continue;
                }
                for &x in &s1.params {
                    for &y in &s2.params {
                        z *= if s1.kind == s2.kind {
                            1.0 / (1.0 - x * y)
                        } else {
                            1.0 + x * y
                        };
                    }
                }
            }
        }
        Ok(z)
    }
}

/// Correlation kernel of the process in the `x_j^k = lambda_j^{(k)} - j + d`
/// coordinates, through the infinite-Toeplitz contour engine.
pub fn schur_process_kernel(
    spec: &SchurProcessSpec,
    radii: Option<ContourRadii>,
) -> Result<KernelEvaluator> {
    let levels = spec.level_symbols()?;
    infinite_toeplitz_kernel(&levels, spec.d, Budget::default(), radii)
}

/// The Schur measure `p(lambda) ~ s_lambda(a) s_lambda(b)`.
#[derive(Debug, Clone)]
pub struct SchurMeasureSpec {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    /// particle convention `x_j = lambda_j - j + d` (d = 0 by default)
    pub d: i64,
}

impl SchurMeasureSpec {
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.len() != b.len() || a.is_empty() {
            return Err(Error::domain("need equally many a and b parameters"));
        }
        if a.iter().chain(b.iter()).any(|&t| t <= 0.0 || t >= 1.0) {
            return Err(Error::domain("parameters must lie in (0,1)"));
        }
        Ok(SchurMeasureSpec { a, b, d: 0 })
    }

    pub fn partition_function(&self) -> f64 {
        let mut z = 1.0;
        for &x in &self.a {
            for &y in &self.b {
                z *= 1.0 / (1.0 - x * y);
            }
        }
        z
    }
}

/// The Schur-measure kernel
/// `K(u,v) = (1/2 pi i)^2 oint dz oint dw z^{u+m-1} / (w^{v+m} (w-z))
///  prod_i (1-a_i z)(w-b_i) / ((1-a_i w)(z-b_i))`
/// in the printed `x = lambda + 1 - j` convention, shifted to the spec's
/// `d` convention.
pub fn schur_measure_kernel(spec: &SchurMeasureSpec) -> Result<KernelEvaluator> {
    let m = spec.a.len() as i64;
    let bmax = spec.b.iter().cloned().fold(0.0f64, f64::max);
    let ainv = spec
        .a
        .iter()
        .map(|&x| 1.0 / x)
        .fold(f64::INFINITY, f64::min);
    if bmax >= ainv {
        return Err(Error::domain("contours need max(b) < 1/max(a)"));
    }
    let rho1 = bmax * (ainv / bmax).powf(1.0 / 3.0);
    let rho2 = bmax * (ainv / bmax).powf(2.0 / 3.0);
    let a = spec.a.clone();
    let b = spec.b.clone();
    let shift = 1 - spec.d; // printed kernel uses d = 1
    Ok(KernelEvaluator::new(
        format!("Schur measure kernel, m={m}"),
        Budget::default(),
        move |(_, u): Point, (_, v): Point| {
            let u = u + shift;
            let v = v + shift;
            let zc = Circle::origin(rho1);
            let wc = Circle::origin(rho2);
            let (val, _) = refine(
                "Schur measure kernel",
                Budget::default().start_nodes,
                Budget::default().tolerance,
                Budget::default().max_doublings,
                |n| {
                    let zs = zc.nodes(n);
                    let ws = wc.nodes(n);
                    let fz: Vec<Complex64> = zs
                        .iter()
                        .map(|&(z, _)| {
                            let mut t = crate::numeric::pow_i64(z, u + m - 1);
                            for i in 0..a.len() {
                                t *= (1.0 - a[i] * z) / (z - b[i]);
                            }
                            t
                        })
                        .collect();
                    let gw: Vec<Complex64> = ws
                        .iter()
                        .map(|&(w, _)| {
                            let mut t = crate::numeric::pow_i64(w, -(v + m));
                            for i in 0..a.len() {
                                t *= (w - b[i]) / (1.0 - a[i] * w);
                            }
                            t
                        })
                        .collect();
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (i, &(z, mz)) in zs.iter().enumerate() {
                        let f = fz[i] * mz;
                        for (j, &(w, mw)) in ws.iter().enumerate() {
                            acc += f * gw[j] * mw / (w - z);
                        }
                    }
                    acc
                },
            )?;
            Ok(val)
        },
    ))
}
