//! Random skew plane partitions under the `q^{volume}` measure.

use crate::error::{Error, Result};
use crate::kernel::{Budget, KernelEvaluator, Point};
use crate::numeric::pow_i64;
use crate::numeric::quad::{refine, Circle};
use crate::symfunc::Partition;
use num_complex::Complex64;
use std::sync::Arc;

/// Box `a x b`, inner shape `mu`, and per-diagonal weights `q_k`,
/// `k = -a+1, ..., b-1`.
#[derive(Debug, Clone)]
pub struct SkewPlanePartitionSpec {
    pub a: usize,
    pub b: usize,
    pub mu: Partition,
    pub qs: Vec<f64>,
}

impl SkewPlanePartitionSpec {
    pub fn uniform(a: usize, b: usize, mu: Partition, q: f64) -> Result<Self> {
        let spec = SkewPlanePartitionSpec {
            a,
            b,
            mu,
            qs: vec![q; a + b - 1],
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.a == 0 || self.b == 0 {
            return Err(Error::domain("box must be nonempty"));
        }
        if self.qs.len() != self.a + self.b - 1 {
            return Err(Error::domain("need one q per diagonal -a < k < b"));
        }
        if self.qs.iter().any(|&q| q <= 0.0 || q >= 1.0) {
            return Err(Error::domain("weights must lie in (0,1)"));
        }
        // the time sequence needs l(mu) < a and mu_1 < b strictly
        if self.mu.length() >= self.a || self.mu.part(1) as usize >= self.b {
            return Err(Error::domain("inner shape does not fit the box"));
        }
        Ok(())
    }

    fn q(&self, k: i64) -> f64 {
        // q_k for -a+1 <= k <= b-1
        self.qs[(k + self.a as i64 - 1) as usize]
    }

    /// Cumulative products `Q_k = q_{-a+1} ... q_k`, with `Q_{-a} = 1`.
    fn q_prod(&self, k: i64) -> f64 {
        let mut acc = 1.0;
        let mut j = -(self.a as i64) + 1;
        while j <= k {
            acc *= self.q(j);
            j += 1;
        }
        acc
    }

    /// Corner decomposition of `mu = <c_1^{l_1} ... c_m^{l_m}>`: the
    /// increasing-step set `I` and decreasing-step set `J` partitioning
    /// `[-a, b-1]`.
    fn step_sets(&self) -> (Vec<i64>, Vec<i64>) {
        // column-lengths decomposition: distinct part values c_1 < ... < c_m
        // with multiplicities (mu read as <c^l> with c increasing)
        let mut groups: Vec<(i64, i64)> = Vec::new(); // (c_j, l_j), increasing c
        let parts = self.mu.parts();
        let mut i = parts.len();
        while i > 0 {
            let v = parts[i - 1] as i64;
            let mut cnt = 0i64;
            while i > 0 && parts[i - 1] as i64 == v {
                cnt += 1;
                i -= 1;
            }
            if v > 0 {
                groups.push((v, cnt));
            }
        }
        let m = groups.len();
        // L_r = l_r + ... + l_m
        let mut l_suffix = vec![0i64; m + 2];
        for r in (1..=m).rev() {
            l_suffix[r] = l_suffix[r + 1] + groups[r - 1].1;
        }
        // times: t_j = c_{j-1} - L_j (c_0 = 0), tau_j = c_j - L_j,
        // tau_0 = -a, tau_{m+1} = b
        let mut t = vec![0i64; m + 2];
        let mut tau = vec![0i64; m + 2];
        tau[0] = -(self.a as i64);
        for j in 1..=m {
            let c_jm1 = if j >= 2 { groups[j - 2].0 } else { 0 };
            t[j] = c_jm1 - l_suffix[j];
            tau[j] = groups[j - 1].0 - l_suffix[j];
        }
        t[m + 1] = groups.last().map(|g| g.0).unwrap_or(0) - 0;
        // t_{m+1} = c_m - L_{m+1} = c_m
        tau[m + 1] = self.b as i64;

        let mut iset = Vec::new();
        let mut jset = Vec::new();
        for r in 1..=(m + 1) {
            let mut k = tau[r - 1];
            while k < t[r] {
                iset.push(k);
                k += 1;
            }
            let mut k = t[r];
            while k < tau[r] {
                jset.push(k);
                k += 1;
            }
        }
        (iset, jset)
    }

    /// `a_k^+ = 1/Q_k` on increasing steps, `a_k^- = Q_k` on decreasing
    /// steps, zero otherwise.
    pub fn coefficients(&self) -> (std::collections::HashMap<i64, f64>, std::collections::HashMap<i64, f64>) {
        let (iset, jset) = self.step_sets();
        let mut plus = std::collections::HashMap::new();
        let mut minus = std::collections::HashMap::new();
        for &k in &iset {
            plus.insert(k, 1.0 / self.q_prod(k));
        }
        for &k in &jset {
            minus.insert(k, self.q_prod(k));
        }
        (plus, minus)
    }
}

/// The correlation kernel in the variables `x_j^k = lambda_j^{(k)} - j + 1`:
/// a pure double-contour integral whose contour nesting switches with the
/// sign of `r - s`.
pub fn skew_pp_kernel(spec: &SkewPlanePartitionSpec) -> Result<KernelEvaluator> {
    spec.validate()?;
    let spec = Arc::new(spec.clone());
    let (plus, minus) = spec.coefficients();
    let a_len = spec.a as i64;
    let b_len = spec.b as i64;
    Ok(KernelEvaluator::new(
        format!("skew plane partition kernel, {}x{} box", spec.a, spec.b),
        Budget::default(),
        move |(r, u): Point, (s, v): Point| {
            if r <= -a_len || r >= b_len || s <= -a_len || s >= b_len {
                return Err(Error::domain("diagonal index outside the box"));
            }
            // radii: z must enclose its poles (|.| <= Q_r), w exclude its
            // (|.| >= Q_{s-1}); w outside z for r >= s, inside for r < s
            let qr = spec.q_prod(r);
            let qs1 = spec.q_prod(s - 1);
            let (rho_z, rho_w) = if r >= s {
                (qr.powf(2.0 / 3.0) * qs1.powf(1.0 / 3.0),
                 qr.powf(1.0 / 3.0) * qs1.powf(2.0 / 3.0))
            } else {
                (qr * 1.3, qs1 * 0.7)
            };
            if r >= s && !(qr < rho_z && rho_z < rho_w && rho_w < qs1) {
                return Err(Error::domain(
                    "empty feasible radius interval for these diagonals",
                ));
            }
            let zc = Circle::origin(rho_z);
            let wc = Circle::origin(rho_w);
            let plus = plus.clone();
            let minus = minus.clone();
            let (val, _) = refine(
                "skew plane partition kernel",
                Budget::default().start_nodes,
                Budget::default().tolerance,
                Budget::default().max_doublings,
                |n| {
                    let zs = zc.nodes(n);
                    let ws = wc.nodes(n);
                    let fz: Vec<Complex64> = zs
                        .iter()
                        .map(|&(z, _)| {
                            let mut t = pow_i64(z, u - 1);
                            for k in -a_len..r {
                                if let Some(&ap) = plus.get(&k) {
                                    t *= 1.0 - ap * z;
                                }
                            }
                            for k in r..b_len {
                                if let Some(&am) = minus.get(&k) {
                                    t /= 1.0 - am / z;
                                }
                            }
                            t
                        })
                        .collect();
                    let gw: Vec<Complex64> = ws
                        .iter()
                        .map(|&(w, _)| {
                            let mut t = pow_i64(w, -v);
                            for k in s..b_len {
                                if let Some(&am) = minus.get(&k) {
                                    t *= 1.0 - am / w;
                                }
                            }
                            for k in -a_len..s {
                                if let Some(&ap) = plus.get(&k) {
                                    t /= 1.0 - ap * w;
                                }
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
