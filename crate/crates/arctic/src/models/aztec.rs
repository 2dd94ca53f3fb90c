//! The Aztec diamond particle process and its contour kernel.
//!
//! Levels run over `1..2n-1` (column index of the rotated graph), positions
//! over the integers. All coordinate conventions between dominoes and
//! particles are centralized here: a vertex of the Aztec graph carries a
//! particle exactly when its matched edge points to the right, and the
//! lattice coordinate `(x1, x2)` maps to the space-time point
//! `(x1, x2/2)` for white vertices (odd columns) and `(x1, (x2-1)/2)` for
//! black vertices (even columns).

use crate::error::{Error, Result};
use crate::kasteleyn::{DimerConfiguration, PlanarGraph, Vertex};
use crate::kernel::{Budget, KernelEvaluator, Point};
use crate::lgv::TransitionEnsemble;
use crate::numeric::quad::{refine, Circle};
use crate::toeplitz::{ContourRadii, LevelSymbols, SymbolSpec};
use num_complex::Complex64;
use std::sync::Arc;

#[derive(Debug, Clone, Copy)]
pub struct AztecEnsembleSpec {
    pub n: usize,
    pub a: f64,
}

impl AztecEnsembleSpec {
    pub fn new(n: usize, a: f64) -> Result<Self> {
        if n < 1 || a <= 0.0 {
            return Err(Error::domain("need n >= 1 and a > 0"));
        }
        Ok(AztecEnsembleSpec { n, a })
    }

    fn split(level: i64) -> (i64, i64) {
        (level.div_euclid(2), level.rem_euclid(2))
    }
}

/// The product-measure ensemble (M = n paths pinned at `1 - j`).
pub fn aztec_ensemble(spec: AztecEnsembleSpec) -> Arc<TransitionEnsemble> {
    let a = spec.a;
    let m = spec.n as i64;
    TransitionEnsemble::new(
        0,
        2 * m,
        (1..=m).map(|j| 1 - j).collect(),
        (1..=m).map(|j| 1 - j).collect(),
        (-2 * m, m + 1),
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
    .expect("valid ensemble")
}

/// The per-level Wiener-Hopf symbols `1 + a z` (even steps) and
/// `1/(1 - a/z)` (odd steps); requires `a < 1`.
pub fn aztec_levels(spec: AztecEnsembleSpec) -> Result<Arc<LevelSymbols>> {
    let e = SymbolSpec::plus_factor(Complex64::new(-spec.a, 0.0), 1)?;
    let h = SymbolSpec::minus_factor(Complex64::new(spec.a, 0.0), -1)?;
    let phis = (0..2 * spec.n)
        .map(|r| if r % 2 == 0 { e.clone() } else { h.clone() })
        .collect();
    Ok(Arc::new(LevelSymbols::new(0, 2 * spec.n as i64, phis)?))
}

/// Saddle point of the diagonal exponent
/// `u ln z - eh ln(1 - a/z) - ee ln(1 + a z)`: the root of the quadratic
/// `a(u - ee) z^2 + (u(1-a^2) + a^2(ee - eh)) z - a(u + eh) = 0`
/// with real part beyond `a`, when one exists.
fn saddle(a: f64, u: f64, ee: f64, eh: f64) -> Option<f64> {
    let qa = a * (u - ee);
    let qb = u * (1.0 - a * a) + a * a * (ee - eh);
    let qc = -a * (u + eh);
    if qa.abs() < 1e-12 {
        if qb.abs() < 1e-12 {
            return None;
        }
        let z = -qc / qb;
        return (z > a).then_some(z);
    }
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        // coalesced/complex saddles (bulk): use the modulus
        let z = (qc / qa).abs().sqrt();
        return (z > a).then_some(z);
    }
    let r1 = (-qb + disc.sqrt()) / (2.0 * qa);
    let r2 = (-qb - disc.sqrt()) / (2.0 * qa);
    [r1, r2]
        .into_iter()
        .filter(|&z| z > a)
        .min_by(|x, y| x.total_cmp(y))
}

/// Contours through the saddle: a z-circle through `z_c` enclosing `{0, a}`
/// but not `-1/a`, and a slightly larger concentric w-circle.
fn saddle_circles(a: f64, z_c: f64, sep: f64) -> (Circle, Circle) {
    let lo = (z_c - 1.0 / a) / 2.0;
    let hi = z_c / 2.0;
    let x0 = (lo.max(0.0) + hi) / 2.0;
    let r = z_c - x0;
    (
        Circle::at(x0, r),
        Circle::at(x0, r * (1.0 + sep)),
    )
}

struct AztecState {
    n: i64,
    a: f64,
    budget: Budget,
    /// fixed origin-centered radii when inside the legal annulus (a < 1)
    radii: Option<(f64, f64)>,
}

impl AztecState {
    /// Single integral `(1/2 pi i) oint z^{power} (1+az)^{e_exp}
    /// (1-a/z)^{h_exp} dz/z`. The radius stays outside `a` when the `h`
    /// factor sits in the denominator, inside `1/a` when the `e` factor
    /// does, and otherwise minimizes the integrand magnitude on the
    /// positive axis.
    fn single(&self, power: i64, e_exp: i64, h_exp: i64) -> Result<Complex64> {
        let a = self.a;
        let lo_bound = if h_exp < 0 { a * 1.0001 } else { 1e-3 * a.min(1.0) };
        let hi_bound = if e_exp < 0 {
            0.9999 / a
        } else {
            (a + 8.0).max(2.0 / a)
        };
        let logmag = |rho: f64| -> f64 {
            power as f64 * rho.ln()
                + e_exp as f64 * (1.0 + a * rho).ln()
                + h_exp as f64 * (1.0 - a / rho).abs().ln()
        };
        let (mut lo, mut hi) = (lo_bound.ln(), hi_bound.ln());
        for _ in 0..80 {
            let m1 = lo + (hi - lo) * 0.382;
            let m2 = lo + (hi - lo) * 0.618;
            if logmag(m1.exp()) < logmag(m2.exp()) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        let rho = (0.5 * (lo + hi)).exp();
        let scale = logmag(rho);
        let circle = Circle::origin(rho);
        let (v, _) = refine(
            "aztec single integral",
            self.budget.start_nodes,
            self.budget.tolerance,
            self.budget.max_doublings,
            |nn| {
                circle
                    .nodes(nn)
                    .into_iter()
                    .map(|(z, mu)| {
                        let lg = power as f64 * z.ln()
                            + e_exp as f64 * (1.0 + a * z).ln()
                            + h_exp as f64 * (1.0 - a / z).ln()
                            - scale;
                        mu / z * lg.exp()
                    })
                    .sum()
            },
        )?;
        Ok(v * Complex64::new(scale, 0.0).exp())
    }

    /// The double-contour term of the kernel (both forms share this shape):
    /// `(1/2 pi i)^2 oint dz oint dw exp(F(z) + G(w)) / denom`.
    #[allow(clippy::too_many_arguments)]
    fn double(
        &self,
        // z-side exponents: z^{pz} (1+az)^{-ez} (1-a/z)^{-hz}
        pz: i64,
        ez: i64,
        hz: i64,
        // w-side exponents: w^{pw} (1+aw)^{ew} (1-a/w)^{hw}
        pw: i64,
        ew: i64,
        hw: i64,
        w_minus_z: bool,
        w_inside: bool,
    ) -> Result<Complex64> {
        let a = self.a;
        let (zc, wc) = self.contours(pz, ez, hz, w_inside)?;
        let logf = move |z: Complex64| {
            pz as f64 * z.ln() - ez as f64 * (1.0 + a * z).ln() - hz as f64 * (1.0 - a / z).ln()
        };
        let logg = move |w: Complex64| {
            pw as f64 * w.ln() + ew as f64 * (1.0 + a * w).ln() + hw as f64 * (1.0 - a / w).ln()
        };
        // magnitude normalization at the contour's rightmost points
        let z0 = zc.center + Complex64::new(zc.radius, 0.0);
        let w0 = wc.center + Complex64::new(wc.radius, 0.0);
        let cz = logf(z0).re;
        let cw = logg(w0).re;
        let (v, _) = refine(
            "aztec double contour",
            self.budget.start_nodes,
            self.budget.tolerance,
            self.budget.max_doublings,
            |nn| {
                let zs = zc.nodes(nn);
                let ws = wc.nodes(nn);
                let fz: Vec<Complex64> =
                    zs.iter().map(|&(z, _)| (logf(z) - cz).exp()).collect();
                let gw: Vec<Complex64> =
                    ws.iter().map(|&(w, _)| (logg(w) - cw).exp()).collect();
                let mut acc = Complex64::new(0.0, 0.0);
                for (i, &(z, mz)) in zs.iter().enumerate() {
                    if fz[i] == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let f = fz[i] * mz;
                    for (j, &(w, mw)) in ws.iter().enumerate() {
                        let d = if w_minus_z { w - z } else { z - w };
                        acc += f * gw[j] * mw / d;
                    }
                }
                acc
            },
        )?;
        Ok(v * Complex64::new(cz + cw, 0.0).exp())
    }

    /// Concentric contours: origin-centered circles inside `(a, 1/a)` when
    /// available, otherwise saddle-adapted circles.
    fn contours(&self, pz: i64, ez: i64, hz: i64, w_inside: bool) -> Result<(Circle, Circle)> {
        if let Some((r1, r2)) = self.radii {
            let (zr, wr) = if w_inside { (r2, r1) } else { (r1, r2) };
            return Ok((Circle::origin(zr), Circle::origin(wr)));
        }
        // saddle mode: exponent of the z-side is -F with
        // F = -pz ln z + ez ln(1+az) + hz ln(1-a/z); the saddle equation
        // uses u = pz, ee = ez, eh = hz up to sign conventions
        let z_c = saddle(self.a, pz as f64, ez as f64, hz as f64)
            .unwrap_or(1.2 * self.a.max(1.0));
        let sep = (0.6 * (self.n as f64).powf(-1.0 / 3.0)).clamp(0.02, 0.35);
        let (zc, wc) = saddle_circles(self.a, z_c, sep);
        if w_inside {
            // z takes the outer circle, w a shrunken concentric one
            let inner = Circle {
                center: zc.center,
                radius: zc.radius * (1.0 - sep).max(0.1),
            };
            Ok((wc, inner))
        } else {
            Ok((zc, wc))
        }
    }
}

/// The Aztec particle correlation kernel (first contour form), with
/// automatic saddle-adapted contours for `a = 1` or large `n`.
/// Space-time points are `(level, position)`, `1 <= level <= 2n - 1`.
pub fn aztec_kernel(
    spec: AztecEnsembleSpec,
    radii: Option<ContourRadii>,
) -> Result<KernelEvaluator> {
    let n = spec.n as i64;
    let a = spec.a;
    let fixed = match radii {
        Some(c) => {
            if !(a < c.inner && c.inner < c.outer && c.outer < 1.0 / a) {
                return Err(Error::domain(format!(
                    "contour radii must satisfy {a} < rho1 < rho2 < {}",
                    1.0 / a
                )));
            }
            Some((c.inner, c.outer))
        }
        None => {
            if a < 0.995 && spec.n <= 48 {
                let t1 = a.powf(1.0 / 3.0);
                Some((t1, 1.0 / t1))
            } else {
                None
            }
        }
    };
    let state = Arc::new(AztecState {
        n,
        a,
        budget: Budget::default(),
        radii: fixed,
    });
    Ok(KernelEvaluator::new(
        format!("one-Aztec kernel, n={}, a={}", spec.n, spec.a),
        Budget::default(),
        move |(l1, u): Point, (l2, v): Point| {
            if l1 < 1 || l1 > 2 * state.n - 1 || l2 < 1 || l2 > 2 * state.n - 1 {
                return Err(Error::domain("level outside 1..2n-1"));
            }
            let (r, e1) = AztecEnsembleSpec::split(l1);
            let (s, e2) = AztecEnsembleSpec::split(l2);
            let mut acc = Complex64::new(0.0, 0.0);
            if l1 < l2 {
                acc -= state.single(u - v, s - r + e2 - e1, -(s - r))?;
            }
            // z^{u-1} (1-a/z)^{-(n-r)} (1+az)^{-(r+e1)};
            // w^{-v} (1-a/w)^{n-s} (1+aw)^{s+e2}
            acc += state.double(
                u - 1,
                r + e1,
                state.n - r,
                -v,
                s + e2,
                state.n - s,
                true,
                false,
            )?;
            Ok(acc)
        },
    ))
}

/// The second contour form, obtained from the first by `z -> -1/z`,
/// `w -> -1/w`: evaluates the kernel through
/// `(-1)^{u-v} K(l1,u;l2,v) = -single' + double'` and undoes the gauge.
/// Requires `a < 1`.
pub fn aztec_kernel_alt(spec: AztecEnsembleSpec) -> Result<KernelEvaluator> {
    if spec.a >= 1.0 {
        return Err(Error::domain("alternative form needs a < 1"));
    }
    let n = spec.n as i64;
    let t1 = spec.a.powf(1.0 / 3.0);
    let state = Arc::new(AztecState {
        n,
        a: spec.a,
        budget: Budget::default(),
        radii: Some((t1, 1.0 / t1)),
    });
    Ok(KernelEvaluator::new(
        format!("one-Aztec kernel (reflected form), n={}, a={}", spec.n, spec.a),
        Budget::default(),
        move |(l1, u): Point, (l2, v): Point| {
            if l1 < 1 || l1 > 2 * state.n - 1 || l2 < 1 || l2 > 2 * state.n - 1 {
                return Err(Error::domain("level outside 1..2n-1"));
            }
            let (r, e1) = AztecEnsembleSpec::split(l1);
            let (s, e2) = AztecEnsembleSpec::split(l2);
            let mut acc = Complex64::new(0.0, 0.0);
            if l1 < l2 {
                // -(1/2pi i) oint z^{v-u} (1+az)^{r-s} (1-a/z)^{s-r+e2-e1} dz/z
                acc -= state.single(v - u, r - s, s - r + e2 - e1)?;
            }
            // w^{v-1} (1+aw)^{n-s} (1-a/w)^{s+e2};
            // z^{-u} (1+az)^{-(n-r)} (1-a/z)^{-(r+e1)}; denominator (z-w),
            // w inside z
            acc += state.double(
                -u,
                n - r,
                r + e1,
                v - 1,
                n - s,
                s + e2,
                false,
                true,
            )?;
            let gauge = if (u - v).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            Ok(gauge * acc)
        },
    ))
}

/// Species-independent particle map: every vertex whose matched dimer points
/// to the right carries a particle. Returns all `(level, position)` pairs,
/// boundary columns included.
pub fn aztec_particle_map(
    graph: &PlanarGraph,
    config: &DimerConfiguration,
) -> Result<Vec<(i64, i64)>> {
    let mut points = Vec::new();
    for b in 0..graph.black_count() {
        let (bx, by) = graph.black_coord(b);
        let w = config.white_of_black(graph, b);
        let (wx, wy) = graph.white_coord(w);
        if wx == bx + 1 {
            // black matched rightward
            points.push((bx, (by - 1) / 2));
        }
        if bx == wx + 1 {
            // white matched rightward
            points.push((wx, wy / 2));
        }
    }
    points.sort();
    Ok(points)
}

/// Inverse of [`aztec_particle_map`]: reconstructs the unique tiling with
/// the given particle set by backtracking over the orientation constraints.
pub fn aztec_particles_to_config(
    graph: &PlanarGraph,
    particles: &[(i64, i64)],
) -> Result<DimerConfiguration> {
    use std::collections::HashSet;
    let set: HashSet<(i64, i64)> = particles.iter().copied().collect();
    // vertex carries a particle <-> matched rightward
    let wants_right = |v: Vertex| -> bool {
        let (x1, x2) = match v {
            Vertex::Black(i) => graph.black_coord(i),
            Vertex::White(i) => graph.white_coord(i),
        };
        let u = if x1 % 2 == 0 { (x2 - 1) / 2 } else { x2 / 2 };
        set.contains(&(x1, u))
    };
    // candidate edges: keep those consistent with both endpoint orientations
    let mut allowed: Vec<usize> = Vec::new();
    for (id, e) in graph.edges().iter().enumerate() {
        let (bx, _) = graph.black_coord(e.black);
        let (wx, _) = graph.white_coord(e.white);
        let b_right = wx == bx + 1;
        // the right-pointing endpoint must want a particle, the
        // left-pointing endpoint must not
        let ok = if b_right {
            wants_right(Vertex::Black(e.black)) && !wants_right(Vertex::White(e.white))
        } else {
            wants_right(Vertex::White(e.white)) && !wants_right(Vertex::Black(e.black))
        };
        if ok {
            allowed.push(id);
        }
    }
    // perfect matching inside the allowed edge set by backtracking
    let n = graph.black_count();
    let mut by_black: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &e in &allowed {
        by_black[graph.edges()[e].black].push(e);
    }
    let mut white_used = vec![false; graph.white_count()];
    let mut chosen = Vec::with_capacity(n);
    fn rec(
        graph: &PlanarGraph,
        by_black: &[Vec<usize>],
        b: usize,
        white_used: &mut [bool],
        chosen: &mut Vec<usize>,
    ) -> bool {
        if b == by_black.len() {
            return true;
        }
        for &e in &by_black[b] {
            let w = graph.edges()[e].white;
            if !white_used[w] {
                white_used[w] = true;
                chosen.push(e);
                if rec(graph, by_black, b + 1, white_used, chosen) {
                    return true;
                }
                chosen.pop();
                white_used[w] = false;
            }
        }
        false
    }
    if !rec(graph, &by_black, 0, &mut white_used, &mut chosen) {
        return Err(Error::domain(
            "particle set is not the image of any tiling",
        ));
    }
    DimerConfiguration::new(graph, chosen)
}
