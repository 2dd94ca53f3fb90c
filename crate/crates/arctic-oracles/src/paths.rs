//! Oracles for non-intersecting path measures.
//!
//! Two independent routes are provided: direct enumeration of
//! Aztec-transition path families (no determinants anywhere), and a
//! transfer-matrix summation of the product-of-determinants measure over
//! sorted configurations.

use arctic::symfunc::{Field, Ring};
use num_complex::Complex64;

/// Aztec-type steps: `E(a)` moves up by 0 or 1 (weight `a` for the up move),
/// `H(a)` descends geometrically (weight `a^{x-y}`, `y <= x`).
#[derive(Debug, Clone, Copy)]
pub enum Step {
    E(f64),
    H(f64),
}

/// Non-intersecting paths with Aztec transitions; boundary pinned on both
/// sides to `boundary`.
pub struct AztecPathModel {
    pub steps: Vec<Step>,
    pub boundary: Vec<i64>, // strictly decreasing
}

#[derive(Debug, Clone)]
pub struct Family {
    /// positions per level: `levels[r]` is the configuration at level `r`
    /// (including the pinned boundary levels 0 and N)
    pub levels: Vec<Vec<i64>>,
    pub weight: f64,
}

impl AztecPathModel {
    /// Ordinary Aztec diamond of size `n`: 2n steps alternating E, H with
    /// the E step first, `M = n` paths pinned at `1 - j`.
    pub fn aztec(n: usize, a: f64) -> Self {
        let steps = (0..2 * n)
            .map(|r| if r % 2 == 0 { Step::E(a) } else { Step::H(a) })
            .collect();
        AztecPathModel {
            steps,
            boundary: (1..=n as i64).map(|j| 1 - j).collect(),
        }
    }

    /// Double-Aztec inlier paths: `N = 2n + 1` steps, `M = 2m + 1` paths
    /// pinned at `m + 1 - j`. `h_first` selects whether even steps are
    /// H-type (matching the printed double-Aztec kernel formulas) or E-type.
    pub fn double_aztec(n: usize, m: usize, a: f64, h_first: bool) -> Self {
        let steps = (0..2 * n + 1)
            .map(|r| {
                if (r % 2 == 0) == h_first {
                    Step::H(a)
                } else {
                    Step::E(a)
                }
            })
            .collect();
        AztecPathModel {
            steps,
            boundary: (1..=(2 * m + 1) as i64).map(|j| m as i64 + 1 - j).collect(),
        }
    }

    fn remaining_e(&self, from_level: usize) -> i64 {
        self.steps[from_level..]
            .iter()
            .filter(|s| matches!(s, Step::E(_)))
            .count() as i64
    }

    /// All families with their weights, by recursive extension level by
    /// level under the vertex-disjointness constraints.
    pub fn enumerate(&self) -> Vec<Family> {
        let mut out = Vec::new();
        let start = self.boundary.clone();
        let mut levels = vec![start];
        self.extend(&mut levels, 1.0, &mut out);
        out
    }

    fn extend(&self, levels: &mut Vec<Vec<i64>>, weight: f64, out: &mut Vec<Family>) {
        let r = levels.len() - 1;
        if r == self.steps.len() {
            if levels[r] == self.boundary {
                out.push(Family {
                    levels: levels.clone(),
                    weight,
                });
            }
            return;
        }
        let cur = levels[r].clone();
        let m = cur.len();
        match self.steps[r] {
            Step::E(a) => {
                // each path moves up by 0/1; strict order must survive
                for mask in 0..(1u32 << m) {
                    let mut next = Vec::with_capacity(m);
                    let mut w = 1.0;
                    let mut ok = true;
                    for (j, &x) in cur.iter().enumerate() {
                        let up = (mask >> j) & 1 == 1;
                        let y = if up { x + 1 } else { x };
                        if up {
                            w *= a;
                        }
                        if j > 0 && y >= next[j - 1] {
                            ok = false;
                            break;
                        }
                        next.push(y);
                    }
                    if ok {
                        levels.push(next);
                        self.extend(levels, weight * w, out);
                        levels.pop();
                    }
                }
            }
            Step::H(a) => {
                // descend: y_j in (x_{j+1}, x_j], intervals disjoint; prune
                // with the climb still available to reach the boundary
                let rem = self.remaining_e(r + 1);
                let mut choices: Vec<Vec<(i64, f64)>> = Vec::with_capacity(m);
                for (j, &x) in cur.iter().enumerate() {
                    let lower = if j + 1 < m {
                        cur[j + 1] + 1
                    } else {
                        self.boundary[m - 1] - rem
                    }
                    .max(self.boundary[j] - rem);
                    let mut opts = Vec::new();
                    let mut y = x;
                    while y >= lower {
                        opts.push((y, a.powi((x - y) as i32)));
                        y -= 1;
                    }
                    if opts.is_empty() {
                        return; // no admissible descent for this path
                    }
                    choices.push(opts);
                }
                let mut pick = vec![0usize; m];
                'outer: loop {
                    let mut next = Vec::with_capacity(m);
                    let mut w = 1.0;
                    for j in 0..m {
                        let (y, wy) = choices[j][pick[j]];
                        next.push(y);
                        w *= wy;
                    }
                    levels.push(next);
                    self.extend(levels, weight * w, out);
                    levels.pop();
                    // odometer
                    let mut pos = 0;
                    loop {
                        if pos == m {
                            break 'outer;
                        }
                        pick[pos] += 1;
                        if pick[pos] < choices[pos].len() {
                            break;
                        }
                        pick[pos] = 0;
                        pos += 1;
                    }
                }
            }
        }
    }

    /// Exact correlation of the point set `{(level, position)}` under the
    /// normalized family measure.
    pub fn correlation(&self, points: &[(i64, i64)]) -> f64 {
        let families = self.enumerate();
        let z: f64 = families.iter().map(|f| f.weight).sum();
        let mut num = 0.0;
        for f in &families {
            if points
                .iter()
                .all(|&(r, u)| f.levels[r as usize].contains(&u))
            {
                num += f.weight;
            }
        }
        num / z
    }

    pub fn partition_function(&self) -> f64 {
        self.enumerate().iter().map(|f| f.weight).sum()
    }
}

/// Transfer-matrix oracle for a general product-of-determinants measure on
/// sorted configurations inside a window, generic over the weight ring.
pub struct ProductMeasureOracle<T> {
    pub levels: i64, // steps: levels 0..=levels
    pub m: usize,
    pub boundary_left: Vec<i64>,
    pub boundary_right: Vec<i64>,
    pub window: (i64, i64),
    pub trans: Box<dyn Fn(i64, i64, i64) -> T>,
}

impl<T: Field> ProductMeasureOracle<T> {
    fn states(&self) -> Vec<Vec<i64>> {
        // strictly decreasing m-tuples in the window
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(
            lo: i64,
            hi: i64,
            m: usize,
            cur: &mut Vec<i64>,
            out: &mut Vec<Vec<i64>>,
        ) {
            if cur.len() == m {
                out.push(cur.clone());
                return;
            }
            let start = cur.last().map(|&x| x - 1).unwrap_or(hi);
            let needed = (m - cur.len()) as i64;
            let mut x = start;
            while x - needed + 1 >= lo {
                cur.push(x);
                rec(lo, hi, m, cur, out);
                cur.pop();
                x -= 1;
            }
        }
        rec(self.window.0, self.window.1, self.m, &mut cur, &mut out);
        out
    }

    fn det_between(&self, r: i64, x: &[i64], y: &[i64]) -> T {
        let m = self.m;
        let mat: Vec<Vec<T>> = (0..m)
            .map(|j| (0..m).map(|k| (self.trans)(r, x[j], y[k])).collect())
            .collect();
        arctic::numeric::linalg::det_field(mat)
    }

    /// `Z` and the constrained sum with required points (level -> positions
    /// that must be present).
    pub fn constrained_sum(&self, required: &[(i64, i64)]) -> T {
        let states = self.states();
        let ok = |level: i64, state: &[i64]| -> bool {
            required
                .iter()
                .filter(|&&(r, _)| r == level)
                .all(|&(_, u)| state.contains(&u))
        };
        // forward DP from the left boundary
        let mut cur: Vec<(Vec<i64>, T)> = vec![(self.boundary_left.clone(), T::one())];
        for level in 1..self.levels {
            let mut next: Vec<(Vec<i64>, T)> = Vec::new();
            for s in &states {
                if !ok(level, s) {
                    continue;
                }
                let mut acc = T::zero();
                for (prev, w) in &cur {
                    let d = self.det_between(level - 1, prev, s);
                    acc = acc + w.clone() * d;
                }
                if acc != T::zero() {
                    next.push((s.clone(), acc));
                }
            }
            cur = next;
        }
        let mut z = T::zero();
        for (prev, w) in &cur {
            let d = self.det_between(self.levels - 1, prev, &self.boundary_right);
            z = z + w.clone() * d;
        }
        z
    }

    pub fn z(&self) -> T {
        self.constrained_sum(&[])
    }

    pub fn correlation(&self, points: &[(i64, i64)]) -> T {
        self.constrained_sum(points) / self.z()
    }
}

/// Convenience: the Aztec product-measure oracle over `Complex64`.
pub fn aztec_product_oracle(
    n: usize,
    a: f64,
    m: usize,
    boundary: Vec<i64>,
    steps_h_first: bool,
    levels: i64,
) -> ProductMeasureOracle<Complex64> {
    let window = (
        *boundary.last().unwrap() - levels,
        boundary[0] + levels,
    );
    let _ = n;
    ProductMeasureOracle {
        levels,
        m,
        boundary_left: boundary.clone(),
        boundary_right: boundary,
        window,
        trans: Box::new(move |r, x, y| {
            let e_step = (r.rem_euclid(2) == 0) != steps_h_first;
            if e_step {
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
        }),
    }
}

/// Keeps the generic ring bound honest.
#[allow(dead_code)]
fn _assert_ring<T: Ring>() {}
