//! Partitions, symmetric polynomials and the determinantal identities that
//! the rest of the crate is tested against.
//!
//! Everything here is generic over the scalar ring so the identity tests can
//! run in exact rational (or Gaussian rational) arithmetic while the contour
//! machinery uses `Complex64`.

use crate::error::{Error, Result};
use crate::numeric::linalg::det_field;
use num_traits::{One, Zero};
use std::ops::{Div, Mul, Sub};

/// Ring operations needed by the polynomial generators.
pub trait Ring: Clone + PartialEq + Zero + One + Sub<Output = Self> + Mul<Output = Self> {}
impl<T> Ring for T where T: Clone + PartialEq + Zero + One + Sub<Output = T> + Mul<Output = T> {}

/// Field operations needed by the determinant-based identities.
pub trait Field: Ring + Div<Output = Self> {}
impl<T> Field for T where T: Ring + Div<Output = T> {}

/// An integer partition: weakly decreasing positive parts, trailing zeros
/// dropped on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition, checking that parts are weakly decreasing.
    pub fn new(parts: impl Into<Vec<u32>>) -> Result<Self> {
        let mut parts = parts.into();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::domain("partition parts must be weakly decreasing"));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `lambda_i` with one-based `i`; zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 || i > self.parts.len() {
            0
        } else {
            self.parts[i - 1]
        }
    }

    /// Number of strictly positive parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// `|lambda|`, the number of boxes.
    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Conjugate partition by column counting.
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(1) as usize;
        let mut parts = Vec::with_capacity(cols);
        for c in 1..=cols {
            parts.push(self.parts.iter().filter(|&&p| p as usize >= c).count() as u32);
        }
        Partition { parts }
    }

    /// `self_i <= other_i` for all `i`.
    pub fn contained_in(&self, other: &Partition) -> bool {
        (1..=self.length()).all(|i| self.part(i) <= other.part(i))
    }

    /// All partitions of weight at most `max_weight` (small enumerations for
    /// tests and series oracles).
    pub fn all_up_to_weight(max_weight: u32) -> Vec<Partition> {
        let mut out = vec![Partition::empty()];
        fn rec(out: &mut Vec<Partition>, prefix: &mut Vec<u32>, remaining: u32, max_part: u32) {
            for p in (1..=max_part.min(remaining)).rev() {
                prefix.push(p);
                out.push(Partition {
                    parts: prefix.clone(),
                });
                rec(out, prefix, remaining - p, p);
                prefix.pop();
            }
        }
        for w in 1..=max_weight {
            let mut prefix = Vec::new();
            // collect only those of exact weight w by filtering below
            let mut tmp = Vec::new();
            rec(&mut tmp, &mut prefix, w, w);
            out.extend(tmp.into_iter().filter(|p| p.weight() == w as u64));
        }
        out.sort();
        out.dedup();
        out
    }
}

/// `lambda / mu` with `mu` contained in `lambda`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewShape {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !inner.contained_in(&outer) {
            return Err(Error::domain("inner shape not contained in outer shape"));
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(outer: Partition) -> Self {
        SkewShape {
            outer,
            inner: Partition::empty(),
        }
    }
}

/// `lambda > mu` in the interlacing order: `lambda_1 >= mu_1 >= lambda_2 >= ...`
pub fn interlaces(lambda: &Partition, mu: &Partition) -> bool {
    let n = lambda.length().max(mu.length());
    for i in 1..=n {
        if lambda.part(i) < mu.part(i) {
            return false;
        }
        if mu.part(i) < lambda.part(i + 1) {
            return false;
        }
    }
    true
}

/// Elementary symmetric polynomial `e_k`: coefficient of `z^k` in
/// `prod (1 + x_i z)`. Zero for `k < 0` or `k > n`.
pub fn elementary_symmetric<T: Ring>(k: i64, xs: &[T]) -> T {
    let n = xs.len() as i64;
    if k < 0 || k > n {
        return T::zero();
    }
    let k = k as usize;
    let mut coeffs = vec![T::zero(); k + 1];
    coeffs[0] = T::one();
    for x in xs {
        for j in (1..=k).rev() {
            let add = x.clone() * coeffs[j - 1].clone();
            coeffs[j] = coeffs[j].clone() + add;
        }
    }
    coeffs[k].clone()
}

/// Complete symmetric polynomial `h_k`: coefficient of `z^k` in
/// `prod 1/(1 - x_i z)`. Zero for `k < 0`.
pub fn complete_symmetric<T: Ring>(k: i64, xs: &[T]) -> T {
    if k < 0 {
        return T::zero();
    }
    if xs.is_empty() {
        return if k == 0 { T::one() } else { T::zero() };
    }
    let k = k as usize;
    let mut coeffs = vec![T::zero(); k + 1];
    coeffs[0] = T::one();
    for x in xs {
        // with one more variable: h'[j] = h[j] + x h'[j-1]
        for j in 1..=k {
            let add = x.clone() * coeffs[j - 1].clone();
            coeffs[j] = coeffs[j].clone() + add;
        }
    }
    coeffs[k].clone()
}

/// Skew Schur polynomial by the Jacobi-Trudi h-determinant
/// `det(h_{lambda_i - mu_j - i + j})`.
pub fn skew_schur<T: Field>(shape: &SkewShape, xs: &[T]) -> T {
    let m = shape.outer.length();
    if m == 0 {
        return T::one();
    }
    let mat: Vec<Vec<T>> = (1..=m)
        .map(|i| {
            (1..=m)
                .map(|j| {
                    let k = shape.outer.part(i) as i64 - shape.inner.part(j) as i64 - i as i64
                        + j as i64;
                    complete_symmetric(k, xs)
                })
                .collect()
        })
        .collect();
    det_field(mat)
}

/// Dual Jacobi-Trudi form: `det(e_{lambda_i - mu_j - i + j})` computed on the
/// conjugate shapes. Equal to [`skew_schur`]; kept as the independent route.
pub fn skew_schur_dual<T: Field>(shape: &SkewShape, xs: &[T]) -> T {
    let outer = shape.outer.conjugate();
    let inner = shape.inner.conjugate();
    let m = outer.length();
    if m == 0 {
        return T::one();
    }
    let mat: Vec<Vec<T>> = (1..=m)
        .map(|i| {
            (1..=m)
                .map(|j| {
                    let k = outer.part(i) as i64 - inner.part(j) as i64 - i as i64 + j as i64;
                    elementary_symmetric(k, xs)
                })
                .collect()
        })
        .collect();
    det_field(mat)
}

/// Classical bialternant quotient `det(x_i^{lambda_j + n - j}) / det(x_i^{n-j})`
/// for distinct points.
pub fn schur_bialternant<T: Field>(lambda: &Partition, xs: &[T]) -> Result<T> {
    let n = xs.len();
    if lambda.length() > n {
        return Ok(T::zero());
    }
    let num: Vec<Vec<T>> = (0..n)
        .map(|i| {
            (1..=n)
                .map(|j| pow_usize(&xs[i], lambda.part(j) as usize + n - j))
                .collect()
        })
        .collect();
    let den: Vec<Vec<T>> = (0..n)
        .map(|i| (1..=n).map(|j| pow_usize(&xs[i], n - j)).collect())
        .collect();
    let d = det_field(den);
    if d == T::zero() {
        return Err(Error::domain("bialternant requires distinct points"));
    }
    Ok(det_field(num) / d)
}

fn pow_usize<T: Ring>(x: &T, mut k: usize) -> T {
    let mut base = x.clone();
    let mut acc = T::one();
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * base.clone();
        }
        base = base.clone() * base.clone();
        k >>= 1;
    }
    acc
}

/// Vandermonde determinant `det(x_i^{j-1})` through the product formula
/// `prod_{i<j} (x_j - x_i)`; the determinant route is only used in tests.
pub fn vandermonde<T: Ring>(xs: &[T]) -> T {
    let n = xs.len();
    let mut acc = T::one();
    for i in 0..n {
        for j in i + 1..n {
            acc = acc * (xs[j].clone() - xs[i].clone());
        }
    }
    acc
}

/// Both sides of the Cauchy-Binet/Andreief identity on a finite set:
/// `f` and `g` are `n` functions tabulated on `X` (`f[i][x]`), `mu` the
/// weights. Returns `(lhs, rhs)` where
/// `lhs = (1/n!) sum_{x in X^n} det(f_i(x_j)) det(g_i(x_j)) prod mu(x_j)` and
/// `rhs = det( sum_x f_i(x) g_j(x) mu(x) )`.
pub fn cauchy_binet_check<T: Field>(f: &[Vec<T>], g: &[Vec<T>], mu: &[T]) -> (T, T) {
    let n = f.len();
    assert_eq!(n, g.len());
    let size = mu.len();
    assert!(f.iter().chain(g.iter()).all(|row| row.len() == size));

    // Left side: brute force over all |X|^n tuples.
    let mut lhs = T::zero();
    let mut tuple = vec![0usize; n];
    loop {
        let fm: Vec<Vec<T>> = (0..n)
            .map(|i| (0..n).map(|j| f[i][tuple[j]].clone()).collect())
            .collect();
        let gm: Vec<Vec<T>> = (0..n)
            .map(|i| (0..n).map(|j| g[i][tuple[j]].clone()).collect())
            .collect();
        let mut term = det_field(fm) * det_field(gm);
        for &x in &tuple {
            term = term * mu[x].clone();
        }
        lhs = lhs + term;
        // advance the tuple odometer
        let mut pos = 0;
        loop {
            if pos == n {
                break;
            }
            tuple[pos] += 1;
            if tuple[pos] < size {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
        if pos == n {
            break;
        }
    }
    let mut factorial = T::one();
    for i in 1..=n {
        let mut k = T::zero();
        for _ in 0..i {
            k = k + T::one();
        }
        factorial = factorial * k;
    }
    lhs = lhs / factorial;

    // Right side: Gram determinant.
    let gram: Vec<Vec<T>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = T::zero();
                    for x in 0..size {
                        s = s + f[i][x].clone() * g[j][x].clone() * mu[x].clone();
                    }
                    s
                })
                .collect()
        })
        .collect();
    (lhs, det_field(gram))
}

#[cfg(test)]
mod tests;
