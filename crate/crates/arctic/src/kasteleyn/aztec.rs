//! Aztec diamond builders: uniform/biased weights and the two-periodic
//! weighting.
//!
//! Vertices live on the rotated lattice: white vertices at odd x1, even x2;
//! black vertices at even x1, odd x2, inside `[0, 2n] x [0, 2n]`. Edges join
//! vertices differing by `e1 = (1,1)` (weight-1 "horizontal" dominoes in the
//! uniform model) or `e2 = (-1,1)` (weight-a "vertical" dominoes, Kasteleyn
//! sign i).

use super::{Edge, KasteleynMatrix, PlanarGraph};
use crate::error::{Error, Result};
use num_complex::Complex64;
use num_rational::BigRational;

pub const E1: (i64, i64) = (1, 1);
pub const E2: (i64, i64) = (-1, 1);

/// The four domino species of the Aztec diamond, fixed by edge direction and
/// which side the white square is on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DominoType {
    /// horizontal, white square on the right
    East,
    /// horizontal, white square on the left
    West,
    /// vertical, white square on top
    North,
    /// vertical, white square on the bottom
    South,
}

/// Classifies an edge by the offset from its black to its white endpoint.
pub fn domino_type(graph: &PlanarGraph, edge: usize) -> DominoType {
    let e = &graph.edges()[edge];
    let b = graph.black_coord(e.black);
    let w = graph.white_coord(e.white);
    let d = (w.0 - b.0, w.1 - b.1);
    match d {
        d if d == E1 => DominoType::East,
        d if d == (-E1.0, -E1.1) => DominoType::West,
        d if d == E2 => DominoType::North,
        d if d == (-E2.0, -E2.1) => DominoType::South,
        _ => unreachable!("non-lattice edge in an Aztec graph"),
    }
}

/// True for `e1`-direction edges (weight 1, sign 1 in the uniform model).
pub fn is_horizontal(graph: &PlanarGraph, edge: usize) -> bool {
    matches!(
        domino_type(graph, edge),
        DominoType::East | DominoType::West
    )
}

fn aztec_graph(n: usize, weight: impl Fn((i64, i64), (i64, i64)) -> f64) -> PlanarGraph {
    let n_i = n as i64;
    let mut white = Vec::new();
    for x1 in (1..=2 * n_i - 1).step_by(2) {
        for x2 in (0..=2 * n_i).step_by(2) {
            white.push((x1, x2));
        }
    }
    let mut black = Vec::new();
    for x1 in (0..=2 * n_i).step_by(2) {
        for x2 in (1..=2 * n_i - 1).step_by(2) {
            black.push((x1, x2));
        }
    }
    let white_at = |c: (i64, i64)| -> Option<usize> {
        if c.0 < 1 || c.0 > 2 * n_i - 1 || c.1 < 0 || c.1 > 2 * n_i || c.0 % 2 == 0 {
            return None;
        }
        let row = ((c.0 - 1) / 2) as usize;
        let col = (c.1 / 2) as usize;
        Some(row * (n + 1) + col)
    };
    let mut edges = Vec::new();
    for (bi, &b) in black.iter().enumerate() {
        for d in [E1, (-E1.0, -E1.1), E2, (-E2.0, -E2.1)] {
            let w = (b.0 + d.0, b.1 + d.1);
            if let Some(wi) = white_at(w) {
                edges.push(Edge {
                    black: bi,
                    white: wi,
                    weight: weight(b, w),
                });
            }
        }
    }
    PlanarGraph::new(black, white, edges).expect("Aztec graph is well-formed")
}

/// Uniform sign choice shared by all Aztec-type builders: 1 on `e1`-direction
/// edges, i on `e2`-direction edges.
fn aztec_signs(graph: &PlanarGraph) -> Vec<Complex64> {
    (0..graph.edges().len())
        .map(|id| {
            if is_horizontal(graph, id) {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 1.0)
            }
        })
        .collect()
}

/// Aztec diamond of size `n`: weight 1 on horizontal edges, `a` on vertical
/// edges, Kasteleyn signs 1 and i.
pub fn build_aztec(n: usize, a: f64) -> Result<KasteleynMatrix> {
    if n < 1 {
        return Err(Error::domain("Aztec size must be at least 1"));
    }
    if a <= 0.0 {
        return Err(Error::domain("vertical weight must be positive"));
    }
    let graph = aztec_graph(n, |b, w| {
        let d = (w.0 - b.0, w.1 - b.1);
        if d == E1 || d == (-E1.0, -E1.1) {
            1.0
        } else {
            a
        }
    });
    let signs = aztec_signs(&graph);
    let mat = KasteleynMatrix::new(graph, |id, _e| signs[id])?;
    mat.verify_signs()?;
    Ok(mat)
}

/// Two-periodic Aztec diamond of size `n = 4m` with parameter `a in (0,1]`:
/// edge weights alternate between `a` and 1 around half the faces, entries
/// follow the four-case rule over the vertex classes
/// `B_j = {x1 + x2 = 2j + 1 mod 4}`.
pub fn build_two_periodic_aztec(m: usize, a: f64) -> Result<KasteleynMatrix> {
    if m < 1 {
        return Err(Error::domain("two-periodic size parameter must be at least 1"));
    }
    if a <= 0.0 || a > 1.0 {
        return Err(Error::domain("two-periodic weight must lie in (0, 1]"));
    }
    let n = 4 * m;
    let graph = aztec_graph(n, |b, w| two_periodic_weight(a, b, w));
    let signs = aztec_signs(&graph);
    let mat = KasteleynMatrix::new(graph, |id, _e| signs[id])?;
    mat.verify_signs()?;
    Ok(mat)
}

/// Weight (= entry modulus) of the two-periodic Kasteleyn matrix for the
/// black vertex `b` and white neighbor `w`.
pub fn two_periodic_weight(a: f64, b: (i64, i64), w: (i64, i64)) -> f64 {
    let j = (((b.0 + b.1).rem_euclid(4) - 1) / 2) as f64; // b in B_j
    let d = (w.0 - b.0, w.1 - b.1);
    if d == E1 {
        a * (1.0 - j) + j
    } else if d == E2 {
        a * j + (1.0 - j)
    } else if d == (-E1.0, -E1.1) {
        a * j + (1.0 - j)
    } else if d == (-E2.0, -E2.1) {
        a * (1.0 - j) + j
    } else {
        unreachable!("non-lattice edge")
    }
}

/// Exact Gaussian-rational entry for an Aztec-type matrix whose weights are
/// given exactly, used by the exact partition-function checks.
pub fn exact_entry(
    graph: &PlanarGraph,
    edge: usize,
    weight: BigRational,
) -> num_complex::Complex<BigRational> {
    let zero = BigRational::from_integer(0.into());
    if is_horizontal(graph, edge) {
        num_complex::Complex::new(weight, zero)
    } else {
        num_complex::Complex::new(zero, weight)
    }
}

/// Size parameter of an Aztec-type graph (vertices in `[0, 2n]^2`).
pub fn aztec_order(graph: &PlanarGraph) -> usize {
    let mut max = 0;
    for i in 0..graph.black_count() {
        max = max.max(graph.black_coord(i).0);
    }
    (max / 2) as usize
}

/// Diamond-shaped test cycles `|v - c|_1 = radius` around an even-sum center,
/// returned as (cyclic edge list, number of enclosed vertices). Used by the
/// extended sign-relation checks.
pub fn diamond_cycle(
    graph: &PlanarGraph,
    center: (i64, i64),
    radius: i64,
) -> Option<(Vec<usize>, usize)> {
    assert!(
        (center.0 + center.1) % 2 == 0,
        "cycle centers sit on the even sublattice"
    );
    // walk the boundary of the diamond counterclockwise
    let mut cycle_vertices = Vec::new();
    let corners = [
        (center.0 + radius, center.1),
        (center.0, center.1 + radius),
        (center.0 - radius, center.1),
        (center.0, center.1 - radius),
    ];
    let dirs = [(-1i64, 1i64), (-1, -1), (1, -1), (1, 1)];
    for (corner, dir) in corners.iter().zip(dirs.iter()) {
        let mut p = *corner;
        for _ in 0..radius {
            cycle_vertices.push(p);
            p = (p.0 + dir.0, p.1 + dir.1);
        }
    }
    // map to edges
    let mut edges = Vec::new();
    let m = cycle_vertices.len();
    for i in 0..m {
        let p = cycle_vertices[i];
        let q = cycle_vertices[(i + 1) % m];
        let (b, w) = if p.0 % 2 == 0 { (p, q) } else { (q, p) };
        let bi = graph.black_at(b)?;
        let wi = graph.white_at(w)?;
        edges.push(graph.edge_between(bi, wi)?);
    }
    // enclosed graph vertices: |v - c|_1 < radius
    let mut enclosed = 0;
    for i in 0..graph.black_count() {
        let v = graph.black_coord(i);
        if (v.0 - center.0).abs() + (v.1 - center.1).abs() < radius {
            enclosed += 1;
        }
    }
    for i in 0..graph.white_count() {
        let v = graph.white_coord(i);
        if (v.0 - center.0).abs() + (v.1 - center.1).abs() < radius {
            enclosed += 1;
        }
    }
    Some((edges, enclosed))
}
