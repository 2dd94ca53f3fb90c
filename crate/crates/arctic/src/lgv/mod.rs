//! Non-intersecting path machinery: transition weights on a directed acyclic
//! graph, the LGV determinant, product-of-determinant measures, the general
//! finite-M correlation kernel via `A^{-1}`, and the Cramer's-rule route.

use crate::error::{Error, Result};
use crate::numeric::linalg::det_field;
use crate::symfunc::Ring;
use serde::Deserialize;
use std::collections::HashMap;

mod ensemble;
pub use ensemble::{general_kernel, kernel_via_cramer, TransitionEnsemble};

/// A directed, acyclic graph with no multiple edges and ring-valued weights.
#[derive(Debug, Clone)]
pub struct PathDag<T> {
    vertex_count: usize,
    out: Vec<Vec<(usize, T)>>, // (target, weight)
    topo: Vec<usize>,
    rank: Vec<usize>, // position in topological order
}

impl<T: Ring> PathDag<T> {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize, T)>) -> Result<Self> {
        let mut out: Vec<Vec<(usize, T)>> = vec![Vec::new(); vertex_count];
        let mut seen = HashMap::new();
        for (u, v, w) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::domain("edge endpoint out of range"));
            }
            if seen.insert((u, v), ()).is_some() {
                return Err(Error::domain("multiple edges are not allowed"));
            }
            out[u].push((v, w));
        }
        // Kahn's algorithm
        let mut indeg = vec![0usize; vertex_count];
        for u in 0..vertex_count {
            for &(v, _) in &out[u] {
                indeg[v] += 1;
            }
        }
        let mut queue: Vec<usize> = (0..vertex_count).filter(|&v| indeg[v] == 0).collect();
        let mut topo = Vec::with_capacity(vertex_count);
        while let Some(v) = queue.pop() {
            topo.push(v);
            for &(w, _) in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        if topo.len() != vertex_count {
            return Err(Error::domain("graph has a directed cycle"));
        }
        let mut rank = vec![0usize; vertex_count];
        for (i, &v) in topo.iter().enumerate() {
            rank[v] = i;
        }
        Ok(PathDag {
            vertex_count,
            out,
            topo,
            rank,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Total weight of directed paths from `u` to `v`
    /// (1 for `u = v`, 0 when no path exists), by dynamic programming in
    /// topological order.
    pub fn transition_weight(&self, u: usize, v: usize) -> T {
        let mut acc: Vec<T> = vec![T::zero(); self.vertex_count];
        acc[u] = T::one();
        for &x in &self.topo[self.rank[u]..] {
            if self.rank[x] > self.rank[v] {
                break;
            }
            if acc[x] == T::zero() {
                continue;
            }
            let base = acc[x].clone();
            for &(y, ref w) in &self.out[x] {
                let add = base.clone() * w.clone();
                acc[y] = acc[y].clone() + add;
            }
        }
        acc[v].clone()
    }

    /// The LGV determinant `det(p(u_i, v_j))`: the total weight of
    /// non-intersecting path families for compatible endpoint tuples.
    pub fn lgv_weight(&self, sources: &[usize], sinks: &[usize]) -> T
    where
        T: std::ops::Div<Output = T>,
    {
        assert_eq!(sources.len(), sinks.len());
        let n = sources.len();
        let mat: Vec<Vec<T>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.transition_weight(sources[i], sinks[j]))
                    .collect()
            })
            .collect();
        det_field(mat)
    }

    /// All directed paths from `u` to `v` as vertex sequences. Test oracle;
    /// exponential in general.
    pub fn enumerate_paths(&self, u: usize, v: usize) -> Vec<Vec<usize>> {
        let mut paths = Vec::new();
        let mut stack = vec![(u, vec![u])];
        while let Some((x, path)) = stack.pop() {
            if x == v {
                paths.push(path);
                continue;
            }
            for &(y, _) in &self.out[x] {
                if self.rank[y] <= self.rank[v] {
                    let mut p2 = path.clone();
                    p2.push(y);
                    stack.push((y, p2));
                }
            }
        }
        paths
    }

    /// Compatibility sweep for plane-embedded endpoint tuples: every path
    /// from `u_a` to `v_b` with `a < a'`, `b > b'` must intersect every path
    /// from `u_{a'}` to `v_{b'}`. Checked by enumeration; `None` when the
    /// graph is too large to enumerate (the caller then trusts the layout).
    pub fn check_compatible(&self, sources: &[usize], sinks: &[usize], cap: usize) -> Option<bool> {
        let n = sources.len();
        for a in 0..n {
            for a2 in a + 1..n {
                for b2 in 0..n {
                    for b in b2 + 1..n {
                        let p1 = self.enumerate_paths(sources[a], sinks[b]);
                        let p2 = self.enumerate_paths(sources[a2], sinks[b2]);
                        if p1.len().saturating_mul(p2.len()) > cap {
                            return None;
                        }
                        for x in &p1 {
                            for y in &p2 {
                                if x.iter().all(|v| !y.contains(v)) {
                                    return Some(false);
                                }
                            }
                        }
                    }
                }
            }
        }
        Some(true)
    }
}

#[derive(Debug, Deserialize)]
struct DagJson {
    vertices: usize,
    edges: Vec<(usize, usize, f64)>,
}

/// DAG import from JSON adjacency `{"vertices": n, "edges": [[u, v, w]...]}`.
pub fn dag_from_json(text: &str) -> Result<PathDag<f64>> {
    let dto: DagJson =
        serde_json::from_str(text).map_err(|e| Error::domain(format!("bad DAG JSON: {e}")))?;
    PathDag::new(dto.vertices, dto.edges)
}

#[cfg(test)]
mod tests;
