//! Planar bipartite dimer models: graph construction, Kasteleyn signs and
//! their verification, partition functions via determinants, Kenyon's
//! edge-correlation formula, and height functions.
//!
//! All graphs here are lattice-drawn: vertices carry integer embedding
//! coordinates and faces are recovered from the embedding.

use crate::dpp::FiniteKernel;
use crate::error::{Error, Result};
use crate::numeric::linalg::det_field;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_rational::BigRational;
use std::collections::HashMap;
use std::sync::Mutex;

pub mod aztec;
pub mod height;
pub mod io;
pub mod svg;

pub use aztec::{build_aztec, build_two_periodic_aztec, DominoType};
pub use height::HeightFunction;

/// Vertex handle: black or white index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Black(usize),
    White(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub black: usize,
    pub white: usize,
    pub weight: f64,
}

/// A planar, connected, bipartite graph with positive edge weights and an
/// integer planar embedding.
#[derive(Debug, Clone)]
pub struct PlanarGraph {
    black: Vec<(i64, i64)>,
    white: Vec<(i64, i64)>,
    edges: Vec<Edge>,
    adj_black: Vec<Vec<usize>>,
    adj_white: Vec<Vec<usize>>,
}

/// A face as recovered from the planar embedding: cyclic dart list, each dart
/// being `(vertex, edge taken out of it)`.
#[derive(Debug, Clone)]
pub struct Face {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<usize>,
    pub outer: bool,
}

impl PlanarGraph {
    pub fn new(
        black: Vec<(i64, i64)>,
        white: Vec<(i64, i64)>,
        edges: Vec<Edge>,
    ) -> Result<Self> {
        let mut adj_black = vec![Vec::new(); black.len()];
        let mut adj_white = vec![Vec::new(); white.len()];
        for (id, e) in edges.iter().enumerate() {
            if e.black >= black.len() || e.white >= white.len() {
                return Err(Error::domain("edge endpoint out of range"));
            }
            if e.weight <= 0.0 {
                return Err(Error::domain("edge weights must be positive"));
            }
            adj_black[e.black].push(id);
            adj_white[e.white].push(id);
        }
        let g = PlanarGraph {
            black,
            white,
            edges,
            adj_black,
            adj_white,
        };
        if !g.is_connected() {
            return Err(Error::domain("graph must be connected"));
        }
        Ok(g)
    }

    pub fn black_count(&self) -> usize {
        self.black.len()
    }
    pub fn white_count(&self) -> usize {
        self.white.len()
    }
    pub fn black_coord(&self, i: usize) -> (i64, i64) {
        self.black[i]
    }
    pub fn white_coord(&self, i: usize) -> (i64, i64) {
        self.white[i]
    }
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }
    pub fn black_edges(&self, b: usize) -> &[usize] {
        &self.adj_black[b]
    }
    pub fn white_edges(&self, w: usize) -> &[usize] {
        &self.adj_white[w]
    }

    pub fn coord(&self, v: Vertex) -> (i64, i64) {
        match v {
            Vertex::Black(i) => self.black[i],
            Vertex::White(i) => self.white[i],
        }
    }

    pub fn black_at(&self, coord: (i64, i64)) -> Option<usize> {
        self.black.iter().position(|&c| c == coord)
    }
    pub fn white_at(&self, coord: (i64, i64)) -> Option<usize> {
        self.white.iter().position(|&c| c == coord)
    }

    pub fn edge_between(&self, b: usize, w: usize) -> Option<usize> {
        self.adj_black[b]
            .iter()
            .copied()
            .find(|&e| self.edges[e].white == w)
    }

    fn is_connected(&self) -> bool {
        if self.black.is_empty() && self.white.is_empty() {
            return true;
        }
        let n = self.black.len() + self.white.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize]; // black 0
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            let (is_black, idx) = if v < self.black.len() {
                (true, v)
            } else {
                (false, v - self.black.len())
            };
            let nbrs: Vec<usize> = if is_black {
                self.adj_black[idx]
                    .iter()
                    .map(|&e| self.black.len() + self.edges[e].white)
                    .collect()
            } else {
                self.adj_white[idx].iter().map(|&e| self.edges[e].black).collect()
            };
            for u in nbrs {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == n
    }

    /// Faces of the planar embedding, traced with the face on the left of
    /// each dart; the outer face is flagged by its clockwise orientation.
    pub fn faces(&self) -> Vec<Face> {
        // rotation system: neighbors of each vertex sorted counterclockwise
        let vkey = |v: Vertex| match v {
            Vertex::Black(i) => i,
            Vertex::White(i) => self.black.len() + i,
        };
        let nv = self.black.len() + self.white.len();
        let mut rot: Vec<Vec<usize>> = vec![Vec::new(); nv]; // edge ids ccw
        for v in 0..nv {
            let (vert, eids) = if v < self.black.len() {
                (Vertex::Black(v), &self.adj_black[v])
            } else {
                (
                    Vertex::White(v - self.black.len()),
                    &self.adj_white[v - self.black.len()],
                )
            };
            let p = self.coord(vert);
            let mut sorted = eids.clone();
            sorted.sort_by(|&a, &b| {
                let qa = self.coord(self.other_end(a, vert));
                let qb = self.coord(self.other_end(b, vert));
                let aa = ((qa.1 - p.1) as f64).atan2((qa.0 - p.0) as f64);
                let ab = ((qb.1 - p.1) as f64).atan2((qb.0 - p.0) as f64);
                aa.total_cmp(&ab)
            });
            rot[v] = sorted;
        }

        // darts: (edge, from-black?) -> traverse orbit of next-dart map
        let mut used: HashMap<(usize, bool), bool> = HashMap::new();
        let mut faces = Vec::new();
        for e0 in 0..self.edges.len() {
            for &from_black in &[true, false] {
                if used.contains_key(&(e0, from_black)) {
                    continue;
                }
                let mut face_vertices = Vec::new();
                let mut face_edges = Vec::new();
                let mut dart = (e0, from_black);
                loop {
                    used.insert(dart, true);
                    let (e, fb) = dart;
                    let from = if fb {
                        Vertex::Black(self.edges[e].black)
                    } else {
                        Vertex::White(self.edges[e].white)
                    };
                    let to = self.other_end(e, from);
                    face_vertices.push(from);
                    face_edges.push(e);
                    // next dart: at `to`, step one position clockwise from
                    // the reverse dart
                    let tkey = vkey(to);
                    let ring = &rot[tkey];
                    let pos = ring.iter().position(|&x| x == e).expect("edge in ring");
                    let next_edge = ring[(pos + ring.len() - 1) % ring.len()];
                    dart = (next_edge, matches!(to, Vertex::Black(_)));
                    if dart == (e0, from_black) {
                        break;
                    }
                }
                // signed area of the traced polygon; clockwise = outer face
                let mut area2 = 0i64;
                for i in 0..face_vertices.len() {
                    let p = self.coord(face_vertices[i]);
                    let q = self.coord(face_vertices[(i + 1) % face_vertices.len()]);
                    area2 += p.0 * q.1 - q.0 * p.1;
                }
                faces.push(Face {
                    vertices: face_vertices,
                    edges: face_edges,
                    outer: area2 < 0,
                });
            }
        }
        faces
    }

    pub fn other_end(&self, edge: usize, from: Vertex) -> Vertex {
        let e = &self.edges[edge];
        match from {
            Vertex::Black(_) => Vertex::White(e.white),
            Vertex::White(_) => Vertex::Black(e.black),
        }
    }
}

/// A perfect matching, stored as the map black index -> edge id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimerConfiguration {
    edge_of_black: Vec<usize>,
}

impl DimerConfiguration {
    pub fn new(graph: &PlanarGraph, edges: Vec<usize>) -> Result<Self> {
        if edges.len() != graph.black_count() || graph.black_count() != graph.white_count() {
            return Err(Error::domain("not a perfect matching: wrong edge count"));
        }
        let mut edge_of_black = vec![usize::MAX; graph.black_count()];
        let mut white_used = vec![false; graph.white_count()];
        for &e in &edges {
            let ed = graph
                .edges()
                .get(e)
                .ok_or_else(|| Error::domain("edge id out of range"))?;
            if edge_of_black[ed.black] != usize::MAX || white_used[ed.white] {
                return Err(Error::domain("not a perfect matching: vertex covered twice"));
            }
            edge_of_black[ed.black] = e;
            white_used[ed.white] = true;
        }
        Ok(DimerConfiguration { edge_of_black })
    }

    pub fn edges(&self) -> &[usize] {
        &self.edge_of_black
    }

    pub fn contains_edge(&self, graph: &PlanarGraph, edge: usize) -> bool {
        self.edge_of_black[graph.edges()[edge].black] == edge
    }

    pub fn white_of_black(&self, graph: &PlanarGraph, b: usize) -> usize {
        graph.edges()[self.edge_of_black[b]].white
    }
}

/// The signed, weighted black x white adjacency matrix.
pub struct KasteleynMatrix {
    graph: PlanarGraph,
    signs: Vec<Complex64>,
    matrix: DMatrix<Complex64>,
    solver: Mutex<Option<InverseCache>>,
}

struct InverseCache {
    /// full inverse: entry (w, b) = K^{-1}(w, b)
    inverse: DMatrix<Complex64>,
}

impl KasteleynMatrix {
    /// Builds the matrix from unit-modulus signs per edge. The sign relation
    /// on faces is checked explicitly by [`KasteleynMatrix::verify_signs`].
    pub fn new(graph: PlanarGraph, sign: impl Fn(usize, &Edge) -> Complex64) -> Result<Self> {
        let n = graph.black_count();
        if n != graph.white_count() {
            return Err(Error::model(
                "black and white vertex counts differ: no perfect matching",
            ));
        }
        let signs: Vec<Complex64> = graph
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| sign(i, e))
            .collect();
        for s in &signs {
            if (s.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::domain("Kasteleyn signs must have modulus one"));
            }
        }
        let mut matrix = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
        for (i, e) in graph.edges().iter().enumerate() {
            matrix[(e.black, e.white)] = signs[i] * e.weight;
        }
        Ok(KasteleynMatrix {
            graph,
            signs,
            matrix,
            solver: Mutex::new(None),
        })
    }

    pub fn graph(&self) -> &PlanarGraph {
        &self.graph
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn sign(&self, edge: usize) -> Complex64 {
        self.signs[edge]
    }

    pub fn entry(&self, b: usize, w: usize) -> Complex64 {
        self.matrix[(b, w)]
    }

    /// Alternating sign product around every inner face must be
    /// `(-1)^{k+1}` for a face with `2k` edges.
    pub fn verify_signs(&self) -> Result<()> {
        for face in self.graph.faces() {
            if face.outer {
                continue;
            }
            self.check_cycle_product(&face.edges, 0)?;
        }
        Ok(())
    }

    /// Alternating sign product around a cycle with `2k` edges enclosing
    /// `enclosed` vertices must be `(-1)^{k + enclosed + 1}`.
    pub fn check_cycle_product(&self, cycle_edges: &[usize], enclosed: usize) -> Result<()> {
        if cycle_edges.len() % 2 != 0 {
            return Err(Error::domain("cycle length must be even"));
        }
        let k = cycle_edges.len() / 2;
        let mut num = Complex64::new(1.0, 0.0);
        let mut den = Complex64::new(1.0, 0.0);
        for (i, &e) in cycle_edges.iter().enumerate() {
            if i % 2 == 0 {
                num *= self.signs[e];
            } else {
                den *= self.signs[e];
            }
        }
        let target = if (k + enclosed + 1) % 2 == 0 { 1.0 } else { -1.0 };
        let got = num / den;
        if (got - Complex64::new(target, 0.0)).norm() > 1e-12 {
            return Err(Error::domain(format!(
                "sign relation violated on a {}-cycle enclosing {}: got {}, want {}",
                2 * k,
                enclosed,
                got,
                target
            )));
        }
        Ok(())
    }

    /// `Z = |det K|`, the weighted matching sum. A singular matrix means the
    /// model admits no perfect matching and `Z = 0`.
    pub fn partition_function(&self) -> f64 {
        self.matrix.clone().lu().determinant().norm()
    }

    /// `|det K|^2` in exact Gaussian-rational arithmetic, with the given
    /// exact edge entries (sign times weight). Backs the exact tiling-count
    /// checks; `|det K| = Z` so this is `Z^2`.
    pub fn partition_function_squared_exact(
        &self,
        entry: impl Fn(usize, &Edge) -> num_complex::Complex<BigRational>,
    ) -> BigRational {
        use num_complex::Complex;
        let n = self.graph.black_count();
        let zero = Complex::new(
            BigRational::from_integer(0.into()),
            BigRational::from_integer(0.into()),
        );
        let mut m = vec![vec![zero; n]; n];
        for (i, e) in self.graph.edges().iter().enumerate() {
            m[e.black][e.white] = entry(i, e);
        }
        let det = det_field(m);
        (det.re.clone() * det.re) + (det.im.clone() * det.im)
    }

    fn with_inverse<T>(&self, f: impl FnOnce(&DMatrix<Complex64>) -> T) -> Result<T> {
        let mut guard = self.solver.lock().unwrap();
        if guard.is_none() {
            let lu = self.matrix.clone().lu();
            let n = self.matrix.nrows();
            let id = DMatrix::identity(n, n);
            let inv = lu
                .solve(&id)
                .ok_or_else(|| Error::model("Kasteleyn matrix is singular (Z = 0)"))?;
            // lu.solve gives K^{-1} as operator B -> W: column b holds
            // K^{-1}(., b)
            *guard = Some(InverseCache { inverse: inv });
        }
        Ok(f(&guard.as_ref().unwrap().inverse))
    }

    /// `K^{-1}(w, b)`.
    pub fn inverse_entry(&self, w: usize, b: usize) -> Result<Complex64> {
        self.with_inverse(|inv| inv[(w, b)])
    }

    /// Kenyon's formula: probability that the listed edges all belong to a
    /// random dimer configuration. Returns a real clamped to `[0, 1]`.
    pub fn edge_probabilities(&self, edges: &[usize]) -> Result<f64> {
        for &e in edges {
            if e >= self.graph.edges().len() {
                return Err(Error::domain("edge id out of range"));
            }
        }
        let r = edges.len();
        let val = self.with_inverse(|inv| {
            let mut prefactor = Complex64::new(1.0, 0.0);
            for &e in edges {
                let ed = &self.graph.edges()[e];
                prefactor *= self.matrix[(ed.black, ed.white)];
            }
            let sub = DMatrix::from_fn(r, r, |i, j| {
                let ei = &self.graph.edges()[edges[i]];
                let ej = &self.graph.edges()[edges[j]];
                inv[(ei.white, ej.black)]
            });
            prefactor * det_field_complex(&sub)
        })?;
        if val.im.abs() > 1e-9 || val.re < -1e-9 || val.re > 1.0 + 1e-9 {
            return Err(Error::numeric(format!(
                "Kenyon probability {} outside [0,1]",
                val
            )));
        }
        Ok(val.re.clamp(0.0, 1.0))
    }

    /// The dimer process correlation kernel `L(e_i, e_j) = K(b_i, w_i)
    /// K^{-1}(w_i, b_j)` on the edge set.
    pub fn dimer_correlation_kernel(&self) -> Result<FiniteKernel<usize>> {
        let edges = self.graph.edges();
        let ids: Vec<usize> = (0..edges.len()).collect();
        self.with_inverse(|inv| {
            FiniteKernel::from_fn(ids, |&i, &j| {
                let ei = &edges[i];
                let ej = &edges[j];
                self.matrix[(ei.black, ei.white)] * inv[(ei.white, ej.black)]
            })
        })
    }

    /// Solves `K x = e_b` for a single column of the inverse (used by the
    /// sampler to seed its incremental state).
    pub fn inverse_column(&self, b: usize) -> Result<DVector<Complex64>> {
        self.with_inverse(|inv| inv.column(b).into_owned())
    }
}

fn det_field_complex(m: &DMatrix<Complex64>) -> Complex64 {
    if m.nrows() == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        m.clone().lu().determinant()
    }
}
