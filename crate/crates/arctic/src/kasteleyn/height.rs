//! Height functions for lattice dimer configurations.
//!
//! Heights sit on the dual cells of the rotated lattice (even coordinate-sum
//! points touching the graph). Crossing the edge between two cells changes
//! the height by +3/-3 when a dimer is crossed (white vertex right/left of
//! the crossing direction) and by +1/-1 otherwise (white vertex left/right).
//! The anchor cell, fixed at height 0, is the face with lexicographically
//! minimal (x, then y) center.

use super::{DimerConfiguration, PlanarGraph, Vertex};
use crate::error::{Error, Result};
use std::collections::{HashMap, HashSet, VecDeque};

#[derive(Debug, Clone)]
pub struct HeightFunction {
    values: HashMap<(i64, i64), i64>,
    inner: HashSet<(i64, i64)>,
}

impl HeightFunction {
    pub fn value(&self, cell: (i64, i64)) -> Option<i64> {
        self.values.get(&cell).copied()
    }

    pub fn cells(&self) -> impl Iterator<Item = ((i64, i64), i64)> + '_ {
        self.values.iter().map(|(&c, &h)| (c, h))
    }

    /// Inner cells are surrounded by four graph vertices; everything else is
    /// a boundary cell whose height is configuration-independent.
    pub fn is_inner(&self, cell: (i64, i64)) -> bool {
        self.inner.contains(&cell)
    }

    pub fn boundary_values(&self) -> Vec<((i64, i64), i64)> {
        let mut v: Vec<_> = self
            .values
            .iter()
            .filter(|(c, _)| !self.inner.contains(*c))
            .map(|(&c, &h)| (c, h))
            .collect();
        v.sort();
        v
    }
}

struct Lattice<'a> {
    graph: &'a PlanarGraph,
    vertex_at: HashMap<(i64, i64), Vertex>,
}

impl<'a> Lattice<'a> {
    fn new(graph: &'a PlanarGraph) -> Self {
        let mut vertex_at = HashMap::new();
        for i in 0..graph.black_count() {
            vertex_at.insert(graph.black_coord(i), Vertex::Black(i));
        }
        for i in 0..graph.white_count() {
            vertex_at.insert(graph.white_coord(i), Vertex::White(i));
        }
        Lattice { graph, vertex_at }
    }

    /// Height increment for the dual step `cell -> cell + d`, or `None` when
    /// the step leaves the tiled region entirely.
    fn step(
        &self,
        config: &DimerConfiguration,
        cell: (i64, i64),
        d: (i64, i64),
    ) -> Option<i64> {
        // the crossed lattice edge joins p and q
        let p = (cell.0 + d.0, cell.1);
        let q = (cell.0, cell.1 + d.1);
        let vp = self.vertex_at.get(&p);
        let vq = self.vertex_at.get(&q);
        if vp.is_none() && vq.is_none() {
            return None;
        }
        // exactly one endpoint has odd x1: that is the white side (virtual
        // points keep the checkerboard colouring)
        let white = if p.0.rem_euclid(2) != 0 { p } else { q };
        let crossed_dimer = match (vp, vq) {
            (Some(&a), Some(&b)) => {
                let (bi, wi) = match (a, b) {
                    (Vertex::Black(bi), Vertex::White(wi))
                    | (Vertex::White(wi), Vertex::Black(bi)) => (bi, wi),
                    _ => return None, // same-colour pair: not a lattice edge
                };
                match self.graph.edge_between(bi, wi) {
                    Some(e) => config.contains_edge(self.graph, e),
                    None => false,
                }
            }
            _ => false,
        };
        // cross(d, white - cell): positive means the white vertex lies to
        // the left of the crossing direction
        let e = (white.0 - cell.0, white.1 - cell.1);
        let cross = d.0 * e.1 - d.1 * e.0;
        let step = if crossed_dimer {
            if cross < 0 {
                3
            } else {
                -3
            }
        } else if cross > 0 {
            1
        } else {
            -1
        };
        Some(step)
    }
}

/// Computes the height function of a configuration, anchored at 0 on the
/// lexicographically minimal cell, and verifies consistency around every
/// dual cycle.
pub fn height_function(
    graph: &PlanarGraph,
    config: &DimerConfiguration,
) -> Result<HeightFunction> {
    let lattice = Lattice::new(graph);

    // dual cells: even-sum points at L1 distance one from some vertex
    let mut cells: HashSet<(i64, i64)> = HashSet::new();
    for (&(x, y), _) in lattice.vertex_at.iter() {
        for d in [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)] {
            cells.insert((x + d.0, y + d.1));
        }
    }

    let mut inner = HashSet::new();
    for &c in &cells {
        let surrounded = [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)]
            .iter()
            .all(|d| lattice.vertex_at.contains_key(&(c.0 + d.0, c.1 + d.1)));
        if surrounded {
            inner.insert(c);
        }
    }

    let anchor = *cells
        .iter()
        .min()
        .ok_or_else(|| Error::domain("empty graph has no faces"))?;

    let mut values = HashMap::new();
    values.insert(anchor, 0i64);
    let mut queue = VecDeque::new();
    queue.push_back(anchor);
    let diag = [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)];
    while let Some(c) = queue.pop_front() {
        let h = values[&c];
        for d in diag {
            let c2 = (c.0 + d.0, c.1 + d.1);
            if !cells.contains(&c2) {
                continue;
            }
            if let Some(step) = lattice.step(config, c, d) {
                let h2 = h + step;
                match values.get(&c2) {
                    Some(&existing) => {
                        if existing != h2 {
                            return Err(Error::numeric(format!(
                                "height inconsistency at {c2:?}: {existing} vs {h2}"
                            )));
                        }
                    }
                    None => {
                        values.insert(c2, h2);
                        queue.push_back(c2);
                    }
                }
            }
        }
    }

    if values.len() != cells.len() {
        return Err(Error::numeric(
            "height function did not reach every dual cell".to_string(),
        ));
    }

    Ok(HeightFunction { values, inner })
}
