//! JSON import/export for graphs and dimer configurations.

use super::{DimerConfiguration, Edge, PlanarGraph};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub black: Vec<(i64, i64)>,
    pub white: Vec<(i64, i64)>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EdgeJson {
    pub black: usize,
    pub white: usize,
    pub weight: f64,
}

pub fn graph_to_json(graph: &PlanarGraph) -> String {
    let dto = GraphJson {
        black: (0..graph.black_count()).map(|i| graph.black_coord(i)).collect(),
        white: (0..graph.white_count()).map(|i| graph.white_coord(i)).collect(),
        edges: graph
            .edges()
            .iter()
            .map(|e| EdgeJson {
                black: e.black,
                white: e.white,
                weight: e.weight,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&dto).expect("graph serializes")
}

pub fn graph_from_json(text: &str) -> Result<PlanarGraph> {
    let dto: GraphJson =
        serde_json::from_str(text).map_err(|e| Error::domain(format!("bad graph JSON: {e}")))?;
    PlanarGraph::new(
        dto.black,
        dto.white,
        dto.edges
            .into_iter()
            .map(|e| Edge {
                black: e.black,
                white: e.white,
                weight: e.weight,
            })
            .collect(),
    )
}

/// Configurations are stored as lists of `[[bx, by], [wx, wy]]` coordinate
/// pairs so they survive vertex reordering.
#[derive(Debug, Serialize, Deserialize)]
pub struct ConfigJson {
    pub dimers: Vec<((i64, i64), (i64, i64))>,
}

pub fn config_to_json(graph: &PlanarGraph, config: &DimerConfiguration) -> String {
    let dimers = config
        .edges()
        .iter()
        .map(|&e| {
            let ed = &graph.edges()[e];
            (graph.black_coord(ed.black), graph.white_coord(ed.white))
        })
        .collect();
    serde_json::to_string(&ConfigJson { dimers }).expect("config serializes")
}

pub fn config_from_json(graph: &PlanarGraph, text: &str) -> Result<DimerConfiguration> {
    let dto: ConfigJson =
        serde_json::from_str(text).map_err(|e| Error::domain(format!("bad config JSON: {e}")))?;
    let mut edges = Vec::with_capacity(dto.dimers.len());
    for (bc, wc) in dto.dimers {
        let b = graph
            .black_at(bc)
            .ok_or_else(|| Error::domain(format!("no black vertex at {bc:?}")))?;
        let w = graph
            .white_at(wc)
            .ok_or_else(|| Error::domain(format!("no white vertex at {wc:?}")))?;
        let e = graph
            .edge_between(b, w)
            .ok_or_else(|| Error::domain(format!("no edge {bc:?} - {wc:?}")))?;
        edges.push(e);
    }
    DimerConfiguration::new(graph, edges)
}
