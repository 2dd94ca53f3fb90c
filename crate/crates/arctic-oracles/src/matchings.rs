//! Exhaustive perfect-matching enumeration by backtracking.

use arctic::kasteleyn::{DimerConfiguration, PlanarGraph};

/// All perfect matchings as edge-id lists (sorted by black index).
pub fn enumerate_matchings(graph: &PlanarGraph) -> Vec<DimerConfiguration> {
    let n = graph.black_count();
    let mut result = Vec::new();
    if n != graph.white_count() {
        return result;
    }
    let mut white_used = vec![false; graph.white_count()];
    let mut chosen = Vec::with_capacity(n);
    fn rec(
        graph: &PlanarGraph,
        b: usize,
        white_used: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        result: &mut Vec<DimerConfiguration>,
    ) {
        if b == graph.black_count() {
            result.push(DimerConfiguration::new(graph, chosen.clone()).expect("valid matching"));
            return;
        }
        for &e in graph.black_edges(b) {
            let w = graph.edges()[e].white;
            if !white_used[w] {
                white_used[w] = true;
                chosen.push(e);
                rec(graph, b + 1, white_used, chosen, result);
                chosen.pop();
                white_used[w] = false;
            }
        }
    }
    rec(graph, 0, &mut white_used, &mut chosen, &mut result);
    result
}

/// Product of edge weights of a configuration.
pub fn weight(graph: &PlanarGraph, config: &DimerConfiguration) -> f64 {
    config
        .edges()
        .iter()
        .map(|&e| graph.edges()[e].weight)
        .product()
}

/// The tiling probability distribution: configurations with normalized
/// weights.
pub fn distribution(graph: &PlanarGraph) -> Vec<(DimerConfiguration, f64)> {
    let configs = enumerate_matchings(graph);
    let z: f64 = configs.iter().map(|c| weight(graph, c)).sum();
    configs
        .into_iter()
        .map(|c| {
            let w = weight(graph, &c);
            (c, w / z)
        })
        .collect()
}

/// Probability that all listed edges are simultaneously covered.
pub fn edge_probability(graph: &PlanarGraph, edges: &[usize]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (config, _) in distribution(graph).iter().map(|c| (&c.0, c.1)) {
        let w = weight(graph, config);
        den += w;
        if edges.iter().all(|&e| config.contains_edge(graph, e)) {
            num += w;
        }
    }
    num / den
}
