use super::*;
use num_rational::BigRational;

fn r(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[test]
fn transition_weight_basics() {
    // chain 0 -> 1 -> 2 -> 3 with weights w1 w2 w3
    let g = PathDag::new(4, vec![(0, 1, r(2)), (1, 2, r(3)), (2, 3, r(5))]).unwrap();
    assert_eq!(g.transition_weight(0, 3), r(30));
    assert_eq!(g.transition_weight(0, 0), r(1));
    assert_eq!(g.transition_weight(3, 0), r(0));
}

#[test]
fn cycles_are_rejected() {
    assert!(PathDag::new(2, vec![(0, 1, r(1)), (1, 0, r(1))]).is_err());
    assert!(PathDag::new(2, vec![(0, 1, r(1)), (0, 1, r(2))]).is_err());
}

/// 2x2 directed grid, unit weights: vertices (i,j) -> index 3i+j for the
/// 3x3 node grid, edges right and up.
fn grid() -> PathDag<BigRational> {
    let idx = |i: usize, j: usize| 3 * i + j;
    let mut edges = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i + 1 < 3 {
                edges.push((idx(i, j), idx(i + 1, j), r(1)));
            }
            if j + 1 < 3 {
                edges.push((idx(i, j), idx(i, j + 1), r(1)));
            }
        }
    }
    PathDag::new(9, edges).unwrap()
}

#[test]
fn lgv_matches_brute_force_on_grid() {
    let g = grid();
    let idx = |i: usize, j: usize| 3 * i + j;
    // sources: left edge; sinks: right edge (corner-to-corner pairs)
    let sources = [idx(0, 1), idx(0, 0)];
    let sinks = [idx(2, 2), idx(2, 1)];
    let det = g.lgv_weight(&sources, &sinks);

    // brute force: enumerate path pairs, count the vertex-disjoint ones
    let p1 = g.enumerate_paths(sources[0], sinks[0]);
    let p2 = g.enumerate_paths(sources[1], sinks[1]);
    let mut count = 0i64;
    for a in &p1 {
        for b in &p2 {
            if a.iter().all(|v| !b.contains(v)) {
                count += 1;
            }
        }
    }
    assert_eq!(det, r(count));
    assert!(count > 0);
}

#[test]
fn crossing_forced_endpoints_give_zero() {
    // bottleneck graph: all paths pass through vertex 2, so every family of
    // two paths intersects and the LGV determinant vanishes
    let g = PathDag::new(
        5,
        vec![
            (0, 2, r(1)),
            (1, 2, r(1)),
            (2, 3, r(1)),
            (2, 4, r(1)),
        ],
    )
    .unwrap();
    let det = g.lgv_weight(&[0, 1], &[3, 4]);
    assert_eq!(det, r(0));
    let p1 = g.enumerate_paths(0, 3);
    let p2 = g.enumerate_paths(1, 4);
    assert!(p1
        .iter()
        .all(|a| p2.iter().all(|b| a.iter().any(|v| b.contains(v)))));
}

#[test]
fn compatibility_sweep_detects_good_and_bad_layouts() {
    let g = grid();
    let idx = |i: usize, j: usize| 3 * i + j;
    assert_eq!(
        g.check_compatible(&[idx(0, 1), idx(0, 0)], &[idx(2, 2), idx(2, 1)], 100_000),
        Some(true)
    );
    // swapped sinks break compatibility: disjoint straight paths exist
    assert_eq!(
        g.check_compatible(&[idx(0, 2), idx(0, 0)], &[idx(2, 0), idx(2, 2)], 100_000),
        Some(false)
    );
}

#[test]
fn dag_json_import() {
    let g = dag_from_json(r#"{"vertices": 3, "edges": [[0, 1, 2.0], [1, 2, 0.5]]}"#).unwrap();
    assert!((g.transition_weight(0, 2) - 1.0).abs() < 1e-15);
}
