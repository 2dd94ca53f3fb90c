//! Route-equivalence and enumeration checks for the Aztec diamond models:
//! the contour kernel in both forms, the product-measure kernel, the Kenyon
//! kernel through the particle bijection, and the exhaustive tiling oracle
//! all describe the same process.

use arctic::kasteleyn::build_aztec;
use arctic::lgv::general_kernel;
use arctic::models::aztec::{
    aztec_ensemble, aztec_kernel, aztec_kernel_alt, aztec_levels, aztec_particle_map,
    aztec_particles_to_config, AztecEnsembleSpec,
};
use arctic::toeplitz::{infinite_toeplitz_kernel, ContourRadii};
use arctic::kernel::Budget;
use arctic_oracles::matchings;

fn spec(n: usize, a: f64) -> AztecEnsembleSpec {
    AztecEnsembleSpec::new(n, a).unwrap()
}

/// All 1- and 2-point correlations over a window of space-time points.
fn correlation_points(n: usize) -> Vec<(i64, i64)> {
    let mut pts = Vec::new();
    for level in 1..(2 * n as i64) {
        for u in (1 - n as i64)..=(n as i64) {
            pts.push((level, u));
        }
    }
    pts
}

#[test]
fn one_aztec_kernel_matches_single_path_law() {
    let a = 0.7;
    let k = aztec_kernel(spec(1, a), None).unwrap();
    let z = 1.0 + a * a;
    let p1 = k.eval((1, 1), (1, 1)).unwrap();
    assert!((p1.re - a * a / z).abs() < 1e-9, "{p1}");
    let p0 = k.eval((1, 0), (1, 0)).unwrap();
    assert!((p0.re - 1.0 / z).abs() < 1e-9, "{p0}");
}

#[test]
fn contour_forms_agree() {
    // first vs second form with the (-1)^{u-v} gauge undone internally
    let s = spec(4, 0.5);
    let k1 = aztec_kernel(s, None).unwrap();
    let k2 = aztec_kernel_alt(s).unwrap();
    let pts = [(1i64, 0i64), (3, 1), (4, -1), (5, 2), (7, 0)];
    for &x in &pts {
        for &y in &pts {
            let a = k1.eval(x, y).unwrap();
            let b = k2.eval(x, y).unwrap();
            assert!(
                (a - b).norm() < 1e-10 * (1.0 + a.norm()),
                "{x:?},{y:?}: {a} vs {b}"
            );
        }
    }
}

#[test]
fn contour_kernel_matches_infinite_toeplitz_engine() {
    let s = spec(3, 0.5);
    let k1 = aztec_kernel(s, None).unwrap();
    let k2 = infinite_toeplitz_kernel(&aztec_levels(s).unwrap(), 1, Budget::default(), None)
        .unwrap();
    for &x in &[(1i64, 0i64), (2, 1), (4, -1), (5, 1)] {
        for &y in &[(1i64, 1i64), (3, 0), (5, -2)] {
            let a = k1.eval(x, y).unwrap();
            let b = k2.eval(x, y).unwrap();
            assert!(
                (a - b).norm() < 1e-10 * (1.0 + a.norm()),
                "{x:?},{y:?}: {a} vs {b}"
            );
        }
    }
}

#[test]
fn radius_invariance_inside_legal_annulus() {
    let s = spec(2, 0.6);
    let k1 = aztec_kernel(s, None).unwrap();
    let k2 = aztec_kernel(
        s,
        Some(ContourRadii {
            inner: 0.65,
            outer: 1.5,
        }),
    )
    .unwrap();
    for &x in &[(1i64, 0i64), (2, 1), (3, -1)] {
        let a = k1.eval(x, x).unwrap();
        let b = k2.eval(x, x).unwrap();
        assert!((a - b).norm() < 1e-10);
    }
}

#[test]
fn kernel_matches_tiling_enumeration_n2() {
    // exhaustive 8-tiling oracle through the particle bijection
    let n = 2usize;
    let a = 0.8;
    let k = build_aztec(n, a).unwrap();
    let dist = matchings::distribution(k.graph());
    assert_eq!(dist.len(), 8);
    let kernel = aztec_kernel(spec(n, a), None).unwrap();

    let pts = correlation_points(n);
    // 1-point functions
    for &p in &pts {
        let mut emp = 0.0;
        for (config, prob) in &dist {
            let particles = aztec_particle_map(k.graph(), config).unwrap();
            if particles.contains(&p) {
                emp += prob;
            }
        }
        let pred = kernel.correlation(&[p]).unwrap();
        assert!(
            (pred.re - emp).abs() < 1e-8 && pred.im.abs() < 1e-9,
            "point {p:?}: kernel {pred} vs enumeration {emp}"
        );
    }
    // 2-point functions
    for (i, &p) in pts.iter().enumerate() {
        for &q in pts.iter().skip(i + 1) {
            let mut emp = 0.0;
            for (config, prob) in &dist {
                let particles = aztec_particle_map(k.graph(), config).unwrap();
                if particles.contains(&p) && particles.contains(&q) {
                    emp += prob;
                }
            }
            let pred = kernel.correlation(&[p, q]).unwrap();
            assert!(
                (pred.re - emp).abs() < 1e-8,
                "points {p:?},{q:?}: kernel {} vs enumeration {emp}",
                pred.re
            );
        }
    }
}

#[test]
fn general_product_kernel_matches_contour_kernel() {
    let s = spec(2, 0.8);
    let k1 = aztec_kernel(s, None).unwrap();
    let k2 = general_kernel(&aztec_ensemble(s)).unwrap();
    let pts = correlation_points(2);
    for &x in &pts {
        for &y in &pts {
            let a = k1.eval(x, y).unwrap();
            let b = k2.eval(x, y).unwrap();
            assert!(
                (a - b).norm() < 1e-9 * (1.0 + a.norm()),
                "{x:?},{y:?}: {a} vs {b}"
            );
        }
    }
}

#[test]
fn particle_map_round_trips_on_all_tilings_n3() {
    let k = build_aztec(3, 1.0).unwrap();
    let all = matchings::enumerate_matchings(k.graph());
    assert_eq!(all.len(), 64);
    for config in &all {
        let particles = aztec_particle_map(k.graph(), config).unwrap();
        let back = aztec_particles_to_config(k.graph(), &particles).unwrap();
        assert_eq!(config.edges(), back.edges());
    }
}

#[test]
fn interior_levels_hold_n_particles() {
    let n = 3usize;
    let k = build_aztec(n, 1.0).unwrap();
    for config in matchings::enumerate_matchings(k.graph()).iter().take(8) {
        let particles = aztec_particle_map(k.graph(), config).unwrap();
        for level in 1..(2 * n as i64) {
            let count = particles.iter().filter(|&&(l, _)| l == level).count();
            assert_eq!(count, n, "level {level}");
        }
    }
}
