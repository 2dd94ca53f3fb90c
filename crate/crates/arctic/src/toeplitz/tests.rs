use super::*;
use crate::kernel::Budget;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::sync::Arc;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Aztec level symbols: `1 + a z` on even steps, `1/(1 - a/z)` on odd steps.
fn aztec_levels(n: usize, a: f64) -> Arc<LevelSymbols> {
    let e = SymbolSpec::plus_factor(c64(-a, 0.0), 1).unwrap();
    let h = SymbolSpec::minus_factor(c64(a, 0.0), -1).unwrap();
    let phis: Vec<SymbolSpec> = (0..2 * n)
        .map(|r| if r % 2 == 0 { e.clone() } else { h.clone() })
        .collect();
    Arc::new(LevelSymbols::new(0, 2 * n as i64, phis).unwrap())
}

fn random_symbol(rng: &mut StdRng, max_factors: usize) -> SymbolSpec {
    // roots and poles bounded away from the unit circle by 0.2
    let mut sym = SymbolSpec::one();
    let nf = rng.gen_range(1..=max_factors);
    for _ in 0..nf {
        let m = if rng.gen_bool(0.5) { 1 } else { -1 };
        let r = rng.gen_range(0.05..0.8);
        let th = rng.gen_range(0.0..std::f64::consts::TAU);
        let c = c64(r * th.cos(), r * th.sin());
        if rng.gen_bool(0.5) {
            sym = sym.multiply(&SymbolSpec::plus_factor(c, m).unwrap());
        } else {
            sym = sym.multiply(&SymbolSpec::minus_factor(c, m).unwrap());
        }
    }
    sym
}

#[test]
fn fourier_coefficients_of_elementary_symbols() {
    let budget = Budget::default();
    // phi = 1
    let one = SymbolSpec::one();
    assert!((fourier_coefficient(&one, 0, budget).unwrap() - c64(1.0, 0.0)).norm() < 1e-12);
    assert!(fourier_coefficient(&one, 3, budget).unwrap().norm() < 1e-12);

    // phi = 1 + a z
    let a = 0.45;
    let p = SymbolSpec::plus_factor(c64(-a, 0.0), 1).unwrap();
    assert!((fourier_coefficient(&p, 0, budget).unwrap() - c64(1.0, 0.0)).norm() < 1e-12);
    assert!((fourier_coefficient(&p, 1, budget).unwrap() - c64(a, 0.0)).norm() < 1e-12);
    assert!(fourier_coefficient(&p, 2, budget).unwrap().norm() < 1e-12);
    assert!(fourier_coefficient(&p, -1, budget).unwrap().norm() < 1e-12);

    // phi = 1/(1 - a/z): phi_hat(-k) = a^k for k >= 0
    let h = SymbolSpec::minus_factor(c64(a, 0.0), -1).unwrap();
    for k in 0..5i64 {
        let v = fourier_coefficient(&h, -k, budget).unwrap();
        assert!((v - c64(a.powi(k as i32), 0.0)).norm() < 1e-12, "k={k}");
        if k > 0 {
            assert!(fourier_coefficient(&h, k, budget).unwrap().norm() < 1e-12);
        }
    }
}

#[test]
fn quadrature_and_series_coefficients_agree() {
    let mut rng = StdRng::seed_from_u64(42);
    let budget = Budget::default();
    for _ in 0..5 {
        let sym = random_symbol(&mut rng, 3);
        let exact = sym.fourier_exact(6);
        for k in -6i64..=6 {
            let q = fourier_coefficient(&sym, k, budget).unwrap();
            let e = exact[(k + 6) as usize];
            assert!((q - e).norm() < 1e-10, "k={k}: {q} vs {e}");
        }
    }
}

#[test]
fn wiener_hopf_product_reconstruction() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..10 {
        let sym = random_symbol(&mut rng, 4);
        let mut max_err: f64 = 0.0;
        let mut max_val: f64 = 0.0;
        for k in 0..256 {
            let th = std::f64::consts::TAU * k as f64 / 256.0;
            let z = c64(th.cos(), th.sin());
            let whole = sym.eval(z);
            let split = sym.eval_plus(z) * sym.eval_minus(z);
            max_err = max_err.max((whole - split).norm());
            max_val = max_val.max(whole.norm());
        }
        assert!(max_err <= 1e-12 * max_val.max(1.0));
    }
}

#[test]
fn coefficient_table_caches_and_decays() {
    let sym = SymbolSpec::plus_factor(c64(-0.5, 0.0), 2)
        .unwrap()
        .multiply(&SymbolSpec::minus_factor(c64(0.3, 0.0), -1).unwrap());
    let table = FourierCoefficientTable::new(sym, Budget::default());
    let rho = table.decay_rate(12).unwrap();
    assert!(rho < 1.0, "decay rate {rho}");
    // cached value identical on second read
    let a = table.get(5).unwrap();
    let b = table.get(5).unwrap();
    assert_eq!(a, b);
}

#[test]
fn bilinear_identity_one_by_one() {
    // n = 1, f_hat(0) = c: lhs = z/(c w), ratio = (z/w) D_0 / D_1
    let c = c64(1.7, 0.4);
    let coeff = move |k: i64| if k == 0 { c } else { c64(0.0, 0.0) };
    let z = c64(0.6, 0.1);
    let w = c64(1.2, -0.3);
    let (direct, ratio) = finite_toeplitz_bilinear(&coeff, 1, z, w).unwrap();
    assert!((direct - z / (c * w)).norm() < 1e-14);
    assert!((ratio - direct).norm() < 1e-14);
}

#[test]
fn bilinear_identity_random_symbols() {
    let mut rng = StdRng::seed_from_u64(11);
    for trial in 0..25 {
        let sym = random_symbol(&mut rng, 3);
        let n = rng.gen_range(1..=12usize);
        let coeffs = sym.fourier_exact(n + 1);
        let at = move |k: i64| {
            let idx = k + (n as i64) + 1;
            if idx < 0 || idx as usize >= coeffs.len() {
                c64(0.0, 0.0)
            } else {
                coeffs[idx as usize]
            }
        };
        let z = c64(rng.gen_range(-0.7..0.7), rng.gen_range(-0.7..0.7));
        let w = c64(rng.gen_range(1.1..1.8), rng.gen_range(-0.5..0.5));
        match finite_toeplitz_bilinear(&at, n, z, w) {
            Ok((direct, ratio)) => {
                assert!(
                    (direct - ratio).norm() <= 1e-10 * (1.0 + direct.norm()),
                    "trial {trial}, n={n}: {direct} vs {ratio}"
                );
            }
            Err(_) => continue, // singular T_n for this draw; skip
        }
    }
}

#[test]
fn bilinear_tail_matches_wiener_hopf_limit() {
    // as n grows the sum converges to z/((w-z) phi^+(z) phi^-(w))
    let sym = SymbolSpec::plus_factor(c64(-0.4, 0.0), 1)
        .unwrap()
        .multiply(&SymbolSpec::minus_factor(c64(0.35, 0.0), -1).unwrap());
    let coeffs = sym.fourier_exact(64);
    let at = move |k: i64| {
        let idx = k + 64;
        if idx < 0 || idx as usize >= coeffs.len() {
            c64(0.0, 0.0)
        } else {
            coeffs[idx as usize]
        }
    };
    let z = c64(0.5, 0.2);
    let w = c64(1.25, -0.1);
    let limit = z / ((w - z) * sym.eval_plus(z) * sym.eval_minus(w));
    let mut errs = Vec::new();
    for n in [10usize, 20, 40] {
        let (direct, _) = finite_toeplitz_bilinear(&at, n, z, w).unwrap();
        errs.push((direct - limit).norm());
    }
    assert!(errs[1] < errs[0] && errs[2] < errs[1], "errors {errs:?}");
    assert!(errs[2] < 1e-8);
}

#[test]
fn borodin_okounkov_trivial_symbol() {
    let (lhs, rhs) = borodin_okounkov(&SymbolSpec::one(), 5, Budget::default()).unwrap();
    assert!((lhs - c64(1.0, 0.0)).norm() < 1e-12);
    assert!((rhs - c64(1.0, 0.0)).norm() < 1e-12);
}

#[test]
fn borodin_okounkov_product_symbol() {
    // g = (1 + a z)(1 + b/z), n = 6, a = b = 1/3
    let g = SymbolSpec::plus_factor(c64(-1.0 / 3.0, 0.0), 1)
        .unwrap()
        .multiply(&SymbolSpec::minus_factor(c64(-1.0 / 3.0, 0.0), 1).unwrap());
    let (lhs, rhs) = borodin_okounkov(&g, 6, Budget::default()).unwrap();
    assert!(
        (lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm()),
        "{lhs} vs {rhs}"
    );
}

#[test]
fn borodin_okounkov_fredholm_factor_tends_to_one() {
    // for fixed g the Fredholm factor det(I-K) approaches 1 as n grows;
    // both factors must sit in the numerator so that neither g+/g- nor
    // g-/g+ degenerates to a Laurent polynomial
    let g = SymbolSpec::plus_factor(c64(-0.5, 0.1), 1)
        .unwrap()
        .multiply(&SymbolSpec::minus_factor(c64(-0.45, 0.15), 1).unwrap());
    let mut big_g = c64(0.0, 0.0);
    for &(cp, mp) in g.plus_factors() {
        for &(cq, mq) in g.minus_factors() {
            big_g -= (mp * mq) as f64 * (c64(1.0, 0.0) - cp * cq).ln();
        }
    }
    let eg = big_g.exp();
    let mut devs = Vec::new();
    for n in [2usize, 6, 10] {
        let (_, rhs) = borodin_okounkov(&g, n, Budget::default()).unwrap();
        devs.push((rhs / eg - c64(1.0, 0.0)).norm());
    }
    assert!(devs[1] < devs[0] && devs[2] < devs[1], "deviations {devs:?}");
}

#[test]
fn borodin_okounkov_random_rational_symbols() {
    let mut rng = StdRng::seed_from_u64(23);
    for trial in 0..20 {
        let sym = random_symbol(&mut rng, 3);
        let n = rng.gen_range(1..=12usize);
        let (lhs, rhs) = borodin_okounkov(&sym, n, Budget::default()).unwrap();
        assert!(
            (lhs - rhs).norm() <= 1e-9 * (1.0 + lhs.norm()),
            "trial {trial} n={n}: {lhs} vs {rhs}"
        );
    }
}

#[test]
fn toeplitz_inverse_factorization_converges_on_truncations() {
    // The operator identity T(phi)^{-1} = T(1/phi+) T(1/phi-) holds on the
    // infinite space; finite sections keep a reflected correction pinned at
    // the lower-right corner, so convergence is entrywise: compare the
    // leading 8x8 blocks as N grows.
    let sym = SymbolSpec::plus_factor(c64(-1.0 / 3.0, 0.0), 1)
        .unwrap()
        .multiply(&SymbolSpec::minus_factor(c64(0.25, 0.0), -1).unwrap());
    let inv_plus = sym.plus_part().reciprocal();
    let inv_minus = sym.minus_part().reciprocal();
    let mut norms = Vec::new();
    for n in [8usize, 16, 32] {
        let full = sym.fourier_exact(n + 1);
        let at = |k: i64| {
            let idx = k + n as i64 + 1;
            if idx < 0 || idx as usize >= full.len() {
                c64(0.0, 0.0)
            } else {
                full[idx as usize]
            }
        };
        let tp = toeplitz_matrix(&at, n);
        let ip = inv_plus.fourier_exact(n + 1);
        let im = inv_minus.fourier_exact(n + 1);
        let at_p = |k: i64| {
            let idx = k + n as i64 + 1;
            if idx < 0 || idx as usize >= ip.len() {
                c64(0.0, 0.0)
            } else {
                ip[idx as usize]
            }
        };
        let at_m = |k: i64| {
            let idx = k + n as i64 + 1;
            if idx < 0 || idx as usize >= im.len() {
                c64(0.0, 0.0)
            } else {
                im[idx as usize]
            }
        };
        let lhs = toeplitz_matrix(&at_p, n) * toeplitz_matrix(&at_m, n);
        let rhs = tp
            .clone()
            .lu()
            .solve(&nalgebra::DMatrix::identity(n, n))
            .unwrap();
        let block = 8.min(n);
        norms.push((lhs.view((0, 0), (block, block)) - rhs.view((0, 0), (block, block))).norm());
    }
    assert!(
        norms[1] < norms[0] && norms[2] < norms[1],
        "norms {norms:?}"
    );
    assert!(norms[2] < 1e-8);
}

#[test]
fn infinite_toeplitz_trivial_levels() {
    // all phi = 1: only boundary pinning at positions <= 0 (d = 1)
    let levels = Arc::new(
        LevelSymbols::new(0, 4, vec![SymbolSpec::one(); 4]).unwrap(),
    );
    let k = infinite_toeplitz_kernel(&levels, 1, Budget::default(), None).unwrap();
    let away = k.eval((1, 2), (1, 2)).unwrap();
    assert!(away.norm() < 1e-10, "unpinned site: {away}");
    let pinned = k.eval((1, 0), (1, 0)).unwrap();
    assert!((pinned - c64(1.0, 0.0)).norm() < 1e-10, "pinned site: {pinned}");
}

#[test]
fn contour_radius_invariance() {
    let levels = aztec_levels(3, 0.5);
    let k1 = infinite_toeplitz_kernel(&levels, 1, Budget::default(), None).unwrap();
    let k2 = infinite_toeplitz_kernel(
        &levels,
        1,
        Budget::default(),
        Some(ContourRadii {
            inner: 0.72,
            outer: 1.55,
        }),
    )
    .unwrap();
    let k3 = infinite_toeplitz_kernel(
        &levels,
        1,
        Budget::default(),
        Some(ContourRadii {
            inner: 0.95,
            outer: 1.05,
        }),
    )
    .unwrap();
    for (x, y) in [((1i64, 0i64), (1i64, 0i64)), ((2, 1), (3, 0)), ((3, -1), (1, 2))] {
        let a = k1.eval(x, y).unwrap();
        let b = k2.eval(x, y).unwrap();
        let c = k3.eval(x, y).unwrap();
        assert!((a - b).norm() < 1e-10 && (a - c).norm() < 1e-10);
    }
    // radii outside the annulus are rejected
    assert!(infinite_toeplitz_kernel(
        &levels,
        1,
        Budget::default(),
        Some(ContourRadii {
            inner: 0.3,
            outer: 1.5
        })
    )
    .is_err());
}

#[test]
fn finite_m_converges_to_infinite_toeplitz() {
    let levels = aztec_levels(2, 0.5);
    let inf = infinite_toeplitz_kernel(&levels, 1, Budget::default(), None).unwrap();
    let fin = finite_m_kernel(&levels, 40, 1, Budget::default(), false).unwrap();
    for (x, y) in [((1i64, 0i64), (1i64, 0i64)), ((1, 1), (2, 0)), ((3, 0), (3, 0))] {
        let a = inf.eval(x, y).unwrap();
        let b = fin.eval(x, y).unwrap();
        assert!((a - b).norm() < 1e-8, "{x:?},{y:?}: {a} vs {b}");
    }
}

#[test]
fn finite_m_duality() {
    // K* = delta - K on coinciding points
    let levels = aztec_levels(2, 0.4);
    let m = 3usize;
    let k = finite_m_kernel(&levels, m, 1, Budget::default(), false).unwrap();
    let kd = finite_m_kernel(&levels, m, 1, Budget::default(), true).unwrap();
    for (r, u) in [(1i64, 0i64), (1, 1), (2, -1), (3, 0)] {
        let a = k.eval((r, u), (r, u)).unwrap();
        let b = kd.eval((r, u), (r, u)).unwrap();
        assert!(
            (a + b - c64(1.0, 0.0)).norm() < 1e-8,
            "({r},{u}): K={a} K*={b}"
        );
    }
    // and off the diagonal K* = -K
    for ((r, u), (s, v)) in [((1i64, 0i64), (2i64, 1i64)), ((3, 0), (1, 1))] {
        let a = k.eval((r, u), (s, v)).unwrap();
        let b = kd.eval((r, u), (s, v)).unwrap();
        assert!((a + b).norm() < 1e-8, "({r},{u};{s},{v}): K={a} K*={b}");
    }
}
