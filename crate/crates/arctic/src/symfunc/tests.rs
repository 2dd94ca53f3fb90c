use super::*;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn r(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn elementary_symmetric_examples() {
    // empty-product coefficient
    assert_eq!(elementary_symmetric(0, &[r(7), r(9)]), r(1));
    // k beyond the number of variables
    assert_eq!(elementary_symmetric(3, &[r(1), r(2)]), r(0));
    assert_eq!(elementary_symmetric(-1, &[r(1), r(2)]), r(0));
    // expand (1+2z)(1+3z): e_1 = 5
    assert_eq!(elementary_symmetric(1, &[r(2), r(3)]), r(5));
    assert_eq!(elementary_symmetric(2, &[r(2), r(3)]), r(6));
}

#[test]
fn complete_symmetric_examples() {
    assert_eq!(complete_symmetric(-1, &[r(1)]), r(0));
    // h_2(1,1) = (k+1)_{n-1}/(n-1)! = 3
    assert_eq!(complete_symmetric(2, &[r(1), r(1)]), r(3));
    // one-variable geometric series: h_2(t) = t^2
    let t = c(0.3, 0.4);
    let h2 = complete_symmetric(2, &[t]);
    assert!((h2 - t * t).norm() < 1e-15);
}

#[test]
fn interlacing_examples() {
    let l = Partition::new([3, 1]).unwrap();
    let m = Partition::new([2, 1]).unwrap();
    assert!(interlaces(&l, &m));
    let m2 = Partition::new([4]).unwrap();
    assert!(!interlaces(&l, &m2));
    assert!(interlaces(&l, &l));
}

#[test]
fn skew_schur_examples() {
    // empty determinant
    let empty = SkewShape::straight(Partition::empty());
    assert_eq!(skew_schur::<BigRational>(&empty, &[r(5)]), r(1));

    // s_(1) = h_1 = a + b
    let one = SkewShape::straight(Partition::new([1]).unwrap());
    let a = c(0.2, 0.1);
    let b = c(-0.4, 0.8);
    assert!((skew_schur(&one, &[a, b]) - (a + b)).norm() < 1e-14);

    // one variable: s_{(2,1)/(1)}(a) = a^2 * [interlacing]
    let shape = SkewShape::new(
        Partition::new([2, 1]).unwrap(),
        Partition::new([1]).unwrap(),
    )
    .unwrap();
    let av = r(7);
    assert_eq!(skew_schur(&shape, &[av.clone()]), av.clone() * av);
}

#[test]
fn one_variable_skew_schur_is_monomial_times_interlacing() {
    // s_{lambda/mu}(a) = a^{|lambda|-|mu|} [lambda > mu], exactly.
    let a = r(3);
    for outer in Partition::all_up_to_weight(6) {
        for inner in Partition::all_up_to_weight(6) {
            if !inner.contained_in(&outer) {
                continue;
            }
            let shape = SkewShape::new(outer.clone(), inner.clone()).unwrap();
            let got = skew_schur(&shape, &[a.clone()]);
            let expect = if interlaces(&outer, &inner) {
                let mut m = r(1);
                for _ in 0..(outer.weight() - inner.weight()) {
                    m = m * a.clone();
                }
                m
            } else {
                r(0)
            };
            assert_eq!(got, expect, "shape {outer:?}/{inner:?}");
        }
    }
}

#[test]
fn jacobi_trudi_h_and_e_routes_agree() {
    let mut rng = StdRng::seed_from_u64(7);
    let xs: Vec<Complex64> = (0..3)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    for outer in Partition::all_up_to_weight(8) {
        let shape = SkewShape::straight(outer);
        let h = skew_schur(&shape, &xs);
        let e = skew_schur_dual(&shape, &xs);
        assert!(
            (h - e).norm() <= 1e-12 * (1.0 + h.norm()),
            "shape {:?}: h={} e={}",
            shape.outer,
            h,
            e
        );
    }
}

#[test]
fn bialternant_matches_h_determinant() {
    let mut rng = StdRng::seed_from_u64(11);
    let xs: Vec<Complex64> = (0..4)
        .map(|_| c(rng.gen_range(0.2..1.5), rng.gen_range(-0.7..0.7)))
        .collect();
    for lambda in Partition::all_up_to_weight(6) {
        if lambda.length() > xs.len() {
            continue;
        }
        let shape = SkewShape::straight(lambda.clone());
        let h = skew_schur(&shape, &xs);
        let q = schur_bialternant(&lambda, &xs).unwrap();
        assert!(
            (h - q).norm() <= 1e-10 * (1.0 + h.norm()),
            "lambda {lambda:?}: h={h} quotient={q}"
        );
    }
}

#[test]
fn vandermonde_product_matches_determinant() {
    let mut rng = StdRng::seed_from_u64(3);
    for n in 1..6 {
        let xs: Vec<Complex64> = (0..n)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let prod = vandermonde(&xs);
        let mat: Vec<Vec<Complex64>> = (0..n)
            .map(|i| (0..n).map(|j| xs[i].powu(j as u32)).collect())
            .collect();
        let det = crate::numeric::linalg::det_field(mat);
        assert!((prod - det).norm() <= 1e-12 * (1.0 + det.norm()));
    }
}

#[test]
fn cauchy_binet_trivial_cases() {
    // n = 1: both sides are the plain sum.
    let f = vec![vec![r(1), r(2), r(3)]];
    let g = vec![vec![r(4), r(5), r(6)]];
    let mu = vec![r(1), r(1), r(2)];
    let (lhs, rhs) = cauchy_binet_check(&f, &g, &mu);
    assert_eq!(lhs, rhs);
    assert_eq!(rhs, r(1 * 4 + 2 * 5 + 3 * 6 * 2));

    // n > |X|: rank deficiency kills both sides.
    let f2 = vec![vec![r(1)], vec![r(2)]];
    let g2 = vec![vec![r(3)], vec![r(4)]];
    let (l2, r2) = cauchy_binet_check(&f2, &g2, &[r(1)]);
    assert_eq!(l2, r(0));
    assert_eq!(r2, r(0));
}

#[test]
fn cauchy_binet_random_exact() {
    let mut rng = StdRng::seed_from_u64(5);
    for n in 2..=4usize {
        for size in n..=6usize {
            let f: Vec<Vec<BigRational>> = (0..n)
                .map(|_| (0..size).map(|_| r(rng.gen_range(-5..5))).collect())
                .collect();
            let g: Vec<Vec<BigRational>> = (0..n)
                .map(|_| (0..size).map(|_| r(rng.gen_range(-5..5))).collect())
                .collect();
            let mu: Vec<BigRational> = (0..size).map(|_| r(rng.gen_range(1..4))).collect();
            let (lhs, rhs) = cauchy_binet_check(&f, &g, &mu);
            assert_eq!(lhs, rhs, "n={n} |X|={size}");
        }
    }
}

#[test]
fn conjugate_by_column_counting() {
    let l = Partition::new([4, 2, 1]).unwrap();
    assert_eq!(l.conjugate().parts(), &[3, 2, 1, 1]);
    assert_eq!(l.conjugate().conjugate(), l);
}
