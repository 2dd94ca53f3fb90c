//! Maclaurin-series oracle for the Airy function.
//!
//! `Ai(x) = c1 f(x) - c2 g(x)` with the standard hypergeometric-type series;
//! accurate to better than 1e-12 for |x| <= 8 in f64.

/// `Ai(0) = 3^{-2/3} / Gamma(2/3)`
pub const AI_ZERO: f64 = 0.355_028_053_887_817_24;
/// `-Ai'(0) = 3^{-1/3} / Gamma(1/3)`
pub const AI_PRIME_ZERO: f64 = 0.258_819_403_792_806_8;

/// Series value of `Ai(x)`.
pub fn airy_series(x: f64) -> f64 {
    let (f, g) = fg(x);
    AI_ZERO * f - AI_PRIME_ZERO * g
}

/// Series value of `Ai'(x)`.
pub fn airy_prime_series(x: f64) -> f64 {
    // f'(x) and g'(x) series
    let x3 = x * x * x;
    let mut fp = 0.0; // f'(x) = sum 3^k (1/3)_k x^{3k-1} 3k/(3k)!
    let mut term = x * x / 2.0; // k = 1 term of f': 3*1/3 * x^2 / 3! = x^2/2
    let mut k = 1u32;
    loop {
        fp += term;
        let kk = k as f64;
        // ratio of consecutive f' terms: x^3 (3k+1)/( (3k+3)(3k+2)(3k+1) ) * (3k+3)/(3k)
        term *= x3 * (3.0 * kk + 3.0) / ((3.0 * kk + 3.0) * (3.0 * kk + 2.0) * (3.0 * kk + 1.0))
            * (3.0 * kk + 1.0)
            / (3.0 * kk);
        k += 1;
        if term.abs() < 1e-18 * (1.0 + fp.abs()) || k > 400 {
            break;
        }
    }
    let mut gp = 1.0; // g'(0) = 1
    let mut termg = 1.0;
    let mut kg = 0u32;
    loop {
        let kk = kg as f64;
        // g'(x) = sum 3^k (2/3)_k x^{3k} (3k+1)/(3k+1)! = sum 3^k (2/3)_k x^{3k}/(3k)!
        termg *= x3 * (3.0 * kk + 2.0) / ((3.0 * kk + 1.0) * (3.0 * kk + 2.0) * (3.0 * kk + 3.0));
        kg += 1;
        gp += termg;
        if termg.abs() < 1e-18 * (1.0 + gp.abs()) || kg > 400 {
            break;
        }
    }
    AI_ZERO * fp - AI_PRIME_ZERO * gp
}

fn fg(x: f64) -> (f64, f64) {
    let x3 = x * x * x;
    // f(x) = sum_k 3^k (1/3)_k x^{3k} / (3k)!
    let mut f = 1.0;
    let mut term_f = 1.0;
    let mut k = 0u32;
    loop {
        let kk = k as f64;
        term_f *= x3 * (3.0 * kk + 1.0) / ((3.0 * kk + 1.0) * (3.0 * kk + 2.0) * (3.0 * kk + 3.0));
        k += 1;
        f += term_f;
        if term_f.abs() < 1e-18 * (1.0 + f.abs()) || k > 400 {
            break;
        }
    }
    // g(x) = sum_k 3^k (2/3)_k x^{3k+1} / (3k+1)!
    let mut g = x;
    let mut term_g = x;
    let mut kg = 0u32;
    loop {
        let kk = kg as f64;
        term_g *= x3 * (3.0 * kk + 2.0) / ((3.0 * kk + 2.0) * (3.0 * kk + 3.0) * (3.0 * kk + 4.0));
        kg += 1;
        g += term_g;
        if term_g.abs() < 1e-18 * (1.0 + g.abs()) || kg > 400 {
            break;
        }
    }
    (f, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert!((airy_series(0.0) - AI_ZERO).abs() < 1e-15);
        // Ai(1) = 0.1352924163128814 (standard tables)
        assert!((airy_series(1.0) - 0.135_292_416_312_881_4).abs() < 1e-12);
        // Ai(-2) = 0.2274074282016854
        assert!((airy_series(-2.0) - 0.227_407_428_201_685_4).abs() < 1e-12);
        // Ai'(0)
        assert!((airy_prime_series(0.0) + AI_PRIME_ZERO).abs() < 1e-15);
        // Ai'(1) = -0.1591474412967932
        assert!((airy_prime_series(1.0) + 0.159_147_441_296_793_2).abs() < 1e-11);
    }

    #[test]
    fn airy_ode_holds_on_series() {
        // Ai''(x) = x Ai(x) via central differences of Ai'
        for &x in &[-1.5f64, 0.0, 0.8, 2.0] {
            let h = 1e-5;
            let second = (airy_prime_series(x + h) - airy_prime_series(x - h)) / (2.0 * h);
            assert!((second - x * airy_series(x)).abs() < 1e-7, "x={x}");
        }
    }
}
