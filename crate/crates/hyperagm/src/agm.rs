//! The classical arithmetic-geometric mean and the complete elliptic
//! integral it evaluates.

use alloc::string::String;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// Record of one AGM run: the nested pairs, their common limit, and the
/// iteration count.
///
/// The pairs satisfy a_n ≥ a_{n+1} ≥ b_{n+1} ≥ b_n and
/// a_n − b_n ≤ 2^{−n}(a₀ − b₀).
#[derive(Clone, Debug)]
pub struct AgmTrace {
    pub pairs: Vec<(f64, f64)>,
    pub limit: f64,
    pub iterations: usize,
}

const MAX_ITER: usize = 60;

/// Common limit of the arithmetic/geometric mean iteration.
pub fn agm(a: f64, b: f64) -> Result<AgmTrace> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(String::from("agm requires positive finite inputs")));
    }
    let (mut an, mut bn) = if a >= b { (a, b) } else { (b, a) };
    let mut pairs = Vec::with_capacity(12);
    pairs.push((an, bn));
    let mut iterations = 0;
    loop {
        if an - bn <= 4.0 * f64::EPSILON * an {
            return Ok(AgmTrace {
                pairs,
                limit: 0.5 * (an + bn),
                iterations,
            });
        }
        if iterations >= MAX_ITER {
            return Err(Error::NoConvergence { steps: MAX_ITER });
        }
        let next_a = 0.5 * (an + bn);
        let next_b = (an * bn).sqrt();
        an = next_a;
        bn = next_b;
        pairs.push((an, bn));
        iterations += 1;
    }
}

/// ∫₀^{π/2} dφ / √(a²cos²φ + b²sin²φ) = π / (2 M(a,b)).
pub fn elliptic_integral(a: f64, b: f64) -> Result<f64> {
    Ok(core::f64::consts::PI / (2.0 * agm(a, b)?.limit))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point_in_zero_iterations() {
        let t = agm(3.25, 3.25).unwrap();
        assert_eq!(t.iterations, 0);
        assert_eq!(t.limit, 3.25);
    }

    #[test]
    fn order_insensitive() {
        let p = agm(1.0, 2.0).unwrap();
        let q = agm(2.0, 1.0).unwrap();
        assert_eq!(p.limit, q.limit);
    }

    #[test]
    fn gauss_lemniscate_value() {
        // M(√2, 1) = π / ϖ where ϖ is the lemniscate constant.
        let t = agm(core::f64::consts::SQRT_2, 1.0).unwrap();
        assert!((t.limit - 1.198_140_234_735_592_2).abs() < 1e-15);
        assert!(t.iterations <= 8);
    }

    #[test]
    fn trace_is_monotone_nested_with_gap_bound() {
        let t = agm(10.0, 0.1).unwrap();
        let gap0 = t.pairs[0].0 - t.pairs[0].1;
        for (n, w) in t.pairs.windows(2).enumerate() {
            let (a0, b0) = w[0];
            let (a1, b1) = w[1];
            assert!(a0 >= a1 && a1 >= b1 && b1 >= b0);
            assert!(a1 - b1 <= gap0 / (2.0f64).powi(n as i32 + 1) + 1e-15);
        }
    }

    #[test]
    fn homogeneity() {
        let base = agm(1.7, 0.3).unwrap().limit;
        for &lam in &[0.01, 0.5, 3.0, 250.0] {
            let scaled = agm(lam * 1.7, lam * 0.3).unwrap().limit;
            assert!((scaled - lam * base).abs() <= 1e-14 * scaled.abs());
        }
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(agm(0.0, 1.0).is_err());
        assert!(agm(1.0, -2.0).is_err());
        assert!(elliptic_integral(-1.0, 1.0).is_err());
    }

    #[test]
    fn unit_circle_integral() {
        assert!((elliptic_integral(1.0, 1.0).unwrap() - core::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }
}
