//! Polynomial root finding (Aberth-Ehrlich with Newton polish) and the
//! labeled branchpoints of the monopole sextic (x³+ax+g)² + 4.

use alloc::string::String;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::poly::{derivative, eval};
use crate::{Error, Result, C64};

/// All complex roots of a polynomial given in ascending coefficients.
///
/// Simultaneous Aberth-Ehrlich iteration from a perturbed circle of Cauchy
/// radius, followed by two Newton polish sweeps.
pub fn aberth(coeffs: &[C64]) -> Result<Vec<C64>> {
    let mut c: Vec<C64> = coeffs.to_vec();
    let cmax = c.iter().fold(0.0f64, |m, x| m.max(x.norm()));
    if cmax == 0.0 {
        return Err(Error::Domain(String::from("zero polynomial")));
    }
    while c.len() > 1 && c.last().unwrap().norm() <= 1e-300 * cmax {
        c.pop();
    }
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    // Factor out roots at the origin.
    let mut zero_roots = 0;
    while zero_roots < n && c[zero_roots].norm() == 0.0 {
        zero_roots += 1;
    }
    let c: Vec<C64> = c[zero_roots..].to_vec();
    let n = c.len() - 1;
    let mut roots: Vec<C64> = (0..zero_roots).map(|_| C64::new(0.0, 0.0)).collect();
    if n == 0 {
        return Ok(roots);
    }

    let lead = *c.last().unwrap();
    let monic: Vec<C64> = c.iter().map(|&x| x / lead).collect();
    let radius = 1.0 + monic.iter().take(n).fold(0.0f64, |m, x| m.max(x.norm()));
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let theta = 2.0 * core::f64::consts::PI * (k as f64) / (n as f64) + 0.437;
            let r = radius * (0.55 + 0.45 * (k as f64 + 1.0) / (n as f64));
            C64::new(r * theta.cos(), r * theta.sin())
        })
        .collect();

    let deriv = derivative(&monic);
    let mut converged = false;
    let mut last_move = f64::INFINITY;
    for _ in 0..300 {
        let mut max_move = 0.0f64;
        for i in 0..n {
            let p = eval(&monic, z[i]);
            let dp = eval(&deriv, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let newton = if dp.norm() > 0.0 { p / dp } else { C64::new(1e-3, 1e-3) };
            let mut s = C64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        s += C64::new(1.0, 0.0) / d;
                    }
                }
            }
            let denom = C64::new(1.0, 0.0) - newton * s;
            let w = if denom.norm() > 1e-30 { newton / denom } else { newton };
            z[i] -= w;
            max_move = max_move.max(w.norm() / (1.0 + z[i].norm()));
        }
        last_move = max_move;
        if max_move < 1e-15 {
            converged = true;
            break;
        }
    }
    // Multiple roots stall around the cluster radius instead of reaching
    // the clean threshold; accept the stagnated cluster.
    if !converged && last_move > 1e-6 {
        return Err(Error::NoConvergence { steps: 300 });
    }
    for zi in z.iter_mut() {
        for _ in 0..2 {
            let p = eval(&monic, *zi);
            let dp = eval(&deriv, *zi);
            if dp.norm() > 0.0 {
                let step = p / dp;
                if step.norm() < 0.5 * (1.0 + zi.norm()) {
                    *zi -= step;
                }
            }
        }
    }
    roots.extend(z);
    Ok(roots)
}

/// Discriminant magnitude of a monic polynomial, from its computed roots.
pub fn discriminant_magnitude(roots: &[C64]) -> f64 {
    let mut mag = 1.0f64;
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            let d = (roots[i] - roots[j]).norm();
            mag *= d * d;
        }
    }
    mag
}

/// Branchpoints of y² = (x³+ax+g)² + 4 in label order B₁..B₆.
///
/// B₁,B₂,B₃ lie in the upper half-plane with decreasing real part; the lower
/// roots satisfy B₆ = conj(B₁), B₅ = conj(B₂), B₄ = conj(B₃). Conjugacy is
/// enforced exactly by averaging matched pairs.
pub fn monopole_sextic_roots(a: f64, g: f64) -> Result<[C64; 6]> {
    monopole_sextic_roots_with_threshold(a, g, 1e-10)
}

/// As [`monopole_sextic_roots`] with an explicit singularity threshold:
/// the curve is rejected when |disc| < threshold · max(1, max|root|)³⁰.
pub fn monopole_sextic_roots_with_threshold(
    a: f64,
    g: f64,
    sing_tol: f64,
) -> Result<[C64; 6]> {
    let coeffs = monopole_sextic_coeffs(a, g);
    let cpx: Vec<C64> = coeffs.iter().map(|&c| C64::new(c, 0.0)).collect();
    let roots = aberth(&cpx)?;

    let scale = roots.iter().fold(1.0f64, |m, r| m.max(r.norm()));
    let disc = discriminant_magnitude(&roots);
    if disc < sing_tol * scale.powi(30) {
        return Err(Error::SingularCurve { discriminant: disc });
    }

    let mut lower: Vec<C64> = roots.iter().copied().filter(|r| r.im < 0.0).collect();
    let upper: Vec<C64> = roots.iter().copied().filter(|r| r.im >= 0.0).collect();
    if lower.len() != 3 {
        return Err(Error::Domain(String::from(
            "branchpoints do not form three conjugate pairs",
        )));
    }
    lower.sort_by(|p, q| p.re.partial_cmp(&q.re).unwrap());

    let mut out = [C64::new(0.0, 0.0); 6];
    for (k, &low) in lower.iter().enumerate() {
        // Nearest upper root to the reflection, then symmetrize the pair.
        let target = low.conj();
        let up = upper
            .iter()
            .copied()
            .min_by(|p, q| {
                (p - target)
                    .norm()
                    .partial_cmp(&(q - target).norm())
                    .unwrap()
            })
            .unwrap();
        let avg = (low + up.conj()) * 0.5;
        // B4,B5,B6 are the lower roots by increasing real part;
        // B3,B2,B1 their reflections.
        out[3 + k] = avg;
        out[2 - k] = avg.conj();
    }
    Ok(out)
}

/// Ascending coefficients of (x³+ax+g)² + 4.
pub fn monopole_sextic_coeffs(a: f64, g: f64) -> [f64; 7] {
    [
        g * g + 4.0,
        2.0 * a * g,
        a * a,
        2.0 * g,
        2.0 * a,
        0.0,
        1.0,
    ]
}
