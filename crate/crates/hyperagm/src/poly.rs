//! Polynomial primitives: dense complex polynomials in ascending-coefficient
//! form, monic quadratic factors, the Richelot bracket and determinant, and
//! the fundamental identity residual.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result, C64};

/// Evaluate a polynomial with complex coefficients (ascending order) at `x`.
pub fn eval(coeffs: &[C64], x: C64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Evaluate a polynomial with real coefficients at a complex point.
pub fn eval_real(coeffs: &[f64], x: C64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Evaluate a polynomial with real coefficients at a real point.
pub fn eval_real_at(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Coefficients of the derivative.
pub fn derivative(coeffs: &[C64]) -> Vec<C64> {
    if coeffs.len() <= 1 {
        return vec![C64::new(0.0, 0.0)];
    }
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect()
}

/// Newton-polish a root of `coeffs` from `start`.
pub fn refine_root(coeffs: &[C64], start: C64) -> C64 {
    let deriv = derivative(coeffs);
    let mut t = start;
    for _ in 0..16 {
        let f = eval(coeffs, t);
        let df = eval(&deriv, t);
        if df.norm() == 0.0 {
            break;
        }
        let step = f / df;
        t -= step;
        if step.norm() <= 1e-17 * t.norm().max(1.0) {
            break;
        }
    }
    t
}

/// Quotient `p(t) / (t - root)` by synthetic division, remainder dropped.
///
/// Stable when `root` is (numerically) a zero of `p`; the dropped remainder
/// is then at roundoff level.
pub fn deflate(coeffs: &[C64], root: C64) -> Vec<C64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return vec![C64::new(0.0, 0.0)];
    }
    let mut q = vec![C64::new(0.0, 0.0); n];
    q[n - 1] = coeffs[n];
    for k in (1..n).rev() {
        q[k - 1] = coeffs[k] + root * q[k];
    }
    q
}

/// Product of two polynomials.
pub fn mul(p: &[C64], q: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); p.len() + q.len() - 1];
    for (i, &a) in p.iter().enumerate() {
        for (j, &b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Monic polynomial with the given roots.
pub fn from_roots(roots: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(1.0, 0.0)];
    for &r in roots {
        out = mul(&out, &[-r, C64::new(1.0, 0.0)]);
    }
    out
}

/// Coefficients in `t` of `p(x0 + d*t)`.
pub fn compose_line(coeffs: &[C64], x0: C64, d: C64) -> Vec<C64> {
    let mut out: Vec<C64> = vec![C64::new(0.0, 0.0)];
    for &c in coeffs.iter().rev() {
        // out(t) <- out(t)*(x0 + d t) + c
        let mut next = vec![C64::new(0.0, 0.0); out.len() + 1];
        for (k, &q) in out.iter().enumerate() {
            next[k] += q * x0;
            next[k + 1] += q * d;
        }
        next[0] += c;
        out = next;
    }
    while out.len() > 1 && out.last().map_or(false, |c| c.norm() == 0.0) {
        out.pop();
    }
    out
}

fn max_im(roots: &[C64]) -> f64 {
    roots.iter().fold(0.0f64, |m, r| m.max(r.im.abs()))
}

fn scale_of(roots: &[C64]) -> f64 {
    roots.iter().fold(1.0f64, |m, r| m.max(r.norm()))
}

/// Monic quadratic factor given by its root pair.
///
/// The pair is either two reals or a complex-conjugate pair, so the derived
/// coefficients `(r1*r2, -(r1+r2), 1)` are real to within roundoff.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonicQuadratic {
    pub r1: C64,
    pub r2: C64,
}

impl MonicQuadratic {
    pub fn new(r1: C64, r2: C64) -> Result<Self> {
        if !(r1.re.is_finite() && r1.im.is_finite() && r2.re.is_finite() && r2.im.is_finite()) {
            return Err(Error::Domain(String::from("non-finite quadratic roots")));
        }
        let scale = scale_of(&[r1, r2]);
        let real_pair = r1.im.abs() <= 1e-9 * scale && r2.im.abs() <= 1e-9 * scale;
        let conj_pair = (r2 - r1.conj()).norm() <= 1e-9 * scale;
        if !(real_pair || conj_pair) {
            return Err(Error::Domain(String::from(
                "quadratic roots neither real nor a conjugate pair",
            )));
        }
        Ok(MonicQuadratic { r1, r2 })
    }

    pub fn new_real(r1: f64, r2: f64) -> Self {
        MonicQuadratic {
            r1: C64::new(r1, 0.0),
            r2: C64::new(r2, 0.0),
        }
    }

    /// Conjugate pair with the negative-imaginary member first.
    pub fn new_conjugate(r: C64) -> Self {
        let lower = if r.im <= 0.0 { r } else { r.conj() };
        MonicQuadratic {
            r1: lower,
            r2: lower.conj(),
        }
    }

    /// Real coefficients `[c0, c1, 1]` in ascending order.
    ///
    /// Products and sums of a valid root pair are real up to roundoff; the
    /// imaginary residue is discarded.
    pub fn coeffs(&self) -> [f64; 3] {
        let prod = self.r1 * self.r2;
        let sum = self.r1 + self.r2;
        [prod.re, -sum.re, 1.0]
    }

    pub fn eval(&self, x: C64) -> C64 {
        let c = self.coeffs();
        (x + c[1]) * x + c[0]
    }
}

/// The triple (P, Q, R) of monic quadratics defining a genus-2 curve.
///
/// Root order per quadratic is (a, a'), (b, b'), (c, c'). For a real curve
/// the six roots are strictly increasing in that order; for the conjugate
/// case each pair lists the negative-imaginary member first and the pairs
/// are sorted by real part.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadTriple {
    pub p: MonicQuadratic,
    pub q: MonicQuadratic,
    pub r: MonicQuadratic,
}

impl QuadTriple {
    pub fn new(p: MonicQuadratic, q: MonicQuadratic, r: MonicQuadratic) -> Result<Self> {
        let t = QuadTriple { p, q, r };
        let roots = t.roots();
        let scale = scale_of(&roots);
        for i in 0..6 {
            for j in (i + 1)..6 {
                let d = (roots[i] - roots[j]).norm();
                if d <= 1e-12 * scale {
                    return Err(Error::SingularCurve { discriminant: d });
                }
            }
        }
        Ok(t)
    }

    /// Real curve from six ordered roots a < a' < b < b' < c < c'.
    pub fn from_real_roots(roots: [f64; 6]) -> Result<Self> {
        for w in roots.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::Domain(String::from(
                    "real branchpoints must be strictly increasing",
                )));
            }
        }
        QuadTriple::new(
            MonicQuadratic::new_real(roots[0], roots[1]),
            MonicQuadratic::new_real(roots[2], roots[3]),
            MonicQuadratic::new_real(roots[4], roots[5]),
        )
    }

    /// Roots in label order (a, a', b, b', c, c').
    pub fn roots(&self) -> [C64; 6] {
        [
            self.p.r1, self.p.r2, self.q.r1, self.q.r2, self.r.r1, self.r.r2,
        ]
    }

    pub fn real_roots(&self) -> Result<[f64; 6]> {
        let roots = self.roots();
        if max_im(&roots) > 1e-9 * scale_of(&roots) {
            return Err(Error::Domain(String::from("branchpoints are not real")));
        }
        let mut out = [0.0; 6];
        for (o, r) in out.iter_mut().zip(roots.iter()) {
            *o = r.re;
        }
        Ok(out)
    }

    pub fn is_real_ordered(&self) -> bool {
        match self.real_roots() {
            Ok(r) => r.windows(2).all(|w| w[0] < w[1]),
            Err(_) => false,
        }
    }

    /// Coefficients of P(x)·Q(x)·R(x), the monic sextic with the six roots.
    pub fn product_coeffs(&self) -> [f64; 7] {
        let p = self.p.coeffs();
        let q = self.q.coeffs();
        let r = self.r.coeffs();
        let pq = mul_real(&p, &q);
        let pqr = mul_real(&pq, &r);
        let mut out = [0.0; 7];
        out.copy_from_slice(&pqr);
        out
    }
}

fn mul_real(p: &[f64], q: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; p.len() + q.len() - 1];
    for (i, &a) in p.iter().enumerate() {
        for (j, &b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Richelot bracket [f, g] = f'g − g'f of two real quadratics, ascending
/// coefficients. Degree ≤ 2.
pub fn bracket(f: &[f64; 3], g: &[f64; 3]) -> [f64; 3] {
    [
        f[1] * g[0] - g[1] * f[0],
        2.0 * (f[2] * g[0] - g[2] * f[0]),
        f[2] * g[1] - g[2] * f[1],
    ]
}

/// The (U, V, W) bracket triple: U = [Q,R], V = [R,P], W = [P,Q].
pub fn uvw_brackets(t: &QuadTriple) -> ([f64; 3], [f64; 3], [f64; 3]) {
    let p = t.p.coeffs();
    let q = t.q.coeffs();
    let r = t.r.coeffs();
    (bracket(&q, &r), bracket(&r, &p), bracket(&p, &q))
}

/// Determinant of the 3×3 coefficient matrix of (P, Q, R) in basis (1, x, x²).
pub fn delta_det(t: &QuadTriple) -> f64 {
    let p = t.p.coeffs();
    let q = t.q.coeffs();
    let r = t.r.coeffs();
    p[0] * (q[1] * r[2] - q[2] * r[1]) - p[1] * (q[0] * r[2] - q[2] * r[0])
        + p[2] * (q[0] * r[1] - q[1] * r[0])
}

/// Residual of P(x)U(z) + Q(x)V(z) + R(x)W(z) + (x−z)²Δ, normalized by the
/// largest summand magnitude.
pub fn fundamental_identity_residual(t: &QuadTriple, x: C64, z: C64) -> f64 {
    let (u, v, w) = uvw_brackets(t);
    let delta = delta_det(t);
    let terms = [
        t.p.eval(x) * eval_real(&u, z),
        t.q.eval(x) * eval_real(&v, z),
        t.r.eval(x) * eval_real(&w, z),
        (x - z) * (x - z) * delta,
    ];
    let sum: C64 = terms.iter().sum();
    let scale = terms.iter().fold(1e-300f64, |m, t| m.max(t.norm()));
    sum.norm() / scale
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn refine_root_converges_from_a_coarse_guess() {
        let roots = [c(1.5, 0.0), c(-0.4, 0.9), c(2.0, -3.0)];
        let p = from_roots(&roots);
        for &r in &roots {
            let polished = refine_root(&p, r + c(1e-5, -2e-6));
            assert!((polished - r).norm() < 1e-12);
        }
    }

    #[test]
    fn deflate_splits_off_an_exact_factor() {
        let roots = [c(1.5, 0.0), c(-0.4, 0.9), c(2.0, -3.0), c(0.1, 0.1)];
        let p = from_roots(&roots);
        let q = deflate(&p, roots[1]);
        // q must be the monic cubic on the remaining roots.
        let expect = from_roots(&[roots[0], roots[2], roots[3]]);
        assert_eq!(q.len(), expect.len());
        for (a, b) in q.iter().zip(expect.iter()) {
            assert!((a - b).norm() < 1e-13);
        }
        // (t - r) * q reproduces p.
        let back = mul(&[-roots[1], c(1.0, 0.0)], &q);
        for (a, b) in back.iter().zip(p.iter()) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn eval_and_compose_line_agree() {
        let p = [c(1.0, 0.0), c(-2.0, 0.5), c(0.0, 0.0), c(3.0, -1.0)];
        let x0 = c(0.3, 0.7);
        let d = c(-1.1, 0.2);
        let q = compose_line(&p, x0, d);
        for k in 0..7 {
            let t = -0.8 + 0.3 * k as f64;
            let lhs = eval(&q, c(t, 0.0));
            let rhs = eval(&p, x0 + d * t);
            assert!((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()));
        }
    }

    #[test]
    fn bracket_is_antisymmetric_and_kills_diagonal() {
        let f = [2.0, -3.0, 1.0];
        let g = [-8.0, 1.0, 1.0];
        let fg = bracket(&f, &g);
        let gf = bracket(&g, &f);
        for k in 0..3 {
            assert_eq!(fg[k], -gf[k]);
        }
        let ff = bracket(&f, &f);
        assert_eq!(ff, [0.0, 0.0, 0.0]);
    }

    #[test]
    fn bracket_matches_expanded_product() {
        // P = (x-1)(x-2) = x^2 - 3x + 2, Q = (x-3)(x-4) = x^2 - 7x + 12.
        // P'Q - Q'P = (2x-3)(x^2-7x+12) - (2x-7)(x^2-3x+2)
        //           = -4x^2 + 20x - 22.
        let p = [2.0, -3.0, 1.0];
        let q = [12.0, -7.0, 1.0];
        assert_eq!(bracket(&p, &q), [-22.0, 20.0, -4.0]);
    }

    #[test]
    fn delta_det_vanishes_on_repeated_row() {
        let p = MonicQuadratic::new_real(0.0, 1.0);
        let q = MonicQuadratic::new_real(0.0, 1.0);
        let r = MonicQuadratic::new_real(4.0, 5.0);
        let t = QuadTriple { p, q, r };
        assert_eq!(delta_det(&t), 0.0);
    }

    #[test]
    fn delta_det_matches_cofactor_oracle() {
        let t = QuadTriple::from_real_roots([0.0, 1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        let p = t.p.coeffs();
        let q = t.q.coeffs();
        let r = t.r.coeffs();
        // Cofactor expansion along the last column.
        let oracle = p[2] * (q[0] * r[1] - q[1] * r[0]) - q[2] * (p[0] * r[1] - p[1] * r[0])
            + r[2] * (p[0] * q[1] - p[1] * q[0]);
        assert!((delta_det(&t) - oracle).abs() < 1e-12 * oracle.abs().max(1.0));
    }

    #[test]
    fn fundamental_identity_residual_small_on_probes() {
        let t = QuadTriple::from_real_roots([-3.0, -1.5, -0.5, 0.25, 1.75, 4.0]).unwrap();
        let mut worst = 0.0f64;
        for i in 0..20 {
            for j in 0..20 {
                let x = c(-4.0 + 0.41 * i as f64, 0.3 * (j as f64 - 10.0));
                let z = c(3.5 - 0.37 * j as f64, 0.2 * (i as f64 - 9.0));
                worst = worst.max(fundamental_identity_residual(&t, x, z));
            }
        }
        assert!(worst <= 1e-12, "worst residual {worst:e}");
    }

    #[test]
    fn conjugate_constructor_orders_lower_first() {
        let q = MonicQuadratic::new_conjugate(c(1.0, 2.0));
        assert!(q.r1.im < 0.0 && q.r2.im > 0.0);
        let coeffs = q.coeffs();
        assert!((coeffs[0] - 5.0).abs() < 1e-15);
        assert!((coeffs[1] + 2.0).abs() < 1e-15);
    }

    #[test]
    fn mixed_pair_rejected() {
        assert!(MonicQuadratic::new(c(0.0, 1.0), c(2.0, 1.0)).is_err());
    }

    #[test]
    fn near_singular_triple_rejected() {
        let p = MonicQuadratic::new_real(0.0, 1.0);
        let q = MonicQuadratic::new_real(1.0 + 1e-14, 2.0);
        let r = MonicQuadratic::new_real(3.0, 4.0);
        assert!(matches!(
            QuadTriple::new(p, q, r),
            Err(Error::SingularCurve { .. })
        ));
    }

    #[test]
    fn product_coeffs_reconstruct_roots() {
        let t = QuadTriple::from_real_roots([-2.0, -1.0, 0.5, 1.5, 2.5, 3.5]).unwrap();
        let coeffs = t.product_coeffs();
        for r in t.roots() {
            let v = eval_real(&coeffs, r);
            assert!(v.norm() < 1e-10);
        }
        assert_eq!(coeffs[6], 1.0);
    }
}
