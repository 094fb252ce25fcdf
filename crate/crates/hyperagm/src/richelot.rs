//! Genus-2 AGM for curves y² + P(x)Q(x)R(x) = 0 with six real ordered
//! branchpoints: the root recursion through the bracket triple (U, V, W),
//! the product T of step factors, closed-form integrals between the three
//! canonical branchpoint pairs, and the Möbius relabelling that reaches the
//! remaining pairs.

use alloc::format;
use alloc::string::String;
#[allow(unused_imports)]
use num_traits::Float;

use crate::poly::{self, delta_det, uvw_brackets, MonicQuadratic, QuadTriple};
use crate::{Error, Result, C64};

/// One level of the root recursion.
///
/// `roots` stay strictly interlaced (a < a' < b < b' < c < c') up to the
/// convergence tie tolerance; `t_product` accumulates ∏ t_k.
#[derive(Clone, Copy, Debug)]
pub struct RichelotState {
    pub roots: [f64; 6],
    pub t_product: f64,
    pub step: usize,
}

impl RichelotState {
    pub fn new(roots: [f64; 6]) -> Result<Self> {
        let scale = root_scale(&roots);
        for w in roots.windows(2) {
            if w[1] - w[0] <= 1e-13 * scale {
                return Err(Error::Domain(String::from(
                    "initial branchpoints must be strictly increasing",
                )));
            }
        }
        Ok(RichelotState {
            roots,
            t_product: 1.0,
            step: 0,
        })
    }
}

fn root_scale(roots: &[f64; 6]) -> f64 {
    roots.iter().fold(1.0f64, |m, r| m.max(r.abs()))
}

fn triple_from_ordered(roots: &[f64; 6]) -> QuadTriple {
    QuadTriple {
        p: MonicQuadratic::new_real(roots[0], roots[1]),
        q: MonicQuadratic::new_real(roots[2], roots[3]),
        r: MonicQuadratic::new_real(roots[4], roots[5]),
    }
}

/// The step factor t_n = 2√Δ_n / √((b+b'−a−a')(c+c'−b−b')(c+c'−a−a')).
fn step_factor(roots: &[f64; 6]) -> Result<f64> {
    let [a, ap, b, bp, c, cp] = *roots;
    let du = c + cp - b - bp;
    let dv = c + cp - a - ap;
    let dw = b + bp - a - ap;
    let denom = dw * du * dv;
    let delta = delta_det(&triple_from_ordered(roots));
    if denom <= 0.0 || delta < 0.0 {
        return Err(Error::OrderingViolation(format!(
            "nonpositive step-factor radicand: delta={delta:e}, denom={denom:e}"
        )));
    }
    Ok(2.0 * delta.sqrt() / denom.sqrt())
}

/// One Richelot step: new roots (v, w, w', u, u', v') from the bracket
/// radicals, with the interlacing
/// a ≤ v ≤ w ≤ a' ≤ b ≤ w' ≤ u ≤ b' ≤ c ≤ u' ≤ v' ≤ c' asserted.
pub fn richelot_step(s: &RichelotState) -> Result<RichelotState> {
    let [a, ap, b, bp, c, cp] = s.roots;
    let scale = root_scale(&s.roots);
    let tie = 1e-13 * scale;

    let rad_a = (b - c) * (b - cp) * (bp - c) * (bp - cp);
    let rad_b = (c - a) * (c - ap) * (cp - a) * (cp - ap);
    let rad_c = (a - b) * (a - bp) * (ap - b) * (ap - bp);
    let floor = -1e-10 * scale.powi(4);
    if rad_a < floor || rad_b < floor || rad_c < floor {
        return Err(Error::OrderingViolation(format!(
            "negative radicand in step {}: ({rad_a:e}, {rad_b:e}, {rad_c:e})",
            s.step
        )));
    }
    let big_a = rad_a.max(0.0).sqrt();
    let big_b = rad_b.max(0.0).sqrt();
    let big_c = rad_c.max(0.0).sqrt();

    let du = c + cp - b - bp;
    let dv = c + cp - a - ap;
    let dw = b + bp - a - ap;
    if du <= 0.0 || dv <= 0.0 || dw <= 0.0 {
        return Err(Error::OrderingViolation(String::from(
            "pair sums out of order",
        )));
    }

    let u = (c * cp - b * bp - big_a) / du;
    let up = (c * cp - b * bp + big_a) / du;
    let v = (c * cp - a * ap - big_b) / dv;
    let vp = (c * cp - a * ap + big_b) / dv;
    let w = (b * bp - a * ap - big_c) / dw;
    let wp = (b * bp - a * ap + big_c) / dw;

    let chain = [a, v, w, ap, b, wp, u, bp, c, up, vp, cp];
    for pair in chain.windows(2) {
        if pair[1] < pair[0] - tie {
            return Err(Error::OrderingViolation(format!(
                "interlacing broken at step {}: {} > {}",
                s.step, pair[0], pair[1]
            )));
        }
    }

    let t_n = step_factor(&s.roots)?;
    Ok(RichelotState {
        roots: [v, w, wp, u, up, vp],
        t_product: s.t_product * t_n,
        step: s.step + 1,
    })
}

/// Completed AGM run: pairwise limits, the accumulated product T, and the
/// number of steps taken.
#[derive(Clone, Copy, Debug)]
pub struct AgmRun {
    pub limits: [f64; 3],
    pub t_product: f64,
    pub steps: usize,
    pub final_roots: [f64; 6],
}

const MAX_STEPS: usize = 60;

/// Iterate until every pair gap |a−a'|, |b−b'|, |c−c'| is at most `tol`.
pub fn run_agm_roots(roots: [f64; 6], tol: f64) -> Result<AgmRun> {
    let mut state = RichelotState::new(roots)?;
    loop {
        let [a, ap, b, bp, c, cp] = state.roots;
        let gap = (ap - a).abs().max((bp - b).abs()).max((cp - c).abs());
        if gap <= tol {
            return Ok(AgmRun {
                limits: [0.5 * (a + ap), 0.5 * (b + bp), 0.5 * (c + cp)],
                t_product: state.t_product,
                steps: state.step,
                final_roots: state.roots,
            });
        }
        if state.step >= MAX_STEPS {
            return Err(Error::NoConvergence { steps: MAX_STEPS });
        }
        state = richelot_step(&state)?;
    }
}

/// AGM from a validated real ordered triple.
pub fn run_agm(t: &QuadTriple, tol: f64) -> Result<AgmRun> {
    let roots = t.real_roots()?;
    run_agm_roots(roots, tol)
}

/// The three canonical band values πT·S(μ)/∏(μ−ν) at the pairwise limits.
///
/// The value at the middle limit carries the opposite sign to the outer two
/// (partial-fraction structure), so the three sum to zero for deg S ≤ 1.
pub fn theorem_bands(roots: [f64; 6], numerator: &[f64]) -> Result<[f64; 3]> {
    let scale = root_scale(&roots);
    // Quadratic convergence overshoots this by many digits on the last
    // step; the truncated tail perturbs T at O(gap²).
    let run = run_agm_roots(roots, 1e-13 * scale)?;
    let [alpha, beta, gamma] = run.limits;
    let pi_t = core::f64::consts::PI * run.t_product;
    let s = |x: f64| poly::eval_real_at(numerator, x);
    Ok([
        pi_t * s(alpha) / ((alpha - beta) * (alpha - gamma)),
        pi_t * s(beta) / ((beta - alpha) * (beta - gamma)),
        pi_t * s(gamma) / ((gamma - alpha) * (gamma - beta)),
    ])
}

/// I(a,a'), I(b,b'), I(c,c') of ∫ S dx/y for a real ordered curve, with the
/// sign convention of the midpoint-anchored branch on the base segment.
pub fn canonical_integrals(t: &QuadTriple, numerator: &[f64]) -> Result<[C64; 3]> {
    if numerator.len() > 3 {
        return Err(Error::Domain(String::from("numerator degree above 2")));
    }
    let roots = t.real_roots()?;
    let bands = theorem_bands(roots, numerator)?;
    Ok([
        C64::new(bands[0], 0.0),
        C64::new(bands[1], 0.0),
        C64::new(bands[2], 0.0),
    ])
}

/// Record of the relabelling x ↦ 1/(2x − s) with s = a + a'.
#[derive(Clone, Copy, Debug)]
pub struct MobiusRecord {
    pub s: f64,
    /// K = −∏(s − 2r) over the six roots; the pullback scale is 1/√K.
    pub k: f64,
}

impl MobiusRecord {
    pub fn apply(&self, x: f64) -> f64 {
        1.0 / (2.0 * x - self.s)
    }

    pub fn invert(&self, xi: f64) -> f64 {
        0.5 * (1.0 / xi + self.s)
    }

    /// Image numerator of S(x) = s0 + s1·x under the pullback, degree ≤ 1.
    pub fn transformed_numerator(&self, numerator: &[f64]) -> Result<[f64; 2]> {
        if numerator.len() > 2 {
            return Err(Error::Domain(String::from(
                "gap transport supports numerator degree at most 1",
            )));
        }
        let s0 = numerator.first().copied().unwrap_or(0.0);
        let s1 = numerator.get(1).copied().unwrap_or(0.0);
        Ok([2.0 * s1, 4.0 * s0 + 2.0 * s1 * self.s])
    }
}

/// Relabelled curve under x ↦ 1/(2x − s): image roots sorted ascending form
/// a real ordered triple with the pair structure
/// (f(a), f(c')), (f(c), f(b')), (f(b), f(a')).
pub fn mobius_relabel(t: &QuadTriple) -> Result<(QuadTriple, MobiusRecord)> {
    let roots = t.real_roots()?;
    let [a, ap, b, bp, c, cp] = roots;
    let s = a + ap;
    let scale = root_scale(&roots);
    let mut k = -1.0;
    for &r in &roots {
        let den = s - 2.0 * r;
        if den.abs() <= 1e-12 * scale {
            return Err(Error::DegenerateMap);
        }
        k *= den;
    }
    if k <= 0.0 {
        return Err(Error::OrderingViolation(String::from(
            "relabelling scale K must be positive",
        )));
    }
    let record = MobiusRecord { s, k };
    let expected = [
        record.apply(a),
        record.apply(cp),
        record.apply(c),
        record.apply(bp),
        record.apply(b),
        record.apply(ap),
    ];
    let mut sorted = expected;
    sorted.sort_by(|p, q| p.partial_cmp(q).unwrap());
    if sorted != expected {
        return Err(Error::OrderingViolation(String::from(
            "relabelled roots broke the expected ordering",
        )));
    }
    let image = QuadTriple::from_real_roots(sorted)?;
    Ok((image, record))
}

/// Magnitudes (g1, g2) of the purely imaginary integrals over the gaps
/// (a', b) and (b', c), via the relabelled curve's bands.
pub fn gap_integrals(t: &QuadTriple, numerator: &[f64]) -> Result<(f64, f64)> {
    let (image, record) = mobius_relabel(t)?;
    let image_numer = record.transformed_numerator(numerator)?;
    let bands = theorem_bands(image.real_roots()?, &image_numer)?;
    let root_k = record.k.sqrt();
    Ok((bands[2] / root_k, -bands[1] / root_k))
}

/// The seven branchpoint-pair integrals ∫ S dx/y of a genus-2 curve for one
/// numerator S.
///
/// Key order: (a,a'), (b,b'), (c,c'), (a,b), (a',b'), (b,c), (b',c').
/// The three canonical entries satisfy aa + bb + cc = 0 within tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegralTable {
    pub aa: C64,
    pub bb: C64,
    pub cc: C64,
    pub ab: C64,
    pub apbp: C64,
    pub bc: C64,
    pub bpcp: C64,
}

impl IntegralTable {
    pub fn entries(&self) -> [(&'static str, C64); 7] {
        [
            ("a,a'", self.aa),
            ("b,b'", self.bb),
            ("c,c'", self.cc),
            ("a,b", self.ab),
            ("a',b'", self.apbp),
            ("b,c", self.bc),
            ("b',c'", self.bpcp),
        ]
    }

    pub fn sum_identity_residual(&self) -> f64 {
        (self.aa + self.bb + self.cc).norm()
    }
}

/// Full seven-entry table for a real ordered curve. Mixed-pair entries pick
/// up the purely imaginary gap contributions of the upper-detour
/// continuation from the base-segment branch.
pub fn real_integral_table(t: &QuadTriple, numerator: &[f64]) -> Result<IntegralTable> {
    if numerator.len() > 2 {
        return Err(Error::Domain(String::from(
            "table supports numerator degree at most 1",
        )));
    }
    let bands = canonical_integrals(t, numerator)?;
    let (g1, g2) = gap_integrals(t, numerator)?;
    let i = C64::new(0.0, 1.0);
    Ok(IntegralTable {
        aa: bands[0],
        bb: bands[1],
        cc: bands[2],
        ab: bands[0] + i * g1,
        apbp: bands[1] + i * g1,
        bc: bands[1] - i * g2,
        bpcp: bands[2] - i * g2,
    })
}

/// Image abscissas z₁(x), z₂(x) of the degree-2 correspondence
/// P(x)U(z) + Q(x)V(z) = 0.
pub fn correspondence_images(t: &QuadTriple, x: C64) -> Result<(C64, C64)> {
    let (u, v, _) = uvw_brackets(t);
    let px = t.p.eval(x);
    let qx = t.q.eval(x);
    let c0 = px * u[0] + qx * v[0];
    let c1 = px * u[1] + qx * v[1];
    let c2 = px * u[2] + qx * v[2];
    let scale = c0.norm().max(c1.norm()).max(c2.norm());
    if scale == 0.0 || c2.norm() <= 1e-12 * scale {
        return Err(Error::DegenerateMap);
    }
    let disc = c1 * c1 - c2 * c0 * 4.0;
    let sq = disc.sqrt();
    // Root extraction avoiding cancellation in −c1 ± √disc.
    let q = if (c1 + sq).norm() >= (c1 - sq).norm() {
        (c1 + sq) * -0.5
    } else {
        (c1 - sq) * -0.5
    };
    if q.norm() == 0.0 {
        return Ok((C64::new(0.0, 0.0), -c1 / c2));
    }
    Ok((q / c2, c0 / q))
}

/// Ordinate on the image curve paired with abscissa z:
/// y_i = P(x)·U(z)·(x − z)/y.
pub fn correspondence_ordinate(t: &QuadTriple, x: C64, z: C64, y: C64) -> C64 {
    let (u, _, _) = uvw_brackets(t);
    t.p.eval(x) * poly::eval_real(&u, z) * (x - z) / y
}

/// Roots of a real quadratic, used to cross-check the step roots against
/// the bracket polynomials.
pub fn real_quadratic_roots(c: &[f64; 3]) -> Option<(f64, f64)> {
    if c[2] == 0.0 {
        return None;
    }
    let disc = c[1] * c[1] - 4.0 * c[2] * c[0];
    if disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    let q = -0.5 * (c[1] + c[1].signum() * sq);
    let (r1, r2) = if q != 0.0 {
        (q / c[2], c[0] / q)
    } else {
        (0.0, 0.0)
    };
    Some(if r1 <= r2 { (r1, r2) } else { (r2, r1) })
}
