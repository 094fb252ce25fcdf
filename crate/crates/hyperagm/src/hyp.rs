//! Gauss hypergeometric function ₂F₁ for real parameters and real argument
//! z < 1, the modular ratio equation along the hypergeometric section, and
//! the closed forms for the trigonal period quotients.

use alloc::format;
use alloc::string::String;
#[allow(unused_imports)]
use num_traits::Float;

use crate::quad;
use crate::{Error, Result, C64};

/// ₂F₁(p, q; r; z) by direct series inside |z| ≤ 0.95, the z → 1 connection
/// formulas for z above that, and the Euler integral as the remaining
/// fallback (z < 1 only). The integral route needs r > q > 0, which holds
/// for every parameter set used here.
pub fn hyp2f1(p: f64, q: f64, r: f64, z: f64) -> Result<f64> {
    if !z.is_finite() || z >= 1.0 {
        return Err(Error::Domain(format!(
            "hypergeometric argument must be below 1, got {z}"
        )));
    }
    if r <= 0.0 {
        return Err(Error::Domain(String::from(
            "third hypergeometric parameter must be positive",
        )));
    }
    if z.abs() <= 0.95 {
        hyp2f1_series(p, q, r, z)
    } else if z > 0.95 {
        hyp2f1_near_one(p, q, r, z)
    } else {
        hyp2f1_euler(p, q, r, z)
    }
}

/// Digamma by upward recurrence into the asymptotic regime.
fn digamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 16.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    // ln x - 1/(2x) - Σ B₂ₖ/(2k x^{2k})
    acc + libm::log(x) - 0.5 * inv
        - inv2
            * (1.0 / 12.0
                + inv2
                    * (-1.0 / 120.0
                        + inv2 * (1.0 / 252.0 + inv2 * (-1.0 / 240.0 + inv2 * (1.0 / 132.0)))))
}

/// Connection at z → 1. The balanced case r = p + q picks up a logarithm;
/// otherwise two Gauss series in 1 − z apply when their third parameters
/// stay positive.
fn hyp2f1_near_one(p: f64, q: f64, r: f64, z: f64) -> Result<f64> {
    let w = 1.0 - z;
    let m = r - p - q;
    if m.abs() < 1e-12 {
        // Σ (p)ₙ(q)ₙ/(n!)² [2ψ(n+1) − ψ(p+n) − ψ(q+n) − ln w] wⁿ,
        // prefactor Γ(r)/(Γ(p)Γ(q))
        if p <= 0.0 || q <= 0.0 {
            return hyp2f1_euler(p, q, r, z);
        }
        let ln_w = libm::log(w);
        let mut psi_n = digamma(1.0);
        let mut psi_p = digamma(p);
        let mut psi_q = digamma(q);
        let mut poch = 1.0f64;
        let mut sum = 0.0f64;
        for n in 0..10_000 {
            let nf = n as f64;
            let term = poch * (2.0 * psi_n - psi_p - psi_q - ln_w);
            sum += term;
            if term.abs() <= 1e-17 * sum.abs() && n > 2 {
                let pref = libm::tgamma(r) / (libm::tgamma(p) * libm::tgamma(q));
                return Ok(pref * sum);
            }
            poch *= (p + nf) * (q + nf) / ((nf + 1.0) * (nf + 1.0)) * w;
            psi_n += 1.0 / (nf + 1.0);
            psi_p += 1.0 / (p + nf);
            psi_q += 1.0 / (q + nf);
        }
        Err(Error::NoConvergence { steps: 10_000 })
    } else if (m - libm::round(m)).abs() > 1e-9 {
        let r1 = p + q - r + 1.0;
        let r2 = m + 1.0;
        if r1 <= 0.0 || r2 <= 0.0 {
            return hyp2f1_euler(p, q, r, z);
        }
        let f1 = hyp2f1_series(p, q, r1, w)?;
        let f2 = hyp2f1_series(r - p, r - q, r2, w)?;
        let c1 = libm::tgamma(r) * libm::tgamma(m) / (libm::tgamma(r - p) * libm::tgamma(r - q));
        let c2 = libm::tgamma(r) * libm::tgamma(-m) / (libm::tgamma(p) * libm::tgamma(q));
        Ok(c1 * f1 + c2 * libm::pow(w, m) * f2)
    } else {
        hyp2f1_euler(p, q, r, z)
    }
}

fn hyp2f1_series(p: f64, q: f64, r: f64, z: f64) -> Result<f64> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 0..10_000 {
        let kf = k as f64;
        term *= (p + kf) * (q + kf) / ((r + kf) * (kf + 1.0)) * z;
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::NoConvergence { steps: 10_000 })
}

/// Euler integral with endpoint power substitutions so both pieces have
/// bounded integrands even when z is close to 1.
fn hyp2f1_euler(p: f64, q: f64, r: f64, z: f64) -> Result<f64> {
    let (a, b) = if r > q && q > 0.0 { (p, q) } else { (q, p) };
    if !(r > b && b > 0.0) {
        return Err(Error::Domain(String::from(
            "integral representation needs r > q > 0 for one ordering",
        )));
    }
    let cmb = r - b;
    // left piece: u = s^{1/b} turns u^{b-1} du into ds/b exactly
    let kernel = |u: f64| (1.0 - u).powf(cmb - 1.0) * (1.0 - z * u).powf(-a);
    let left_hi = 0.5f64.powf(b);
    let left = |s: f64| C64::new(kernel(s.powf(1.0 / b)) / b, 0.0);
    // right piece: 1-u = w^{1/(r-b)} absorbs (1-u)^{r-b-1}
    let right_hi = 0.5f64.powf(cmb);
    let right = |w: f64| {
        let u = 1.0 - w.powf(1.0 / cmb);
        C64::new(u.powf(b - 1.0) * (1.0 - z * u).powf(-a) / cmb, 0.0)
    };

    let rough = quad::gl16(&mut |s| left(s), 0.0, left_hi).norm()
        + quad::gl16(&mut |w| right(w), 0.0, right_hi).norm();
    let tol = (1e-14 * rough).max(1e-16);
    let (il, _) = quad::integrate(&mut |s| left(s), 0.0, left_hi, tol)?;
    let (ir, _) = quad::integrate(&mut |w| right(w), 0.0, right_hi, tol)?;

    let beta = libm::tgamma(b) * libm::tgamma(cmb) / libm::tgamma(r);
    Ok((il.re + ir.re) / beta)
}

/// F(1/3, 2/3; 1; t) / F(1/3, 2/3; 1; 1−t), strictly increasing in t.
pub fn modular_ratio(t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Domain(format!("ratio argument t={t} outside (0,1)")));
    }
    Ok(hyp2f1(1.0 / 3.0, 2.0 / 3.0, 1.0, t)? / hyp2f1(1.0 / 3.0, 2.0 / 3.0, 1.0, 1.0 - t)?)
}

const S_LO: f64 = 1e-9;

/// Invert the modular ratio: returns (t, b) with
/// b = (1 − 2t)/√(t(1−t)).
///
/// Ratios above one land at t > 1/2 and negative b; reciprocal ratios mirror
/// to (1−t, −b). The reachable range is bounded by t = 1 − 1e−9.
pub fn solve_modular(ratio: f64) -> Result<(f64, f64)> {
    if !(ratio.is_finite() && ratio > 0.0) {
        return Err(Error::Domain(format!("ratio must be positive, got {ratio}")));
    }
    if (ratio - 1.0).abs() < 1e-14 {
        return Ok((0.5, 0.0));
    }
    if ratio < 1.0 {
        let (t, b) = solve_modular(1.0 / ratio)?;
        return Ok((1.0 - t, -b));
    }
    // Solve for s = 1 − t in log space; the ratio decreases in s.
    let h = |ln_s: f64| -> Result<f64> {
        let s = ln_s.exp();
        Ok(modular_ratio(1.0 - s)? - ratio)
    };
    let mut lo = S_LO.ln();
    let mut hi = 0.5f64.ln();
    let h_lo = h(lo)?;
    if h_lo < 0.0 {
        return Err(Error::NoRoot(format!(
            "ratio {ratio} exceeds the reachable range"
        )));
    }
    // h(hi) = 1 - ratio < 0 here.
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if h(mid)? >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 {
            break;
        }
    }
    let s = (0.5 * (lo + hi)).exp();
    let t = 1.0 - s;
    let b = (2.0 * s - 1.0) / (s * (1.0 - s)).sqrt();
    Ok((t, b))
}

/// β from its closed form along the hypergeometric section:
/// β^{1/3} = −(n+m)·(2π/(3√3))·(t(1−t))^{1/6}·F(1/3, 2/3; 1; t).
pub fn beta_closed_form(n: i64, m: i64, t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Domain(format!("t={t} outside (0,1)")));
    }
    let f = hyp2f1(1.0 / 3.0, 2.0 / 3.0, 1.0, t)?;
    let scale = 2.0 * core::f64::consts::PI / (3.0 * 3.0f64.sqrt());
    let cbrt_beta = -((n + m) as f64) * scale * (t * (1.0 - t)).powf(1.0 / 6.0) * f;
    Ok(cbrt_beta * cbrt_beta * cbrt_beta)
}

/// The eight closed-form period integrals of the trigonal quotient curve at
/// shape parameter α̃, together with the induced hypergeometric argument
/// t = α̃⁶/(1 + α̃⁶).
#[derive(Clone, Copy, Debug)]
pub struct ClosedFormSet {
    pub alpha: f64,
    pub t: f64,
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub i4: f64,
    pub j1: f64,
    pub j2: f64,
    pub j3: f64,
    pub j4: f64,
}

impl ClosedFormSet {
    /// I₁/J₁, the ratio steering the modular equation.
    pub fn ratio(&self) -> f64 {
        self.i1 / self.j1
    }
}

/// Evaluate all eight closed forms at α̃ > 0.
pub fn closed_forms(alpha: f64) -> Result<ClosedFormSet> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::Domain(format!(
            "shape parameter must be positive, got {alpha}"
        )));
    }
    let pi = core::f64::consts::PI;
    let rt3 = 3.0f64.sqrt();
    let a6 = alpha.powi(6);
    let am6 = alpha.powi(-6);
    let third = 1.0 / 3.0;

    let f11_in = hyp2f1(third, third, 1.0, -a6)?;
    let f11_out = hyp2f1(third, third, 1.0, -am6)?;
    let f22_in = hyp2f1(2.0 * third, 2.0 * third, 1.0, -a6)?;
    let f22_out = hyp2f1(2.0 * third, 2.0 * third, 1.0, -am6)?;
    let f14_in = hyp2f1(2.0 * third, 1.0, 4.0 * third, -a6)?;
    let f14_out = hyp2f1(2.0 * third, 1.0, 4.0 * third, -am6)?;

    let gamma23 = libm::tgamma(2.0 * third);
    let i2 = 4.0 * pi * pi / (9.0 * gamma23.powi(3)) * alpha * (1.0 + a6).powf(-third);

    Ok(ClosedFormSet {
        alpha,
        t: a6 / (1.0 + a6),
        i1: -(2.0 * pi * rt3 * alpha / 9.0) * f11_in,
        j1: (2.0 * pi * rt3 / (9.0 * alpha)) * f11_out,
        i2,
        j2: -i2,
        i3: (2.0 * pi * alpha * alpha / (3.0 * rt3)) * f22_in,
        j3: (2.0 * pi / (3.0 * rt3 * alpha * alpha)) * f22_out,
        i4: alpha.powi(3) * f14_in,
        j4: -alpha.powi(-3) * f14_out,
    })
}
