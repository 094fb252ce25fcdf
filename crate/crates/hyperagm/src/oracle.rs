//! Brute-force contour integration used as the trusted oracle for all
//! AGM-derived formulas: hyperelliptic segment integrals with square-root
//! branch tracking, the trigonal sheet-1 integrals, and the direct elliptic
//! integrand.
//!
//! Branch convention: on a segment the square root y = √F(x) is pinned at
//! the segment midpoint by continuing the principal root from the real-axis
//! anchor r = Re(midpoint) vertically up to the midpoint (or from an
//! explicit anchor point); sign flips of the principal branch along any
//! straight path are located as the roots of Im F(line(t)) with Re F < 0.

use alloc::string::String;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::poly::{compose_line, eval};
use crate::quad::integrate;
use crate::roots::aberth;
use crate::{Error, Result, C64};

/// ∫ S(x) dx / y along the straight segment from `x0` to `x1` on
/// y² = sextic(x), with y continued from `anchor` (or the default real-axis
/// anchor when `None`).
#[derive(Clone, Debug)]
pub struct SegmentIntegrand {
    pub sextic: Vec<C64>,
    pub numerator: Vec<C64>,
    pub x0: C64,
    pub x1: C64,
    pub anchor: Option<(C64, C64)>,
}

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    /// Absolute quadrature tolerance.
    pub tol: f64,
    /// Rejection margin for branchpoints near the path interior, relative to
    /// segment length.
    pub branch_margin: f64,
    /// Width (fraction of the parameter interval) of the substitution window
    /// at singular endpoints.
    pub endpoint_window: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            tol: 1e-11,
            branch_margin: 1e-6,
            endpoint_window: 1e-2,
        }
    }
}

const ENDPOINT_MATCH: f64 = 1e-7;

fn principal_sqrt(z: C64) -> C64 {
    z.sqrt()
}

/// Distance from `p` to the segment [a, b].
fn segment_distance(p: C64, a: C64, b: C64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a) * d.conj()).re / len2;
    let t = t.max(0.0).min(1.0);
    (p - (a + d * t)).norm()
}

/// Sign-flip parameters of the principal square root along the composed line
/// polynomial `g(t)`, interior to (0, 1): roots of Im g with Re g < 0 and a
/// genuine sign change.
fn branch_flips(g: &[C64]) -> Result<Vec<f64>> {
    let scale = g.iter().fold(0.0f64, |m, c| m.max(c.norm()));
    if scale == 0.0 {
        return Err(Error::Domain(String::from("zero polynomial on path")));
    }
    let im_scale = g.iter().fold(0.0f64, |m, c| m.max(c.im.abs()));
    if im_scale <= 1e-13 * scale {
        return Ok(Vec::new());
    }
    let im_poly: Vec<C64> = g.iter().map(|c| C64::new(c.im, 0.0)).collect();
    let candidates = aberth(&im_poly)?;
    let mut flips: Vec<f64> = Vec::new();
    let h = 1e-7;
    for r in candidates {
        if r.im.abs() > 1e-7 {
            continue;
        }
        let t = r.re;
        if !(t > 1e-9 && t < 1.0 - 1e-9) {
            continue;
        }
        let at = eval(g, C64::new(t, 0.0));
        if at.re >= 0.0 {
            continue;
        }
        let lo = eval(g, C64::new(t - h, 0.0)).im;
        let hi = eval(g, C64::new(t + h, 0.0)).im;
        if lo == 0.0 || hi == 0.0 || lo.signum() == hi.signum() {
            continue;
        }
        flips.push(t);
    }
    flips.sort_by(|p, q| p.partial_cmp(q).unwrap());
    flips.dedup_by(|p, q| (*p - *q).abs() < 2.0 * h);
    Ok(flips)
}

/// Parity of branch flips along the straight path from `from` to `to`,
/// rejecting paths that pass near a branchpoint.
fn path_parity(
    sextic: &[C64],
    branchpoints: &[C64],
    from: C64,
    to: C64,
    margin: f64,
) -> Result<i32> {
    if (to - from).norm() == 0.0 {
        return Ok(1);
    }
    let len = (to - from).norm();
    for &bp in branchpoints {
        if segment_distance(bp, from, to) <= margin * len {
            return Err(Error::PathThroughBranchpoint {
                distance: segment_distance(bp, from, to),
            });
        }
    }
    let g = compose_line(sextic, from, to - from);
    let flips = branch_flips(&g)?;
    Ok(if flips.len() % 2 == 0 { 1 } else { -1 })
}

/// Straight-segment hyperelliptic integral. Returns (value, error estimate).
pub fn hyperelliptic_segment(seg: &SegmentIntegrand, cfg: &OracleConfig) -> Result<(C64, f64)> {
    let d = seg.x1 - seg.x0;
    let len = d.norm();
    if len == 0.0 {
        return Ok((C64::new(0.0, 0.0), 0.0));
    }
    let branchpoints = aberth(&seg.sextic)?;

    let mut x0_root: Option<C64> = None;
    let mut x1_root: Option<C64> = None;
    for &bp in &branchpoints {
        if (bp - seg.x0).norm() <= ENDPOINT_MATCH * len {
            x0_root = Some(bp);
        } else if (bp - seg.x1).norm() <= ENDPOINT_MATCH * len {
            x1_root = Some(bp);
        } else {
            let dist = segment_distance(bp, seg.x0, seg.x1);
            if dist <= cfg.branch_margin * len {
                return Err(Error::PathThroughBranchpoint { distance: dist });
            }
        }
    }

    let g = compose_line(&seg.sextic, seg.x0, d);
    let flips = branch_flips(&g)?;

    // Continue y to the segment midpoint and express it as ±principal.
    let xm = seg.x0 + d * 0.5;
    let fm = eval(&seg.sextic, xm);
    if fm.norm() == 0.0 {
        return Err(Error::PathThroughBranchpoint { distance: 0.0 });
    }
    let y_mid = match seg.anchor {
        None => {
            let xr = C64::new(xm.re, 0.0);
            let parity = path_parity(&seg.sextic, &branchpoints, xr, xm, cfg.branch_margin)?;
            principal_sqrt(fm) * parity as f64
        }
        Some((xa, ya)) => {
            let fa = eval(&seg.sextic, xa);
            let scale = fa.norm().max(1.0);
            if (ya * ya - fa).norm() > 1e-8 * scale {
                return Err(Error::Domain(String::from(
                    "anchor value does not lie on the curve",
                )));
            }
            if fa.norm() == 0.0 {
                return Err(Error::Domain(String::from("anchor at a branchpoint")));
            }
            let pa = principal_sqrt(fa);
            let s0 = if (ya - pa).norm() <= (ya + pa).norm() { 1.0 } else { -1.0 };
            let parity = path_parity(&seg.sextic, &branchpoints, xa, xm, cfg.branch_margin)?;
            principal_sqrt(fm) * (parity as f64) * s0
        }
    };
    let sigma_mid = {
        let p = principal_sqrt(eval(&g, C64::new(0.5, 0.0)));
        let ratio = y_mid / p;
        if ratio.re >= 0.0 { 1.0 } else { -1.0 }
    };

    // Interval boundaries and per-interval sign, toggling across each flip.
    let mut bounds = Vec::with_capacity(flips.len() + 2);
    bounds.push(0.0);
    bounds.extend(flips.iter().copied());
    bounds.push(1.0);
    let mid_idx = bounds.windows(2).position(|w| w[0] <= 0.5 && 0.5 <= w[1]).unwrap();
    let n_pieces = bounds.len() - 1;
    let mut signs = alloc::vec![1.0f64; n_pieces];
    signs[mid_idx] = sigma_mid;
    for i in (0..mid_idx).rev() {
        signs[i] = -signs[i + 1];
    }
    for i in (mid_idx + 1)..n_pieces {
        signs[i] = -signs[i - 1];
    }

    let piece_tol = cfg.tol / (n_pieces + 2) as f64;
    let mut total = C64::new(0.0, 0.0);
    let mut err_total = 0.0;
    for i in 0..n_pieces {
        let (lo, hi) = (bounds[i], bounds[i + 1]);
        let sign = signs[i];
        let mut h = |t: f64| {
            let x = seg.x0 + d * t;
            let y = principal_sqrt(eval(&g, C64::new(t, 0.0))) * sign;
            d * eval(&seg.numerator, x) / y
        };
        let mut lo_eff = lo;
        let mut hi_eff = hi;
        if i == 0 {
            if let Some(bp) = x0_root {
                let w = cfg.endpoint_window.min(0.5 * (hi - lo));
                let t_j = lo + w;
                let y_j = principal_sqrt(eval(&g, C64::new(t_j, 0.0))) * sign;
                let (v, e) =
                    sqrt_tail(&g, &seg.numerator, seg.x0, d, (bp - seg.x0) / d, t_j, y_j, piece_tol)?;
                total += v;
                err_total += e;
                lo_eff = t_j;
            }
        }
        if i == n_pieces - 1 {
            if let Some(bp) = x1_root {
                let w = cfg.endpoint_window.min(0.5 * (hi - lo_eff));
                let t_j = hi - w;
                let y_j = principal_sqrt(eval(&g, C64::new(t_j, 0.0))) * sign;
                let (v, e) =
                    sqrt_tail(&g, &seg.numerator, seg.x0, d, (bp - seg.x0) / d, t_j, y_j, piece_tol)?;
                // the tail runs root -> junction; here the orientation is
                // junction -> root
                total -= v;
                err_total += e;
                hi_eff = t_j;
            }
        }
        let (v, e) = integrate(&mut h, lo_eff, hi_eff, piece_tol)?;
        total += v;
        err_total += e;
    }
    Ok((total, err_total))
}

/// Integral of S(x)/y from the branchpoint nearest `t_guess` (in line
/// coordinates) to the real junction `t_junction`, with the vanishing linear
/// factor of y² divided out exactly so the substitution t = t₀ + ητ² leaves
/// a smooth integrand. `y_junction` fixes the branch: the tail value of y at
/// the junction must match it.
#[allow(clippy::too_many_arguments)]
fn sqrt_tail(
    g: &[C64],
    numerator: &[C64],
    x0: C64,
    d: C64,
    t_guess: C64,
    t_junction: f64,
    y_junction: C64,
    tol: f64,
) -> Result<(C64, f64)> {
    let t0 = crate::poly::refine_root(g, t_guess);
    let gap = C64::new(t_junction, 0.0) - t0;
    let r = gap.norm();
    if r <= 1e-9 {
        return Err(Error::PathThroughBranchpoint { distance: r });
    }
    let eta = gap / r;
    let tau_j = r.sqrt();
    let q = crate::poly::deflate(g, t0);

    // P(tau) = eta * q(t0 + eta tau^2), a polynomial in tau (even powers).
    let qs = compose_line(&q, t0, eta);
    let mut p_tau = alloc::vec![C64::new(0.0, 0.0); 2 * qs.len() - 1];
    for (k, &c) in qs.iter().enumerate() {
        p_tau[2 * k] = c * eta;
    }
    // Principal-branch flips of sqrt(P) on (0, tau_j), located on the
    // rescaled unit interval.
    let mut p_scaled = p_tau.clone();
    let mut pw = 1.0f64;
    for c in p_scaled.iter_mut() {
        *c *= pw;
        pw *= tau_j;
    }
    let flips: Vec<f64> = branch_flips(&p_scaled)?
        .iter()
        .map(|&t| t * tau_j)
        .collect();

    // y restricted to the tail is sigma * tau * sqrt(P); sigma at the
    // junction is fixed by `y_junction`, and toggles across each flip.
    let y_plus = principal_sqrt(eval(&p_tau, C64::new(tau_j, 0.0))) * tau_j;
    let sigma_j = if (y_plus - y_junction).norm() <= (y_plus + y_junction).norm() {
        1.0
    } else {
        -1.0
    };
    let mut bounds = Vec::with_capacity(flips.len() + 2);
    bounds.push(0.0);
    bounds.extend(flips.iter().copied());
    bounds.push(tau_j);
    let n_seg = bounds.len() - 1;
    let mut signs = alloc::vec![sigma_j; n_seg];
    for i in (0..n_seg.saturating_sub(1)).rev() {
        signs[i] = -signs[i + 1];
    }

    let seg_tol = tol / n_seg as f64;
    let mut total = C64::new(0.0, 0.0);
    let mut err = 0.0;
    for i in 0..n_seg {
        let sgn = signs[i];
        let mut f = |tau: f64| {
            let t = t0 + eta * (tau * tau);
            let x = x0 + d * t;
            let p = principal_sqrt(eval(&p_tau, C64::new(tau, 0.0)));
            d * eval(numerator, x) * 2.0 * eta / (p * sgn)
        };
        let (v, e) = integrate(&mut f, bounds[i], bounds[i + 1], seg_tol)?;
        total += v;
        err += e;
    }
    Ok((total, err))
}

fn cube_roots(z: C64) -> [C64; 3] {
    let r = z.norm().cbrt();
    let theta = z.arg() / 3.0;
    let base = C64::new(r * theta.cos(), r * theta.sin());
    let omega = C64::new(-0.5, 0.75f64.sqrt());
    [base, base * omega, base * omega * omega]
}

fn nearest_cube_root(z: C64, reference: C64) -> C64 {
    let roots = cube_roots(z);
    let mut best = roots[0];
    let mut best_d = (roots[0] - reference).norm();
    for &r in &roots[1..] {
        let d = (r - reference).norm();
        if d < best_d {
            best = r;
            best_d = d;
        }
    }
    best
}

/// ∫₀^{upper} z^k dz / w^m on sheet 1 of w³ = z⁶ + b z³ − 1, where sheet 1
/// carries the real value w(0) = −1 and w is continued along the straight
/// path by nearest-cube-root tracking.
pub fn trigonal_sheet1(k: u32, m: u32, upper: C64, b: f64, cfg: &OracleConfig) -> Result<(C64, f64)> {
    if k > 2 || m == 0 || m > 2 {
        return Err(Error::Domain(String::from(
            "trigonal integrand wants k in 0..=2, m in 1..=2",
        )));
    }
    let len = upper.norm();
    if len == 0.0 {
        return Ok((C64::new(0.0, 0.0), 0.0));
    }
    let f_coeffs = [
        C64::new(-1.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(b, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(1.0, 0.0),
    ];
    let branchpoints = aberth(&f_coeffs)?;
    let mut upper_root: Option<C64> = None;
    for &bp in &branchpoints {
        if (bp - upper).norm() <= ENDPOINT_MATCH * len {
            upper_root = Some(bp);
        } else {
            let dist = segment_distance(bp, C64::new(0.0, 0.0), upper);
            if dist <= cfg.branch_margin * len {
                return Err(Error::PathThroughBranchpoint { distance: dist });
            }
        }
    }

    let f_at = |t: f64| eval(&f_coeffs, upper * t);
    let t_main = if upper_root.is_some() { 1.0 - cfg.endpoint_window } else { 1.0 };

    // Branch guide: w sampled densely enough that consecutive values move by
    // less than 20%, making nearest-root lookup unambiguous between nodes.
    let mut n = 64usize;
    let guide = loop {
        let mut ts = Vec::with_capacity(n + 1);
        let mut ws = Vec::with_capacity(n + 1);
        let mut w_prev = C64::new(-1.0, 0.0);
        ts.push(0.0);
        ws.push(w_prev);
        let mut ok = true;
        for i in 1..=n {
            let t = t_main * i as f64 / n as f64;
            let w = nearest_cube_root(f_at(t), w_prev);
            if (w - w_prev).norm() > 0.2 * w.norm().max(w_prev.norm()) {
                ok = false;
                break;
            }
            ts.push(t);
            ws.push(w);
            w_prev = w;
        }
        if ok {
            break (ts, ws);
        }
        n *= 2;
        if n > (1 << 16) {
            return Err(Error::NoConvergence { steps: 1 << 16 });
        }
    };

    let w_at = |t: f64| -> C64 {
        let (ts, ws) = (&guide.0, &guide.1);
        let pos = ts.partition_point(|&x| x < t);
        let reference = if pos == 0 {
            ws[0]
        } else if pos >= ts.len() {
            ws[ts.len() - 1]
        } else {
            let (t0, t1) = (ts[pos - 1], ts[pos]);
            let lam = if t1 > t0 { (t - t0) / (t1 - t0) } else { 0.0 };
            ws[pos - 1] * (1.0 - lam) + ws[pos] * lam
        };
        nearest_cube_root(f_at(t), reference)
    };

    let integrand = |t: f64| -> C64 {
        let z = upper * t;
        let w = w_at(t);
        let zk = match k {
            0 => C64::new(1.0, 0.0),
            1 => z,
            _ => z * z,
        };
        let wm = if m == 1 { w } else { w * w };
        upper * zk / wm
    };

    let (mut total, mut err_total) = integrate(&mut { integrand }, 0.0, t_main, cfg.tol)?;
    if let Some(bp) = upper_root {
        // In s = 1 - t the curve polynomial factors as (s - s0) Q(s) with s0
        // the exact zero near 0; w = sigma * cbrt(eta Q) under s = s0 + eta
        // sigma^3, which leaves a smooth integrand starting exactly at the
        // branchpoint.
        let gpoly = compose_line(&f_coeffs, upper, -upper);
        let s0 = crate::poly::refine_root(&gpoly, C64::new(1.0, 0.0) - bp / upper);
        let q = crate::poly::deflate(&gpoly, s0);
        let s_j = 1.0 - t_main;
        let gap = C64::new(s_j, 0.0) - s0;
        let rad = gap.norm();
        if rad <= 1e-12 {
            return Err(Error::PathThroughBranchpoint { distance: rad });
        }
        let eta = gap / rad;
        let sigma_j = rad.cbrt();
        let w_edge = w_at(t_main);
        // Cube-root branch of eta*Q tracked from the junction toward the
        // branchpoint on a fixed grid.
        let n_guide = 64usize;
        let mut xi_grid = Vec::with_capacity(n_guide + 1);
        let mut xi_prev = nearest_cube_root(
            eval(&q, C64::new(s_j, 0.0)) * eta,
            w_edge / sigma_j,
        );
        for i in 0..=n_guide {
            let sigma = sigma_j * (1.0 - i as f64 / n_guide as f64);
            let s = s0 + eta * (sigma * sigma * sigma);
            let xi = nearest_cube_root(eval(&q, s) * eta, xi_prev);
            xi_grid.push((sigma, xi));
            xi_prev = xi;
        }
        let tail = |sigma: f64| -> C64 {
            let s = s0 + eta * (sigma * sigma * sigma);
            let z = upper * (C64::new(1.0, 0.0) - s);
            let pos = xi_grid
                .iter()
                .map(|&(sg, _)| (sg - sigma).abs())
                .enumerate()
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .map(|(i, _)| i)
                .unwrap();
            let xi = nearest_cube_root(eval(&q, s) * eta, xi_grid[pos].1);
            let zk = match k {
                0 => C64::new(1.0, 0.0),
                1 => z,
                _ => z * z,
            };
            let xim = if m == 1 { xi } else { xi * xi };
            let spow = if m == 1 { sigma } else { 1.0 };
            upper * eta * zk / xim * 3.0 * spow
        };
        let (v, e) = integrate(&mut { tail }, 0.0, sigma_j, cfg.tol)?;
        total += v;
        err_total += e;
    }
    Ok((total, err_total))
}

/// Direct quadrature of ∫₀^{π/2} dφ/√(a²cos²φ + b²sin²φ).
pub fn elliptic_phi_integral(a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::Domain(String::from("positive semi-axes required")));
    }
    let mut f = |phi: f64| {
        let c = phi.cos();
        let s = phi.sin();
        C64::new(1.0 / (a * a * c * c + b * b * s * s).sqrt(), 0.0)
    };
    let (v, _) = integrate(&mut f, 0.0, core::f64::consts::FRAC_PI_2, tol)?;
    Ok(v.re)
}
