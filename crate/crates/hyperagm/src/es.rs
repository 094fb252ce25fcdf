//! Solving the period constraints along the (a, g) plane: one-dimensional
//! root finding in g at fixed a, and continuation tracing of the solution
//! branch with a guard against the singular curve at the branch end.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::curve::{
    chord_values, cycle_coefficients, es_constraints, recover_beta, CurveFamily, ESIntegers,
};
use crate::{Error, Result, C64};

/// A solved point of the constraint locus.
#[derive(Clone, Copy, Debug)]
pub struct SolutionPoint {
    pub a: f64,
    pub g: f64,
    pub beta: f64,
    pub c1: C64,
    pub c2: f64,
}

/// Tuning for the solver and tracer.
#[derive(Clone, Copy, Debug)]
pub struct TraceConfig {
    /// Continuation step in a.
    pub step: f64,
    /// Step once |a| passes `fine_from` moving up the positive branch.
    pub fine_step: f64,
    pub fine_from: f64,
    /// Acceptance bound on |Re c1| at a solved point.
    pub re_tol: f64,
    /// Acceptance bound on |Im c1| at a solved point.
    pub im_tol: f64,
    /// Half-width of the first bracket attempt, in units of step².
    pub bracket_scale: f64,
    /// Minimal pairwise branchpoint distance before declaring the singular
    /// end of a branch.
    pub min_gap: f64,
    pub max_points: usize,
}

impl Default for TraceConfig {
    fn default() -> Self {
        TraceConfig {
            step: 0.05,
            fine_step: 0.005,
            fine_from: 2.8,
            re_tol: 1e-10,
            im_tol: 1e-8,
            bracket_scale: 10.0,
            min_gap: 0.05,
            max_points: 400,
        }
    }
}

/// Why a trace stopped.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TraceEnd {
    /// Reached the requested end of the a-range (or the point cap).
    Completed,
    /// The predicted next point came too close to a singular curve; it was
    /// not solved and not emitted.
    SingularApproach { a: f64, g: f64 },
}

#[derive(Clone, Debug)]
pub struct Trace {
    pub points: Vec<SolutionPoint>,
    pub end: TraceEnd,
}

/// Re c1 alone; the bisection loop never needs the second numerator.
fn re_c1(a: f64, g: f64, ints: ESIntegers, rows: &[[i32; 10]; 4]) -> Result<f64> {
    let ch1 = chord_values(&CurveFamily::new(a, g), &[1.0])?;
    let weights = [
        ints.n0 as f64,
        3.0 * ints.n as f64,
        3.0 * ints.m0 as f64,
        3.0 * ints.m as f64,
    ];
    let mut c1 = C64::new(0.0, 0.0);
    for (row, w) in rows.iter().zip(weights.iter()) {
        for (&coeff, &v) in row.iter().zip(ch1.values.iter()) {
            if coeff != 0 {
                c1 += v * (coeff as f64 * w);
            }
        }
    }
    Ok(c1.re)
}

/// Solve Re c1 = 0 for g inside a sign-changing bracket, then validate the
/// full constraint at the root.
pub fn solve_at(
    a: f64,
    g_lo: f64,
    g_hi: f64,
    ints: ESIntegers,
    cfg: &TraceConfig,
) -> Result<SolutionPoint> {
    let rows = cycle_coefficients();
    let (mut lo, mut hi) = if g_lo <= g_hi { (g_lo, g_hi) } else { (g_hi, g_lo) };
    let mut f_lo = re_c1(a, lo, ints, &rows)?;
    let f_hi = re_c1(a, hi, ints, &rows)?;
    if f_lo == 0.0 {
        hi = lo;
    } else if f_hi != 0.0 && f_lo.signum() == f_hi.signum() {
        return Err(Error::NoRoot(alloc::format!(
            "no sign change of Re c1 on [{lo}, {hi}] at a={a}"
        )));
    }
    for _ in 0..90 {
        if hi - lo <= 1e-13 * hi.abs().max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = re_c1(a, mid, ints, &rows)?;
        if f_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let g = 0.5 * (lo + hi);
    let curve = CurveFamily::new(a, g);
    let (c1, c2) = es_constraints(&curve, ints)?;
    if c1.re.abs() > cfg.re_tol {
        return Err(Error::ToleranceNotMet {
            achieved: c1.re.abs(),
            requested: cfg.re_tol,
        });
    }
    if c1.im.abs() > cfg.im_tol {
        return Err(Error::ToleranceNotMet {
            achieved: c1.im.abs(),
            requested: cfg.im_tol,
        });
    }
    let beta = recover_beta(c2)?;
    Ok(SolutionPoint {
        a,
        g,
        beta,
        c1,
        c2: c2.re,
    })
}

const SCAN_SUBDIVISIONS: usize = 40;

/// Scan g_center ± half_width for sign changes of Re c1 and solve in the
/// bracket nearest the center. Samples where the evaluation fails are
/// skipped rather than aborting the scan.
pub fn solve_near(
    a: f64,
    g_center: f64,
    half_width: f64,
    ints: ESIntegers,
    cfg: &TraceConfig,
) -> Result<SolutionPoint> {
    let rows = cycle_coefficients();
    let lo = g_center - half_width;
    let h = 2.0 * half_width / SCAN_SUBDIVISIONS as f64;
    let mut samples: [Option<f64>; SCAN_SUBDIVISIONS + 1] = [None; SCAN_SUBDIVISIONS + 1];
    for (k, slot) in samples.iter_mut().enumerate() {
        *slot = re_c1(a, lo + h * k as f64, ints, &rows).ok();
    }
    let mut best: Option<(f64, f64, f64)> = None;
    let mut prev: Option<(f64, f64)> = None;
    for (k, slot) in samples.iter().enumerate() {
        let g = lo + h * k as f64;
        if let Some(f) = *slot {
            if let Some((gp, fp)) = prev {
                if fp == 0.0 || fp.signum() != f.signum() {
                    let mid = 0.5 * (gp + g);
                    let dist = (mid - g_center).abs();
                    if best.map_or(true, |(d, _, _)| dist < d) {
                        best = Some((dist, gp, g));
                    }
                }
            }
            prev = Some((g, f));
        }
    }
    match best {
        Some((_, glo, ghi)) => solve_at(a, glo, ghi, ints, cfg),
        None => Err(Error::NoRoot(alloc::format!(
            "no sign change of Re c1 within {half_width} of g={g_center} at a={a}"
        ))),
    }
}

fn min_branchpoint_gap(roots: &[C64; 6]) -> f64 {
    let mut min = f64::INFINITY;
    for i in 0..6 {
        for j in (i + 1)..6 {
            min = min.min((roots[i] - roots[j]).norm());
        }
    }
    min
}

/// Continuation trace from a start point toward a_stop.
///
/// The first point is solved by a scan around the given g; subsequent
/// points extrapolate g linearly, try a tight bracket, and fall back to a
/// scan. Before solving, the predicted point is tested for branchpoint
/// collision; a hit ends the trace without emitting that point.
pub fn trace(
    start: CurveFamily,
    ints: ESIntegers,
    a_stop: f64,
    cfg: &TraceConfig,
) -> Result<Trace> {
    let dir = (a_stop - start.a).signum();
    if dir == 0.0 || !dir.is_finite() {
        return Err(Error::Domain(alloc::string::String::from(
            "trace target coincides with the start",
        )));
    }
    let mut points = Vec::new();
    let first = solve_near(start.a, start.g, 0.25, ints, cfg)?;
    points.push(first);

    loop {
        if points.len() >= cfg.max_points {
            return Ok(Trace {
                points,
                end: TraceEnd::Completed,
            });
        }
        let last = points[points.len() - 1];
        if (a_stop - last.a) * dir <= 1e-12 {
            return Ok(Trace {
                points,
                end: TraceEnd::Completed,
            });
        }
        let fine = dir > 0.0 && last.a + 1e-12 >= cfg.fine_from;
        let step = if fine { cfg.fine_step } else { cfg.step };
        let mut next_a = last.a + dir * step;
        if (a_stop - next_a) * dir < 0.0 {
            next_a = a_stop;
        }
        let g_pred = if points.len() >= 2 {
            let prev = points[points.len() - 2];
            last.g + (last.g - prev.g) / (last.a - prev.a) * (next_a - last.a)
        } else {
            last.g
        };

        match CurveFamily::new(next_a, g_pred).branchpoints() {
            Err(Error::SingularCurve { .. }) => {
                return Ok(Trace {
                    points,
                    end: TraceEnd::SingularApproach {
                        a: next_a,
                        g: g_pred,
                    },
                });
            }
            Err(e) => return Err(e),
            Ok(roots) => {
                if min_branchpoint_gap(&roots) < cfg.min_gap {
                    return Ok(Trace {
                        points,
                        end: TraceEnd::SingularApproach {
                            a: next_a,
                            g: g_pred,
                        },
                    });
                }
            }
        }

        let hw = cfg.bracket_scale * step * step;
        let point = match solve_at(next_a, g_pred - hw, g_pred + hw, ints, cfg) {
            Ok(p) => p,
            Err(Error::SingularCurve { .. }) => {
                return Ok(Trace {
                    points,
                    end: TraceEnd::SingularApproach {
                        a: next_a,
                        g: g_pred,
                    },
                });
            }
            Err(_) => match solve_near(next_a, g_pred, (4.0 * hw).max(0.5), ints, cfg) {
                Ok(p) => p,
                Err(Error::NoRoot(_)) => return Err(Error::RootLost { a: next_a }),
                Err(e) => return Err(e),
            },
        };
        points.push(point);
    }
}

/// One row of the large-|a| comparison between the traced branch and the
/// leading-order axisymmetric prediction.
#[derive(Clone, Copy, Debug)]
pub struct AsymptoticRow {
    pub a: f64,
    pub g: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub b: f64,
    pub gamma_pred: f64,
    pub rel_err: f64,
}

/// Rescale each point back to raw (α, γ) with its own β and compare γ to
/// the prediction 2b(b² + π²/4) with b read off from α = π²/4 − 3b².
pub fn asymptotic_rows(points: &[SolutionPoint]) -> Vec<AsymptoticRow> {
    let quarter_pi2 = core::f64::consts::PI * core::f64::consts::PI / 4.0;
    points
        .iter()
        .map(|p| {
            let curve = CurveFamily::new(p.a, p.g);
            let (alpha, gamma) = curve.to_raw(p.beta);
            let b = ((quarter_pi2 - alpha) / 3.0).max(0.0).sqrt() * gamma.signum();
            let gamma_pred = 2.0 * b * (b * b + quarter_pi2);
            let rel_err = if gamma != 0.0 {
                ((gamma - gamma_pred) / gamma).abs()
            } else {
                f64::INFINITY
            };
            AsymptoticRow {
                a: p.a,
                g: p.g,
                alpha,
                gamma,
                b,
                gamma_pred,
                rel_err,
            }
        })
        .collect()
}
