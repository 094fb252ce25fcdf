//! Igusa-Clebsch invariants of binary sextics, the normal form for curves
//! with a degree-2 elliptic subcover, and the order-30 obstruction χ₃₀ whose
//! vanishing detects such subcovers.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::dd::{CDd, Dd};
use crate::es::SolutionPoint;
use crate::roots::aberth;
use crate::{Error, Result, C64};

/// The four homogeneous invariants of weights 2, 4, 6, 10.
#[derive(Clone, Copy, Debug)]
pub struct RelativeInvariants {
    pub j2: f64,
    pub j4: f64,
    pub j6: f64,
    pub j10: f64,
}

const PERM3: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn pairings(elems: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if elems.is_empty() {
        return vec![Vec::new()];
    }
    let first = elems[0];
    let mut out = Vec::new();
    for k in 1..elems.len() {
        let partner = elems[k];
        let rest: Vec<usize> = elems[1..]
            .iter()
            .copied()
            .filter(|&e| e != partner)
            .collect();
        for mut p in pairings(&rest) {
            p.insert(0, (first, partner));
            out.push(p);
        }
    }
    out
}

/// Complementary triple splits of {0..5}, each listed once.
fn triple_splits() -> Vec<([usize; 3], [usize; 3])> {
    let mut out = Vec::new();
    for i in 1..6 {
        for j in (i + 1)..6 {
            let t1 = [0, i, j];
            let mut t2 = [0usize; 3];
            let mut k = 0;
            for e in 1..6 {
                if e != i && e != j {
                    t2[k] = e;
                    k += 1;
                }
            }
            out.push((t1, t2));
        }
    }
    out
}

/// Invariants in double-double precision; the imaginary residues of the
/// symmetric sums are discarded.
fn relative_dd(roots: &[C64; 6], leading: f64) -> [Dd; 4] {
    let mut sq = [[CDd::ZERO; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            if i != j {
                let d = CDd::from_c64(roots[i]) - CDd::from_c64(roots[j]);
                sq[i][j] = d * d;
            }
        }
    }
    let tri = |t: &[usize; 3]| sq[t[0]][t[1]] * sq[t[1]][t[2]] * sq[t[2]][t[0]];

    let mut s15 = CDd::ZERO;
    for p in pairings(&[0, 1, 2, 3, 4, 5]) {
        let mut term = CDd::from_c64(C64::new(1.0, 0.0));
        for (i, j) in p {
            term = term * sq[i][j];
        }
        s15 = s15 + term;
    }

    let splits = triple_splits();
    let mut s10 = CDd::ZERO;
    let mut s60 = CDd::ZERO;
    for (t1, t2) in &splits {
        let base = tri(t1) * tri(t2);
        s10 = s10 + base;
        for perm in &PERM3 {
            let mut m = base;
            for k in 0..3 {
                m = m * sq[t1[k]][t2[perm[k]]];
            }
            s60 = s60 + m;
        }
    }

    let mut prod = CDd::from_c64(C64::new(1.0, 0.0));
    for i in 0..6 {
        for j in (i + 1)..6 {
            prod = prod * sq[i][j];
        }
    }

    let a0 = Dd::from_f64(leading);
    let a2 = a0 * a0;
    let a4 = a2 * a2;
    let a6 = a4 * a2;
    let a10 = a6 * a4;
    [a2 * s15.re, a4 * s10.re, a6 * s60.re, a10 * prod.re]
}

/// Invariants of a sextic with the given roots and leading coefficient.
pub fn relative_invariants(roots: &[C64; 6], leading: f64) -> RelativeInvariants {
    let [j2, j4, j6, j10] = relative_dd(roots, leading);
    RelativeInvariants {
        j2: j2.to_f64(),
        j4: j4.to_f64(),
        j6: j6.to_f64(),
        j10: j10.to_f64(),
    }
}

fn root_scale(roots: &[C64; 6]) -> f64 {
    roots.iter().fold(1.0f64, |m, r| m.max(r.norm()))
}

fn absolute_dd(roots: &[C64; 6], leading: f64) -> Result<[Dd; 3]> {
    let [j2, j4, j6, j10] = relative_dd(roots, leading);
    let scale = root_scale(roots);
    if j2.to_f64().abs() <= 1e-10 * leading * leading * scale.powi(6) {
        return Err(Error::WeightTwoZero);
    }
    let j2_2 = j2 * j2;
    let j2_3 = j2_2 * j2;
    let j2_5 = j2_3 * j2_2;
    let i1 = Dd::from_f64(144.0) * j4 / j2_2;
    let i2 = -(Dd::from_f64(1728.0) * (j2 * j4 - Dd::from_f64(3.0) * j6)) / j2_3;
    let i3 = Dd::from_f64(486.0) * j10 / j2_5;
    Ok([i1, i2, i3])
}

/// Weight-free invariants (i₁, i₂, i₃); curves are isomorphic over the
/// closure exactly when these agree (away from j2 = 0).
pub fn absolute_invariants(roots: &[C64; 6], leading: f64) -> Result<(f64, f64, f64)> {
    let [i1, i2, i3] = absolute_dd(roots, leading)?;
    Ok((i1.to_f64(), i2.to_f64(), i3.to_f64()))
}

/// Closed-form invariants of Y² = X⁶ − s₁X⁴ + s₂X² − 1 in terms of
/// u = s₁s₂ and v = s₁³ + s₂³.
pub fn shaska_j(u: f64, v: f64) -> (f64, f64, f64, f64) {
    let j2 = 240.0 + 16.0 * u;
    let j4 = 48.0 * v + 4.0 * u * u + 1620.0 - 504.0 * u;
    let j6 = 119880.0 - 20664.0 * u - 424.0 * u * u + 24.0 * u * u * u + 96.0 * v + 160.0 * u * v;
    let j10 = 64.0 * (27.0 - 18.0 * u - u * u + 4.0 * v).powi(2);
    (j2, j4, j6, j10)
}

/// The inner degree-9 bracket of the monopole family's subcover obstruction;
/// its sign changes are the detection signal along a solution branch.
pub fn subcover_bracket(a: f64, g: f64) -> f64 {
    let a3 = a * a * a;
    let a6 = a3 * a3;
    let a9 = a6 * a3;
    let g2 = g * g;
    let g4 = g2 * g2;
    let g6 = g4 * g2;
    -8_000_000.0 + 1_146_000.0 * a3 - 53_088.0 * a6 + 784.0 * a9 - 6_480_000.0 * g2
        + 327_240.0 * a3 * g2
        + 7_128.0 * g2 * a6
        - 1_749_600.0 * g4
        - 10_935.0 * g4 * a3
        - 157_464.0 * g6
}

/// χ₃₀ of the monopole curve (x³+ax+g)² + 4 in closed form: g²a⁶ times the
/// square of the inner bracket, hence non-negative with zeros at a = 0,
/// g = 0, and the bracket locus.
pub fn chi30_monopole(a: f64, g: f64) -> f64 {
    let a3 = a * a * a;
    subcover_bracket(a, g).powi(2) * g * g * a3 * a3
}

fn ddpoly_mul(p: &[Dd], q: &[Dd]) -> Vec<Dd> {
    let mut out = vec![Dd::ZERO; p.len() + q.len() - 1];
    for (i, &a) in p.iter().enumerate() {
        for (j, &b) in q.iter().enumerate() {
            out[i + j] = out[i + j] + a * b;
        }
    }
    out
}

fn ddpoly_add(p: &[Dd], q: &[Dd]) -> Vec<Dd> {
    let n = p.len().max(q.len());
    let mut out = vec![Dd::ZERO; n];
    for (k, slot) in out.iter_mut().enumerate() {
        if k < p.len() {
            *slot = *slot + p[k];
        }
        if k < q.len() {
            *slot = *slot + q[k];
        }
    }
    out
}

fn ddpoly_scale(p: &[Dd], s: Dd) -> Vec<Dd> {
    p.iter().map(|&c| c * s).collect()
}

fn dd(x: f64) -> Dd {
    Dd::from_f64(x)
}

/// Determinant of an 8×8 double-double matrix by LU with partial pivoting.
fn det8(mut m: [[Dd; 8]; 8]) -> Dd {
    let mut det = Dd::ONE;
    for col in 0..8 {
        let mut piv = col;
        for row in (col + 1)..8 {
            if m[row][col].abs().hi > m[piv][col].abs().hi {
                piv = row;
            }
        }
        if m[piv][col].abs().hi == 0.0 {
            return Dd::ZERO;
        }
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det = det * m[col][col];
        for row in (col + 1)..8 {
            let factor = m[row][col] / m[col][col];
            for k in col..8 {
                m[row][k] = m[row][k] - factor * m[col][k];
            }
        }
    }
    det
}

/// χ₃₀ of an arbitrary smooth sextic from its coefficients (ascending,
/// degree exactly 6).
///
/// The absolute invariants are matched against the subcover normal form:
/// the weight-2 equation is linear in v, and eliminating v leaves a cubic
/// and a quintic in u whose resultant (row-equilibrated Sylvester
/// determinant, negated) is the obstruction.
pub fn chi30_generic(coeffs: &[f64]) -> Result<f64> {
    if coeffs.len() != 7 || coeffs[6] == 0.0 {
        return Err(Error::Domain(String::from(
            "chi30 needs a degree-6 polynomial in ascending coefficients",
        )));
    }
    let c: Vec<C64> = coeffs.iter().map(|&x| C64::new(x, 0.0)).collect();
    let root_vec = aberth(&c)?;
    let mut roots = [C64::new(0.0, 0.0); 6];
    for (slot, r) in roots.iter_mut().zip(root_vec.iter()) {
        *slot = *r;
    }
    let [i1, i2, i3] = absolute_dd(&roots, coeffs[6])?;

    // scaled v-elimination: vt(u) = 6912 v(u) from the weight-2 match
    let vt = [
        dd(57600.0) * i1 - dd(233_280.0),
        dd(7680.0) * i1 + dd(72_576.0),
        dd(256.0) * i1 - dd(576.0),
    ];
    let j2s = [dd(240.0), dd(16.0)];
    let j4s_base = [dd(1620.0 * 6912.0), dd(-504.0 * 6912.0), dd(4.0 * 6912.0)];
    let j4s = ddpoly_add(&ddpoly_scale(&vt, dd(48.0)), &j4s_base);
    let j6s_base = [
        dd(119_880.0 * 6912.0),
        dd(-20_664.0 * 6912.0),
        dd(-424.0 * 6912.0),
        dd(24.0 * 6912.0),
    ];
    let shift_vt = ddpoly_mul(&[Dd::ZERO, Dd::ONE], &vt);
    let j6s = ddpoly_add(
        &j6s_base,
        &ddpoly_add(
            &ddpoly_scale(&vt, dd(96.0)),
            &ddpoly_scale(&shift_vt, dd(160.0)),
        ),
    );
    let j2s_2 = ddpoly_mul(&j2s, &j2s);
    let j2s_3 = ddpoly_mul(&j2s_2, &j2s);
    let j2s_5 = ddpoly_mul(&j2s_3, &j2s_2);
    let e2 = ddpoly_add(
        &ddpoly_scale(&j2s_3, dd(6912.0) * i2),
        &ddpoly_add(
            &ddpoly_scale(&ddpoly_mul(&j2s, &j4s), dd(1728.0)),
            &ddpoly_scale(&j6s, dd(-5184.0)),
        ),
    );
    let inner = ddpoly_add(&[dd(27.0 * 1728.0), dd(-18.0 * 1728.0), dd(-1728.0)], &vt);
    let e3 = ddpoly_add(
        &ddpoly_scale(&j2s_5, dd(1728.0 * 1728.0) * i3),
        &ddpoly_scale(&ddpoly_mul(&inner, &inner), dd(-486.0 * 64.0)),
    );

    // Sylvester rows hold descending coefficients; e2 is the cubic (five
    // shifted rows), e3 the quintic (three rows).
    let mut m = [[Dd::ZERO; 8]; 8];
    for row in 0..5 {
        for k in 0..4 {
            m[row][row + k] = e2[3 - k];
        }
    }
    for row in 0..3 {
        for k in 0..6 {
            m[5 + row][row + k] = e3[5 - k];
        }
    }
    for row in m.iter_mut() {
        let mut max = 0.0f64;
        for entry in row.iter() {
            max = max.max(entry.abs().hi);
        }
        if max > 0.0 {
            let inv = Dd::ONE / dd(max);
            for entry in row.iter_mut() {
                *entry = *entry * inv;
            }
        }
    }
    Ok((-det8(m)).to_f64())
}

/// A point where the solution branch crosses the subcover locus.
#[derive(Clone, Copy, Debug)]
pub struct SubcoverLocus {
    pub a: f64,
    pub g: f64,
}

/// Scan consecutive solved points for a sign change of the inner bracket
/// and bisect in a, re-solving g through the supplied closure.
pub fn intersect_with_solutions<F>(
    solutions: &[SolutionPoint],
    mut resolve_g: F,
) -> Result<Vec<SubcoverLocus>>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut out = Vec::new();
    for w in solutions.windows(2) {
        let sp = subcover_bracket(w[0].a, w[0].g);
        let sq = subcover_bracket(w[1].a, w[1].g);
        if sp == 0.0 {
            out.push(SubcoverLocus {
                a: w[0].a,
                g: w[0].g,
            });
            continue;
        }
        if sq != 0.0 && sp.signum() == sq.signum() {
            continue;
        }
        let (mut lo, mut hi) = (w[0].a, w[1].a);
        let mut f_lo = sp;
        for _ in 0..80 {
            if (hi - lo).abs() <= 1e-12 * hi.abs().max(1.0) {
                break;
            }
            let mid = 0.5 * (lo + hi);
            let gm = resolve_g(mid)?;
            let fm = subcover_bracket(mid, gm);
            if fm == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if fm.signum() == f_lo.signum() {
                lo = mid;
                f_lo = fm;
            } else {
                hi = mid;
            }
        }
        let a = 0.5 * (lo + hi);
        let g = resolve_g(a)?;
        out.push(SubcoverLocus { a, g });
    }
    Ok(out)
}
