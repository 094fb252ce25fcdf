//! The charge-3 cyclic monopole curve family y² = (x³ + a·x + g)² + 4 in its
//! rescaled coordinates, its branchpoint labelling, the four quotient
//! homology cycles as branchpoint arcs, and the two period constraints that
//! cut out the spectral-curve locus.

use alloc::format;
use alloc::vec::Vec;

use crate::conjugate::{self, ChordKey, CHORD_KEYS};
use crate::oracle::{hyperelliptic_segment, OracleConfig, SegmentIntegrand};
use crate::poly::{MonicQuadratic, QuadTriple};
use crate::roots::{monopole_sextic_coeffs, monopole_sextic_roots};
use crate::{Error, Result, C64};

/// A member of the rescaled family, parametrized by (a, g).
///
/// The raw curve η³ + α·η·ζ² + γ·ζ³ + ... carries a scale β; dividing it out
/// with ν = β^{1/3} leaves a = α/ν² and g = γ/β.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveFamily {
    pub a: f64,
    pub g: f64,
}

impl CurveFamily {
    pub fn new(a: f64, g: f64) -> Self {
        CurveFamily { a, g }
    }

    /// Rescale raw coefficients (α, γ) at scale β into family coordinates.
    pub fn from_raw(alpha: f64, gamma: f64, beta: f64) -> Result<Self> {
        if beta == 0.0 || !beta.is_finite() {
            return Err(Error::Domain(format!("scale beta={beta} is unusable")));
        }
        let nu = libm::cbrt(beta);
        Ok(CurveFamily {
            a: alpha / (nu * nu),
            g: gamma / beta,
        })
    }

    /// Back to raw coefficients at scale β.
    pub fn to_raw(&self, beta: f64) -> (f64, f64) {
        let nu = libm::cbrt(beta);
        (self.a * nu * nu, self.g * beta)
    }

    /// Ascending coefficients of (x³ + a·x + g)² + 4.
    pub fn sextic_coeffs(&self) -> [f64; 7] {
        monopole_sextic_coeffs(self.a, self.g)
    }

    /// Branchpoints [B1..B6]: three conjugate pairs, upper members first by
    /// decreasing real part, then lower members by increasing real part.
    pub fn branchpoints(&self) -> Result<[C64; 6]> {
        monopole_sextic_roots(self.a, self.g)
    }

    /// Pair labels (a, a') = (B4, B3), (b, b') = (B5, B2), (c, c') = (B6, B1).
    pub fn richelot_labels(&self) -> Result<QuadTriple> {
        let b = self.branchpoints()?;
        QuadTriple::new(
            MonicQuadratic::new(b[3], b[2])?,
            MonicQuadratic::new(b[4], b[1])?,
            MonicQuadratic::new(b[5], b[0])?,
        )
    }
}

/// β from the second constraint value: ∮ x dx/y = 6·β^{1/3} on a solution.
pub fn recover_beta(c2: C64) -> Result<f64> {
    if c2.im.abs() > 1e-6 {
        return Err(Error::NonRealC2 { im: c2.im });
    }
    let cbrt_beta = c2.re / 6.0;
    Ok(cbrt_beta * cbrt_beta * cbrt_beta)
}

/// One oriented branchpoint-to-branchpoint arc on a numbered sheet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub sheet: u8,
    pub from: u8,
    pub to: u8,
}

const fn arc(sheet: u8, from: u8, to: u8) -> Arc {
    Arc { sheet, from, to }
}

/// The four quotient homology cycles as literal arc chains.
pub const A0_ARCS: [Arc; 6] = [
    arc(1, 3, 4),
    arc(2, 4, 6),
    arc(1, 6, 1),
    arc(2, 1, 6),
    arc(1, 6, 4),
    arc(2, 4, 3),
];
pub const A1_ARCS: [Arc; 2] = [arc(1, 2, 6), arc(2, 6, 2)];
pub const B0_ARCS: [Arc; 4] = [arc(1, 3, 4), arc(2, 4, 5), arc(1, 5, 4), arc(2, 4, 3)];
pub const B1_ARCS: [Arc; 2] = [arc(1, 6, 4), arc(2, 4, 6)];

/// Reduce an arc chain to integer chord coefficients in `CHORD_KEYS` order.
///
/// Sheet-2 arcs contribute with the opposite sign of their sheet-1 twins,
/// and reversed endpoint pairs flip orientation.
pub fn reduce_arcs(arcs: &[Arc]) -> Result<[i32; 10]> {
    let mut out = [0i32; 10];
    for a in arcs {
        let sheet_sign = match a.sheet {
            1 => 1,
            2 => -1,
            s => {
                return Err(Error::Domain(format!("arc on unknown sheet {s}")));
            }
        };
        let (key, orient) = ChordKey::from_index_pair(a.from, a.to).ok_or_else(|| {
            Error::Domain(format!("arc ({}, {}) is not a tabulated chord", a.from, a.to))
        })?;
        let idx = CHORD_KEYS.iter().position(|&k| k == key).unwrap();
        out[idx] += sheet_sign * orient;
    }
    Ok(out)
}

/// Chord coefficients of the four cycles, rows in (a0, a1, b0, b1) order.
pub fn cycle_coefficients() -> [[i32; 10]; 4] {
    [
        reduce_arcs(&A0_ARCS).unwrap(),
        reduce_arcs(&A1_ARCS).unwrap(),
        reduce_arcs(&B0_ARCS).unwrap(),
        reduce_arcs(&B1_ARCS).unwrap(),
    ]
}

/// Winding integers of the constraint combination
/// c = n0·𝔞₀ + 3n·𝔞₁ + 3m0·𝔟₀ + 3m·𝔟₁.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ESIntegers {
    pub n0: i64,
    pub n: i64,
    pub m0: i64,
    pub m: i64,
}

impl ESIntegers {
    pub fn new(n0: i64, n: i64, m0: i64, m: i64) -> Self {
        ESIntegers { n0, n, m0, m }
    }

    /// The one-parameter family compatible with the cyclic symmetry:
    /// (n0, m0) = (5n − m, −3n).
    pub fn from_nm(n: i64, m: i64) -> Self {
        ESIntegers {
            n0: 5 * n - m,
            n,
            m0: -3 * n,
            m,
        }
    }

    pub fn as_array(&self) -> [i64; 4] {
        [self.n0, self.n, self.m0, self.m]
    }
}

/// How the ten chord values of one numerator were produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChordRoute {
    /// Case-table combination of level-one band and gap integrals.
    Table,
    /// Direct adaptive quadrature along straight branchpoint chords.
    Quadrature,
}

/// Ten chord values for one numerator, in `CHORD_KEYS` order.
#[derive(Clone, Copy, Debug)]
pub struct ChordValues {
    pub values: [C64; 10],
    pub route: ChordRoute,
}

impl ChordValues {
    pub fn get(&self, key: ChordKey) -> C64 {
        let idx = CHORD_KEYS.iter().position(|&k| k == key).unwrap();
        self.values[idx]
    }
}

/// All ten chords by direct quadrature between branchpoints, independent of
/// the case tables.
pub fn oracle_chords(c: &CurveFamily, numerator: &[f64]) -> Result<ChordValues> {
    let roots = c.branchpoints()?;
    let sextic: Vec<C64> = c
        .sextic_coeffs()
        .iter()
        .map(|&v| C64::new(v, 0.0))
        .collect();
    let numer: Vec<C64> = numerator.iter().map(|&v| C64::new(v, 0.0)).collect();
    let cfg = OracleConfig::default();
    let mut values = [C64::new(0.0, 0.0); 10];
    for (slot, &key) in values.iter_mut().zip(CHORD_KEYS.iter()) {
        let (i, j) = key.index_pair();
        let seg = SegmentIntegrand {
            sextic: sextic.clone(),
            numerator: numer.clone(),
            x0: roots[(i - 1) as usize],
            x1: roots[(j - 1) as usize],
            anchor: None,
        };
        let (val, _) = hyperelliptic_segment(&seg, &cfg)?;
        *slot = val;
    }
    Ok(ChordValues {
        values,
        route: ChordRoute::Quadrature,
    })
}

/// Chord values for one numerator: the case-table route away from a = 0,
/// falling back to direct quadrature when the table cannot classify.
pub fn chord_values(c: &CurveFamily, numerator: &[f64]) -> Result<ChordValues> {
    if c.a.abs() >= 1e-6 {
        let t = c.richelot_labels()?;
        match conjugate::chords(&t, numerator) {
            Ok((set, _)) => {
                let mut values = [C64::new(0.0, 0.0); 10];
                for (slot, (_, val)) in values.iter_mut().zip(set.entries()) {
                    *slot = val;
                }
                return Ok(ChordValues {
                    values,
                    route: ChordRoute::Table,
                });
            }
            // A genuinely singular curve fails both routes; report it.
            Err(e @ Error::SingularCurve { .. }) => return Err(e),
            Err(_) => {}
        }
    }
    oracle_chords(c, numerator)
}

/// Periods of u₁ = dx/y and u₂ = x dx/y over the four cycles
/// (𝔞₀, 𝔞₁, 𝔟₀, 𝔟₁).
#[derive(Clone, Copy, Debug)]
pub struct CyclePeriods {
    pub u1: [C64; 4],
    pub u2: [C64; 4],
}

fn combine(coeffs: &[i32; 10], chords: &ChordValues) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for (&c, &v) in coeffs.iter().zip(chords.values.iter()) {
        if c != 0 {
            acc += v * c as f64;
        }
    }
    acc
}

/// Evaluate all four cycle periods for both numerators.
pub fn cycle_periods(c: &CurveFamily) -> Result<CyclePeriods> {
    let rows = cycle_coefficients();
    let ch1 = chord_values(c, &[1.0])?;
    let ch2 = chord_values(c, &[0.0, 1.0])?;
    let mut u1 = [C64::new(0.0, 0.0); 4];
    let mut u2 = [C64::new(0.0, 0.0); 4];
    for k in 0..4 {
        u1[k] = combine(&rows[k], &ch1);
        u2[k] = combine(&rows[k], &ch2);
    }
    Ok(CyclePeriods { u1, u2 })
}

/// The two constraint values (c1, c2) = (∮_𝔠 dx/y, ∮_𝔠 x dx/y) for the
/// winding integers. A spectral curve has c1 = 0 and c2 = 6·β^{1/3}.
pub fn es_constraints(c: &CurveFamily, ints: ESIntegers) -> Result<(C64, C64)> {
    let periods = cycle_periods(c)?;
    let weights = [
        ints.n0 as f64,
        3.0 * ints.n as f64,
        3.0 * ints.m0 as f64,
        3.0 * ints.m as f64,
    ];
    let mut c1 = C64::new(0.0, 0.0);
    let mut c2 = C64::new(0.0, 0.0);
    for k in 0..4 {
        c1 += periods.u1[k] * weights[k];
        c2 += periods.u2[k] * weights[k];
    }
    Ok((c1, c2))
}
