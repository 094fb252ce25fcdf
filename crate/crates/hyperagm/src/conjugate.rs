//! Branchpoint-pair integrals for genus-2 curves whose six branchpoints form
//! three complex-conjugate pairs.
//!
//! One level of the root recursion applied to the conjugate configuration
//! lands on six real values (u, u', v, v', w, w'). Their ordering splits into
//! two cases, and in each case every chord integral of the original curve is
//! a fixed half-integer combination of the level-one curve's band and gap
//! integrals, scaled by the first step factor t₀.

use alloc::format;
use alloc::string::String;
#[allow(unused_imports)]
use num_traits::Float;

use crate::poly::{delta_det, QuadTriple};
use crate::richelot::{gap_integrals, theorem_bands, IntegralTable};
use crate::{Error, Result, C64};

/// Which of the two level-one orderings the curve falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseTag {
    /// u ≤ v ≤ w ≤ u' ≤ v' ≤ w'.
    Case1,
    /// w ≤ v ≤ u ≤ w' ≤ v' ≤ u'.
    Case2,
}

/// Classification result: the case tag plus the six real level-one values in
/// the order (u, u', v, v', w, w').
#[derive(Clone, Copy, Debug)]
pub struct OrderingCase {
    pub tag: CaseTag,
    pub uvw: [f64; 6],
}

/// The ten oriented branchpoint chords, named by their endpoint labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChordKey {
    Aa,
    Bb,
    Cc,
    Ab,
    ApBp,
    Bc,
    BpCp,
    Ac,
    BpC,
    ApB,
}

pub const CHORD_KEYS: [ChordKey; 10] = [
    ChordKey::Aa,
    ChordKey::Bb,
    ChordKey::Cc,
    ChordKey::Ab,
    ChordKey::ApBp,
    ChordKey::Bc,
    ChordKey::BpCp,
    ChordKey::Ac,
    ChordKey::BpC,
    ChordKey::ApB,
];

impl ChordKey {
    /// Canonical endpoint indices in the 1..=6 branchpoint numbering with
    /// (a, a', b, b', c, c') = (B4, B3, B5, B2, B6, B1).
    pub fn index_pair(self) -> (u8, u8) {
        match self {
            ChordKey::Aa => (4, 3),
            ChordKey::Bb => (5, 2),
            ChordKey::Cc => (6, 1),
            ChordKey::Ab => (4, 5),
            ChordKey::ApBp => (3, 2),
            ChordKey::Bc => (5, 6),
            ChordKey::BpCp => (2, 1),
            ChordKey::Ac => (4, 6),
            ChordKey::BpC => (2, 6),
            ChordKey::ApB => (3, 5),
        }
    }

    /// Key and orientation sign for an arbitrary oriented index pair, if the
    /// chord is one of the ten tabulated ones.
    pub fn from_index_pair(i: u8, j: u8) -> Option<(ChordKey, i32)> {
        for key in CHORD_KEYS {
            let (p, q) = key.index_pair();
            if (i, j) == (p, q) {
                return Some((key, 1));
            }
            if (i, j) == (q, p) {
                return Some((key, -1));
            }
        }
        None
    }

    pub fn label(self) -> &'static str {
        match self {
            ChordKey::Aa => "a,a'",
            ChordKey::Bb => "b,b'",
            ChordKey::Cc => "c,c'",
            ChordKey::Ab => "a,b",
            ChordKey::ApBp => "a',b'",
            ChordKey::Bc => "b,c",
            ChordKey::BpCp => "b',c'",
            ChordKey::Ac => "a,c",
            ChordKey::BpC => "b',c",
            ChordKey::ApB => "a',b",
        }
    }
}

/// All ten chord integrals of one numerator, in `CHORD_KEYS` order.
#[derive(Clone, Copy, Debug)]
pub struct ChordSet {
    values: [C64; 10],
}

impl ChordSet {
    pub fn get(&self, key: ChordKey) -> C64 {
        let idx = CHORD_KEYS.iter().position(|&k| k == key).unwrap();
        self.values[idx]
    }

    pub fn entries(&self) -> [(ChordKey, C64); 10] {
        let mut out = [(ChordKey::Aa, C64::new(0.0, 0.0)); 10];
        for (slot, (&key, &val)) in out.iter_mut().zip(CHORD_KEYS.iter().zip(self.values.iter())) {
            *slot = (key, val);
        }
        out
    }
}

/// Coefficient rows on the basis (band₁, band₂, gap₁, gap₂) of the sorted
/// level-one roots; each entry is (re, im). Multiplying by t₀ gives the
/// chord value. Rows follow `CHORD_KEYS` order.
type CoeffRow = [(f64, f64); 4];

const TAB_POS: [CoeffRow; 10] = [
    [(0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.0, 0.0)],
    [(0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (1.0, 0.0)],
    [(0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0)],
    [(0.0, -0.5), (0.0, 0.0), (0.0, 0.0), (-0.5, 0.0)],
    [(0.0, -0.5), (0.0, 0.0), (0.0, 0.0), (0.5, 0.0)],
    [(0.0, 0.5), (0.0, 0.5), (0.5, 0.0), (0.0, 0.0)],
    [(0.0, 0.5), (0.0, 0.5), (-0.5, 0.0), (0.0, 0.0)],
    [(0.0, 0.0), (0.0, 0.5), (0.5, 0.0), (-0.5, 0.0)],
    [(0.0, 0.5), (0.0, 0.5), (-0.5, 0.0), (-1.0, 0.0)],
    [(0.0, -0.5), (0.0, 0.0), (-1.0, 0.0), (-0.5, 0.0)],
];

const TAB_NEG: [CoeffRow; 10] = [
    [(0.0, 1.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
    [(0.0, 0.0), (0.0, -1.0), (0.0, 0.0), (0.0, 0.0)],
    [(0.0, -1.0), (0.0, -1.0), (0.0, 0.0), (0.0, 0.0)],
    [(0.0, 0.5), (0.0, 0.5), (0.5, 0.0), (0.0, 0.0)],
    [(0.0, -0.5), (0.0, -0.5), (0.5, 0.0), (0.0, 0.0)],
    [(0.0, 0.5), (0.0, 0.0), (0.0, 0.0), (0.5, 0.0)],
    [(0.0, -0.5), (0.0, 0.0), (0.0, 0.0), (0.5, 0.0)],
    [(0.0, 1.0), (0.0, 0.5), (0.5, 0.0), (0.5, 0.0)],
    [(0.0, 0.5), (0.0, 1.0), (0.0, 0.0), (0.5, 0.0)],
    [(0.0, -0.5), (0.0, 0.5), (0.5, 0.0), (0.0, 0.0)],
];

fn conj_scale(roots: &[C64; 6]) -> f64 {
    roots.iter().fold(1.0f64, |m, r| m.max(r.norm()))
}

fn validate_conjugate_labels(t: &QuadTriple) -> Result<()> {
    let roots = t.roots();
    let scale = conj_scale(&roots);
    for pair in [&t.p, &t.q, &t.r] {
        if (pair.r2 - pair.r1.conj()).norm() > 1e-9 * scale {
            return Err(Error::Domain(String::from(
                "branchpoint pairs must be complex conjugates",
            )));
        }
        if pair.r1.im > 0.0 {
            return Err(Error::Domain(String::from(
                "conjugate pairs must list the negative-imaginary member first",
            )));
        }
    }
    let re = [t.p.r1.re, t.q.r1.re, t.r.r1.re];
    if !(re[0] < re[1] && re[1] < re[2]) {
        return Err(Error::Domain(String::from(
            "conjugate pairs must be sorted by increasing real part",
        )));
    }
    Ok(())
}

struct LevelOne {
    uvw: [f64; 6],
    /// Denominator product (b+b'−a−a')(c+c'−b−b')(c+c'−a−a') of level zero.
    d0: f64,
}

fn level_one(t: &QuadTriple) -> Result<LevelOne> {
    let [a, ap, b, bp, c, cp] = t.roots();
    let scale = conj_scale(&t.roots());

    let rad_a = (b - c) * (b - cp) * (bp - c) * (bp - cp);
    let rad_b = (c - a) * (c - ap) * (cp - a) * (cp - ap);
    let rad_c = (a - b) * (a - bp) * (ap - b) * (ap - bp);
    let big_a = rad_a.sqrt();
    let big_b = rad_b.sqrt();
    let big_c = rad_c.sqrt();

    let du = (c + cp - b - bp).re;
    let dv = (c + cp - a - ap).re;
    let dw = (b + bp - a - ap).re;
    if du <= 0.0 || dv <= 0.0 || dw <= 0.0 {
        return Err(Error::Domain(String::from(
            "pair real parts must be strictly increasing",
        )));
    }

    let ccp = (c * cp).re;
    let bbp = (b * bp).re;
    let aap = (a * ap).re;
    let vals = [
        (C64::new(ccp - bbp, 0.0) - big_a) / du,
        (C64::new(ccp - bbp, 0.0) + big_a) / du,
        (C64::new(ccp - aap, 0.0) - big_b) / dv,
        (C64::new(ccp - aap, 0.0) + big_b) / dv,
        (C64::new(bbp - aap, 0.0) - big_c) / dw,
        (C64::new(bbp - aap, 0.0) + big_c) / dw,
    ];
    let max_imag = vals.iter().fold(0.0f64, |m, z| m.max(z.im.abs()));
    if max_imag > 1e-9 * scale {
        return Err(Error::ComplexUvw { max_imag });
    }
    let mut uvw = [0.0; 6];
    for (slot, z) in uvw.iter_mut().zip(vals.iter()) {
        *slot = z.re;
    }
    Ok(LevelOne {
        uvw,
        d0: du * dv * dw,
    })
}

fn ordering_holds(seq: [f64; 6], tie: f64) -> bool {
    seq.windows(2).all(|w| w[1] >= w[0] - tie)
}

/// Classify a conjugate-pair curve by the ordering of its level-one roots.
pub fn classify(t: &QuadTriple) -> Result<OrderingCase> {
    validate_conjugate_labels(t)?;
    let lv = level_one(t)?;
    let [u, up, v, vp, w, wp] = lv.uvw;
    let scale = lv.uvw.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let tie = 1e-12 * scale;
    // The boundary configuration satisfies both chains; the first branch
    // wins there by construction.
    let tag = if ordering_holds([u, v, w, up, vp, wp], tie) {
        CaseTag::Case1
    } else if ordering_holds([w, v, u, wp, vp, up], tie) {
        CaseTag::Case2
    } else {
        return Err(Error::UnsupportedOrdering(format!(
            "level-one roots in unexpected order: u={u}, u'={up}, v={v}, v'={vp}, w={w}, w'={wp}"
        )));
    };
    Ok(OrderingCase { tag, uvw: lv.uvw })
}

fn csqrt_real(x: f64) -> C64 {
    if x >= 0.0 {
        C64::new(x.sqrt(), 0.0)
    } else {
        C64::new(0.0, (-x).sqrt())
    }
}

/// All ten chord integrals of ∫ S dx/y for a conjugate-pair curve.
///
/// The level-one roots, sorted ascending, define a real ordered curve whose
/// two outer bands and two gap integrals (with the original numerator) form
/// the basis; the case table supplies the half-integer coefficients and t₀
/// the common scale.
pub fn chords(t: &QuadTriple, numerator: &[f64]) -> Result<(ChordSet, OrderingCase)> {
    if numerator.len() > 2 {
        return Err(Error::Domain(String::from(
            "chord tables support numerator degree at most 1",
        )));
    }
    let case = classify(t)?;
    let lv = level_one(t)?;

    let mut srt = lv.uvw;
    srt.sort_unstable_by(|p, q| p.partial_cmp(q).unwrap());
    let scale = srt.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    for w in srt.windows(2) {
        if w[1] - w[0] <= 1e-12 * scale {
            return Err(Error::UnsupportedOrdering(String::from(
                "level-one roots coincide; the configuration is degenerate",
            )));
        }
    }

    let delta0 = delta_det(t);
    let t0 = csqrt_real(delta0) * 2.0 / csqrt_real(lv.d0);

    let bands = theorem_bands(srt, numerator)?;
    let level_triple = QuadTriple::from_real_roots(srt)?;
    let (g1, g2) = gap_integrals(&level_triple, numerator)?;
    let basis = [
        C64::new(bands[0], 0.0),
        C64::new(bands[1], 0.0),
        C64::new(g1, 0.0),
        C64::new(g2, 0.0),
    ];

    let table = match case.tag {
        CaseTag::Case1 => &TAB_POS,
        CaseTag::Case2 => &TAB_NEG,
    };
    let mut values = [C64::new(0.0, 0.0); 10];
    for (slot, row) in values.iter_mut().zip(table.iter()) {
        let mut acc = C64::new(0.0, 0.0);
        for (&(re, im), &b) in row.iter().zip(basis.iter()) {
            acc += C64::new(re, im) * b;
        }
        *slot = t0 * acc;
    }
    Ok((ChordSet { values }, case))
}

/// The seven named table entries for a conjugate-pair curve.
pub fn full_integral_table(t: &QuadTriple, numerator: &[f64]) -> Result<IntegralTable> {
    let (set, _) = chords(t, numerator)?;
    Ok(IntegralTable {
        aa: set.get(ChordKey::Aa),
        bb: set.get(ChordKey::Bb),
        cc: set.get(ChordKey::Cc),
        ab: set.get(ChordKey::Ab),
        apbp: set.get(ChordKey::ApBp),
        bc: set.get(ChordKey::Bc),
        bpcp: set.get(ChordKey::BpCp),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MonicQuadratic;
    use crate::roots::monopole_sextic_roots;

    fn monopole_triple(a: f64, g: f64) -> QuadTriple {
        let b = monopole_sextic_roots(a, g).unwrap();
        QuadTriple::new(
            MonicQuadratic::new(b[3], b[2]).unwrap(),
            MonicQuadratic::new(b[4], b[1]).unwrap(),
            MonicQuadratic::new(b[5], b[0]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn positive_a_classifies_as_case1() {
        for (a, g) in [(1.0, 1.0), (0.5, 5.7), (2.0, 2.0), (0.001, 7.07)] {
            let case = classify(&monopole_triple(a, g)).unwrap();
            assert_eq!(case.tag, CaseTag::Case1, "at ({a}, {g})");
        }
    }

    #[test]
    fn negative_a_classifies_as_case2() {
        for (a, g) in [(-1.0, 2.0), (-0.5, 6.0), (-2.0, 12.9)] {
            let case = classify(&monopole_triple(a, g)).unwrap();
            assert_eq!(case.tag, CaseTag::Case2, "at ({a}, {g})");
        }
    }

    #[test]
    fn level_one_roots_are_real_and_ordered_within_case() {
        let case = classify(&monopole_triple(1.0, 1.0)).unwrap();
        let [u, up, v, vp, w, wp] = case.uvw;
        assert!(u <= v && v <= w && w <= up && up <= vp && vp <= wp);
    }

    #[test]
    fn misordered_pairs_rejected() {
        let b = monopole_sextic_roots(1.0, 1.0).unwrap();
        let swapped = QuadTriple::new(
            MonicQuadratic::new(b[4], b[1]).unwrap(),
            MonicQuadratic::new(b[3], b[2]).unwrap(),
            MonicQuadratic::new(b[5], b[0]).unwrap(),
        )
        .unwrap();
        assert!(matches!(classify(&swapped), Err(Error::Domain(_))));
    }

    #[test]
    fn chords_are_finite_for_both_numerators() {
        let t = monopole_triple(1.0, 4.43748879362);
        for numer in [&[1.0][..], &[0.0, 1.0][..]] {
            let (set, case) = chords(&t, numer).unwrap();
            assert_eq!(case.tag, CaseTag::Case1);
            for (key, val) in set.entries() {
                assert!(
                    val.re.is_finite() && val.im.is_finite(),
                    "non-finite chord {key:?}"
                );
                assert!(val.norm() > 0.0, "vanishing chord {key:?}");
            }
        }
    }

    #[test]
    fn index_pairs_round_trip_with_orientation() {
        for key in CHORD_KEYS {
            let (i, j) = key.index_pair();
            assert_eq!(ChordKey::from_index_pair(i, j), Some((key, 1)));
            assert_eq!(ChordKey::from_index_pair(j, i), Some((key, -1)));
        }
        assert_eq!(ChordKey::from_index_pair(1, 4), None);
    }

    #[test]
    fn table_shares_values_with_chord_set() {
        let t = monopole_triple(-1.0, 9.902182532);
        let (set, case) = chords(&t, &[1.0]).unwrap();
        assert_eq!(case.tag, CaseTag::Case2);
        let table = full_integral_table(&t, &[1.0]).unwrap();
        assert_eq!(table.aa, set.get(ChordKey::Aa));
        assert_eq!(table.bpcp, set.get(ChordKey::BpCp));
    }
}
