//! Randomized invariants of the polynomial, AGM, correspondence, and oracle
//! layers: statements that must hold across whole parameter regions rather
//! than at pinned reference points.

use hyperagm::agm;
use hyperagm::curve::{chord_values, oracle_chords, CurveFamily};
use hyperagm::igusa;
use hyperagm::oracle::{hyperelliptic_segment, OracleConfig, SegmentIntegrand};
use hyperagm::poly::{bracket, from_roots, fundamental_identity_residual, uvw_brackets, QuadTriple};
use hyperagm::richelot::{
    correspondence_images, correspondence_ordinate, richelot_step, run_agm_roots, RichelotState,
};
use hyperagm::roots::{aberth, monopole_sextic_coeffs};
use hyperagm::C64;
use proptest::prelude::*;

fn ordered_sextic() -> impl Strategy<Value = [f64; 6]> {
    proptest::array::uniform6(-5.0f64..5.0)
        .prop_map(|mut r| {
            r.sort_by(|a, b| a.partial_cmp(b).unwrap());
            r
        })
        .prop_filter("branchpoints too close", |r| {
            r.windows(2).all(|w| w[1] - w[0] >= 0.25)
        })
}

fn real_curve_sextic(t: &QuadTriple) -> Vec<C64> {
    t.product_coeffs().iter().map(|&c| C64::new(-c, 0.0)).collect()
}

/// Value of the quadratic `c` and of its derivative at `x`.
fn quad_at(c: &[f64; 3], x: C64) -> (C64, C64) {
    let v = C64::new(c[0], 0.0) + x * (C64::new(c[1], 0.0) + x * c[2]);
    let d = C64::new(c[1], 0.0) + x * (2.0 * c[2]);
    (v, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bilinear_bracket_identity_vanishes(
        roots in ordered_sextic(),
        xr in -6.0f64..6.0, xi in -2.0f64..2.0,
        zr in -6.0f64..6.0, zi in -2.0f64..2.0,
    ) {
        let t = QuadTriple::from_real_roots(roots).unwrap();
        let res = fundamental_identity_residual(&t, C64::new(xr, xi), C64::new(zr, zi));
        prop_assert!(res <= 1e-10, "residual {res:e}");
    }

    #[test]
    fn bracket_antisymmetry_is_exact(
        f0 in -5.0f64..5.0, f1 in -5.0f64..5.0,
        g0 in -5.0f64..5.0, g1 in -5.0f64..5.0,
    ) {
        let f = [f0, f1, 1.0];
        let g = [g0, g1, 1.0];
        let fg = bracket(&f, &g);
        let gf = bracket(&g, &f);
        for k in 0..3 {
            prop_assert_eq!(fg[k], -gf[k]);
        }
    }

    #[test]
    fn aberth_recovers_constructed_roots(
        pts in proptest::collection::vec((-4.0f64..4.0, -4.0f64..4.0), 5),
    ) {
        let roots: Vec<C64> = pts.iter().map(|&(re, im)| C64::new(re, im)).collect();
        let mut separated = true;
        for i in 0..roots.len() {
            for j in 0..i {
                if (roots[i] - roots[j]).norm() < 0.3 {
                    separated = false;
                }
            }
        }
        prop_assume!(separated);
        let coeffs = from_roots(&roots);
        let found = aberth(&coeffs).unwrap();
        prop_assert_eq!(found.len(), roots.len());
        for &r in &roots {
            let best = found.iter().map(|f| (f - r).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(best <= 1e-8 * (1.0 + r.norm()), "root {r} matched to {best:e}");
        }
    }

    #[test]
    fn elliptic_agm_scales_and_stays_bracketed(
        a in 0.2f64..8.0, b in 0.2f64..8.0, lam in 0.5f64..4.0,
    ) {
        let base = agm::elliptic_integral(a, b).unwrap();
        let scaled = agm::elliptic_integral(lam * a, lam * b).unwrap();
        prop_assert!((scaled * lam - base).abs() <= 1e-13 * base.abs());
        let lo = core::f64::consts::PI / (2.0 * a.max(b));
        let hi = core::f64::consts::PI / (2.0 * a.min(b));
        prop_assert!(base >= lo * (1.0 - 1e-12) && base <= hi * (1.0 + 1e-12));
    }

    #[test]
    fn richelot_step_keeps_roots_ordered_inside_hull(roots in ordered_sextic()) {
        let s = RichelotState::new(roots).unwrap();
        let next = richelot_step(&s).unwrap();
        for w in next.roots.windows(2) {
            prop_assert!(w[1] >= w[0]);
        }
        prop_assert!(next.roots[0] >= roots[0] - 1e-9 * roots[0].abs().max(1.0));
        prop_assert!(next.roots[5] <= roots[5] + 1e-9 * roots[5].abs().max(1.0));
        prop_assert!(next.t_product.is_finite() && next.t_product > 0.0);
        let run = run_agm_roots(roots, 1e-13 * roots[5].abs().max(roots[0].abs())).unwrap();
        prop_assert!(run.steps <= 9, "{} steps", run.steps);
    }

    #[test]
    fn correspondence_pullback_carries_the_minus_sign(
        roots in ordered_sextic(), lam in 0.15f64..0.85,
    ) {
        let t = QuadTriple::from_real_roots(roots).unwrap();
        let x = C64::new(roots[2] + lam * (roots[3] - roots[2]), 0.0);
        let fx = -(t.p.eval(x) * t.q.eval(x) * t.r.eval(x));
        let y = fx.sqrt();
        let (u, v, w) = uvw_brackets(&t);
        let (px, dpx) = quad_at(&t.p.coeffs(), x);
        let (qx, dqx) = quad_at(&t.q.coeffs(), x);
        let images = match correspondence_images(&t, x) {
            Ok(pair) => pair,
            Err(_) => return Ok(()),
        };
        let mut pulled_1 = C64::new(0.0, 0.0);
        let mut pulled_z = C64::new(0.0, 0.0);
        for z in [images.0, images.1] {
            let (uz, duz) = quad_at(&u, z);
            let (vz, dvz) = quad_at(&v, z);
            let (wz, _) = quad_at(&w, z);
            // implicit differentiation of P(x)U(z) + Q(x)V(z) = 0
            let kz = px * duz + qx * dvz;
            prop_assume!(kz.norm() > 1e-9);
            let zprime = -(dpx * uz + dqx * vz) / kz;
            let yz = correspondence_ordinate(&t, x, z, y);
            // the paired ordinate lies on the image curve Y² = -UVW/Δ
            let delta = hyperagm::poly::delta_det(&t);
            let on_curve = (yz * yz * delta + uz * vz * wz).norm();
            prop_assert!(
                on_curve <= 1e-8 * (yz * yz * delta).norm().max(1.0),
                "ordinate off image curve by {on_curve:e}"
            );
            pulled_1 += zprime / yz;
            pulled_z += z * zprime / yz;
        }
        let scale = (1.0 / y.norm()).max(x.norm() / y.norm());
        prop_assert!(
            (pulled_1 + 1.0 / y).norm() <= 1e-8 * scale,
            "dz/Y sum {pulled_1} vs -1/y = {}",
            -1.0 / y
        );
        prop_assert!(
            (pulled_z + x / y).norm() <= 1e-8 * scale,
            "z dz/Y sum {pulled_z} vs -x/y = {}",
            -x / y
        );
    }

    #[test]
    fn elimination_chi_is_positive_where_the_closed_form_is_large(
        a in -2.5f64..2.9, g in 0.3f64..8.0,
    ) {
        prop_assume!(a.abs() >= 0.05);
        prop_assume!(igusa::subcover_bracket(a, g).abs() >= 1e5);
        let chi = match igusa::chi30_generic(&monopole_sextic_coeffs(a, g)) {
            Ok(v) => v,
            Err(_) => return Ok(()),
        };
        prop_assert!(chi > 0.0, "chi({a},{g}) = {chi:e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn oracle_band_subdivision_is_additive(
        roots in ordered_sextic(), lam in 0.2f64..0.8,
    ) {
        let t = QuadTriple::from_real_roots(roots).unwrap();
        let sextic = real_curve_sextic(&t);
        let cfg = OracleConfig::default();
        let (x0, x1) = (roots[2], roots[3]);
        let xm = x0 + lam * (x1 - x0);
        let mk = |p0: f64, p1: f64| SegmentIntegrand {
            sextic: sextic.clone(),
            numerator: vec![C64::new(1.0, 0.0)],
            x0: C64::new(p0, 0.0),
            x1: C64::new(p1, 0.0),
            anchor: None,
        };
        let (whole, _) = hyperelliptic_segment(&mk(x0, x1), &cfg).unwrap();
        let (head, _) = hyperelliptic_segment(&mk(x0, xm), &cfg).unwrap();
        let (tail, _) = hyperelliptic_segment(&mk(xm, x1), &cfg).unwrap();
        prop_assert!(
            (whole - (head + tail)).norm() <= 1e-9,
            "split residual {:e}",
            (whole - (head + tail)).norm()
        );
    }

    #[test]
    fn conjugate_chord_table_agrees_with_quadrature(
        a in -2.5f64..2.5, g in 0.4f64..6.0, odd in proptest::bool::ANY,
    ) {
        prop_assume!(a.abs() >= 0.2);
        let fam = CurveFamily::new(a, g);
        let numer: &[f64] = if odd { &[0.0, 1.0] } else { &[1.0] };
        let table = match chord_values(&fam, numer) {
            Ok(t) => t,
            Err(_) => return Ok(()),
        };
        let direct = match oracle_chords(&fam, numer) {
            Ok(o) => o,
            Err(_) => return Ok(()),
        };
        for (t_val, o_val) in table.values.iter().zip(direct.values.iter()) {
            prop_assert!(
                (t_val - o_val).norm() <= 1e-8 * o_val.norm().max(1.0),
                "table {t_val} vs quadrature {o_val}"
            );
        }
    }
}
