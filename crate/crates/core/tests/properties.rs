//! Cross-module invariants on random rational parameters.

use dsop::lfreud::{ghahn_lf_run, hahn_closed_form, hahn_lf_run, meixner_lf_run, GHahnParams};
use dsop::moments::default_moments;
use dsop::oracle::{oracle_table, recurrence_from_moments};
use dsop::structure::{band_identity_residuals, de_pointwise_check, structure_coeffs};
use dsop::{Arithmetic, Scalar, WeightSpec};
use proptest::prelude::*;

fn r(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn meixner_lf_matches_oracle(an in 1i64..12, ad in 1i64..5, zn in 1i64..8, zd in 9i64..12, n in 1usize..12) {
        let (a, z) = (r(an, ad), r(zn, zd));
        let spec = WeightSpec::meixner(a.clone(), z.clone()).unwrap();
        let lf = meixner_lf_run(&a, &z, n).unwrap();
        let or = oracle_table(&spec, n, Arithmetic::Exact, 0.0).unwrap();
        prop_assert_eq!(lf.beta, or.beta);
        prop_assert_eq!(lf.gamma, or.gamma);
    }

    #[test]
    fn finite_hahn_paths_agree(a1n in 1i64..6, a1d in 1i64..3, m in 1i64..7, b in -12i64..-7) {
        // a₂ = -m cuts the support at x = m
        let (a1, a2, b) = (r(a1n, a1d), Scalar::int(-m), Scalar::int(b));
        let n = m as usize;
        let spec = WeightSpec::hahn(a1.clone(), a2.clone(), b.clone()).unwrap();
        let or = oracle_table(&spec, n, Arithmetic::Exact, 0.0).unwrap();
        let lf = hahn_lf_run(&a1, &a2, &b, n).unwrap();
        let cf = hahn_closed_form(&a1, &a2, &b, n).unwrap();
        prop_assert_eq!(&lf.beta, &or.beta);
        prop_assert_eq!(&lf.gamma, &or.gamma);
        prop_assert_eq!(&cf.beta, &or.beta);
        prop_assert_eq!(&cf.gamma, &or.gamma);
    }

    #[test]
    fn structure_identities_hold_exactly(an in 1i64..6, zn in 1i64..4, n in 1usize..6) {
        let (a, z) = (Scalar::int(an), r(zn, 5));
        let spec = WeightSpec::meixner(a.clone(), z.clone()).unwrap();
        let rec = meixner_lf_run(&a, &z, n + 1).unwrap();
        let sc = structure_coeffs(&spec, &rec, n).unwrap();
        let mut rep = band_identity_residuals(&sc, &rec, &z);
        rep.merge(de_pointwise_check(&spec, &rec, &sc, n, 0));
        prop_assert!(rep.passes(0.0), "{:?}", rep);
    }

    #[test]
    fn ghahn_lf_tracks_float_oracle(a1 in 1i64..4, a2n in 1i64..5, bn in 1i64..4, zd in 3i64..6) {
        let p = GHahnParams::new(Scalar::int(a1), r(a2n, 2), Scalar::int(bn), r(1, zd));
        let spec = WeightSpec::ghahn1(p.a1.clone(), p.a2.clone(), p.b.clone(), p.z.clone()).unwrap();
        let ar = Arithmetic::float(256);
        let lf = ghahn_lf_run(&p, 10, None, ar).unwrap();
        let or = oracle_table(&spec, 10, ar, 1e-40).unwrap();
        let (db, dg) = lf.max_diff(&or);
        prop_assert!(db < 1e-25 && dg < 1e-25, "{db:e} {dg:e}");
    }
}

#[test]
fn normalized_moments_reproduce_table() {
    let spec = WeightSpec::charlier(r(3, 2)).unwrap();
    let mom = default_moments(&spec, 9, Arithmetic::Exact).unwrap();
    let t = recurrence_from_moments(&mom, 4).unwrap();
    for n in 0..=4 {
        // Charlier: β_n = n + z, γ_n = n z
        assert_eq!(t.beta[n], &Scalar::int(n as i64) + &r(3, 2));
        assert_eq!(t.gamma[n], &Scalar::int(n as i64) * &r(3, 2));
    }
}
