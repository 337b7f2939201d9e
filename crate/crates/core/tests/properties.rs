use proptest::prelude::*;

use slopebound::bounds::{lattice_count_bound, slope_length_bound, Count};
use slopebound::comparison::{verify_comparison, CurvatureProfile};
use slopebound::hypmath::{
    collar_area, collar_halfwidth, comparison_h, disk_area, AreaConvention, FOUR_PI,
};
use slopebound::lattice::greedy_pack;
use slopebound::spectra::{
    enumerate_spectrum, presets, translation_length, FuchsianGroup, GroupElement, Mat2, Word,
};

fn element(m: Mat2) -> GroupElement {
    GroupElement::new(m, Word::default()).unwrap()
}

/// Determinant-one matrix `[[a, b], [c, (1 + bc)/a]]`.
fn sl2() -> impl Strategy<Value = Mat2> {
    (0.3f64..3.0, -2.0f64..2.0, -2.0f64..2.0, any::<bool>()).prop_map(|(a, b, c, neg)| {
        let a = if neg { -a } else { a };
        Mat2::new(a, b, c, (1.0 + b * c) / a)
    })
}

/// Hyperbolic element with translation length in `[0.2, 3]`, rotated.
fn hyperbolic() -> impl Strategy<Value = Mat2> {
    (0.2f64..3.0, sl2()).prop_map(|(l, c)| {
        let e = (l / 2.0).exp();
        c * Mat2::new(e, 0.0, 0.0, 1.0 / e) * c.inverse_sl2()
    })
}

proptest! {
    #[test]
    fn h_is_minus_tanh_and_decreasing(u in 0.0f64..30.0, du in 1e-3f64..1.0) {
        let h = comparison_h(u).unwrap();
        prop_assert!((h + u.tanh()).abs() <= 1e-15);
        prop_assert!((-1.0..=0.0).contains(&h));
        let next = comparison_h(u + du).unwrap();
        prop_assert!(next <= h);
        // beyond this, neighbouring values of -tanh can round together
        if u + du < 12.0 {
            prop_assert!(next < h);
        }
    }

    #[test]
    fn area_conventions_differ_by_four_pi(r in 0.0f64..20.0) {
        let p = disk_area(r, AreaConvention::PaperVariant).unwrap();
        let t = disk_area(r, AreaConvention::TrueArea).unwrap();
        // exact up to the rounding of numbers of size p
        prop_assert!((p - t - FOUR_PI).abs() <= 4.0 * f64::EPSILON * p);
    }

    #[test]
    fn collar_chain_below_cutoff(d in 1e-3f64..=1.75) {
        let s = collar_halfwidth(d).unwrap();
        prop_assert!(s > d / 2.0);
        prop_assert!(s >= collar_halfwidth(1.75).unwrap());
        prop_assert!(collar_area(d).unwrap() >= 2.0);
    }

    #[test]
    fn detailed_bound_below_simplified(g in 0u32..30, n in 1u32..30, u in 0.01f64..3.0) {
        prop_assume!(2 * g + n > 2);
        let b = slope_length_bound(g, n, -u.tanh()).unwrap();
        prop_assert!(b.detailed <= b.simplified * (1.0 + 1e-15));
        prop_assert!(b.detailed > 0.0);
    }

    #[test]
    fn lattice_bound_monotone(g in 0u32..4, u in 0.05f64..1.0, l in 0.2f64..3.0, dl in 0.01f64..1.0) {
        for conv in [AreaConvention::TrueArea, AreaConvention::PaperVariant] {
            let a = lattice_count_bound(g, u, l, conv).unwrap();
            let longer = lattice_count_bound(g, u, l + dl, conv).unwrap();
            let bigger_g = lattice_count_bound(g + 1, u, l, conv).unwrap();
            // d/dL ln(A(R+L)/A(L)) is 1 - coth(L/2) < 0 for sinh², but
            // 1 - tanh(L/2) > 0 for cosh²
            match conv {
                AreaConvention::TrueArea => prop_assert!(longer.bound.ln_value <= a.bound.ln_value + 1e-12),
                AreaConvention::PaperVariant => prop_assert!(longer.bound.ln_value >= a.bound.ln_value - 1e-12),
            }
            prop_assert!(longer.rigorous.ln_value <= a.rigorous.ln_value + 1e-12);
            prop_assert!(bigger_g.bound.ln_value >= a.bound.ln_value);
            prop_assert!(a.bound.value >= 1.0);
        }
    }

    #[test]
    fn count_sum_matches_logs(x in 0.0f64..1e300, y in 1.0f64..1e300) {
        let s = Count::from_value(x).add(Count::from_value(y));
        prop_assert!((s.ln_value - (x + y).ln()).abs() <= 1e-12 * (x + y).ln().abs().max(1.0));
        let big = Count::from_ln(800.0).add(Count::from_value(y));
        prop_assert!(big.value.is_infinite());
        prop_assert!((big.ln_value - 800.0).abs() < 1e-12);
    }

    #[test]
    fn translation_length_conjugation_invariant(g in hyperbolic(), c in sl2()) {
        let l = translation_length(&element(g)).unwrap();
        let conj = c * g * c.inverse_sl2();
        let lc = translation_length(&element(conj)).unwrap();
        prop_assert!((l - lc).abs() <= 1e-9, "{l} vs {lc}");
    }

    #[test]
    fn translation_length_of_powers(g in hyperbolic(), n in 1u32..=5) {
        let l = translation_length(&element(g)).unwrap();
        let mut p = Mat2::IDENTITY;
        for _ in 0..n {
            p = p * g;
        }
        let ln = translation_length(&element(p.renormalized())).unwrap();
        prop_assert!((ln - f64::from(n) * l).abs() <= 1e-8, "{ln} vs {}", f64::from(n) * l);
    }

    #[test]
    fn cyclically_reduced_powers_are_detected(w in prop::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2)], 1..5), k in 2usize..4) {
        let base = Word(w.clone());
        let repeated = Word(w.iter().copied().cycle().take(w.len() * k).collect());
        prop_assert!(repeated.is_proper_power());
        prop_assert_eq!(repeated.is_cyclically_reduced(), base.is_cyclically_reduced());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn spectrum_invariant_under_generator_relabelling(swap in any::<bool>(), inv in prop::array::uniform4(any::<bool>())) {
        for base in [presets::modular_torus(), presets::octagon_genus2()] {
            let mut gens: Vec<Mat2> = base
                .generators
                .iter()
                .enumerate()
                .map(|(i, m)| if inv[i % 4] { m.inverse_sl2() } else { *m })
                .collect();
            if swap {
                gens.reverse();
            }
            let relabelled = FuchsianGroup::new("relabelled", base.genus, gens).unwrap();
            let (l_max, len) = if base.genus == 1 { (5.0, 7) } else { (6.0, 4) };
            let a = enumerate_spectrum(&base, l_max, len).unwrap();
            let b = enumerate_spectrum(&relabelled, l_max, len).unwrap();
            prop_assert_eq!(a.entries.len(), b.entries.len());
            for (x, y) in a.entries.iter().zip(&b.entries) {
                prop_assert!((x.length - y.length).abs() <= 1e-9);
                prop_assert_eq!(x.multiplicity, y.multiplicity);
            }
        }
    }

    #[test]
    fn greedy_packings_are_separated(seed in any::<u64>(), r in 0.5f64..4.0, l in 0.5f64..2.5) {
        let exp = greedy_pack(r, l, seed, 300).unwrap();
        prop_assert!(exp.is_valid());
        prop_assert!(exp.count >= 1);
        prop_assert!(!exp.flags.rigorous_bound_exceeded);
    }

    #[test]
    fn random_profiles_are_certified(seed in any::<u64>(), extent in 0.5f64..5.0) {
        let p = CurvatureProfile::perturbed(seed, extent).unwrap();
        let r = verify_comparison(&p, extent / 20_000.0, 1e-7).unwrap();
        prop_assert!(r.certified);
        prop_assert!(r.kg_max <= 0.0);
        prop_assert!(r.riccati_jacobi_gap <= 1e-6);
        for (u, j) in r.grid.iter().zip(&r.j) {
            prop_assert!(*j >= u.cosh() - 1e-7);
        }
    }
}
