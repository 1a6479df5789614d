use proptest::prelude::*;

use super::*;
use crate::catalog::{self, random_category, RandomBounds};
use crate::dgcore::{matrix_amplification, DGBimodule, DGFunctor};
use crate::exactla::rank;
use crate::params::ComputationParams;

fn catalog_categories() -> Vec<(String, DGCategory)> {
    ["ground_field", "a2", "a3", "dual_numbers", "exterior_-1", "exterior_1"]
        .iter()
        .map(|n| (n.to_string(), catalog::by_name(n).unwrap().category))
        .collect()
}

#[test]
fn mixed_identities_hold_on_catalog() {
    for (name, c) in catalog_categories() {
        let mc = build_reduced_complex(&c, 6);
        let report = check_identities(&mc);
        assert!(report.holds(), "{name}: {report:?}");
        assert!(report.words_checked > 0);
    }
}

#[test]
fn mixed_identities_hold_on_random_categories() {
    for seed in 0..100 {
        let c = random_category(seed, RandomBounds::default()).category;
        let report = check_identities(&build_reduced_complex(&c, 5));
        assert!(report.holds(), "seed {seed}: {report:?}");
    }
}

#[test]
fn flipped_wrap_sign_is_detected() {
    let c = catalog::dual_numbers().category;
    let mc = build_reduced_complex_with(&c, 5, SignConvention { flip_wrap_sign: true });
    assert!(!check_identities(&mc).holds());
}

#[test]
fn a2_words_avoid_the_missing_direction() {
    let c = catalog::a2().category;
    let mc = build_reduced_complex(&c, 3);
    for w in 0..mc.num_words() {
        let ms: Vec<_> = mc.word(w).iter().map(|&g| *mc.table().get(g)).collect();
        let same_object = ms.iter().all(|m| m.source == m.target && m.source == ms[0].source);
        let along_arrow = ms.iter().all(|m| m.source == 0);
        assert!(same_object || along_arrow, "{}", mc.label(w));
    }
    assert_eq!(mc.num_words(), 2);
}

#[test]
fn dual_numbers_match_resolution_oracle() {
    let entry = catalog::dual_numbers();
    let expected = &entry.expected.unwrap().hh;
    for l in [6, 7] {
        let params = ComputationParams::default().with_bar_length(l).with_window(0, 4);
        let h = hh(&entry.category, &params).unwrap();
        for n in 0..=4 {
            assert!(h.is_stable(n), "L={l} degree {n}");
            assert_eq!(h.dim(n), expected[&n], "L={l} degree {n}");
        }
    }
}

#[test]
fn quivers_match_oracle_on_stable_degrees() {
    for entry in [catalog::ground_field(), catalog::a2(), catalog::a3()] {
        let expected = entry.expected.as_ref().unwrap();
        let h = hh(&entry.category, &ComputationParams::default()).unwrap();
        for (&n, &d) in &expected.hh {
            if n <= 6 && h.is_stable(n) {
                assert_eq!(h.dim(n), d, "{} degree {n}", entry.name);
            }
        }
        assert!(h.is_stable(0));
    }
}

#[test]
fn degree_zero_stability_is_analytic() {
    let c = catalog::dual_numbers().category;
    let mc = build_reduced_complex(&c, 6);
    let f = mc.frontier();
    assert!(f.is_analytic());
    assert!(f.hh_exact(5));
    assert!(!f.hh_exact(6));
}

#[test]
fn exterior_generators() {
    let params = ComputationParams::default();
    // ξ in degree -1: every tail slot adds 2 to the degree, so HH is finite
    let h = hh(&catalog::by_name("exterior_-1").unwrap().category, &params).unwrap();
    assert!(params.degrees().all(|n| h.is_stable(n)));
    assert_eq!(h.dim(0), 1);
    assert_eq!(h.dim(1), 1);
    // ξ in degree 1: tail slots have degree 0, so degrees 0 and -1 never settle
    let h = hh(&catalog::by_name("exterior_1").unwrap().category, &params).unwrap();
    assert!(!h.is_stable(0));
    assert!(!h.is_stable(-1));
}

#[test]
fn kunneth_small() {
    let params = ComputationParams::default().with_bar_length(4).with_window(0, 3);
    let k = catalog::ground_field().category;
    let dual = catalog::dual_numbers().category;
    for (a, b) in [(&k, &dual), (&dual, &dual)] {
        let report = kunneth_check(a, b, &params).unwrap();
        assert!(report.passes(), "{report:?}");
        assert!(report.stable_degrees() >= 3);
    }
}

#[test]
fn gluing_is_additive() {
    let k = catalog::ground_field().category;
    let dual = catalog::dual_numbers().category;
    let params = ComputationParams::default().with_bar_length(4);
    let m = crate::constructions::diagonal_bimodule(&k);
    assert!(gluing_additivity_check(&k, &k, &m, &params).unwrap().passes());
    let zero = DGBimodule::zero(&dual, &k);
    assert!(gluing_additivity_check(&dual, &k, &zero, &params).unwrap().passes());
}

#[test]
fn identity_functor_induces_identity() {
    let c = catalog::dual_numbers().category;
    let params = ComputationParams::default().with_window(0, 3);
    let map = hh_induced_map(&c, &c, &DGFunctor::identity(&c), &params).unwrap();
    for n in 0..=3 {
        let m = map.matrix(n).unwrap();
        assert_eq!(m, &SparseMatrix::identity(m.cols()), "degree {n}");
    }
}

#[test]
fn corner_inclusion_is_iso_on_hh0() {
    let a2 = catalog::a2().category;
    let amp = matrix_amplification(&a2, 2).unwrap();
    let params = ComputationParams::default().with_bar_length(4).with_window(0, 1);
    let map = hh_induced_map(&a2, &amp.category, &amp.inclusion, &params).unwrap();
    let m = map.matrix(0).unwrap();
    assert_eq!((m.rows(), m.cols(), rank(m)), (2, 2, 2));
    let back = hh_induced_map(&amp.category, &a2, &amp.collapse, &params).unwrap();
    assert_eq!(rank(back.matrix(0).unwrap()), 2);
}

#[test]
fn presentation_lists_representatives() {
    let c = catalog::dual_numbers().category;
    let h = hh(&c, &ComputationParams::default().with_window(0, 2)).unwrap();
    let p = h.presentation();
    assert_eq!(p.dims(), BTreeMap::from([(0, 2), (1, 1), (2, 1)]));
    assert!(p.all_stable());
    assert_eq!(p.degrees[&0].representatives.len(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn identities_hold_for_any_seed(seed in any::<u64>()) {
        let c = random_category(seed, RandomBounds::default()).category;
        prop_assert!(check_identities(&build_reduced_complex(&c, 5)).holds());
    }

    #[test]
    fn homology_is_stable_past_the_frontier(seed in any::<u64>()) {
        let c = random_category(seed, RandomBounds::default()).category;
        let params = ComputationParams::default().with_bar_length(4).with_window(-2, 2);
        let h = hh(&c, &params).unwrap();
        let h2 = hh(&c, &params.with_bar_length(5)).unwrap();
        for n in params.degrees() {
            if h.group(n).unwrap().exact {
                prop_assert_eq!(h.dim(n), h2.dim(n));
            }
        }
    }
}
