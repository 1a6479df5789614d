use std::collections::{BTreeMap, HashMap};

use proptest::prelude::*;

use super::*;
use crate::catalog::oracles::{connes_hc, TotalAlgebra};
use crate::catalog::{self, random_category, RandomBounds};
use crate::dgcore::GradedBasis;

fn defaults() -> ComputationParams {
    ComputationParams::default()
}

fn amplified(c: &DGCategory) -> DGCategory {
    matrix_amplification(c, 2).unwrap().category
}

/// The same category with objects listed in reverse and every hom basis reversed.
fn reversed(c: &DGCategory) -> DGCategory {
    let n = c.num_objects();
    let old = |x: usize| n - 1 - x;
    let flip = |x: usize, y: usize, i: usize| c.hom(old(x), old(y)).len() - 1 - i;
    let flip_vec = |x: usize, y: usize, v: &SparseVec| SparseVec::from_pairs(v.iter().map(|(i, q)| (flip(x, y, i), q.clone())));
    let objects = (0..n).map(|x| c.object(old(x)).to_string()).collect();
    let mut homs = HashMap::new();
    for x in 0..n {
        for y in 0..n {
            let basis = c.hom(old(x), old(y));
            let elements: Vec<_> = (0..basis.len()).rev().map(|i| (basis.label(i).to_string(), basis.degree(i))).collect();
            homs.insert((x, y), GradedBasis::new(elements).unwrap());
        }
    }
    let ids = (0..n).map(|x| flip(x, x, c.id(old(x)))).collect();
    let mut out = DGCategory::new(objects, homs, ids).unwrap();
    for x in 0..n {
        for y in 0..n {
            let len = c.hom(old(x), old(y)).len();
            let cols = (0..len).map(|i| flip_vec(x, y, &c.apply_d(old(x), old(y), &SparseVec::unit(flip(x, y, i))))).collect();
            out.set_d(x, y, SparseMatrix::from_columns(len, cols)).unwrap();
            for z in 0..n {
                for f in 0..len {
                    for g in 0..c.hom(old(y), old(z)).len() {
                        let value = c.compose(old(x), old(y), old(z), flip(y, z, g), flip(x, y, f));
                        out.set_compose(x, y, z, g, f, flip_vec(x, z, value)).unwrap();
                    }
                }
            }
        }
    }
    out
}

#[test]
fn ground_field_values() {
    let k = catalog::ground_field().category;
    let p = defaults();
    let minus = hc_minus(&k, &p).unwrap();
    let plain = hc(&k, &p).unwrap();
    for n in -4..=6 {
        let even = n % 2 == 0;
        assert_eq!(minus.dim(n), usize::from(even && n <= 0), "HC- degree {n}");
        assert_eq!(plain.dim(n), usize::from(even && n >= 0), "HC degree {n}");
        assert!(minus.is_stable(n) && plain.is_stable(n));
    }
    let d = delta(&k, &p).unwrap();
    assert!(d.verdicts.values().all(|v| v.verdict == Verdict::Zero));
}

#[test]
fn total_differential_squares_to_zero() {
    for seed in 0..30 {
        let c = random_category(seed, RandomBounds::default()).category;
        let model = CyclicModel::new(&c, &defaults().with_bar_length(4)).unwrap();
        for tower in [model.negative(4, 3).unwrap(), model.cyclic(4, 3).unwrap()] {
            for n in -8..=8 {
                let square = tower.differential(n).mul(&tower.differential(n + 1));
                assert_eq!(rank(&square), 0, "seed {seed}, degree {n}");
            }
        }
    }
}

#[test]
fn cyclic_homology_matches_connes_oracle() {
    for entry in [catalog::dual_numbers(), catalog::a2(), catalog::a3()] {
        let h = hc(&entry.category, &defaults()).unwrap();
        let oracle = connes_hc(&TotalAlgebra::of(&entry.category).unwrap(), 0..=5).unwrap();
        for (n, dim) in oracle {
            if h.is_stable(n) {
                assert_eq!(h.dim(n), dim, "{} degree {n}", entry.name);
            }
        }
        assert!((0..=5).all(|n| h.is_stable(n)), "{}", entry.name);
    }
}

#[test]
fn truncated_polynomial_cyclic_homology() {
    let c = catalog::truncated_polynomial(3);
    let h = hc(&c, &defaults().with_window(0, 3)).unwrap();
    let oracle = connes_hc(&TotalAlgebra::of(&c).unwrap(), 0..=3).unwrap();
    assert_eq!(h.dims(), oracle);
}

#[test]
fn negative_cyclic_of_dual_numbers_flags_truncation_artifacts() {
    let c = catalog::dual_numbers().category;
    let h = hc_minus(&c, &defaults()).unwrap();
    // Every class at the top power of u fails to lift, so no degree where
    // the truncated value differs from the true one may be marked stable.
    let truth = |n: i64| usize::from((n <= 0 && n % 2 == 0) || (n > 0 && n % 2 == 1));
    for n in -4..=6 {
        if h.is_stable(n) {
            assert_eq!(h.dim(n), truth(n), "degree {n}");
        }
    }
    assert!(h.is_stable(-3));
}

#[test]
fn amplification_keeps_negative_cyclic_dims() {
    let a2 = catalog::a2().category;
    let report = morita_comparison(&a2, &defaults()).unwrap();
    assert!(report.holds());
    assert!(report.corner_iso_on_hh0);
    assert!(report.hc_minus.get(&-4).is_some_and(|r| r.stable && r.original == 2));
}

#[test]
fn long_exact_sequence_is_exact() {
    for entry in [catalog::ground_field(), catalog::a2(), catalog::dual_numbers()] {
        let les = long_exact_check(&entry.category, &defaults()).unwrap();
        assert!(les.holds_everywhere(), "{}", entry.name);
        assert!(les.nodes.values().any(|n| n.stable), "{}", entry.name);
    }
}

#[test]
fn long_exact_sequence_needs_two_powers() {
    let p = defaults().with_u_power(1);
    assert!(long_exact_check(&catalog::a2().category, &p).is_err());
}

#[test]
fn smooth_proper_examples_degenerate() {
    for entry in [catalog::ground_field(), catalog::a2(), catalog::a3()] {
        for c in [entry.category.clone(), amplified(&entry.category)] {
            let v = degeneration_check(&c, &defaults()).unwrap();
            assert!(v.nonzero_degrees.is_empty(), "{}", entry.name);
            assert!(v.degenerate_in_window, "{}", entry.name);
        }
        assert!(degeneration_check(&entry.category, &defaults()).unwrap().fully_stable());
    }
}

#[test]
fn dual_numbers_have_nonzero_differential() {
    let c = catalog::dual_numbers().category;
    let e1 = e1_page(&c, &defaults().with_window(0, 3)).unwrap();
    // d₁ is B on Hochschild classes: onto HH₁ from HH₀, zero from HH₁.
    assert_eq!(e1.d1[&0].rank, 1);
    assert_eq!(e1.d1[&1].rank, 0);
    assert_eq!(e1.d1[&2].rank, 1);
    assert!(!e1.d1_vanishes_on_stable());
}

#[test]
fn exterior_generator_boundary_in_odd_degrees() {
    let c = catalog::by_name("exterior_-1").unwrap().category;
    let d = delta(&c, &defaults()).unwrap();
    for n in [1, 3, 5] {
        assert_eq!(d.verdicts[&n].verdict, Verdict::Nonzero, "degree {n}");
    }
    assert!(!degeneration_check(&c, &defaults()).unwrap().degenerate_in_window);
}

#[test]
fn first_differential_agrees_with_boundary_map() {
    for name in ["ground_field", "a2", "a3", "dual_numbers", "exterior_-1"] {
        let c = catalog::by_name(name).unwrap().category;
        let e1 = e1_page(&c, &defaults()).unwrap();
        for (n, entry) in &e1.d1 {
            if entry.stable && entry.delta_verdict != Verdict::Unstable {
                assert!(entry.agrees_with_delta, "{name} degree {n}");
            }
        }
    }
}

#[test]
fn u_acts_as_a_module() {
    for name in ["ground_field", "a2", "dual_numbers", "exterior_-1"] {
        let c = catalog::by_name(name).unwrap().category;
        assert!(u_module_check(&c, &defaults()).unwrap().holds(), "{name}");
    }
}

#[test]
fn boundary_map_is_natural() {
    let dual = catalog::dual_numbers().category;
    let p = defaults().with_window(-2, 3);
    assert!(delta_naturality(&dual, &dual, &DGFunctor::identity(&dual), &p).unwrap().holds());
    let a2 = catalog::a2().category;
    let amp = matrix_amplification(&a2, 2).unwrap();
    let into = delta_naturality(&a2, &amp.category, &amp.inclusion, &p).unwrap();
    assert!(into.holds() && !into.degrees.is_empty());
    assert!(delta_naturality(&amp.category, &a2, &amp.collapse, &p).unwrap().holds());
}

#[test]
fn boundary_rank_ignores_basis_order() {
    for name in ["a2", "a3", "dual_numbers", "exterior_-1"] {
        let c = catalog::by_name(name).unwrap().category;
        let r = reversed(&c);
        assert!(crate::dgcore::validate(&r).is_valid(), "{name}");
        let (d1, d2) = (delta(&c, &defaults()).unwrap(), delta(&r, &defaults()).unwrap());
        for (n, v) in &d1.verdicts {
            let w = &d2.verdicts[n];
            assert_eq!((v.rank, v.verdict, v.hh_dim), (w.rank, w.verdict, w.hh_dim), "{name} degree {n}");
        }
    }
}

#[test]
fn presentation_reports_u_power() {
    let h = hc_minus(&catalog::a2().category, &defaults().with_window(-2, 0)).unwrap();
    let p = h.presentation();
    assert_eq!(p.u_power, Some(4));
    assert_eq!(p.dims(), BTreeMap::from([(-2, 2), (-1, 0), (0, 2)]));
    assert!(p.degrees[&-2].representatives.iter().all(|r| r.contains("u^1")));
}

#[test]
fn rejects_u_power_beyond_bar_length() {
    let p = defaults().with_bar_length(2).with_u_power(4);
    assert!(CyclicModel::new(&catalog::a2().category, &p).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn long_exact_sequence_holds_for_random_categories(seed in any::<u64>()) {
        let c = random_category(seed, RandomBounds::default()).category;
        let p = defaults().with_bar_length(4).with_u_power(3).with_window(-3, 3);
        prop_assert!(long_exact_check(&c, &p).unwrap().holds_everywhere());
    }

    #[test]
    fn stable_boundary_maps_survive_larger_truncation(seed in any::<u64>()) {
        let c = random_category(seed, RandomBounds::default()).category;
        let p = defaults().with_bar_length(4).with_u_power(3).with_window(-2, 2);
        let small = delta(&c, &p).unwrap();
        let large = delta(&c, &p.with_bar_length(5)).unwrap();
        for (n, v) in &small.verdicts {
            if v.verdict != Verdict::Unstable && large.verdicts[n].verdict != Verdict::Unstable {
                prop_assert_eq!(v.verdict, large.verdicts[n].verdict, "degree {}", n);
            }
        }
    }
}
