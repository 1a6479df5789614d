use std::collections::BTreeMap;

use proptest::prelude::*;

use super::*;
use crate::catalog::{self, random_category, RandomBounds};
use crate::exactla::rank;

fn dims_by_degree(c: &DGCategory, x: usize, y: usize) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    for &d in c.hom(x, y).degrees() {
        *out.entry(d).or_insert(0) += 1;
    }
    out
}

fn convolution(a: &BTreeMap<i32, usize>, b: &BTreeMap<i32, usize>) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    for (&p, &m) in a {
        for (&q, &n) in b {
            *out.entry(p + q).or_insert(0) += m * n;
        }
    }
    out
}

fn open_identity() -> DGCategory {
    let homs = HashMap::from([((0, 0), GradedBasis::new([("id", 0), ("e", 1)]).unwrap())]);
    let mut c = DGCategory::new(vec!["pt".into()], homs, vec![0]).unwrap();
    c.set_d(0, 0, SparseMatrix::from_columns(2, vec![SparseVec::unit(1), SparseVec::new()])).unwrap();
    c
}

#[test]
fn catalog_categories_validate() {
    for name in ["ground_field", "a2", "a3", "dual_numbers", "exterior_1", "exterior_-1"] {
        assert!(validate(&catalog::by_name(name).unwrap().category).is_valid(), "{name}");
    }
}

#[test]
fn nonclosed_identity_is_named() {
    let report = validate(&open_identity());
    assert!(report.violates(Axiom::ClosedIdentity));
    assert!(!report.violates(Axiom::Associativity));
}

#[test]
fn broken_tables_are_reported() {
    // x·x = 1 gives k[x]/(x² - 1), still associative
    let mut c = catalog::truncated_polynomial(2);
    c.set_compose(0, 0, 0, 1, 1, SparseVec::unit(0)).unwrap();
    assert!(validate(&c).is_valid());
    // x·x² = x while x²·x = 0
    let mut c = catalog::truncated_polynomial(3);
    c.set_compose(0, 0, 0, 1, 2, SparseVec::unit(1)).unwrap();
    assert!(validate(&c).violates(Axiom::Associativity));
    // degree mismatch is a schema error, not an axiom failure
    let mut e = catalog::exterior_generator(1).unwrap().category;
    assert!(matches!(e.set_compose(0, 0, 0, 1, 1, SparseVec::unit(0)), Err(Error::Schema { .. })));
    let mut bad_d = catalog::dual_numbers().category;
    let square = combo([(1, 1)]);
    assert!(bad_d.set_d(0, 0, SparseMatrix::from_columns(2, vec![square, SparseVec::new()])).is_err());
}

#[test]
fn duplicate_labels_and_objects_are_rejected() {
    assert!(GradedBasis::new([("a", 0), ("a", 1)]).is_err());
    let homs = HashMap::new();
    assert!(DGCategory::new(vec!["x".into(), "x".into()], homs, vec![0, 0]).is_err());
}

#[test]
fn opposite_of_examples() {
    let k = catalog::ground_field().category;
    assert_eq!(opposite(&k), k);
    let a2 = catalog::a2().category;
    let op = opposite(&a2);
    assert_eq!(op.hom(1, 0).labels(), &["a".to_string()]);
    assert!(op.hom(0, 1).is_empty());
    let ext = catalog::exterior_generator(1).unwrap().category;
    let op = opposite(&ext);
    assert!(validate(&op).is_valid());
    assert_eq!(opposite(&op), ext);
}

#[test]
fn opposite_signs_odd_products() {
    // exterior algebra on two odd generators: ξη = -ηξ flips sign in the opposite
    let homs = HashMap::from([((0, 0), GradedBasis::new([("1", 0), ("ξ", 1), ("η", 1), ("ξη", 2)]).unwrap())]);
    let mut c = DGCategory::new(vec!["pt".into()], homs, vec![0]).unwrap();
    c.set_compose(0, 0, 0, 1, 2, combo([(3, 1)])).unwrap();
    c.set_compose(0, 0, 0, 2, 1, combo([(3, -1)])).unwrap();
    assert!(validate(&c).is_valid());
    let op = opposite(&c);
    assert!(validate(&op).is_valid());
    // in the opposite, ξ ∘op η = (-1)^{1·1} η ∘ ξ = ξη
    assert_eq!(op.compose(0, 0, 0, 1, 2), &combo([(3, 1)]));
}

#[test]
fn tensor_with_ground_field_is_trivial() {
    let k = catalog::ground_field().category;
    let dual = catalog::dual_numbers().category;
    let t = tensor(&k, &dual).unwrap();
    assert!(validate(&t).is_valid());
    assert_eq!(t.total_dim(), dual.total_dim());
    for g in 0..2 {
        for f in 0..2 {
            assert_eq!(t.compose(0, 0, 0, g, f), dual.compose(0, 0, 0, g, f));
        }
    }
}

#[test]
fn tensor_of_a2_with_itself() {
    let a2 = catalog::a2().category;
    let t = tensor(&a2, &a2).unwrap();
    assert_eq!(t.num_objects(), 4);
    assert_eq!(t.total_dim(), a2.total_dim() * a2.total_dim());
    assert!(validate(&t).is_valid());
    let op = tensor(&a2, &opposite(&a2)).unwrap();
    assert!(validate(&op).is_valid());
}

#[test]
fn amplification_examples() {
    let k = catalog::ground_field().category;
    let one = matrix_amplification(&k, 1).unwrap();
    assert_eq!(one.category.total_dim(), 1);
    let two = matrix_amplification(&k, 2).unwrap();
    assert_eq!(two.category.num_objects(), 2);
    assert_eq!(two.category.total_dim(), 4);
    assert!(validate(&two.category).is_valid());
    assert!(validate_functor(&k, &two.category, &two.inclusion).is_valid());
    assert!(validate_functor(&two.category, &k, &two.collapse).is_valid());
    let a2 = matrix_amplification(&catalog::a2().category, 2).unwrap();
    assert!(validate(&a2.category).is_valid());
    assert_eq!(a2.category.total_dim(), 12);
    assert!(matrix_amplification(&k, 0).is_err());
}

fn hom_homology(c: &DGCategory, x: usize, y: usize, deg: i32) -> usize {
    let h = c.hom(x, y);
    let d = c.d(x, y);
    let in_deg: Vec<usize> = (0..h.len()).filter(|&i| h.degree(i) == deg).collect();
    let from_below: Vec<usize> = (0..h.len()).filter(|&i| h.degree(i) == deg - 1).collect();
    let out = SparseMatrix::from_columns(h.len(), in_deg.iter().map(|&i| d.column(i).clone()).collect());
    let inc = SparseMatrix::from_columns(h.len(), from_below.iter().map(|&i| d.column(i).clone()).collect());
    in_deg.len() - rank(&out) - rank(&inc)
}

#[test]
fn quotient_of_ground_field_is_acyclic() {
    let k = catalog::ground_field().category;
    let q = drinfeld_quotient(&k, 0, (-4, 2)).unwrap();
    assert!(validate(&q).is_valid());
    assert_eq!(q.hom(0, 0).len(), 5);
    // the bottom degree has no incoming boundaries from inside the window
    for deg in -3..=2 {
        assert_eq!(hom_homology(&q, 0, 0, deg), 0, "degree {deg}");
    }
}

#[test]
fn quotient_of_a2_keeps_far_endomorphisms() {
    let a2 = catalog::a2().category;
    let q = drinfeld_quotient(&a2, 0, (-3, 3)).unwrap();
    assert!(validate(&q).is_valid());
    assert_eq!(q.hom(1, 1).len(), 1);
    for x in 0..2 {
        for y in 0..2 {
            assert!(q.hom(x, y).degrees().iter().all(|&d| (-3..=3).contains(&d)));
        }
    }
    let proj = quotient_projection(&a2, &q).unwrap();
    assert!(validate_functor(&a2, &q, &proj).is_valid());
}

#[test]
fn quotient_window_must_hold_identity_and_epsilon() {
    let k = catalog::ground_field().category;
    assert!(matches!(drinfeld_quotient(&k, 0, (0, 3)), Err(Error::DegenerateWindow(_))));
    assert!(matches!(drinfeld_quotient(&k, 0, (-2, -1)), Err(Error::DegenerateWindow(_))));
}

#[test]
fn functor_composition() {
    let a2 = catalog::a2().category;
    let amp = matrix_amplification(&a2, 2).unwrap();
    let round = amp.inclusion.then(&amp.collapse);
    assert!(validate_functor(&a2, &a2, &round).is_valid());
    assert_eq!(round, DGFunctor::identity(&a2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn opposite_is_an_involution(seed in any::<u64>()) {
        let c = random_category(seed, RandomBounds::default()).category;
        let op = opposite(&c);
        prop_assert!(validate(&op).is_valid());
        prop_assert_eq!(opposite(&op), c);
    }

    #[test]
    fn tensor_dimensions_convolve(s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = random_category(s1, RandomBounds::default()).category;
        let b = random_category(s2, RandomBounds::default()).category;
        let t = tensor(&a, &b).unwrap();
        prop_assert!(validate(&t).is_valid());
        let lay = TensorLayout::new(&a, &b);
        for x in 0..a.num_objects() {
            for y in 0..a.num_objects() {
                for u in 0..b.num_objects() {
                    for v in 0..b.num_objects() {
                        let direct = dims_by_degree(&t, lay.object(x, u), lay.object(y, v));
                        let conv = convolution(&dims_by_degree(&a, x, y), &dims_by_degree(&b, u, v));
                        prop_assert_eq!(direct, conv);
                    }
                }
            }
        }
    }

    #[test]
    fn constructions_stay_valid(seed in any::<u64>()) {
        let c = random_category(seed, RandomBounds::default()).category;
        let amp = matrix_amplification(&c, 2).unwrap();
        prop_assert!(validate(&amp.category).is_valid());
        prop_assert!(validate_functor(&c, &amp.category, &amp.inclusion).is_valid());
        if let Ok(q) = drinfeld_quotient(&c, 0, (-3, 3)) {
            prop_assert!(validate(&q).is_valid());
        }
    }
}
