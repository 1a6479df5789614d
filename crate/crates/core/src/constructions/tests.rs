use std::collections::HashMap;

use proptest::prelude::*;

use super::*;
use crate::catalog::{self, random_category, RandomBounds};
use crate::dgcore::matrix_amplification;

fn one_dim(a: &DGCategory, b: &DGCategory, x: usize, y: usize) -> DGBimodule {
    DGBimodule::new(a, b, HashMap::from([((x, y), GradedBasis::new([("m", 0)]).unwrap())])).unwrap()
}

#[test]
fn zero_bimodule_gives_disjoint_union() {
    let k = catalog::ground_field().category;
    let dual = catalog::dual_numbers().category;
    let g = glue(&k, &dual, &DGBimodule::zero(&k, &dual)).unwrap();
    assert!(validate(&g.category).is_valid());
    assert_eq!(g.sides, vec![Side::A, Side::B]);
    assert_eq!(g.category.hom(0, 1).len(), 0);
    assert_eq!(g.category.hom(1, 0).len(), 0);
    assert_eq!(g.category.hom(1, 1), dual.hom(0, 0));
    assert_eq!(g.category.total_dim(), k.total_dim() + dual.total_dim());
}

#[test]
fn gluing_two_points_gives_a2() {
    let k = catalog::ground_field().category;
    let g = glue(&k, &k, &one_dim(&k, &k, 0, 0)).unwrap();
    let a2 = catalog::a2().category;
    assert!(validate(&g.category).is_valid());
    assert_eq!(g.category.objects(), &["A/pt".to_string(), "B/pt".to_string()]);
    for x in 0..2 {
        for y in 0..2 {
            assert_eq!(g.category.hom(x, y).len(), a2.hom(x, y).len());
            for z in 0..2 {
                for gi in 0..a2.hom(y, z).len() {
                    for fi in 0..a2.hom(x, y).len() {
                        assert_eq!(g.category.compose(x, y, z, gi, fi), a2.compose(x, y, z, gi, fi));
                    }
                }
            }
        }
    }
}

#[test]
fn gluing_a2_with_a_point() {
    let a2 = catalog::a2().category;
    let k = catalog::ground_field().category;
    for x in 0..2 {
        let g = glue(&a2, &k, &one_dim(&a2, &k, x, 0)).unwrap();
        assert_eq!(g.category.num_objects(), 3);
        assert!(validate(&g.category).is_valid(), "module at {x}");
        assert_eq!(g.objects_on(Side::B), vec![2]);
        assert_eq!(g.object(Side::B, 0), 2);
        for y in 0..2 {
            assert!(g.category.hom(2, y).is_empty());
        }
    }
}

#[test]
fn orientation_is_checked() {
    let a2 = catalog::a2().category;
    let k = catalog::ground_field().category;
    let m = one_dim(&k, &a2, 0, 0);
    let err = glue(&a2, &k, &m).unwrap_err();
    assert!(err.to_string().contains("reversed"), "{err}");
}

#[test]
fn nonmodule_is_caught_by_validation() {
    // x·m = m for the dual numbers acting on k is not a module: x·(x·m) = m ≠ 0
    let dual = catalog::dual_numbers().category;
    let k = catalog::ground_field().category;
    let mut m = one_dim(&dual, &k, 0, 0);
    m.set_precompose(&dual, 0, 0, 0, 0, 1, SparseVec::unit(0)).unwrap();
    assert!(!validate_bimodule(&dual, &k, &m).unwrap().is_valid());
}

#[test]
fn diagonal_examples() {
    let k = catalog::ground_field().category;
    assert_eq!(diagonal_bimodule(&k).total_dim(), 1);
    let a2 = catalog::a2().category;
    let d = diagonal_bimodule(&a2);
    let dims: Vec<usize> = [(0, 0), (0, 1), (1, 0), (1, 1)].iter().map(|&(x, y)| d.space(x, y).len()).collect();
    assert_eq!(dims, vec![1, 1, 0, 1]);
    assert!(validate_bimodule(&a2, &a2, &d).unwrap().is_valid());
}

#[test]
fn restriction_along_identity() {
    let a2 = catalog::a2().category;
    let d = diagonal_bimodule(&a2);
    let id = DGFunctor::identity(&a2);
    assert_eq!(restrict_bimodule(&a2, &a2, &id, &a2, &a2, &id, &d).unwrap(), d);
}

#[test]
fn restriction_to_the_corner() {
    let a2 = catalog::a2().category;
    let amp = matrix_amplification(&a2, 2).unwrap();
    let d = diagonal_bimodule(&amp.category);
    let r = restrict_bimodule(&a2, &amp.category, &amp.inclusion, &a2, &amp.category, &amp.inclusion, &d).unwrap();
    let expected = diagonal_bimodule(&a2);
    for x in 0..2 {
        for y in 0..2 {
            assert_eq!(r.space(x, y).len(), expected.space(x, y).len());
            for y2 in 0..2 {
                for g in 0..a2.hom(y, y2).len() {
                    for m in 0..a2.hom(x, y).len() {
                        assert_eq!(r.postcompose(x, y, y2, g, m), expected.postcompose(x, y, y2, g, m));
                    }
                }
            }
        }
    }
}

#[test]
fn restriction_along_constant_functor() {
    let a2 = catalog::a2().category;
    let k = catalog::ground_field().category;
    let killing = DGFunctor::from_fn(&a2, &k, vec![0, 0], |x, y, _| if x == y { SparseVec::unit(0) } else { SparseVec::new() }).unwrap();
    let collapse = DGFunctor::from_fn(&a2, &k, vec![0, 0], |_, _, _| SparseVec::unit(0)).unwrap();
    let m = diagonal_bimodule(&k);
    for f in [&killing, &collapse] {
        assert!(crate::dgcore::validate_functor(&a2, &k, f).is_valid());
        let r = restrict_bimodule(&a2, &k, f, &a2, &k, f, &m).unwrap();
        assert!(validate_bimodule(&a2, &a2, &r).unwrap().is_valid());
    }
    let r = restrict_bimodule(&a2, &k, &collapse, &a2, &k, &collapse, &m).unwrap();
    for x in 0..2 {
        for y in 0..2 {
            assert_eq!(r.space(x, y).len(), 1);
        }
    }
    assert!(validate_bimodule(&a2, &a2, &r).unwrap().is_valid());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn diagonal_bimodules_are_valid(seed in any::<u64>()) {
        let c = random_category(seed, RandomBounds::default()).category;
        let d = diagonal_bimodule(&c);
        prop_assert_eq!(d.total_dim(), c.total_dim());
        prop_assert!(validate_bimodule(&c, &c, &d).unwrap().is_valid());
    }

    #[test]
    fn gluing_along_zero_keeps_factors(s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = random_category(s1, RandomBounds::default()).category;
        let b = random_category(s2, RandomBounds::default()).category;
        let g = glue(&a, &b, &DGBimodule::zero(&a, &b)).unwrap();
        prop_assert!(validate(&g.category).is_valid());
        for x in 0..b.num_objects() {
            for y in 0..a.num_objects() {
                prop_assert!(g.category.hom(g.object(Side::B, x), g.object(Side::A, y)).is_empty());
            }
        }
    }
}
