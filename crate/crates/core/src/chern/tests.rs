use std::collections::HashMap;

use proptest::prelude::*;

use super::*;
use crate::catalog;
use crate::constructions::glue;
use crate::cyclic::Verdict;
use crate::dgcore::{matrix_amplification, opposite, tensor, DGBimodule, GradedBasis};
use crate::exactla::{int, SparseMatrix};
use crate::hochschild::{hh_induced_map, HochschildHomology};

fn params() -> ComputationParams {
    ComputationParams::default()
}

fn one_dim(a: &DGCategory, b: &DGCategory, x: usize, y: usize) -> DGBimodule {
    DGBimodule::new(a, b, HashMap::from([((x, y), GradedBasis::new([("m", 0)]).unwrap())])).unwrap()
}

/// Coordinates of `[id_x]` in the computed basis of `HH₀`.
fn identity_class(c: &DGCategory, h: &HochschildHomology, x: usize) -> SparseVec {
    let w = h.complex.find(&[c.global_index(x, x, c.id(x)) as u32]).unwrap();
    h.coordinates(0, &SparseVec::unit(w)).unwrap()
}

/// Inverse of the Cartan matrix `C[x][y] = dim hom(x, y)`.
fn inverse_cartan(c: &DGCategory) -> Vec<Vec<i64>> {
    let n = c.num_objects();
    let cartan: Vec<Vec<i64>> = (0..n).map(|x| (0..n).map(|y| c.hom(x, y).len() as i64).collect()).collect();
    let m = SparseMatrix::from_dense(&cartan.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect::<Vec<_>>());
    let cols: Vec<SparseVec> = (0..n).map(|j| crate::exactla::solve(&m, &SparseVec::unit(j)).unwrap()).collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let q = cols[j].get(i);
                    assert!(q.is_integer());
                    q.to_integer().try_into().unwrap()
                })
                .collect()
        })
        .collect()
}

#[test]
fn trace_of_identity_and_zero() {
    let k = catalog::ground_field().category;
    let (coords, report) = ch(&k, &K0Class::representable(&k, 0), &params()).unwrap();
    assert_eq!(report.dim, 1);
    assert_eq!(coords.nnz(), 1);
    let zero = K0Class::from_summand(ProjectiveSummand { objects: vec![0], idempotent: vec![vec![SparseVec::new()]], shift: 0 });
    assert!(ch(&k, &zero, &params()).unwrap().0.is_zero());
    assert!(ch(&k, &K0Class::zero(), &params()).unwrap().0.is_zero());
}

#[test]
fn additivity_cone_and_shift() {
    let a2 = catalog::a2().category;
    let (x, y) = (K0Class::representable(&a2, 0), K0Class::representable(&a2, 1));
    let c = |k: &K0Class| ch(&a2, k, &params()).unwrap().0;
    assert_eq!(c(&x.plus(&y)), c(&x).add(&c(&y)));
    assert!(c(&K0Class::cone_of_identity(&x.summands[0])).is_zero());
    assert_eq!(c(&x.shifted(1)), c(&x).neg());
    assert_eq!(c(&x.shifted(2)), c(&x));
}

#[test]
fn corner_idempotent_matches_representable() {
    let k = catalog::ground_field().category;
    let amp = matrix_amplification(&k, 2).unwrap();
    let c = &amp.category;
    let summand = ProjectiveSummand {
        objects: vec![0, 1],
        idempotent: vec![vec![SparseVec::unit(c.id(0)), SparseVec::new()], vec![SparseVec::new(), SparseVec::new()]],
        shift: 0,
    };
    let corner = ch(c, &K0Class::from_summand(summand), &params()).unwrap().0;
    assert_eq!(corner, ch(c, &K0Class::representable(c, 0), &params()).unwrap().0);
    // and it is the image of the generator of HH₀(k) along the inclusion
    let map = hh_induced_map(&k, c, &amp.inclusion, &params().with_window(0, 0)).unwrap();
    let generator = ch(&k, &K0Class::representable(&k, 0), &params()).unwrap().0;
    assert_eq!(map.matrix(0).unwrap().mul_vec(&generator), corner);
}

#[test]
fn off_diagonal_idempotent() {
    // e = [[0, a], [0, id]] on y ⊕ x over A₂, with a: x → y
    let a2 = catalog::a2().category;
    let f = SparseVec::unit(0);
    let e = ProjectiveSummand {
        objects: vec![1, 0],
        idempotent: vec![vec![SparseVec::new(), f.clone()], vec![SparseVec::new(), SparseVec::unit(a2.id(0))]],
        shift: 0,
    };
    let class = K0Class::from_summand(e);
    class.validate(&a2).unwrap();
    assert_eq!(ch(&a2, &class, &params()).unwrap().0, ch(&a2, &K0Class::representable(&a2, 0), &params()).unwrap().0);
}

#[test]
fn invalid_classes_are_rejected() {
    let a2 = catalog::a2().category;
    let twice = ProjectiveSummand { objects: vec![0], idempotent: vec![vec![SparseVec::unit(a2.id(0)).scaled(&int(2))]], shift: 0 };
    assert!(matches!(K0Class::from_summand(twice).validate(&a2), Err(Error::Axiom(_))));
    let misshaped = ProjectiveSummand { objects: vec![0, 1], idempotent: vec![vec![SparseVec::new()]], shift: 0 };
    assert!(matches!(K0Class::from_summand(misshaped).validate(&a2), Err(Error::Schema { .. })));
    let graded = catalog::by_name("exterior_1").unwrap().category;
    let err = ch(&graded, &K0Class::representable(&graded, 0), &params()).unwrap_err();
    assert!(matches!(err, Error::Unsupported(_)));
}

#[test]
fn chern_character_is_functorial() {
    let a2 = catalog::a2().category;
    let amp = matrix_amplification(&a2, 2).unwrap();
    let p = params().with_window(0, 0);
    for (source, target, f) in [(&a2, &amp.category, &amp.inclusion), (&amp.category, &a2, &amp.collapse)] {
        let map = hh_induced_map(source, target, f, &p).unwrap();
        for x in 0..source.num_objects() {
            let class = K0Class::representable(source, x);
            let pushed = ch(target, &class.push_forward(f), &p).unwrap().0;
            let pulled = map.matrix(0).unwrap().mul_vec(&ch(source, &class, &p).unwrap().0);
            assert_eq!(pushed, pulled, "object {x}");
        }
    }
}

#[test]
fn diagonal_resolutions_of_catalog_quivers() {
    for (name, vertices, arrows) in [("ground_field", 1, 0), ("a2", 2, 1), ("a3", 3, 2)] {
        let a = catalog::by_name(name).unwrap().category;
        let (_, _, report) = ch_diagonal(&a, &params()).unwrap();
        assert_eq!((report.vertices, report.arrows), (vertices, arrows), "{name}");
        assert_eq!(report.dim, vertices * vertices, "{name}");
    }
    assert!(matches!(ch_diagonal(&catalog::dual_numbers().category, &params()), Err(Error::Unsupported(_))));
}

#[test]
fn diagonal_class_matches_inverse_cartan() {
    let kronecker = catalog::acyclic_quiver(&["x", "y"], &[("a", "x", "y"), ("b", "x", "y")]).unwrap().category;
    let quivers = [catalog::ground_field().category, catalog::a2().category, catalog::a3().category, kronecker];
    for a in quivers {
        let op = opposite(&a);
        let (r, coords, _) = ch_diagonal(&a, &params()).unwrap();
        let bases = KunnethBases::new(&op, &a, &params()).unwrap();
        let inv = inverse_cartan(&a);
        let n = a.num_objects();
        let mut expected = SparseVec::new();
        for v in 0..n {
            for u in 0..n {
                let o = r.layout.object(v, u);
                expected.add_scaled(&identity_class(&r.enveloping, &bases.product, o), &int(inv[v][u]));
            }
        }
        assert_eq!(coords, expected);
    }
}

#[test]
fn minimal_and_two_term_resolutions_agree() {
    for name in ["ground_field", "a2", "a3"] {
        let a = catalog::by_name(name).unwrap().category;
        let (r, coords, _) = ch_diagonal(&a, &params()).unwrap();
        let (e, class) = diagonal_class(&a).unwrap();
        let h = hh0(&e, &params()).unwrap();
        assert_eq!(ch_in(&e, &h, &class).unwrap(), coords, "{name}");
        assert_eq!(class.summands.len(), r.class().summands.len(), "{name}");
    }
}

#[test]
fn relation_needs_a_longer_resolution() {
    // x → y → z with vanishing composite: not a path category
    let a2 = catalog::a2().category;
    let k = catalog::ground_field().category;
    let d = glue(&a2, &k, &one_dim(&a2, &k, 1, 0)).unwrap().category;
    assert!(matches!(DiagonalResolution::new(&d), Err(Error::Unsupported(_))));
    let (e, module) = FinModule::of_bimodule(&d, &d, &crate::constructions::diagonal_bimodule(&d)).unwrap();
    let r = minimal_resolution(&e, &module).unwrap();
    assert_eq!(r.terms.len(), 3);
    let dims: Vec<i64> = module.dims().iter().map(|&d| d as i64).collect();
    assert_eq!(r.euler_dims(&e), dims);
}

#[test]
fn modules_check_their_axioms() {
    let a2 = catalog::a2().category;
    let bad = FinModule::new(
        &a2,
        vec![1, 1],
        |x, y, _| {
            if x == y {
                SparseMatrix::identity(1).scaled(&int(2))
            } else {
                SparseMatrix::identity(1)
            }
        },
    );
    assert!(matches!(bad, Err(Error::Axiom(_))));
    assert!(matches!(FinModule::new(&a2, vec![1], |_, _, _| SparseMatrix::zeros(1, 1)), Err(Error::Inconsistent(_))));
    assert!(matches!(check_directed(&catalog::dual_numbers().category), Err(Error::Unsupported(_))));
}

#[test]
fn split_of_a_product_class() {
    let k = catalog::ground_field().category;
    let a2 = catalog::a2().category;
    let t = tensor(&k, &a2).unwrap();
    let (bases, parts) = kunneth_split(&k, &a2, &K0Class::representable(&t, 1), &params()).unwrap();
    assert_eq!(parts.matrix.nnz(), 1);
    let coords = ch_in(&bases.category, &bases.product, &K0Class::representable(&t, 1)).unwrap();
    assert_eq!(bases.assemble(&parts), coords);
    assert!(bases.split(&SparseVec::new()).unwrap().is_zero());
}

#[test]
fn split_sums_back_for_the_diagonal() {
    let a2 = catalog::a2().category;
    let (r, coords, _) = ch_diagonal(&a2, &params()).unwrap();
    let (bases, parts) = kunneth_split(&opposite(&a2), &a2, &r.class(), &params()).unwrap();
    assert_eq!((parts.matrix.rows(), parts.matrix.cols()), (2, 2));
    assert_eq!(bases.assemble(&parts), coords);
}

#[test]
fn pairing_is_invertible_for_quivers() {
    for name in ["ground_field", "a2", "a3"] {
        let v = pairing_check(&catalog::by_name(name).unwrap().category, &params()).unwrap();
        assert!(v.invertible, "{name}");
        assert!(matches!(v.determinant.as_deref(), Some("1") | Some("-1")), "{name}: {:?}", v.determinant);
    }
}

#[test]
fn phi0_vanishes_for_quivers() {
    for name in ["ground_field", "a2", "a3"] {
        let a = catalog::by_name(name).unwrap().category;
        let r = DiagonalResolution::new(&a).unwrap();
        let report = phi0(&opposite(&a), &a, &r.class(), &params()).unwrap();
        assert!(report.zero, "{name}");
        assert_eq!(report.verdict, Verdict::Zero, "{name}");
    }
}

#[test]
fn phi0_over_dual_numbers_is_reported() {
    let k = catalog::ground_field().category;
    let dual = catalog::dual_numbers().category;
    let t = tensor(&k, &dual).unwrap();
    let report = phi0(&k, &dual, &K0Class::representable(&t, 0), &params()).unwrap();
    assert_eq!(report.value.len(), 1);
    assert!(phi0(&k, &dual, &K0Class::representable(&t, 0), &params().with_u_power(1)).is_err());
}

#[test]
fn gluing_components() {
    let k = catalog::ground_field().category;
    let a2 = catalog::a2().category;
    let cases = [
        (k.clone(), k.clone(), one_dim(&k, &k, 0, 0)),
        (k.clone(), k.clone(), DGBimodule::zero(&k, &k)),
        (a2.clone(), k.clone(), one_dim(&a2, &k, 0, 0)),
        (a2.clone(), k.clone(), one_dim(&a2, &k, 1, 0)),
        (a2.clone(), k.clone(), DGBimodule::zero(&a2, &k)),
    ];
    for (i, (b, c, m)) in cases.iter().enumerate() {
        let report = gluing_component_check(b, c, m, &params()).unwrap();
        assert!(report.holds(), "case {i}: {report:?}");
    }
}

#[test]
fn gluing_ground_fields_gives_the_a2_diagonal() {
    let k = catalog::ground_field().category;
    let d = glue(&k, &k, &one_dim(&k, &k, 0, 0)).unwrap().category;
    let report = gluing_component_check(&k, &k, &one_dim(&k, &k, 0, 0), &params()).unwrap();
    assert_eq!(report.components[2].computed, vec![vec!["-1".to_string()]]);
    let (_, two_term, _) = ch_diagonal(&d, &params()).unwrap();
    let (e, class) = diagonal_class(&d).unwrap();
    assert_eq!(ch_in(&e, &hh0(&e, &params()).unwrap(), &class).unwrap(), two_term);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn random_quivers_pair_perfectly(n in 1usize..=4, raw in proptest::collection::vec((0usize..4, 0usize..4), 0..4)) {
        let edges: Vec<(usize, usize)> = raw.into_iter().filter(|&(s, t)| s < t && t < n).collect();
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let arrow_names: Vec<String> = (0..edges.len()).map(|i| format!("a{i}")).collect();
        let vertices: Vec<&str> = names.iter().map(String::as_str).collect();
        let arrows: Vec<(&str, &str, &str)> = edges.iter().zip(&arrow_names).map(|(&(s, t), a)| (a.as_str(), vertices[s], vertices[t])).collect();
        let a = catalog::acyclic_quiver(&vertices, &arrows).unwrap().category;
        let p = params().with_bar_length(n.max(1));
        prop_assert!(pairing_check(&a, &p).unwrap().invertible);
        let (_, two_term, _) = ch_diagonal(&a, &p).unwrap();
        let (e, class) = diagonal_class(&a).unwrap();
        prop_assert_eq!(ch_in(&e, &hh0(&e, &p).unwrap(), &class).unwrap(), two_term);
    }
}
