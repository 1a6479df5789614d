use proptest::prelude::*;

use super::*;
use crate::catalog::{self, random_category, RandomBounds};
use crate::chern::{K0Class, ProjectiveSummand};
use crate::constructions::{diagonal_bimodule, glue};
use crate::dgcore::{drinfeld_quotient, matrix_amplification, opposite, tensor};
use crate::exactla::{int, Q};

fn roundtrip(c: &DGCategory) {
    let text = save(c);
    let back = parse_category(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
    assert_eq!(&back.category, c);
    assert_eq!(save(&back.category), text);
}

#[test]
fn catalog_entries_roundtrip() {
    for name in ["ground_field", "a2", "a3", "dual_numbers", "exterior_-1", "exterior_1", "exterior_3"] {
        roundtrip(&catalog::by_name(name).unwrap().category);
    }
}

#[test]
fn constructions_roundtrip() {
    let a2 = catalog::a2().category;
    let k = catalog::ground_field().category;
    roundtrip(&opposite(&a2));
    roundtrip(&tensor(&a2, &catalog::dual_numbers().category).unwrap());
    roundtrip(&matrix_amplification(&a2, 2).unwrap().category);
    roundtrip(&glue(&k, &k, &diagonal_bimodule(&k)).unwrap().category);
    let q = drinfeld_quotient(&a2, 0, (-3, 3)).unwrap();
    assert!(q.window().is_some());
    roundtrip(&q);
}

#[test]
fn random_categories_roundtrip() {
    for seed in 0..100 {
        roundtrip(&random_category(seed, RandomBounds::default()).category);
    }
}

#[test]
fn companions_roundtrip() {
    let a2 = catalog::a2().category;
    let mut bundle = CategoryBundle::new(a2.clone());
    bundle.bimodules.push(("diagonal".into(), diagonal_bimodule(&a2)));
    bundle.functors.push(("id".into(), DGFunctor::identity(&a2)));
    let x = K0Class::representable(&a2, 0).plus(&K0Class::representable(&a2, 1).shifted(1));
    bundle.classes.push(("p".into(), x));
    let both = ProjectiveSummand {
        objects: vec![0, 1],
        idempotent: vec![vec![SparseVec::unit(a2.id(0)), SparseVec::new()], vec![SparseVec::new(), SparseVec::new()]],
        shift: 0,
    };
    bundle.classes.push(("corner".into(), K0Class::from_summand(both)));
    let text = save_bundle(&bundle);
    let back = parse_category(&text).unwrap();
    assert_eq!(back, bundle);
    assert_eq!(save_bundle(&back), text);
    assert!(back.class("corner").is_some() && back.bimodule("diagonal").is_some() && back.functor("id").is_some());
}

#[test]
fn standalone_bimodule_roundtrip() {
    let (a2, k) = (catalog::a2().category, catalog::ground_field().category);
    let m = diagonal_bimodule(&a2);
    let text = to_json(&bimodule_document(&a2, &a2, &m, None));
    assert_eq!(parse_bimodule(&text, &a2, &a2).unwrap(), m);
    let err = parse_bimodule(&text, &k, &k).unwrap_err();
    assert_eq!(err.code(), "schema");
}

const ONE_OBJECT: &str = r#"{
  "objects": ["x"],
  "hom": [{"src": "x", "tgt": "x", "basis": [{"label": "1", "degree": 0}, {"label": "e", "degree": 0}]}],
  "compose": [{"x": "x", "y": "x", "z": "x", "table": [{"g": "e", "f": "e", "result": [{"label": "e", "coeff": "COEFF"}]}]}],
  "id": {"x": "1"}
}"#;

#[test]
fn non_canonical_rationals_are_rejected() {
    // e∘e = q·e is associative and unital for every q
    let ok = parse_category(&ONE_OBJECT.replace("COEFF", "1/2")).unwrap();
    let e = ok.category.basis_index(0, 0, "e").unwrap();
    assert_eq!(ok.category.compose(0, 0, 0, e, e), &SparseVec::unit(e).scaled(&Q::new(1.into(), 2.into())));
    for bad in ["2/4", "3/1", "1/-2", "+1", "-0", "0.5", " 1", "01"] {
        let err = parse_category(&ONE_OBJECT.replace("COEFF", bad)).unwrap_err();
        match err {
            Error::Schema { location, message } => {
                assert_eq!(location, "compose[0].table[0].result[0].coeff", "{bad}");
                assert!(message.contains("non-canonical"), "{message}");
            }
            other => panic!("{bad}: {other}"),
        }
    }
}

#[test]
fn d_squared_failure_names_the_hom_pair() {
    let text = r#"{
      "objects": ["x", "y"],
      "hom": [
        {"src": "x", "tgt": "x", "basis": [{"label": "1x", "degree": 0}]},
        {"src": "y", "tgt": "y", "basis": [{"label": "1y", "degree": 0}]},
        {"src": "x", "tgt": "y", "basis": [{"label": "a", "degree": 0}, {"label": "b", "degree": 1}, {"label": "c", "degree": 2}]}
      ],
      "d": [{"src": "x", "tgt": "y", "matrix": [["0", "0", "0"], ["1", "0", "0"], ["0", "1", "0"]]}],
      "id": {"x": "1x", "y": "1y"}
    }"#;
    let err = parse_category(text).unwrap_err();
    assert_eq!(err.code(), "axiom");
    let msg = err.to_string();
    assert!(msg.contains("hom(x, y)") && msg.contains("d∘d"), "{msg}");
}

#[test]
fn schema_errors_are_located() {
    let cases = [
        (r#"{"objects": ["x"], "hom": [], "id": {}}"#, "id"),
        (r#"{"objects": ["x"], "hom": [{"src": "x", "tgt": "z", "basis": []}], "id": {"x": "1"}}"#, "hom[0].tgt"),
        (
            r#"{"objects": ["x"], "hom": [{"src": "x", "tgt": "x", "basis": [{"label": "1", "degree": "0"}]}], "id": {"x": "1"}}"#,
            "hom[0].basis[0].degree",
        ),
        (r#"{"objects": ["x"], "hom": [{"src": "x", "tgt": "x", "basis": [{"label": "1", "degree": 0}]}], "id": {"x": "2"}}"#, "id.x"),
        (r#"{"objects": ["x", "x"], "hom": [], "id": {}}"#, "objects[1]"),
        (r#"{"objects": ["x"], "hom": [], "id": {"x": "1"}, "colour": 1}"#, "colour"),
        (
            r#"{"objects": ["x"], "hom": [{"src": "x", "tgt": "x", "basis": [{"label": "1", "degree": 0}]}], "id": {"x": "1"}, "d": [{"src": "x", "tgt": "x", "matrix": [["0", "0"]]}]}"#,
            "d[0].matrix",
        ),
        ("{\"objects\": [", "objects"),
        ("{} trailing", "document"),
    ];
    for (text, location) in cases {
        match parse_category(text) {
            Err(Error::Schema { location: got, .. }) => assert_eq!(got, location, "{text}"),
            other => panic!("{text}: {other:?}"),
        }
    }
}

#[test]
fn invalid_classes_are_located() {
    let mut doc = category_document(&catalog::a2().category);
    doc.k0_classes.push(ClassDocument {
        name: "bad".into(),
        summands: vec![SummandDocument {
            objects: vec!["nowhere".into()],
            idempotent: vec![vec![vec![Term { label: "nope".into(), coeff: "1".into() }]]],
            shift: 0,
        }],
    });
    let err = bundle_from_document(&doc).unwrap_err();
    assert_eq!(err, Error::schema("k0_classes[0].summands[0].objects[0]", "unknown object \"nowhere\""));
    let vertex = doc.objects[0].clone();
    doc.k0_classes[0].summands[0].objects = vec![vertex];
    let err = bundle_from_document(&doc).unwrap_err();
    assert!(matches!(&err, Error::Schema { location, .. } if location == "k0_classes[0].summands[0].idempotent[0][0][0].label"), "{err}");
    let id = doc.id.values().next().unwrap().clone();
    doc.k0_classes[0].summands[0].idempotent[0][0] = vec![Term { label: id, coeff: "2".into() }];
    assert_eq!(bundle_from_document(&doc).unwrap_err().code(), "axiom");
}

#[test]
fn reports_are_deterministic() {
    let params = crate::ComputationParams::default();
    let c = catalog::a2().category;
    let make = || {
        let h = crate::hochschild::hh(&c, &params).unwrap();
        ReportDocument::new("hh", &params, &h.presentation()).with_input("a2", &save(&c)).with_seeds([7]).to_json()
    };
    let text = make();
    assert_eq!(text, make());
    let back: ReportDocument = parse_json(&text).unwrap();
    assert_eq!(back.parameters.window, (-4, 6));
    assert_eq!(back.parameters.field, "q");
    assert_eq!(back.inputs[0].sha256.len(), 64);
    assert_eq!(back.to_json(), text);
}

proptest! {
    #[test]
    fn rationals_roundtrip_through_text(n in -1000i64..1000, d in 1i64..1000) {
        let q = Q::new(n.into(), d.into());
        let s = format_rational(&q);
        prop_assert_eq!(parse_rational(&s).unwrap(), q.clone());
        if d > 1 && q.denom() == &num_bigint::BigInt::from(d) {
            // an unreduced or scaled form is never accepted
            let scaled = format!("{}/{}", n * 2, d * 2);
            prop_assert!(parse_rational(&scaled).is_err());
        }
        prop_assert_eq!(q + int(0), parse_rational(&s).unwrap());
    }

    #[test]
    fn random_categories_roundtrip_with_larger_bounds(seed in any::<u64>()) {
        let c = random_category(seed, RandomBounds { max_objects: 3, max_morphisms: 6 }).category;
        let back = parse_category(&save(&c)).unwrap();
        prop_assert_eq!(back.category, c);
    }
}
