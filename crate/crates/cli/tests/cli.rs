use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn hhcyc(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hhcyc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str], stdin: Option<&str>) -> String {
    let o = hhcyc(args, stdin);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn report(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn catalog_pipes_into_degeneration() {
    let a2 = ok(&["catalog", "a2"], None);
    let out = ok(&["degeneration", "-"], Some(&a2));
    assert!(out.contains("degenerate_in_window: true"), "{out}");
    assert!(out.contains("unstable_degrees: []"), "{out}");
}

#[test]
fn malformed_file_is_located() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "bad.json", r#"{"objects": ["x"], "hom": [{"src": "x", "tgt": "y", "basis": []}], "id": {"x": "1"}}"#);
    let o = hhcyc(&["check", &file], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("hom[0].tgt"), "{}", stderr(&o));
}

#[test]
fn non_canonical_rational_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let doc = r#"{"objects": ["x"],
      "hom": [{"src": "x", "tgt": "x", "basis": [{"label": "1", "degree": 0}, {"label": "e", "degree": 0}]}],
      "compose": [{"x": "x", "y": "x", "z": "x", "table": [{"g": "e", "f": "e", "result": [{"label": "e", "coeff": "C"}]}]}],
      "id": {"x": "1"}}"#;
    let good = write(dir.path(), "good.json", &doc.replace('C', "1/2"));
    let bad = write(dir.path(), "bad.json", &doc.replace('C', "2/4"));
    ok(&["check", &good], None);
    let o = hhcyc(&["check", &bad], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("non-canonical"), "{}", stderr(&o));
}

#[test]
fn d_squared_is_an_axiom_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "dd.json",
        r#"{"objects": ["x", "y"],
        "hom": [{"src": "x", "tgt": "x", "basis": [{"label": "1x", "degree": 0}]},
                {"src": "y", "tgt": "y", "basis": [{"label": "1y", "degree": 0}]},
                {"src": "x", "tgt": "y", "basis": [{"label": "a", "degree": 0}, {"label": "b", "degree": 1}, {"label": "c", "degree": 2}]}],
        "d": [{"src": "x", "tgt": "y", "matrix": [["0", "0", "0"], ["1", "0", "0"], ["0", "1", "0"]]}],
        "id": {"x": "1x", "y": "1y"}}"#,
    );
    let o = hhcyc(&["check", &file], None);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("[axiom]") && err.contains("hom(x, y)"), "{err}");
}

#[test]
fn require_stable_gives_status_two() {
    let o = hhcyc(&["delta", "catalog:dual_numbers", "--require-stable", "--max-bar-length", "3"], None);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    let o = hhcyc(&["delta", "catalog:dual_numbers", "--max-bar-length", "3"], None);
    assert_eq!(o.status.code(), Some(0));
    let o = hhcyc(&["hh", "catalog:a2", "--require-stable"], None);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_give_status_one() {
    for args in [
        &["frobnicate"][..],
        &["hh", "catalog:a2", "--colour"],
        &["hh", "catalog:a2", "--window", "3"],
        &["hh", "catalog:a2", "--field", "fp:9"],
        &[],
    ] {
        let o = hhcyc(args, None);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(stderr(&o).contains("Usage") || stderr(&o).contains("error"), "{args:?}");
    }
    assert_eq!(hhcyc(&["--help"], None).status.code(), Some(0));
    let o = hhcyc(&["hh", "catalog:nowhere"], None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reports_are_written_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for path in [&a, &b] {
        ok(&["hc-minus", "catalog:a2", "--window", "-2:2", "--out", path.to_str().unwrap()], None);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let r = report(&a);
    assert_eq!(r["tool"], "hhcyc");
    assert_eq!(r["parameters"]["max_bar_length"], 6);
    assert_eq!(r["parameters"]["max_u_power"], 4);
    assert_eq!(r["parameters"]["window"], serde_json::json!([-2, 2]));
    assert_eq!(r["parameters"]["field"], "q");
    assert_eq!(r["result"]["degrees"]["-2"]["dim"], 2);
    assert_eq!(r["result"]["degrees"]["-2"]["stable"], true);
    assert_eq!(r["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn random_inputs_record_their_seed() {
    assert_eq!(ok(&["catalog", "random", "--seed", "5"], None), ok(&["catalog", "random_5"], None));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    ok(&["hh", "catalog:random", "--seed", "5", "--out", out.to_str().unwrap()], None);
    assert_eq!(report(&out)["seeds"], serde_json::json!([5]));
}

#[test]
fn constructions_produce_loadable_documents() {
    let dir = tempfile::tempdir().unwrap();
    // glue(k, k, k) is A₂
    let glued = ok(&["glue", "catalog:k", "catalog:k", "diagonal"], None);
    let out = ok(&["hh", "-", "--window", "0:0"], Some(&glued));
    assert!(out.contains("2  [1·[id"), "{out}");
    let tensor = ok(&["tensor", "catalog:a2", "catalog:dual_numbers"], None);
    ok(&["check", "-"], Some(&tensor));
    let op = dir.path().join("op.json");
    ok(&["op", "catalog:a2", "--out", op.to_str().unwrap()], None);
    ok(&["check", op.to_str().unwrap()], None);
    let quotient = ok(&["quotient", "catalog:a2", "--object", "x"], None);
    let out = ok(&["hh", "-", "--window", "-3:3"], Some(&quotient));
    assert!(out.contains("     0    1"), "{out}");
    let o = hhcyc(&["quotient", "catalog:a2", "--object", "w"], None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn glue_reads_a_bimodule_document() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", r#"{"spaces": [{"left": "pt", "right": "pt", "basis": [{"label": "m", "degree": 0}]}]}"#);
    let from_file = ok(&["glue", "catalog:k", "catalog:k", &m], None);
    let diagonal = ok(&["glue", "catalog:k", "catalog:k", "diagonal"], None);
    let hh = |doc: &str| ok(&["hh", "-"], Some(doc));
    assert_eq!(hh(&from_file).lines().skip(2).collect::<Vec<_>>(), hh(&diagonal).lines().skip(2).collect::<Vec<_>>());
    let bad = write(dir.path(), "bad.json", r#"{"spaces": [{"left": "nowhere", "right": "pt", "basis": []}]}"#);
    let o = hhcyc(&["glue", "catalog:k", "catalog:k", &bad], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("spaces[0].left"), "{}", stderr(&o));
}

#[test]
fn chern_pairing_and_phi0() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ch.json");
    ok(&["chern", "catalog:a2", "--class", "rep:x", "--out", out.to_str().unwrap()], None);
    assert_eq!(report(&out)["result"]["dim"], 2);
    let pairing = dir.path().join("pairing.json");
    ok(&["pairing", "catalog:a3", "--out", pairing.to_str().unwrap()], None);
    assert_eq!(report(&pairing)["result"]["invertible"], true);
    let op = dir.path().join("op.json");
    ok(&["op", "catalog:a2", "--out", op.to_str().unwrap()], None);
    let phi = dir.path().join("phi.json");
    ok(&["phi0", op.to_str().unwrap(), "catalog:a2", "--class", "diagonal", "--out", phi.to_str().unwrap()], None);
    let r = report(&phi);
    assert_eq!(r["result"]["verdict"], "zero");
    assert_eq!(r["result"]["zero"], true);
    let o = hhcyc(&["phi0", "catalog:a2", "catalog:a2", "--class", "diagonal"], None);
    assert_eq!(o.status.code(), Some(1));
    let o = hhcyc(&["chern", "catalog:a2", "--class", "missing"], None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn chern_reads_classes_from_the_document() {
    let a2 = ok(&["catalog", "a2"], None);
    let mut doc: serde_json::Value = serde_json::from_str(&a2).unwrap();
    doc["k0_classes"] = serde_json::json!([{
        "name": "both",
        "summands": [
            {"objects": ["x"], "idempotent": [[[{"label": "id_x", "coeff": "1"}]]]},
            {"objects": ["y"], "idempotent": [[[{"label": "id_y", "coeff": "1"}]]], "shift": 1}
        ]
    }]);
    let out = ok(&["chern", "-", "--class", "both"], Some(&doc.to_string()));
    assert!(out.contains("coordinates"), "{out}");
}

#[test]
fn kunneth_and_e1() {
    let out = ok(&["kunneth", "catalog:k", "catalog:dual_numbers", "--window", "0:3"], None);
    assert!(out.contains("convolution"), "{out}");
    let out = ok(&["e1", "catalog:dual_numbers", "--window", "0:2"], None);
    assert!(out.contains("d1"), "{out}");
}

#[test]
fn suite_reports_status() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("suite.json");
    let text = ok(&["suite", "--criterion", "2", "--criterion", "9", "--out", out.to_str().unwrap()], None);
    assert!(text.contains("| 2 | ground field invariants | pass |"), "{text}");
    let r = report(&out);
    assert_eq!(r["result"]["entries"].as_array().unwrap().len(), 2);
    let o = hhcyc(&["suite", "--criterion", "2", "--max-bar-length", "2", "--max-u-power", "2"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("unstable"));
}
