//! JSON interchange: category documents with their companions, standalone
//! bimodule documents, and report documents.
//!
//! Rationals are strings in canonical form (`p/q` in lowest terms, `q > 1`,
//! or an integer); anything else is rejected. Loading validates every
//! object against the axioms and locates schema errors by key path.

mod document;
mod report;

use std::collections::HashMap;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

pub use document::*;
pub use report::{digest, InputDigest, ReportDocument, ReportParameters};

use crate::chern::{K0Class, ProjectiveSummand};
use crate::constructions::validate_bimodule;
use crate::cyclic::matrix_strings;
use crate::dgcore::{validate, validate_functor, DGBimodule, DGCategory, DGFunctor, GradedBasis, ValidationReport};
use crate::error::{Error, Result};
use crate::exactla::{format_rational, parse_rational, SparseMatrix, SparseVec};

/// A category together with the named companions of its document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryBundle {
    pub category: DGCategory,
    pub bimodules: Vec<(String, DGBimodule)>,
    pub functors: Vec<(String, DGFunctor)>,
    pub classes: Vec<(String, K0Class)>,
}

impl CategoryBundle {
    pub fn new(category: DGCategory) -> Self {
        Self { category, bimodules: Vec::new(), functors: Vec::new(), classes: Vec::new() }
    }

    pub fn class(&self, name: &str) -> Option<&K0Class> {
        self.classes.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    pub fn bimodule(&self, name: &str) -> Option<&DGBimodule> {
        self.bimodules.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn functor(&self, name: &str) -> Option<&DGFunctor> {
        self.functors.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }
}

/// Parses JSON into `T`, reporting the key path of the first mismatch.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let location = if path == "." { "document".to_string() } else { path };
        Error::schema(location, e.into_inner().to_string())
    })?;
    de.end().map_err(|e| Error::schema("document", e.to_string()))?;
    Ok(value)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::schema(path.display().to_string(), format!("cannot read file: {e}")))
}

/// Reads and validates a category document.
pub fn load(path: &Path) -> Result<CategoryBundle> {
    parse_category(&read_file(path)?)
}

pub fn parse_category(text: &str) -> Result<CategoryBundle> {
    bundle_from_document(&parse_json(text)?)
}

/// Reads a standalone bimodule document over `(a, b)`.
pub fn parse_bimodule(text: &str, a: &DGCategory, b: &DGCategory) -> Result<DGBimodule> {
    bimodule_from_document(a, b, &parse_json(text)?, "")
}

/// The document of a bare category.
pub fn save(c: &DGCategory) -> String {
    to_json(&category_document(c))
}

pub fn save_bundle(b: &CategoryBundle) -> String {
    to_json(&bundle_document(b))
}

// ---------------------------------------------------------------- loading

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

/// Moves a schema error raised deep inside a constructor to `location`.
fn relocate(location: String) -> impl FnOnce(Error) -> Error {
    move |e| match e {
        Error::Schema { message, .. } => Error::Schema { location, message },
        other => other,
    }
}

fn axioms(what: &str, report: ValidationReport) -> Result<()> {
    if report.is_valid() {
        return Ok(());
    }
    let witnesses = report.violations.iter().map(|v| format!("{}: {}", v.axiom, v.witness)).collect::<Vec<_>>();
    Err(Error::Axiom(format!("{what}: {}", witnesses.join("; "))))
}

fn index_of(names: &[String], name: &str, location: String) -> Result<usize> {
    names.iter().position(|n| n == name).ok_or_else(|| Error::schema(location, format!("unknown object {name:?}")))
}

fn label_in(basis: &GradedBasis, label: &str, location: String) -> Result<usize> {
    basis.position(label).ok_or_else(|| Error::schema(location, format!("unknown basis label {label:?}")))
}

fn rational(s: &str, location: String) -> Result<crate::exactla::Q> {
    parse_rational(s).map_err(|_| Error::schema(location, format!("non-canonical rational {s:?}; expected p/q in lowest terms with q > 1")))
}

fn graded(basis: &[BasisElement], location: String) -> Result<GradedBasis> {
    GradedBasis::new(basis.iter().map(|e| (e.label.clone(), e.degree))).map_err(relocate(location))
}

fn combination(basis: &GradedBasis, terms: &[Term], location: &str) -> Result<SparseVec> {
    let mut v = SparseVec::new();
    for (k, t) in terms.iter().enumerate() {
        let i = label_in(basis, &t.label, format!("{location}[{k}].label"))?;
        let q = rational(&t.coeff, format!("{location}[{k}].coeff"))?;
        v.add_scaled(&SparseVec::unit(i), &q);
    }
    Ok(v)
}

fn matrix(rows: &[Vec<String>], n_rows: usize, n_cols: usize, location: &str) -> Result<SparseMatrix> {
    if rows.len() != n_rows || rows.iter().any(|r| r.len() != n_cols) {
        return Err(Error::schema(location, format!("expected a {n_rows}×{n_cols} matrix")));
    }
    let mut triplets = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            triplets.push((i, j, rational(s, format!("{location}[{i}][{j}]"))?));
        }
    }
    Ok(SparseMatrix::from_triplets(n_rows, n_cols, triplets))
}

fn category_from_document(doc: &CategoryDocument) -> Result<DGCategory> {
    let names = &doc.objects;
    for (i, o) in names.iter().enumerate() {
        if names[..i].contains(o) {
            return Err(Error::schema(format!("objects[{i}]"), format!("duplicate object {o:?}")));
        }
    }
    let mut homs = HashMap::new();
    for (k, h) in doc.hom.iter().enumerate() {
        let x = index_of(names, &h.src, format!("hom[{k}].src"))?;
        let y = index_of(names, &h.tgt, format!("hom[{k}].tgt"))?;
        if homs.insert((x, y), graded(&h.basis, format!("hom[{k}].basis"))?).is_some() {
            return Err(Error::schema(format!("hom[{k}]"), format!("hom({}, {}) listed twice", h.src, h.tgt)));
        }
    }
    if let Some(key) = doc.id.keys().find(|k| !names.contains(k)) {
        return Err(Error::schema(format!("id.{key}"), "unknown object"));
    }
    let mut ids = Vec::with_capacity(names.len());
    for (x, name) in names.iter().enumerate() {
        let label = doc.id.get(name).ok_or_else(|| Error::schema("id", format!("missing identity of {name:?}")))?;
        let basis = homs.get(&(x, x)).cloned().unwrap_or_default();
        ids.push(label_in(&basis, label, format!("id.{name}"))?);
    }
    let mut c = DGCategory::new(names.clone(), homs, ids)?;
    c.set_window(doc.window);

    let mut seen = Vec::new();
    for (k, e) in doc.d.iter().enumerate() {
        let x = index_of(names, &e.src, format!("d[{k}].src"))?;
        let y = index_of(names, &e.tgt, format!("d[{k}].tgt"))?;
        if seen.contains(&(x, y)) {
            return Err(Error::schema(format!("d[{k}]"), format!("differential on hom({}, {}) listed twice", e.src, e.tgt)));
        }
        seen.push((x, y));
        let n = c.hom(x, y).len();
        let m = matrix(&e.matrix, n, n, &format!("d[{k}].matrix"))?;
        c.set_d(x, y, m).map_err(relocate(format!("d[{k}].matrix")))?;
    }
    for (k, e) in doc.compose.iter().enumerate() {
        let x = index_of(names, &e.x, format!("compose[{k}].x"))?;
        let y = index_of(names, &e.y, format!("compose[{k}].y"))?;
        let z = index_of(names, &e.z, format!("compose[{k}].z"))?;
        for (r, row) in e.table.iter().enumerate() {
            let at = format!("compose[{k}].table[{r}]");
            let g = label_in(c.hom(y, z), &row.g, format!("{at}.g"))?;
            let f = label_in(c.hom(x, y), &row.f, format!("{at}.f"))?;
            let value = combination(c.hom(x, z), &row.result, &format!("{at}.result"))?;
            c.set_compose(x, y, z, g, f, value).map_err(relocate(format!("{at}.result")))?;
        }
    }
    axioms("category", validate(&c))?;
    Ok(c)
}

pub fn bundle_from_document(doc: &CategoryDocument) -> Result<CategoryBundle> {
    let category = category_from_document(doc)?;
    let mut bundle = CategoryBundle::new(category);
    let c = &bundle.category;
    for (k, m) in doc.bimodules.iter().enumerate() {
        let at = format!("bimodules[{k}]");
        let name = m.name.clone().ok_or_else(|| Error::schema(format!("{at}.name"), "bimodules inside a category document need a name"))?;
        bundle.bimodules.push((name, bimodule_from_document(c, c, m, &at)?));
    }
    for (k, f) in doc.functors.iter().enumerate() {
        bundle.functors.push((f.name.clone(), functor_from_document(c, f, &format!("functors[{k}]"))?));
    }
    for (k, x) in doc.k0_classes.iter().enumerate() {
        bundle.classes.push((x.name.clone(), class_from_document(c, x, &format!("k0_classes[{k}]"))?));
    }
    Ok(bundle)
}

pub fn bimodule_from_document(a: &DGCategory, b: &DGCategory, doc: &BimoduleDocument, prefix: &str) -> Result<DGBimodule> {
    let (la, lb) = (a.objects(), b.objects());
    let mut spaces = HashMap::new();
    for (k, s) in doc.spaces.iter().enumerate() {
        let at = join(prefix, &format!("spaces[{k}]"));
        let x = index_of(la, &s.left, format!("{at}.left"))?;
        let y = index_of(lb, &s.right, format!("{at}.right"))?;
        if spaces.insert((x, y), graded(&s.basis, format!("{at}.basis"))?).is_some() {
            return Err(Error::schema(at, format!("space ({}, {}) listed twice", s.left, s.right)));
        }
    }
    let mut m = DGBimodule::new(a, b, spaces)?;
    for (k, e) in doc.d.iter().enumerate() {
        let at = join(prefix, &format!("d[{k}]"));
        let x = index_of(la, &e.left, format!("{at}.left"))?;
        let y = index_of(lb, &e.right, format!("{at}.right"))?;
        let n = m.space(x, y).len();
        let d = matrix(&e.matrix, n, n, &format!("{at}.matrix"))?;
        m.set_d(x, y, d).map_err(relocate(format!("{at}.matrix")))?;
    }
    for (k, e) in doc.left_action.iter().enumerate() {
        let at = join(prefix, &format!("left_action[{k}]"));
        let x2 = index_of(la, &e.x2, format!("{at}.x2"))?;
        let x = index_of(la, &e.x, format!("{at}.x"))?;
        let y = index_of(lb, &e.y, format!("{at}.y"))?;
        for (r, row) in e.table.iter().enumerate() {
            let at = format!("{at}.table[{r}]");
            let mi = label_in(m.space(x, y), &row.m, format!("{at}.m"))?;
            let f = label_in(a.hom(x2, x), &row.f, format!("{at}.f"))?;
            let value = combination(m.space(x2, y), &row.result, &format!("{at}.result"))?;
            m.set_precompose(a, x2, x, y, mi, f, value).map_err(relocate(format!("{at}.result")))?;
        }
    }
    for (k, e) in doc.right_action.iter().enumerate() {
        let at = join(prefix, &format!("right_action[{k}]"));
        let x = index_of(la, &e.x, format!("{at}.x"))?;
        let y = index_of(lb, &e.y, format!("{at}.y"))?;
        let y2 = index_of(lb, &e.y2, format!("{at}.y2"))?;
        for (r, row) in e.table.iter().enumerate() {
            let at = format!("{at}.table[{r}]");
            let g = label_in(b.hom(y, y2), &row.g, format!("{at}.g"))?;
            let mi = label_in(m.space(x, y), &row.m, format!("{at}.m"))?;
            let value = combination(m.space(x, y2), &row.result, &format!("{at}.result"))?;
            m.set_postcompose(b, x, y, y2, g, mi, value).map_err(relocate(format!("{at}.result")))?;
        }
    }
    axioms(if prefix.is_empty() { "bimodule" } else { prefix }, validate_bimodule(a, b, &m)?)?;
    Ok(m)
}

fn functor_from_document(c: &DGCategory, doc: &FunctorDocument, prefix: &str) -> Result<DGFunctor> {
    let names = c.objects();
    if let Some(key) = doc.objects.keys().find(|k| !names.contains(k)) {
        return Err(Error::schema(format!("{prefix}.objects.{key}"), "unknown object"));
    }
    let mut object_map = Vec::with_capacity(names.len());
    for name in names {
        let image =
            doc.objects.get(name).ok_or_else(|| Error::schema(format!("{prefix}.objects"), format!("missing image of {name:?}")))?;
        object_map.push(index_of(names, image, format!("{prefix}.objects.{name}"))?);
    }
    let n = names.len();
    let mut hom_maps: Vec<SparseMatrix> = (0..n * n)
        .map(|k| {
            let (x, y) = (k / n, k % n);
            SparseMatrix::zeros(c.hom(object_map[x], object_map[y]).len(), c.hom(x, y).len())
        })
        .collect();
    let mut seen = Vec::new();
    for (k, e) in doc.maps.iter().enumerate() {
        let at = format!("{prefix}.maps[{k}]");
        let x = index_of(names, &e.src, format!("{at}.src"))?;
        let y = index_of(names, &e.tgt, format!("{at}.tgt"))?;
        if seen.contains(&(x, y)) {
            return Err(Error::schema(at, "hom map listed twice"));
        }
        seen.push((x, y));
        let rows = c.hom(object_map[x], object_map[y]).len();
        hom_maps[x * n + y] = matrix(&e.matrix, rows, c.hom(x, y).len(), &format!("{at}.matrix"))?;
    }
    let f = DGFunctor::new(c, c, object_map, hom_maps).map_err(relocate(prefix.to_string()))?;
    axioms(prefix, validate_functor(c, c, &f))?;
    Ok(f)
}

fn class_from_document(c: &DGCategory, doc: &ClassDocument, prefix: &str) -> Result<K0Class> {
    let names = c.objects();
    let mut summands = Vec::with_capacity(doc.summands.len());
    for (s, sd) in doc.summands.iter().enumerate() {
        let at = format!("{prefix}.summands[{s}]");
        let objects =
            sd.objects.iter().enumerate().map(|(i, o)| index_of(names, o, format!("{at}.objects[{i}]"))).collect::<Result<Vec<_>>>()?;
        let r = objects.len();
        if sd.idempotent.len() != r || sd.idempotent.iter().any(|row| row.len() != r) {
            return Err(Error::schema(format!("{at}.idempotent"), format!("expected a {r}×{r} matrix")));
        }
        let mut idempotent = Vec::with_capacity(r);
        for (k, row) in sd.idempotent.iter().enumerate() {
            let entries = row
                .iter()
                .enumerate()
                .map(|(l, terms)| combination(c.hom(objects[l], objects[k]), terms, &format!("{at}.idempotent[{k}][{l}]")))
                .collect::<Result<Vec<_>>>()?;
            idempotent.push(entries);
        }
        summands.push(ProjectiveSummand { objects, idempotent, shift: sd.shift });
    }
    let class = K0Class { summands };
    class.validate(c).map_err(|e| match e {
        Error::Schema { location, message } => Error::schema(format!("{prefix}.{location}"), message),
        Error::Axiom(m) => Error::Axiom(format!("{prefix}: {m}")),
        other => other,
    })?;
    Ok(class)
}

// ----------------------------------------------------------------- saving

fn terms(basis: &GradedBasis, v: &SparseVec) -> Vec<Term> {
    v.iter().map(|(i, q)| Term { label: basis.label(i).to_string(), coeff: format_rational(q) }).collect()
}

fn elements(basis: &GradedBasis) -> Vec<BasisElement> {
    basis.iter().map(|(label, degree)| BasisElement { label: label.to_string(), degree }).collect()
}

/// What the constructor fills in for `g ∘ f` before any table is read.
fn unit_law(c: &DGCategory, x: usize, y: usize, z: usize, g: usize, f: usize) -> SparseVec {
    if y == z && g == c.id(y) {
        SparseVec::unit(f)
    } else if x == y && f == c.id(x) {
        SparseVec::unit(g)
    } else {
        SparseVec::new()
    }
}

pub fn category_document(c: &DGCategory) -> CategoryDocument {
    let n = c.num_objects();
    let name = |x: usize| c.object(x).to_string();
    let pairs = || (0..n).flat_map(|x| (0..n).map(move |y| (x, y)));
    let hom = pairs()
        .filter(|&(x, y)| !c.hom(x, y).is_empty())
        .map(|(x, y)| HomEntry { src: name(x), tgt: name(y), basis: elements(c.hom(x, y)) })
        .collect();
    let d = pairs()
        .filter(|&(x, y)| !c.d(x, y).is_zero())
        .map(|(x, y)| DiffEntry { src: name(x), tgt: name(y), matrix: matrix_strings(c.d(x, y)) })
        .collect();
    let mut compose = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut table = Vec::new();
                for g in 0..c.hom(y, z).len() {
                    for f in 0..c.hom(x, y).len() {
                        let value = c.compose(x, y, z, g, f);
                        if *value != unit_law(c, x, y, z, g, f) {
                            table.push(ComposeRow {
                                g: c.hom(y, z).label(g).to_string(),
                                f: c.hom(x, y).label(f).to_string(),
                                result: terms(c.hom(x, z), value),
                            });
                        }
                    }
                }
                if !table.is_empty() {
                    compose.push(ComposeEntry { x: name(x), y: name(y), z: name(z), table });
                }
            }
        }
    }
    let id = (0..n).map(|x| (name(x), c.hom(x, x).label(c.id(x)).to_string())).collect();
    CategoryDocument {
        objects: c.objects().to_vec(),
        hom,
        d,
        compose,
        id,
        window: c.window(),
        bimodules: Vec::new(),
        functors: Vec::new(),
        k0_classes: Vec::new(),
    }
}

pub fn bundle_document(b: &CategoryBundle) -> CategoryDocument {
    let c = &b.category;
    CategoryDocument {
        bimodules: b.bimodules.iter().map(|(n, m)| bimodule_document(c, c, m, Some(n.clone()))).collect(),
        functors: b.functors.iter().map(|(n, f)| functor_document(c, n, f)).collect(),
        k0_classes: b.classes.iter().map(|(n, x)| class_document(c, n, x)).collect(),
        ..category_document(c)
    }
}

pub fn bimodule_document(a: &DGCategory, b: &DGCategory, m: &DGBimodule, name: Option<String>) -> BimoduleDocument {
    let (na, nb) = (a.num_objects(), b.num_objects());
    let pairs = || (0..na).flat_map(|x| (0..nb).map(move |y| (x, y)));
    let (an, bn) = (|x: usize| a.object(x).to_string(), |y: usize| b.object(y).to_string());
    let spaces = pairs()
        .filter(|&(x, y)| !m.space(x, y).is_empty())
        .map(|(x, y)| SpaceEntry { left: an(x), right: bn(y), basis: elements(m.space(x, y)) })
        .collect();
    let d = pairs()
        .filter(|&(x, y)| !m.d(x, y).is_zero())
        .map(|(x, y)| SpaceDiff { left: an(x), right: bn(y), matrix: matrix_strings(m.d(x, y)) })
        .collect();
    let mut left_action = Vec::new();
    for x2 in 0..na {
        for (x, y) in pairs() {
            let mut table = Vec::new();
            for mi in 0..m.space(x, y).len() {
                for f in 0..a.hom(x2, x).len() {
                    let value = m.precompose(x2, x, y, mi, f);
                    let default = if x2 == x && f == a.id(x) { SparseVec::unit(mi) } else { SparseVec::new() };
                    if *value != default {
                        table.push(LeftRow {
                            m: m.space(x, y).label(mi).to_string(),
                            f: a.hom(x2, x).label(f).to_string(),
                            result: terms(m.space(x2, y), value),
                        });
                    }
                }
            }
            if !table.is_empty() {
                left_action.push(LeftAction { x2: an(x2), x: an(x), y: bn(y), table });
            }
        }
    }
    let mut right_action = Vec::new();
    for (x, y) in pairs() {
        for y2 in 0..nb {
            let mut table = Vec::new();
            for g in 0..b.hom(y, y2).len() {
                for mi in 0..m.space(x, y).len() {
                    let value = m.postcompose(x, y, y2, g, mi);
                    let default = if y == y2 && g == b.id(y) { SparseVec::unit(mi) } else { SparseVec::new() };
                    if *value != default {
                        table.push(RightRow {
                            g: b.hom(y, y2).label(g).to_string(),
                            m: m.space(x, y).label(mi).to_string(),
                            result: terms(m.space(x, y2), value),
                        });
                    }
                }
            }
            if !table.is_empty() {
                right_action.push(RightAction { x: an(x), y: bn(y), y2: bn(y2), table });
            }
        }
    }
    BimoduleDocument { name, spaces, d, left_action, right_action }
}

fn functor_document(c: &DGCategory, name: &str, f: &DGFunctor) -> FunctorDocument {
    let n = c.num_objects();
    let objects = (0..n).map(|x| (c.object(x).to_string(), c.object(f.object(x)).to_string())).collect();
    let maps = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| !f.hom_map(x, y).is_zero())
        .map(|(x, y)| FunctorMap { src: c.object(x).to_string(), tgt: c.object(y).to_string(), matrix: matrix_strings(f.hom_map(x, y)) })
        .collect();
    FunctorDocument { name: name.to_string(), objects, maps }
}

fn class_document(c: &DGCategory, name: &str, x: &K0Class) -> ClassDocument {
    let summands = x
        .summands
        .iter()
        .map(|s| SummandDocument {
            objects: s.objects.iter().map(|&o| c.object(o).to_string()).collect(),
            idempotent: s
                .idempotent
                .iter()
                .enumerate()
                .map(|(k, row)| row.iter().enumerate().map(|(l, e)| terms(c.hom(s.objects[l], s.objects[k]), e)).collect())
                .collect(),
            shift: s.shift,
        })
        .collect();
    ClassDocument { name: name.to_string(), summands }
}

#[cfg(test)]
mod tests;
