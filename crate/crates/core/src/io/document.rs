use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// One basis element of a hom space or bimodule space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisElement {
    pub label: String,
    pub degree: i32,
}

/// `coeff · label` inside a linear combination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub label: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomEntry {
    pub src: String,
    pub tgt: String,
    pub basis: Vec<BasisElement>,
}

/// `matrix[i][j]` is the coefficient of basis element `i` in `d` of basis element `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiffEntry {
    pub src: String,
    pub tgt: String,
    pub matrix: Vec<Vec<String>>,
}

/// `g ∘ f` for `f ∈ hom(x, y)`, `g ∈ hom(y, z)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposeRow {
    pub g: String,
    pub f: String,
    pub result: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposeEntry {
    pub x: String,
    pub y: String,
    pub z: String,
    pub table: Vec<ComposeRow>,
}

/// A space `M(left, right)` of a bimodule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceEntry {
    pub left: String,
    pub right: String,
    pub basis: Vec<BasisElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDiff {
    pub left: String,
    pub right: String,
    pub matrix: Vec<Vec<String>>,
}

/// `m ∘ f` for `f ∈ A(x2, x)`, `m ∈ M(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeftRow {
    pub m: String,
    pub f: String,
    pub result: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeftAction {
    pub x2: String,
    pub x: String,
    pub y: String,
    pub table: Vec<LeftRow>,
}

/// `g ∘ m` for `m ∈ M(x, y)`, `g ∈ B(y, y2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RightRow {
    pub g: String,
    pub m: String,
    pub result: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RightAction {
    pub x: String,
    pub y: String,
    pub y2: String,
    pub table: Vec<RightRow>,
}

/// A bimodule between two categories. Inside a category document both
/// sides are that category; standalone documents are read against a pair.
/// Identities act trivially unless a table entry says otherwise; omitted
/// actions are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub spaces: Vec<SpaceEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub d: Vec<SpaceDiff>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub left_action: Vec<LeftAction>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub right_action: Vec<RightAction>,
}

/// Columns are images of basis elements of `hom(src, tgt)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorMap {
    pub src: String,
    pub tgt: String,
    pub matrix: Vec<Vec<String>>,
}

/// An endofunctor of the enclosing category. Omitted hom maps are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDocument {
    pub name: String,
    pub objects: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<FunctorMap>,
}

/// `idempotent[k][l]` is an element of `hom(objects[l], objects[k])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandDocument {
    pub objects: Vec<String>,
    pub idempotent: Vec<Vec<Vec<Term>>>,
    #[serde(default)]
    pub shift: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDocument {
    pub name: String,
    pub summands: Vec<SummandDocument>,
}

/// The interchange format for a category and its companions.
///
/// Compositions with identities are implied and only need listing when
/// they differ from the unit law; every unlisted composition is zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDocument {
    pub objects: Vec<String>,
    pub hom: Vec<HomEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub d: Vec<DiffEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub compose: Vec<ComposeEntry>,
    pub id: BTreeMap<String, String>,
    /// Degree window of a truncated category.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<(i32, i32)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bimodules: Vec<BimoduleDocument>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub functors: Vec<FunctorDocument>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub k0_classes: Vec<ClassDocument>,
}
