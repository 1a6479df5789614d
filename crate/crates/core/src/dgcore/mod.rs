//! Small DG categories with finite basis-presented hom complexes.
//!
//! Degrees are cohomological. Every sign in the crate derives from the
//! Koszul rule: moving a homogeneous symbol of degree `p` past one of
//! degree `q` costs `(-1)^(pq)`.

mod amplify;
mod bimodule;
mod functor;
mod ops;
mod quotient;
mod validate;

pub use amplify::{indiscrete, matrix_amplification, Amplification};
pub use bimodule::DGBimodule;
pub use functor::{validate_functor, DGFunctor};
pub use ops::{opposite, tensor, TensorLayout};
pub use quotient::{drinfeld_quotient, quotient_projection};
pub use validate::{validate, Axiom, ValidationReport, Violation};

pub use crate::hochschild::apply_functor_on_chains;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactla::{SparseMatrix, SparseVec, Q};

/// Sign `(-1)^e` as a rational.
pub(crate) fn sign(e: i64) -> Q {
    if e.rem_euclid(2) == 0 {
        Q::from_integer(1.into())
    } else {
        Q::from_integer((-1).into())
    }
}

/// A finite graded vector space given by a labelled basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedBasis {
    labels: Vec<String>,
    degrees: Vec<i32>,
    index: HashMap<String, usize>,
}

impl GradedBasis {
    pub fn new<S: Into<String>>(elements: impl IntoIterator<Item = (S, i32)>) -> Result<Self> {
        let mut out = GradedBasis::default();
        for (label, degree) in elements {
            let label = label.into();
            if out.index.insert(label.clone(), out.labels.len()).is_some() {
                return Err(Error::schema("basis", format!("duplicate basis label {label:?}")));
            }
            out.labels.push(label);
            out.degrees.push(degree);
        }
        Ok(out)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i32)> {
        self.labels.iter().map(String::as_str).zip(self.degrees.iter().copied())
    }

    /// Dimension of the degree-`k` part.
    pub fn dim_in_degree(&self, k: i32) -> usize {
        self.degrees.iter().filter(|&&d| d == k).count()
    }

    /// Checks that `v` is homogeneous of degree `k` (zero is homogeneous of every degree).
    pub fn is_homogeneous(&self, v: &SparseVec, k: i32) -> bool {
        v.iter().all(|(i, _)| i < self.len() && self.degrees[i] == k)
    }
}

/// A small DG category over the rationals.
///
/// Hom spaces are indexed by `(source, target)`. Compositions are stored on
/// basis pairs: `compose(x, y, z, g, f)` is `g ∘ f` for `f ∈ hom(x, y)` and
/// `g ∈ hom(y, z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGCategory {
    objects: Vec<String>,
    homs: Vec<GradedBasis>,
    diffs: Vec<SparseMatrix>,
    compose: Vec<Vec<SparseVec>>,
    ids: Vec<usize>,
    offsets: Vec<usize>,
    window: Option<(i32, i32)>,
}

impl DGCategory {
    /// Creates a category with zero differential. Compositions with
    /// identities are filled in; every other composition starts at zero.
    pub fn new(objects: Vec<String>, mut homs: HashMap<(usize, usize), GradedBasis>, ids: Vec<usize>) -> Result<Self> {
        let n = objects.len();
        let mut seen = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if seen.insert(o.clone(), i).is_some() {
                return Err(Error::schema("objects", format!("duplicate object {o:?}")));
            }
        }
        if ids.len() != n {
            return Err(Error::schema("id", "one identity per object is required"));
        }
        let mut hom_vec = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                hom_vec.push(homs.remove(&(x, y)).unwrap_or_default());
            }
        }
        if let Some(((x, y), _)) = homs.into_iter().next() {
            return Err(Error::schema("hom", format!("hom space ({x},{y}) refers to a missing object")));
        }
        for (x, &id) in ids.iter().enumerate() {
            let h = &hom_vec[x * n + x];
            if id >= h.len() {
                return Err(Error::schema(format!("id.{}", objects[x]), "identity is not a basis element"));
            }
            if h.degree(id) != 0 {
                return Err(Error::schema(format!("id.{}", objects[x]), "identity must have degree 0"));
            }
        }
        let diffs = hom_vec.iter().map(|h| SparseMatrix::zeros(h.len(), h.len())).collect();
        let mut compose = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let nf = hom_vec[x * n + y].len();
                    let ng = hom_vec[y * n + z].len();
                    compose.push(vec![SparseVec::new(); nf * ng]);
                }
            }
        }
        let mut offsets = Vec::with_capacity(n * n + 1);
        let mut acc = 0;
        for h in &hom_vec {
            offsets.push(acc);
            acc += h.len();
        }
        offsets.push(acc);
        let mut c = Self { objects, homs: hom_vec, diffs, compose, ids, offsets, window: None };
        for x in 0..n {
            for y in 0..n {
                for f in 0..c.hom(x, y).len() {
                    c.compose_slot(x, x, y, f, c.ids[x]).clone_from(&SparseVec::unit(f));
                    c.compose_slot(x, y, y, c.ids[y], f).clone_from(&SparseVec::unit(f));
                }
            }
        }
        Ok(c)
    }

    fn compose_slot(&mut self, x: usize, y: usize, z: usize, g: usize, f: usize) -> &mut SparseVec {
        let n = self.objects.len();
        let nf = self.homs[x * n + y].len();
        &mut self.compose[(x * n + y) * n + z][g * nf + f]
    }

    /// Sets `g ∘ f`. Fails on out-of-range indices or a degree mismatch.
    pub fn set_compose(&mut self, x: usize, y: usize, z: usize, g: usize, f: usize, value: SparseVec) -> Result<()> {
        let (hf, hg, hr) = (self.hom(x, y), self.hom(y, z), self.hom(x, z));
        if f >= hf.len() || g >= hg.len() {
            return Err(Error::schema("compose", format!("basis index out of range in ({x},{y},{z})")));
        }
        let deg = hg.degree(g) + hf.degree(f);
        if !hr.is_homogeneous(&value, deg) {
            return Err(Error::schema("compose", format!("{} ∘ {} must be homogeneous of degree {deg}", hg.label(g), hf.label(f))));
        }
        *self.compose_slot(x, y, z, g, f) = value;
        Ok(())
    }

    /// Sets the differential on `hom(x, y)`; column `j` is `d` of basis element `j`.
    pub fn set_d(&mut self, x: usize, y: usize, d: SparseMatrix) -> Result<()> {
        let h = self.hom(x, y);
        if d.rows() != h.len() || d.cols() != h.len() {
            return Err(Error::schema("d", format!("differential on ({x},{y}) has the wrong shape")));
        }
        for (j, col) in d.columns().iter().enumerate() {
            if !h.is_homogeneous(col, h.degree(j) + 1) {
                return Err(Error::schema("d", format!("d({}) must have degree {}", h.label(j), h.degree(j) + 1)));
            }
        }
        let n = self.objects.len();
        self.diffs[x * n + y] = d;
        Ok(())
    }

    /// Marks the category as a degree-window truncation of an infinite one.
    pub fn set_window(&mut self, window: Option<(i32, i32)>) {
        self.window = window;
    }

    pub fn window(&self) -> Option<(i32, i32)> {
        self.window
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object(&self, i: usize) -> &str {
        &self.objects[i]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn hom(&self, x: usize, y: usize) -> &GradedBasis {
        &self.homs[x * self.objects.len() + y]
    }

    pub fn d(&self, x: usize, y: usize) -> &SparseMatrix {
        &self.diffs[x * self.objects.len() + y]
    }

    pub fn id(&self, x: usize) -> usize {
        self.ids[x]
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    /// `g ∘ f` on basis elements.
    pub fn compose(&self, x: usize, y: usize, z: usize, g: usize, f: usize) -> &SparseVec {
        let n = self.objects.len();
        let nf = self.homs[x * n + y].len();
        &self.compose[(x * n + y) * n + z][g * nf + f]
    }

    /// `g ∘ f` on arbitrary vectors.
    pub fn compose_vec(&self, x: usize, y: usize, z: usize, g: &SparseVec, f: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (gi, gc) in g.iter() {
            for (fi, fc) in f.iter() {
                let coeff = gc * fc;
                out.add_scaled(self.compose(x, y, z, gi, fi), &coeff);
            }
        }
        out
    }

    pub fn apply_d(&self, x: usize, y: usize, v: &SparseVec) -> SparseVec {
        self.d(x, y).mul_vec(v)
    }

    /// True when every basis element has degree 0 and the differential vanishes.
    pub fn is_degree_zero(&self) -> bool {
        self.homs.iter().all(|h| h.degrees().iter().all(|&d| d == 0)) && self.diffs.iter().all(SparseMatrix::is_zero)
    }

    pub fn total_dim(&self) -> usize {
        self.offsets[self.offsets.len() - 1]
    }

    /// Position of basis element `i` of `hom(x, y)` in a global enumeration
    /// of all basis morphisms (source-major, then target, then local index).
    pub fn global_index(&self, x: usize, y: usize, i: usize) -> usize {
        self.offsets[x * self.objects.len() + y] + i
    }

    /// Iterates over all basis morphisms as `(source, target, local index)`.
    pub fn basis_morphisms(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.objects.len();
        (0..n).flat_map(move |x| (0..n).flat_map(move |y| (0..self.hom(x, y).len()).map(move |i| (x, y, i))))
    }

    pub fn is_identity(&self, x: usize, y: usize, i: usize) -> bool {
        x == y && self.ids[x] == i
    }

    /// Finds a basis morphism by label in `hom(x, y)`.
    pub fn basis_index(&self, x: usize, y: usize, label: &str) -> Option<usize> {
        self.hom(x, y).position(label)
    }

    /// The range of degrees of basis morphisms, if any exist.
    pub fn degree_range(&self) -> Option<(i32, i32)> {
        let mut it = self.homs.iter().flat_map(|h| h.degrees().iter().copied());
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d))))
    }
}

#[cfg(test)]
/// Convenience for building zero-aware sparse vectors from signed integers.
pub(crate) fn combo(pairs: impl IntoIterator<Item = (usize, i64)>) -> SparseVec {
    SparseVec::from_pairs(pairs.into_iter().map(|(i, c)| (i, Q::from_integer(c.into()))))
}

#[cfg(test)]
mod tests;
