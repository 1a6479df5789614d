use super::validate::{Axiom, ValidationReport};
use super::DGCategory;
use crate::error::{Error, Result};
use crate::exactla::{SparseMatrix, SparseVec};

/// A DG functor between two categories, stored as an object map and one
/// matrix per source hom space (columns are images of basis elements).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGFunctor {
    object_map: Vec<usize>,
    hom_maps: Vec<SparseMatrix>,
}

impl DGFunctor {
    /// `hom_maps[x * n + y]` maps `source.hom(x, y)` into
    /// `target.hom(F x, F y)`.
    pub fn new(source: &DGCategory, target: &DGCategory, object_map: Vec<usize>, hom_maps: Vec<SparseMatrix>) -> Result<Self> {
        let n = source.num_objects();
        if object_map.len() != n || hom_maps.len() != n * n {
            return Err(Error::schema("functor", "object or hom map has the wrong length"));
        }
        if let Some(&bad) = object_map.iter().find(|&&o| o >= target.num_objects()) {
            return Err(Error::schema("functor", format!("object index {bad} out of range")));
        }
        for x in 0..n {
            for y in 0..n {
                let m = &hom_maps[x * n + y];
                let (fx, fy) = (object_map[x], object_map[y]);
                if m.cols() != source.hom(x, y).len() || m.rows() != target.hom(fx, fy).len() {
                    return Err(Error::schema(
                        "functor",
                        format!("hom map on ({}, {}) has the wrong shape", source.object(x), source.object(y)),
                    ));
                }
            }
        }
        Ok(Self { object_map, hom_maps })
    }

    pub fn identity(c: &DGCategory) -> Self {
        let n = c.num_objects();
        let hom_maps = (0..n * n).map(|k| SparseMatrix::identity(c.hom(k / n, k % n).len())).collect();
        Self { object_map: (0..n).collect(), hom_maps }
    }

    /// Builds a functor from a basis-element map `(x, y, i) -> image`.
    pub fn from_fn(
        source: &DGCategory,
        target: &DGCategory,
        object_map: Vec<usize>,
        image: impl Fn(usize, usize, usize) -> SparseVec,
    ) -> Result<Self> {
        let n = source.num_objects();
        let mut hom_maps = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let rows = object_map.get(x).zip(object_map.get(y)).map_or(0, |(&fx, &fy)| target.hom(fx, fy).len());
                let cols = (0..source.hom(x, y).len()).map(|i| image(x, y, i)).collect();
                hom_maps.push(SparseMatrix::from_columns(rows, cols));
            }
        }
        Self::new(source, target, object_map, hom_maps)
    }

    pub fn object(&self, x: usize) -> usize {
        self.object_map[x]
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn hom_map(&self, x: usize, y: usize) -> &SparseMatrix {
        &self.hom_maps[x * self.object_map.len() + y]
    }

    pub fn apply(&self, x: usize, y: usize, v: &SparseVec) -> SparseVec {
        self.hom_map(x, y).mul_vec(v)
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &DGFunctor) -> DGFunctor {
        let n = self.object_map.len();
        let object_map = self.object_map.iter().map(|&o| after.object(o)).collect();
        let hom_maps = (0..n * n)
            .map(|k| {
                let (x, y) = (k / n, k % n);
                after.hom_map(self.object(x), self.object(y)).mul(self.hom_map(x, y))
            })
            .collect();
        DGFunctor { object_map, hom_maps }
    }
}

/// Checks that `f` preserves degrees, differentials, composition and identities.
pub fn validate_functor(source: &DGCategory, target: &DGCategory, f: &DGFunctor) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = source.num_objects();
    for x in 0..n {
        let fx = f.object(x);
        if f.apply(x, x, &SparseVec::unit(source.id(x))) != SparseVec::unit(target.id(fx)) {
            report.push(Axiom::FunctorIdentity, format!("F(id_{})", source.object(x)));
        }
        for y in 0..n {
            let fy = f.object(y);
            let h = source.hom(x, y);
            for i in 0..h.len() {
                let img = f.apply(x, y, &SparseVec::unit(i));
                if !target.hom(fx, fy).is_homogeneous(&img, h.degree(i)) {
                    report.push(Axiom::FunctorDegree, format!("F({})", h.label(i)));
                }
                let lhs = target.apply_d(fx, fy, &img);
                let rhs = f.apply(x, y, &source.apply_d(x, y, &SparseVec::unit(i)));
                if lhs != rhs {
                    report.push(Axiom::FunctorDifferential, format!("dF({}) ≠ F(d{})", h.label(i), h.label(i)));
                }
            }
            for z in 0..n {
                let fz = f.object(z);
                let hg = source.hom(y, z);
                for g in 0..hg.len() {
                    let fg = f.apply(y, z, &SparseVec::unit(g));
                    for i in 0..h.len() {
                        let lhs = f.apply(x, z, source.compose(x, y, z, g, i));
                        let rhs = target.compose_vec(fx, fy, fz, &fg, &f.apply(x, y, &SparseVec::unit(i)));
                        if lhs != rhs {
                            report.push(Axiom::FunctorComposition, format!("F({} ∘ {})", hg.label(g), h.label(i)));
                        }
                    }
                }
            }
        }
    }
    report
}
