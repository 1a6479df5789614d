use std::collections::HashMap;

use super::{DGCategory, GradedBasis};
use crate::error::{Error, Result};
use crate::exactla::{SparseMatrix, SparseVec};

/// A DG bimodule between categories `A` and `B`.
///
/// `space(x, y)` for `x ∈ Ob A`, `y ∈ Ob B` is thought of as morphisms from
/// `x` to `y`: `A` acts by precomposition and `B` by postcomposition, as in
/// the cross homs of a gluing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGBimodule {
    left_objects: usize,
    right_objects: usize,
    left_dims: Vec<usize>,
    right_dims: Vec<usize>,
    spaces: Vec<GradedBasis>,
    diffs: Vec<SparseMatrix>,
    pre: Vec<Vec<SparseVec>>,
    post: Vec<Vec<SparseVec>>,
}

impl DGBimodule {
    /// Creates a bimodule with zero differential in which identities act
    /// trivially and every other basis action is zero.
    pub fn new(a: &DGCategory, b: &DGCategory, mut spaces: HashMap<(usize, usize), GradedBasis>) -> Result<Self> {
        let (na, nb) = (a.num_objects(), b.num_objects());
        let mut space_vec = Vec::with_capacity(na * nb);
        for x in 0..na {
            for y in 0..nb {
                space_vec.push(spaces.remove(&(x, y)).unwrap_or_default());
            }
        }
        if let Some(((x, y), _)) = spaces.into_iter().next() {
            return Err(Error::schema("bimodule", format!("space ({x},{y}) refers to a missing object")));
        }
        let left_dims = (0..na * na).map(|k| a.hom(k / na, k % na).len()).collect::<Vec<_>>();
        let right_dims = (0..nb * nb).map(|k| b.hom(k / nb, k % nb).len()).collect::<Vec<_>>();
        let diffs = space_vec.iter().map(|s| SparseMatrix::zeros(s.len(), s.len())).collect();
        let mut pre = Vec::with_capacity(na * na * nb);
        for x2 in 0..na {
            for x in 0..na {
                for y in 0..nb {
                    pre.push(vec![SparseVec::new(); space_vec[x * nb + y].len() * left_dims[x2 * na + x]]);
                }
            }
        }
        let mut post = Vec::with_capacity(na * nb * nb);
        for x in 0..na {
            for y in 0..nb {
                for y2 in 0..nb {
                    post.push(vec![SparseVec::new(); right_dims[y * nb + y2] * space_vec[x * nb + y].len()]);
                }
            }
        }
        let mut m = Self { left_objects: na, right_objects: nb, left_dims, right_dims, spaces: space_vec, diffs, pre, post };
        for x in 0..na {
            for y in 0..nb {
                for i in 0..m.space(x, y).len() {
                    m.set_precompose(a, x, x, y, i, a.id(x), SparseVec::unit(i))?;
                    m.set_postcompose(b, x, y, y, b.id(y), i, SparseVec::unit(i))?;
                }
            }
        }
        Ok(m)
    }

    /// The zero bimodule.
    pub fn zero(a: &DGCategory, b: &DGCategory) -> Self {
        Self::new(a, b, HashMap::new()).expect("zero bimodule")
    }

    pub fn left_objects(&self) -> usize {
        self.left_objects
    }

    pub fn right_objects(&self) -> usize {
        self.right_objects
    }

    /// Checks that `a` and `b` have the object counts and hom dimensions
    /// this bimodule was built over.
    pub fn fits(&self, a: &DGCategory, b: &DGCategory) -> bool {
        let (na, nb) = (a.num_objects(), b.num_objects());
        na == self.left_objects
            && nb == self.right_objects
            && (0..na * na).all(|k| a.hom(k / na, k % na).len() == self.left_dims[k])
            && (0..nb * nb).all(|k| b.hom(k / nb, k % nb).len() == self.right_dims[k])
    }

    pub fn space(&self, x: usize, y: usize) -> &GradedBasis {
        &self.spaces[x * self.right_objects + y]
    }

    pub fn d(&self, x: usize, y: usize) -> &SparseMatrix {
        &self.diffs[x * self.right_objects + y]
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.iter().map(GradedBasis::len).sum()
    }

    pub fn set_d(&mut self, x: usize, y: usize, d: SparseMatrix) -> Result<()> {
        let s = self.space(x, y);
        if d.rows() != s.len() || d.cols() != s.len() {
            return Err(Error::schema("bimodule.d", format!("differential on ({x},{y}) has the wrong shape")));
        }
        for (j, col) in d.columns().iter().enumerate() {
            if !s.is_homogeneous(col, s.degree(j) + 1) {
                return Err(Error::schema("bimodule.d", format!("d({}) has the wrong degree", s.label(j))));
            }
        }
        self.diffs[x * self.right_objects + y] = d;
        Ok(())
    }

    /// `m ∘ f` for `f ∈ A(x2, x)`, `m ∈ M(x, y)`, landing in `M(x2, y)`.
    pub fn precompose(&self, x2: usize, x: usize, y: usize, m: usize, f: usize) -> &SparseVec {
        let (na, nb) = (self.left_objects, self.right_objects);
        let nf = self.left_dims[x2 * na + x];
        &self.pre[(x2 * na + x) * nb + y][m * nf + f]
    }

    /// `g ∘ m` for `m ∈ M(x, y)`, `g ∈ B(y, y2)`, landing in `M(x, y2)`.
    pub fn postcompose(&self, x: usize, y: usize, y2: usize, g: usize, m: usize) -> &SparseVec {
        let nb = self.right_objects;
        let nm = self.spaces[x * nb + y].len();
        &self.post[(x * nb + y) * nb + y2][g * nm + m]
    }

    #[allow(clippy::too_many_arguments)]
    pub fn set_precompose(&mut self, a: &DGCategory, x2: usize, x: usize, y: usize, m: usize, f: usize, value: SparseVec) -> Result<()> {
        let (na, nb) = (self.left_objects, self.right_objects);
        let (sm, hf) = (self.space(x, y), a.hom(x2, x));
        if m >= sm.len() || f >= hf.len() {
            return Err(Error::schema("bimodule.left", "basis index out of range"));
        }
        let deg = sm.degree(m) + hf.degree(f);
        if !self.space(x2, y).is_homogeneous(&value, deg) {
            return Err(Error::schema("bimodule.left", format!("{} ∘ {} has the wrong degree", sm.label(m), hf.label(f))));
        }
        let nf = self.left_dims[x2 * na + x];
        self.pre[(x2 * na + x) * nb + y][m * nf + f] = value;
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    pub fn set_postcompose(&mut self, b: &DGCategory, x: usize, y: usize, y2: usize, g: usize, m: usize, value: SparseVec) -> Result<()> {
        let nb = self.right_objects;
        let (sm, hg) = (self.space(x, y), b.hom(y, y2));
        if m >= sm.len() || g >= hg.len() {
            return Err(Error::schema("bimodule.right", "basis index out of range"));
        }
        let deg = sm.degree(m) + hg.degree(g);
        if !self.space(x, y2).is_homogeneous(&value, deg) {
            return Err(Error::schema("bimodule.right", format!("{} ∘ {} has the wrong degree", hg.label(g), sm.label(m))));
        }
        let nm = sm.len();
        self.post[(x * nb + y) * nb + y2][g * nm + m] = value;
        Ok(())
    }
}
