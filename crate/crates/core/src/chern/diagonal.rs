use serde::Serialize;

use super::module::check_directed;
use super::{ch_in, hh0, K0Class, ProjectiveSummand};
use crate::constructions::diagonal_bimodule;
use crate::dgcore::{opposite, tensor, DGCategory, TensorLayout};
use crate::error::{Error, Result};
use crate::exactla::{format_rational, rank, EchelonBasis, SparseMatrix, SparseVec};
use crate::params::ComputationParams;

use super::module::{minimal_resolution, FinModule};

/// Irreducible morphisms: for each pair `x ≠ y`, basis elements of
/// `hom(x, y)` completing the span of composites through third objects.
pub fn arrows(a: &DGCategory) -> Result<Vec<(usize, usize, SparseVec)>> {
    check_directed(a)?;
    let n = a.num_objects();
    let mut out = Vec::new();
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            let mut span = EchelonBasis::new(false);
            for z in (0..n).filter(|&z| z != x && z != y) {
                for f in 0..a.hom(x, z).len() {
                    for g in 0..a.hom(z, y).len() {
                        span.insert(a.compose(x, z, y, g, f).clone(), None);
                    }
                }
            }
            for i in 0..a.hom(x, y).len() {
                if span.insert(SparseVec::unit(i), None).is_independent() {
                    out.push((x, y, SparseVec::unit(i)));
                }
            }
        }
    }
    Ok(out)
}

/// The two-term resolution
/// `0 → ⊕_{α: x→y} P(x,y) → ⊕_x P(x,x) → I → 0`
/// of the diagonal over `tensor(opposite(a), a)`.
pub struct DiagonalResolution {
    pub enveloping: DGCategory,
    pub layout: TensorLayout,
    pub vertices: usize,
    pub arrows: Vec<(usize, usize, SparseVec)>,
}

impl DiagonalResolution {
    /// Builds the resolution and verifies it is exact at every object by ranks.
    pub fn new(a: &DGCategory) -> Result<Self> {
        let arrows = arrows(a)?;
        let op = opposite(a);
        let enveloping = tensor(&op, a)?;
        let layout = TensorLayout::new(&op, a);
        let r = Self { enveloping, layout, vertices: a.num_objects(), arrows };
        r.verify(a)?;
        Ok(r)
    }

    fn verify(&self, a: &DGCategory) -> Result<()> {
        let (e, lay) = (&self.enveloping, &self.layout);
        let n = self.vertices;
        for v in 0..n {
            for u in 0..n {
                let target = lay.object(v, u);
                // ε: ⊕_x P(x,x)(v,u) → a(v, u), f ⊗ g ↦ g ∘ f
                let mut offsets = Vec::with_capacity(n);
                let mut eps_cols = Vec::new();
                for x in 0..n {
                    offsets.push(eps_cols.len());
                    for i in 0..e.hom(lay.object(x, x), target).len() {
                        let (f, g) = lay.split_basis(x, u, i);
                        eps_cols.push(a.compose(v, x, u, g, f).clone());
                    }
                }
                let middle = eps_cols.len();
                let eps = SparseMatrix::from_columns(a.hom(v, u).len(), eps_cols);
                // ∂: φ ∈ P(s,t)(v,u) ↦ φ∘(id_s ⊗ α) − φ∘(α ⊗ id_t)
                let mut d_cols = Vec::new();
                for (s, t, alpha) in &self.arrows {
                    let (s, t) = (*s, *t);
                    let from = lay.object(s, t);
                    let right = alpha.remap(|i| Some(lay.basis(s, t, a.id(s), i)));
                    let left = alpha.remap(|i| Some(lay.basis(t, t, i, a.id(t))));
                    for phi in 0..e.hom(from, target).len() {
                        let phi = SparseVec::unit(phi);
                        let via_s = e.compose_vec(lay.object(s, s), from, target, &phi, &right);
                        let via_t = e.compose_vec(lay.object(t, t), from, target, &phi, &left);
                        let mut col = via_s.remap(|i| Some(offsets[s] + i));
                        col.add_scaled(&via_t.remap(|i| Some(offsets[t] + i)), &(-crate::exactla::int(1)));
                        d_cols.push(col);
                    }
                }
                let source = d_cols.len();
                let d = SparseMatrix::from_columns(middle, d_cols);
                let (rd, re) = (rank(&d), rank(&eps));
                if !eps.mul(&d).is_zero() || rd != source || re != a.hom(v, u).len() || rd + re != middle {
                    return Err(Error::Unsupported(format!(
                        "the two-term complex does not resolve the diagonal at ({}, {}); not a path category",
                        a.object(v),
                        a.object(u)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `Σ_x [P(x,x)] − Σ_α [P(source α, target α)]`.
    pub fn class(&self) -> K0Class {
        let e = &self.enveloping;
        let vertices = (0..self.vertices).map(|x| ProjectiveSummand::representable(e, self.layout.object(x, x)));
        let edges = self
            .arrows
            .iter()
            .map(|&(s, t, _)| ProjectiveSummand { shift: 1, ..ProjectiveSummand::representable(e, self.layout.object(s, t)) });
        K0Class { summands: vertices.chain(edges).collect() }
    }
}

/// `[I_a]` over `tensor(opposite(a), a)` from a minimal resolution of the
/// diagonal; works for any directed category, not only path categories.
pub fn diagonal_class(a: &DGCategory) -> Result<(DGCategory, K0Class)> {
    let (e, module) = FinModule::of_bimodule(a, a, &diagonal_bimodule(a))?;
    let resolution = minimal_resolution(&e, &module)?;
    let class = K0Class::of_resolution(&e, &resolution);
    Ok((e, class))
}

/// `ch([I_a]) ∈ HH₀(tensor(opposite(a), a))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalChern {
    pub vertices: usize,
    pub arrows: usize,
    pub dim: usize,
    pub coordinates: Vec<String>,
}

pub fn ch_diagonal(a: &DGCategory, params: &ComputationParams) -> Result<(DiagonalResolution, SparseVec, DiagonalChern)> {
    let r = DiagonalResolution::new(a)?;
    let h = hh0(&r.enveloping, params)?;
    let coords = ch_in(&r.enveloping, &h, &r.class())?;
    let dim = h.dim(0);
    let report = DiagonalChern {
        vertices: r.vertices,
        arrows: r.arrows.len(),
        dim,
        coordinates: coords.to_dense(dim).iter().map(format_rational).collect(),
    };
    Ok((r, coords, report))
}
