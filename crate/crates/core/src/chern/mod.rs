//! K₀-classes of degree-zero categories, the Hattori–Stallings Chern
//! character into `HH₀`, and the pairing and gluing checks built on it.

mod diagonal;
mod gluing;
mod kunneth;
mod module;

use serde::Serialize;

use crate::dgcore::{DGCategory, DGFunctor};
use crate::error::{Error, Result};
use crate::exactla::{format_rational, SparseVec, Q};
use crate::hochschild::{hh, HochschildHomology, MixedComplex};
use crate::params::ComputationParams;

pub use diagonal::{arrows, ch_diagonal, diagonal_class, DiagonalChern, DiagonalResolution};
pub use gluing::{gluing_component_check, ComponentCheck, GluingReport};
pub use kunneth::{kunneth_split, pairing_check, phi0, KunnethBases, KunnethComponents, PairingVerdict, Phi0Report};
pub use module::{check_directed, minimal_resolution, FinModule, Resolution};

/// A projective summand `(⊕ₖ xₖ, e)` placed in homological position `shift`.
///
/// `idempotent[k][l]` is the entry of `e` in `hom(objects[l], objects[k])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveSummand {
    pub objects: Vec<usize>,
    pub idempotent: Vec<Vec<SparseVec>>,
    pub shift: i32,
}

impl ProjectiveSummand {
    /// The representable on `x` with the identity idempotent.
    pub fn representable(c: &DGCategory, x: usize) -> Self {
        Self { objects: vec![x], idempotent: vec![vec![SparseVec::unit(c.id(x))]], shift: 0 }
    }

    fn sign(&self) -> Q {
        crate::dgcore::sign(self.shift as i64)
    }
}

/// A formal alternating sum of projective summands.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct K0Class {
    pub summands: Vec<ProjectiveSummand>,
}

impl K0Class {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn representable(c: &DGCategory, x: usize) -> Self {
        Self { summands: vec![ProjectiveSummand::representable(c, x)] }
    }

    pub fn from_summand(s: ProjectiveSummand) -> Self {
        Self { summands: vec![s] }
    }

    /// Direct sum.
    pub fn plus(&self, other: &K0Class) -> Self {
        Self { summands: self.summands.iter().chain(&other.summands).cloned().collect() }
    }

    pub fn shifted(&self, by: i32) -> Self {
        let summands = self.summands.iter().map(|s| ProjectiveSummand { shift: s.shift + by, ..s.clone() }).collect();
        Self { summands }
    }

    /// The two-term complex `P --id--> P`.
    pub fn cone_of_identity(p: &ProjectiveSummand) -> Self {
        Self::from_summand(p.clone()).plus(&Self::from_summand(p.clone()).shifted(1))
    }

    /// The alternating class of a projective resolution.
    pub fn of_resolution(c: &DGCategory, r: &Resolution) -> Self {
        let summands = r
            .terms
            .iter()
            .enumerate()
            .flat_map(|(i, term)| {
                term.iter().map(move |&x| ProjectiveSummand { shift: i as i32, ..ProjectiveSummand::representable(c, x) })
            })
            .collect();
        Self { summands }
    }

    /// Entries are closed degree-0 morphisms of the right shape and `e ∘ e = e`.
    pub fn validate(&self, c: &DGCategory) -> Result<()> {
        for (s, summand) in self.summands.iter().enumerate() {
            let r = summand.objects.len();
            if let Some(&x) = summand.objects.iter().find(|&&x| x >= c.num_objects()) {
                return Err(Error::schema(format!("summands[{s}].objects"), format!("object {x} out of range")));
            }
            if summand.idempotent.len() != r || summand.idempotent.iter().any(|row| row.len() != r) {
                return Err(Error::schema(format!("summands[{s}].idempotent"), format!("expected a {r}×{r} matrix")));
            }
            for k in 0..r {
                for l in 0..r {
                    let (x, y) = (summand.objects[l], summand.objects[k]);
                    let e = &summand.idempotent[k][l];
                    let hom = c.hom(x, y);
                    if e.max_index().is_some_and(|i| i >= hom.len()) {
                        return Err(Error::schema(format!("summands[{s}].idempotent[{k}][{l}]"), "basis index out of range"));
                    }
                    if !hom.is_homogeneous(e, 0) {
                        return Err(Error::Axiom(format!("summand {s}: entry ({k},{l}) is not of degree 0")));
                    }
                    if !c.apply_d(x, y, e).is_zero() {
                        return Err(Error::Axiom(format!("summand {s}: entry ({k},{l}) is not closed")));
                    }
                }
            }
            for k in 0..r {
                for l in 0..r {
                    let mut square = SparseVec::new();
                    for m in 0..r {
                        let (x, y, z) = (summand.objects[l], summand.objects[m], summand.objects[k]);
                        square.add_scaled(
                            &c.compose_vec(x, y, z, &summand.idempotent[k][m], &summand.idempotent[m][l]),
                            &Q::from_integer(1.into()),
                        );
                    }
                    if square != summand.idempotent[k][l] {
                        return Err(Error::Axiom(format!("summand {s}: e ∘ e ≠ e at entry ({k},{l})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Image under a functor.
    pub fn push_forward(&self, f: &DGFunctor) -> Self {
        let summands = self
            .summands
            .iter()
            .map(|s| ProjectiveSummand {
                objects: s.objects.iter().map(|&x| f.object(x)).collect(),
                idempotent: (0..s.objects.len())
                    .map(|k| (0..s.objects.len()).map(|l| f.apply(s.objects[l], s.objects[k], &s.idempotent[k][l])).collect())
                    .collect(),
                shift: s.shift,
            })
            .collect();
        Self { summands }
    }
}

/// `HH₀` of a degree-zero category, refusing unstable results.
pub(crate) fn hh0(c: &DGCategory, params: &ComputationParams) -> Result<HochschildHomology> {
    if !c.is_degree_zero() {
        return Err(Error::Unsupported("Chern characters are computed only for categories concentrated in degree 0".into()));
    }
    let h = hh(c, &params.with_window(0, 0))?;
    if !h.is_stable(0) {
        return Err(Error::Unstable(format!("HH_0 at bar length {}", params.max_bar_length)));
    }
    Ok(h)
}

/// The Hattori–Stallings trace as a chain of length-0 words.
pub fn trace_chain(c: &DGCategory, complex: &MixedComplex, x: &K0Class) -> Result<SparseVec> {
    let mut chain = SparseVec::new();
    for s in &x.summands {
        for (k, &obj) in s.objects.iter().enumerate() {
            for (i, coeff) in s.idempotent[k][k].iter() {
                let word = complex
                    .find(&[c.global_index(obj, obj, i) as u32])
                    .ok_or_else(|| Error::Inconsistent("length-0 word missing from the complex".into()))?;
                chain.add_scaled(&SparseVec::unit(word), &(coeff * s.sign()));
            }
        }
    }
    Ok(chain)
}

/// Coordinates of `ch(x)` in the basis of `h`.
pub fn ch_in(c: &DGCategory, h: &HochschildHomology, x: &K0Class) -> Result<SparseVec> {
    x.validate(c)?;
    let chain = trace_chain(c, &h.complex, x)?;
    h.coordinates(0, &chain).ok_or_else(|| Error::Inconsistent("trace is not a cycle".into()))
}

/// `ch(x) ∈ HH₀(c)` in the computed homology basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChernCharacter {
    pub dim: usize,
    pub coordinates: Vec<String>,
    /// Trace as a chain of length-0 words.
    pub trace: String,
}

pub fn ch(c: &DGCategory, x: &K0Class, params: &ComputationParams) -> Result<(SparseVec, ChernCharacter)> {
    let h = hh0(c, params)?;
    let coords = ch_in(c, &h, x)?;
    let chain = trace_chain(c, &h.complex, x)?;
    let dim = h.dim(0);
    let report = ChernCharacter {
        dim,
        coordinates: coords.to_dense(dim).iter().map(format_rational).collect(),
        trace: crate::hochschild::format_chain(&chain, |w| h.complex.label(w).to_string()),
    };
    Ok((coords, report))
}

#[cfg(test)]
mod tests;
