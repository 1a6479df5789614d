use std::collections::BTreeMap;

use super::{hh, HochschildHomology, MixedComplex};
use crate::dgcore::{DGCategory, DGFunctor};
use crate::error::{Error, Result};
use crate::exactla::{SparseMatrix, SparseVec, Q};
use crate::params::ComputationParams;

/// Applies a DG functor factorwise to a chain of reduced Hochschild words.
///
/// `chain` and the result are indexed by global word numbers of `from` and
/// `to`. Terms acquiring an identity in the tail vanish in the reduced
/// complex. The functor has degree 0, so no signs appear.
pub fn apply_functor_on_chains(
    target: &DGCategory,
    f: &DGFunctor,
    from: &MixedComplex,
    to: &MixedComplex,
    chain: &SparseVec,
) -> Result<SparseVec> {
    let table = to.table();
    let mut out = Vec::new();
    for (w, c) in chain.iter() {
        let factors: Vec<Vec<(u32, Q)>> = from
            .word(w)
            .iter()
            .map(|&a| {
                let m = from.table().get(a);
                let (fx, fy) = (f.object(m.source), f.object(m.target));
                f.apply(m.source, m.target, &SparseVec::unit(m.local))
                    .iter()
                    .map(|(k, v)| (target.global_index(fx, fy, k) as u32, v.clone()))
                    .collect()
            })
            .collect();
        let mut partial: Vec<(Vec<u32>, Q)> = vec![(Vec::with_capacity(factors.len()), c.clone())];
        for (slot, options) in factors.iter().enumerate() {
            let mut next = Vec::new();
            for (word, coeff) in &partial {
                for (g, v) in options {
                    if slot > 0 && table.get(*g).is_identity {
                        continue;
                    }
                    let mut nw = word.clone();
                    nw.push(*g);
                    next.push((nw, coeff * v));
                }
            }
            partial = next;
        }
        for (word, coeff) in partial {
            let idx = to
                .find(&word)
                .ok_or_else(|| Error::Inconsistent(format!("image of word {} is missing from the target complex", from.label(w))))?;
            out.push((idx, coeff));
        }
    }
    Ok(SparseVec::from_pairs(out))
}

/// Matrices of an induced map on homology, per degree where both sides are stable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub matrices: BTreeMap<i64, SparseMatrix>,
}

impl InducedMap {
    pub fn matrix(&self, n: i64) -> Option<&SparseMatrix> {
        self.matrices.get(&n)
    }
}

/// `F^*` on Hochschild homology between already computed homologies.
pub fn induced_on_hh(target: &DGCategory, f: &DGFunctor, from: &HochschildHomology, to: &HochschildHomology) -> Result<InducedMap> {
    let mut matrices = BTreeMap::new();
    for (&n, g) in &from.groups {
        let Some(tg) = to.group(n) else { continue };
        if !g.stable || !tg.stable {
            continue;
        }
        let mut cols = Vec::with_capacity(g.dim());
        for k in 0..g.dim() {
            let image = apply_functor_on_chains(target, f, &from.complex, &to.complex, &from.representative(n, k))?;
            let coords =
                to.coordinates(n, &image).ok_or_else(|| Error::Inconsistent(format!("image of a degree-{n} cycle is not a cycle")))?;
            cols.push(coords);
        }
        matrices.insert(n, SparseMatrix::from_columns(tg.dim(), cols));
    }
    Ok(InducedMap { matrices })
}

/// `F^*: HH(source) → HH(target)` on every degree stable on both sides.
pub fn hh_induced_map(source: &DGCategory, target: &DGCategory, f: &DGFunctor, params: &ComputationParams) -> Result<InducedMap> {
    let from = hh(source, params)?;
    let to = hh(target, params)?;
    induced_on_hh(target, f, &from, &to)
}
