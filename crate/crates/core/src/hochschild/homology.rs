use std::collections::BTreeMap;

use serde::Serialize;

use super::{build_reduced_complex, MixedComplex};
use crate::dgcore::DGCategory;
use crate::error::Result;
use crate::exactla::{format_rational, rank, SparseVec, Subquotient};
use crate::params::ComputationParams;

/// Homology in one degree together with its stability status.
pub struct HomologyGroup {
    pub degree: i64,
    pub sub: Subquotient,
    /// Dimension agrees between bar lengths `L` and `L + 1`.
    pub stable: bool,
    /// Truncation is provably exact in this degree.
    pub exact: bool,
}

impl HomologyGroup {
    pub fn dim(&self) -> usize {
        self.sub.dim()
    }
}

/// Hochschild homology over a window, keeping the chain model for
/// downstream maps.
pub struct HochschildHomology {
    pub complex: MixedComplex,
    pub groups: BTreeMap<i64, HomologyGroup>,
    pub params: ComputationParams,
}

impl HochschildHomology {
    pub fn group(&self, n: i64) -> Option<&HomologyGroup> {
        self.groups.get(&n)
    }

    pub fn dim(&self, n: i64) -> usize {
        self.groups.get(&n).map_or(0, HomologyGroup::dim)
    }

    pub fn is_stable(&self, n: i64) -> bool {
        self.groups.get(&n).is_some_and(|g| g.stable)
    }

    /// Dimensions per degree over the window.
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.groups.iter().map(|(&n, g)| (n, g.dim())).collect()
    }

    /// Representative of basis class `k` in degree `n`, as a chain over global word numbers.
    pub fn representative(&self, n: i64, k: usize) -> SparseVec {
        self.complex.globalize(n, &self.groups[&n].sub.representatives()[k])
    }

    /// Coordinates of a cycle (global word numbers) in the homology basis of degree `n`.
    pub fn coordinates(&self, n: i64, cycle: &SparseVec) -> Option<SparseVec> {
        self.groups.get(&n)?.sub.coordinates(&self.complex.localize(n, cycle))
    }

    pub fn presentation(&self) -> HomologyPresentation {
        let degrees = self
            .groups
            .iter()
            .map(|(&n, g)| {
                let reps = g
                    .sub
                    .representatives()
                    .iter()
                    .map(|r| format_chain(&self.complex.globalize(n, r), |w| self.complex.label(w).to_string()))
                    .collect();
                (n, DegreeEntry { dim: g.dim(), stable: g.stable, representatives: reps })
            })
            .collect();
        HomologyPresentation {
            invariant: "HH".into(),
            bar_length: self.params.max_bar_length,
            u_power: None,
            window: self.params.window,
            degrees,
        }
    }
}

/// Serializable per-degree homology summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyPresentation {
    pub invariant: String,
    pub bar_length: usize,
    pub u_power: Option<usize>,
    pub window: (i64, i64),
    pub degrees: BTreeMap<i64, DegreeEntry>,
}

impl HomologyPresentation {
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.degrees.iter().map(|(&n, e)| (n, e.dim)).collect()
    }

    pub fn all_stable(&self) -> bool {
        self.degrees.values().all(|e| e.stable)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeEntry {
    pub dim: usize,
    pub stable: bool,
    pub representatives: Vec<String>,
}

/// Formats `Σ c_i · [label_i]`.
pub(crate) fn format_chain(v: &SparseVec, label: impl Fn(usize) -> String) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.iter().map(|(i, c)| format!("{}·[{}]", format_rational(c), label(i))).collect::<Vec<_>>().join(" + ")
}

/// Hochschild homology of `c` over the window of `params`.
///
/// Degrees where the truncation is provably exact are stable outright;
/// elsewhere the dimension is recomputed at bar length `L + 1` and the
/// degree is stable only if the two agree.
pub fn hh(c: &DGCategory, params: &ComputationParams) -> Result<HochschildHomology> {
    hh_with(build_reduced_complex(c, params.max_bar_length), c, params)
}

/// As [`hh`], reusing an already built complex at bar length `L`.
pub fn hh_with(complex: MixedComplex, c: &DGCategory, params: &ComputationParams) -> Result<HochschildHomology> {
    let frontier = complex.frontier();
    let mut groups = BTreeMap::new();
    let mut longer: Option<MixedComplex> = None;
    for n in params.degrees() {
        let sub = Subquotient::new(&complex.b_matrix(n + 1), &complex.b_matrix(n))?;
        let exact = frontier.hh_exact(n);
        let stable = exact || {
            let next = longer.get_or_insert_with(|| build_reduced_complex(c, params.max_bar_length + 1));
            homology_dim(next, n)? == sub.dim()
        };
        groups.insert(n, HomologyGroup { degree: n, sub, stable, exact });
    }
    Ok(HochschildHomology { complex, groups, params: *params })
}

pub(crate) fn homology_dim(complex: &MixedComplex, n: i64) -> Result<usize> {
    let out = complex.b_matrix(n);
    Ok(out.cols() - rank(&out) - rank(&complex.b_matrix(n + 1)))
}
