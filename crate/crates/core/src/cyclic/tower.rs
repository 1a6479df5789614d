use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::exactla::{SparseMatrix, SparseVec, Subquotient, Q};
use crate::hochschild::MixedComplex;

/// Which u-truncation of the mixed complex a [`Tower`] realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TowerKind {
    /// Cells `w·u^i` with `i < N` and `len(w) ≤ K + i`, in degree `|w| - 2i`.
    /// The differential is `b + uB`; `u` raises the power and kills `u^N`.
    Negative { base_length: usize, u_power: usize },
    /// Cells `w·u^{-i}` with `i < N` and `len(w) + i ≤ L`, in degree
    /// `|w| + 2i`. The differential is `b + uB`; `u` lowers the power and
    /// kills `u^0`.
    Cyclic { bar_length: usize, u_power: usize },
}

impl TowerKind {
    fn u_power(&self) -> usize {
        match *self {
            TowerKind::Negative { u_power, .. } | TowerKind::Cyclic { u_power, .. } => u_power,
        }
    }

    fn admits(&self, len: usize, i: usize) -> bool {
        match *self {
            TowerKind::Negative { base_length, u_power } => i < u_power && len <= base_length + i,
            TowerKind::Cyclic { bar_length, u_power } => i < u_power && len + i <= bar_length,
        }
    }

    fn longest_word(&self) -> usize {
        match *self {
            TowerKind::Negative { base_length, u_power } => (base_length + u_power).saturating_sub(1),
            TowerKind::Cyclic { bar_length, .. } => bar_length,
        }
    }

    fn cell_degree(&self, word_degree: i64, i: usize) -> i64 {
        match self {
            TowerKind::Negative { .. } => word_degree - 2 * i as i64,
            TowerKind::Cyclic { .. } => word_degree + 2 * i as i64,
        }
    }
}

/// A u-truncated total complex built on a shared mixed complex.
///
/// Cells are pairs `(word, power)`; chains in degree `n` are indexed by
/// position in [`Tower::cells`].
#[derive(Clone)]
pub struct Tower {
    mc: Arc<MixedComplex>,
    kind: TowerKind,
    cells: BTreeMap<i64, Vec<(usize, usize)>>,
    position: HashMap<(usize, usize), usize>,
    cache: HomologyCache,
}

/// Homology already computed for some tower over the same mixed complex.
pub type HomologyCache = Arc<Mutex<HashMap<(TowerKind, i64), Subquotient>>>;

impl Tower {
    pub fn new(mc: Arc<MixedComplex>, kind: TowerKind) -> Result<Self> {
        Self::with_cache(mc, kind, HomologyCache::default())
    }

    /// A tower sharing `cache` with other towers over the same complex.
    pub fn with_cache(mc: Arc<MixedComplex>, kind: TowerKind, cache: HomologyCache) -> Result<Self> {
        if kind.longest_word() > mc.bar_length() {
            return Err(Error::Inconsistent(format!(
                "tower needs words of length {} but the complex stops at {}",
                kind.longest_word(),
                mc.bar_length()
            )));
        }
        let mut cells: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
        let mut position = HashMap::new();
        for i in 0..kind.u_power() {
            for w in 0..mc.num_words() {
                if kind.admits(mc.length(w), i) {
                    let list = cells.entry(kind.cell_degree(mc.degree(w), i)).or_default();
                    position.insert((w, i), list.len());
                    list.push((w, i));
                }
            }
        }
        Ok(Self { mc, kind, cells, position, cache })
    }

    pub fn kind(&self) -> TowerKind {
        self.kind
    }

    pub fn complex(&self) -> &MixedComplex {
        &self.mc
    }

    pub fn cells(&self, n: i64) -> &[(usize, usize)] {
        self.cells.get(&n).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, n: i64) -> usize {
        self.cells(n).len()
    }

    pub fn position(&self, word: usize, power: usize) -> Option<usize> {
        self.position.get(&(word, power)).copied()
    }

    /// Places a chain of words (global word numbers) at power `i`, as a
    /// local chain; fails if some cell is outside the truncation.
    pub fn place(&self, chain: &SparseVec, i: usize) -> Result<SparseVec> {
        let mut out = Vec::with_capacity(chain.nnz());
        for (w, c) in chain.iter() {
            let p = self
                .position(w, i)
                .ok_or_else(|| Error::Inconsistent(format!("cell {}·u^{i} lies outside the truncation", self.mc.label(w))))?;
            out.push((p, c.clone()));
        }
        Ok(SparseVec::from_pairs(out))
    }

    /// Splits a local chain of degree `n` into `(power, chain of global words)`.
    pub fn split(&self, n: i64, chain: &SparseVec) -> BTreeMap<usize, SparseVec> {
        let cells = self.cells(n);
        let mut out: BTreeMap<usize, Vec<(usize, Q)>> = BTreeMap::new();
        for (p, c) in chain.iter() {
            let (w, i) = cells[p];
            out.entry(i).or_default().push((w, c.clone()));
        }
        out.into_iter().map(|(i, v)| (i, SparseVec::from_pairs(v))).collect()
    }

    /// The differential from degree `n` to degree `n - 1`.
    pub fn differential(&self, n: i64) -> SparseMatrix {
        let rows = self.dim(n - 1);
        let u = self.kind.u_power();
        let cols = self
            .cells(n)
            .iter()
            .map(|&(w, i)| {
                let mut out = Vec::new();
                for (v, c) in self.mc.b_of(w).iter() {
                    out.push((self.position[&(v, i)], c.clone()));
                }
                let shifted = match self.kind {
                    TowerKind::Negative { .. } => (i + 1 < u).then_some(i + 1),
                    TowerKind::Cyclic { .. } => i.checked_sub(1),
                };
                if let Some(j) = shifted {
                    for (v, c) in self.mc.big_b_of(w).iter() {
                        out.push((self.position[&(v, j)], c.clone()));
                    }
                }
                SparseVec::from_pairs(out)
            })
            .collect();
        SparseMatrix::from_columns(rows, cols)
    }

    pub fn homology(&self, n: i64) -> Result<Subquotient> {
        if let Some(h) = self.cache.lock().unwrap().get(&(self.kind, n)) {
            return Ok(h.clone());
        }
        let h = Subquotient::new(&self.differential(n + 1), &self.differential(n))?;
        self.cache.lock().unwrap().insert((self.kind, n), h.clone());
        Ok(h)
    }

    pub fn homology_dim(&self, n: i64) -> usize {
        if let Some(h) = self.cache.lock().unwrap().get(&(self.kind, n)) {
            return h.dim();
        }
        let out = self.differential(n);
        out.cols() - crate::exactla::rank(&out) - crate::exactla::rank(&self.differential(n + 1))
    }

    /// Label of a cell, `w·u^i` or `w·u^-i`.
    pub fn cell_label(&self, n: i64, p: usize) -> String {
        let (w, i) = self.cells(n)[p];
        let word = format!("[{}]", self.mc.label(w));
        match (i, self.kind) {
            (0, _) => word,
            (i, TowerKind::Negative { .. }) => format!("{word}·u^{i}"),
            (i, TowerKind::Cyclic { .. }) => format!("{word}·u^-{i}"),
        }
    }
}

/// Whether the map sending each cell of `from` to the same cell of `to`
/// (or to zero if `to` lacks it) induces an isomorphism on `H_n`.
///
/// Callers pass pairs where this is a chain map: an inclusion of
/// truncations, or the reduction killing the top power of `u`.
pub fn isomorphic_on(from: &Tower, to: &Tower, n: i64) -> Result<bool> {
    let source = from.homology(n)?;
    let target = to.homology(n)?;
    if source.dim() != target.dim() {
        return Ok(false);
    }
    let cells = from.cells(n);
    let columns = source
        .representatives()
        .iter()
        .map(|rep| {
            let image = SparseVec::from_pairs(rep.iter().filter_map(|(p, c)| {
                let (w, i) = cells[p];
                to.position(w, i).map(|q| (q, c.clone()))
            }));
            target
                .coordinates(&image)
                .ok_or_else(|| Error::Inconsistent(format!("degree {n}: common-cell map does not send cycles to cycles")))
        })
        .collect::<Result<Vec<_>>>()?;
    let matrix = SparseMatrix::from_columns(target.dim(), columns);
    Ok(crate::exactla::rank(&matrix) == target.dim())
}
