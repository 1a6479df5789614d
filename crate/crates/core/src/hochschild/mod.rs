//! Bar-length truncated reduced Hochschild complexes with their
//! Connes–Tsygan operator.
//!
//! A word `(a_0, a_1, …, a_n)` has head `a_0` and tail `a_1 … a_n`; the
//! composite `a_0 ∘ a_1 ∘ … ∘ a_n` is a loop, so the target of `a_{i+1}` is
//! the source of `a_i` and the source of `a_n` is the target of `a_0`. Tail
//! entries are never identities. The homological degree is
//! `-|a_0| + Σ_{i≥1} (1 - |a_i|)`.
//!
//! Signs come from suspending every slot, `x_i = s a_i` with
//! `|x_i| = |a_i| - 1`, and applying the Koszul rule with
//! `m1(sa) = -s(da)` and `m2(sa, sb) = (-1)^{|sa|} s(a ∘ b)`.

mod checks;
mod functor;
mod homology;

pub use checks::{check_identities, gluing_additivity_check, kunneth_check, AdditivityReport, IdentityReport, KunnethReport};
pub use functor::{apply_functor_on_chains, hh_induced_map, induced_on_hh, InducedMap};
pub(crate) use homology::format_chain;
pub use homology::{hh, hh_with, DegreeEntry, HochschildHomology, HomologyGroup, HomologyPresentation};

use std::collections::{BTreeMap, HashMap};

use num_traits::One;

use crate::dgcore::{sign, DGCategory};
use crate::exactla::{SparseMatrix, SparseVec, Q};

/// A basis morphism in the global enumeration of a category.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub local: usize,
    pub degree: i32,
    pub is_identity: bool,
}

/// Global basis-morphism table of a category.
#[derive(Clone, Debug)]
pub struct MorphismTable {
    pub morphisms: Vec<Morphism>,
    /// Non-identity morphisms grouped by target object.
    into: Vec<Vec<u32>>,
}

impl MorphismTable {
    pub fn new(c: &DGCategory) -> Self {
        let mut morphisms = Vec::with_capacity(c.total_dim());
        let mut into = vec![Vec::new(); c.num_objects()];
        for (x, y, i) in c.basis_morphisms() {
            let m = Morphism { source: x, target: y, local: i, degree: c.hom(x, y).degree(i), is_identity: c.is_identity(x, y, i) };
            debug_assert_eq!(c.global_index(x, y, i), morphisms.len());
            if !m.is_identity {
                into[y].push(morphisms.len() as u32);
            }
            morphisms.push(m);
        }
        Self { morphisms, into }
    }

    pub fn get(&self, g: u32) -> &Morphism {
        &self.morphisms[g as usize]
    }
}

/// Where truncation at bar length `L` is known to be exact.
///
/// With `gap` the minimum of `1 - |a|` over non-identity basis morphisms and
/// `floor` the minimum of `-|a|` over all basis morphisms, a word of length
/// `ℓ` has degree at least `floor + ℓ·gap`. When `gap ≥ 1`, every chain of
/// degree `< (L + 1)·gap + floor` has length at most `L`.
///
/// If the non-identity morphisms form no oriented cycle between objects,
/// word lengths are bounded by `longest` and the truncation is exact as
/// soon as `L` reaches it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Frontier {
    pub bar_length: usize,
    pub gap: Option<i64>,
    pub floor: i64,
    pub longest: Option<usize>,
}

impl Frontier {
    fn of(table: &MorphismTable, bar_length: usize) -> Self {
        let gap = table.morphisms.iter().filter(|m| !m.is_identity).map(|m| 1 - m.degree as i64).min();
        let floor = table.morphisms.iter().map(|m| -(m.degree as i64)).min().unwrap_or(0);
        Self { bar_length, gap, floor, longest: longest_path(table) }
    }

    /// The same bounds for a different bar length.
    pub fn at(&self, bar_length: usize) -> Self {
        Self { bar_length, ..*self }
    }

    /// True when every word of the untruncated complex is present.
    pub fn is_finite(&self) -> bool {
        self.longest.is_some_and(|l| l <= self.bar_length)
    }

    /// True when exactness of the truncation is decided by degree counting.
    pub fn is_analytic(&self) -> bool {
        self.is_finite() || self.gap.is_none_or(|g| g >= 1)
    }

    /// True when all chains of degree `≤ n` are present.
    pub fn chains_complete(&self, n: i64) -> bool {
        if self.is_finite() {
            return true;
        }
        match self.gap {
            None => true,
            Some(g) if g >= 1 => n < (self.bar_length as i64 + 1) * g + self.floor,
            Some(_) => false,
        }
    }

    /// True when `HH_n` of the truncation is provably the true `HH_n`.
    pub fn hh_exact(&self, n: i64) -> bool {
        self.chains_complete(n + 1)
    }
}

/// Length of the longest chain of composable non-identity morphisms, or
/// `None` if there is an oriented cycle.
fn longest_path(table: &MorphismTable) -> Option<usize> {
    let n = table.into.len();
    let mut edges = vec![Vec::new(); n];
    for m in table.morphisms.iter().filter(|m| !m.is_identity) {
        edges[m.source].push(m.target);
    }
    // depth-first with colours; memoized longest path from each object
    fn visit(v: usize, edges: &[Vec<usize>], state: &mut [u8], best: &mut [usize]) -> bool {
        match state[v] {
            1 => return false,
            2 => return true,
            _ => {}
        }
        state[v] = 1;
        let mut longest = 0;
        for &t in &edges[v] {
            if !visit(t, edges, state, best) {
                return false;
            }
            longest = longest.max(best[t] + 1);
        }
        best[v] = longest;
        state[v] = 2;
        true
    }
    let (mut state, mut best) = (vec![0u8; n], vec![0usize; n]);
    for v in 0..n {
        if !visit(v, &edges, &mut state, &mut best) {
            return None;
        }
    }
    Some(best.into_iter().max().unwrap_or(0))
}

/// Test hook for perturbing the sign convention; the default is the
/// convention documented at module level.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SignConvention {
    pub flip_wrap_sign: bool,
}

/// The reduced Hochschild complex truncated at bar length `L`, with `b` and `B`.
#[derive(Clone, Debug)]
pub struct MixedComplex {
    table: MorphismTable,
    words: Vec<Vec<u32>>,
    lookup: HashMap<Vec<u32>, usize>,
    degree: Vec<i64>,
    by_degree: BTreeMap<i64, Vec<usize>>,
    position: Vec<usize>,
    b: Vec<SparseVec>,
    big_b: Vec<SparseVec>,
    labels: Vec<String>,
    frontier: Frontier,
}

impl MixedComplex {
    pub fn num_words(&self) -> usize {
        self.words.len()
    }

    pub fn word(&self, w: usize) -> &[u32] {
        &self.words[w]
    }

    /// Number of tail entries of word `w`.
    pub fn length(&self, w: usize) -> usize {
        self.words[w].len() - 1
    }

    pub fn degree(&self, w: usize) -> i64 {
        self.degree[w]
    }

    pub fn find(&self, word: &[u32]) -> Option<usize> {
        self.lookup.get(word).copied()
    }

    pub fn table(&self) -> &MorphismTable {
        &self.table
    }

    pub fn frontier(&self) -> Frontier {
        self.frontier
    }

    pub fn bar_length(&self) -> usize {
        self.frontier.bar_length
    }

    /// Words of homological degree `n`, in basis order.
    pub fn words_in_degree(&self, n: i64) -> &[usize] {
        self.by_degree.get(&n).map_or(&[], Vec::as_slice)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.by_degree.keys().copied()
    }

    /// Position of word `w` inside its degree.
    pub fn position(&self, w: usize) -> usize {
        self.position[w]
    }

    /// `b` of word `w`, indexed by global word number.
    pub fn b_of(&self, w: usize) -> &SparseVec {
        &self.b[w]
    }

    /// `B` of word `w`, indexed by global word number. Images longer than
    /// the bar length are dropped.
    pub fn big_b_of(&self, w: usize) -> &SparseVec {
        &self.big_b[w]
    }

    /// Human-readable form `a_0 | a_1 | … | a_n`.
    pub fn label(&self, w: usize) -> &str {
        &self.labels[w]
    }

    /// Applies `b` to a chain indexed by global word numbers.
    pub fn apply_b(&self, v: &SparseVec) -> SparseVec {
        apply(&self.b, v)
    }

    pub fn apply_big_b(&self, v: &SparseVec) -> SparseVec {
        apply(&self.big_b, v)
    }

    /// Converts a chain in degree `n` from local positions to global word numbers.
    pub fn globalize(&self, n: i64, v: &SparseVec) -> SparseVec {
        let words = self.words_in_degree(n);
        v.remap(|i| Some(words[i]))
    }

    /// Converts a homogeneous chain of degree `n` to local positions.
    pub fn localize(&self, n: i64, v: &SparseVec) -> SparseVec {
        debug_assert!(v.iter().all(|(w, _)| self.degree[w] == n));
        v.remap(|w| Some(self.position[w]))
    }

    /// Matrix of `b` from degree `n` to degree `n - 1` in local positions.
    pub fn b_matrix(&self, n: i64) -> SparseMatrix {
        self.local_matrix(&self.b, n, n - 1)
    }

    /// Matrix of `B` from degree `n` to degree `n + 1` in local positions.
    pub fn big_b_matrix(&self, n: i64) -> SparseMatrix {
        self.local_matrix(&self.big_b, n, n + 1)
    }

    fn local_matrix(&self, images: &[SparseVec], from: i64, to: i64) -> SparseMatrix {
        let rows = self.words_in_degree(to).len();
        let cols = self.words_in_degree(from).iter().map(|&w| images[w].remap(|u| Some(self.position[u]))).collect();
        SparseMatrix::from_columns(rows, cols)
    }
}

fn apply(images: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (w, c) in v.iter() {
        out.add_scaled(&images[w], c);
    }
    out
}

/// Builds the reduced Hochschild complex of `c` with words of length at most `max_len`.
pub fn build_reduced_complex(c: &DGCategory, max_len: usize) -> MixedComplex {
    build_reduced_complex_with(c, max_len, SignConvention::default())
}

#[doc(hidden)]
pub fn build_reduced_complex_with(c: &DGCategory, max_len: usize, conv: SignConvention) -> MixedComplex {
    let table = MorphismTable::new(c);
    let mut words = Vec::new();
    for len in 0..=max_len {
        for head in 0..table.morphisms.len() as u32 {
            let mut w = vec![head];
            enumerate(&table, len, &mut w, &mut words);
        }
    }
    let lookup: HashMap<Vec<u32>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let degree: Vec<i64> = words.iter().map(|w| word_degree(&table, w)).collect();
    let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    let mut position = vec![0; words.len()];
    for (i, &d) in degree.iter().enumerate() {
        let list = by_degree.entry(d).or_default();
        position[i] = list.len();
        list.push(i);
    }
    let ctx = Ctx { c, table: &table, lookup: &lookup, conv, max_len };
    let b = words.iter().map(|w| ctx.b(w)).collect();
    let big_b = words.iter().map(|w| ctx.big_b(w)).collect();
    let labels = words.iter().map(|w| word_label(c, &table, w)).collect();
    let frontier = Frontier::of(&table, max_len);
    MixedComplex { table, words, lookup, degree, by_degree, position, b, big_b, labels, frontier }
}

fn enumerate(table: &MorphismTable, len: usize, w: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let last = *table.get(*w.last().unwrap());
    if w.len() == len + 1 {
        if last.source == table.get(w[0]).target {
            out.push(w.clone());
        }
        return;
    }
    for &next in &table.into[last.source] {
        w.push(next);
        enumerate(table, len, w, out);
        w.pop();
    }
}

fn word_degree(table: &MorphismTable, w: &[u32]) -> i64 {
    let head = -(table.get(w[0]).degree as i64);
    head + w[1..].iter().map(|&a| 1 - table.get(a).degree as i64).sum::<i64>()
}

fn word_label(c: &DGCategory, table: &MorphismTable, w: &[u32]) -> String {
    w.iter()
        .map(|&a| {
            let m = table.get(a);
            c.hom(m.source, m.target).label(m.local).to_string()
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

struct Ctx<'a> {
    c: &'a DGCategory,
    table: &'a MorphismTable,
    lookup: &'a HashMap<Vec<u32>, usize>,
    conv: SignConvention,
    max_len: usize,
}

impl Ctx<'_> {
    fn sdeg(&self, a: u32) -> i64 {
        self.table.get(a).degree as i64 - 1
    }

    fn global(&self, x: usize, y: usize, local: usize) -> u32 {
        self.c.global_index(x, y, local) as u32
    }

    /// `a ∘ b` as a list of `(global morphism, coefficient)`.
    fn compose(&self, a: u32, b: u32) -> Vec<(u32, Q)> {
        let (ma, mb) = (self.table.get(a), self.table.get(b));
        debug_assert_eq!(mb.target, ma.source);
        self.c
            .compose(mb.source, ma.source, ma.target, ma.local, mb.local)
            .iter()
            .map(|(k, v)| (self.global(mb.source, ma.target, k), v.clone()))
            .collect()
    }

    fn differential(&self, a: u32) -> Vec<(u32, Q)> {
        let m = self.table.get(a);
        self.c
            .apply_d(m.source, m.target, &SparseVec::unit(m.local))
            .iter()
            .map(|(k, v)| (self.global(m.source, m.target, k), v.clone()))
            .collect()
    }

    fn push(&self, out: &mut Vec<(usize, Q)>, word: &[u32], coeff: Q) {
        if word[1..].iter().any(|&a| self.table.get(a).is_identity) {
            return;
        }
        let idx = self.lookup.get(word).copied().expect("shorter loop words are enumerated");
        out.push((idx, coeff));
    }

    fn b(&self, w: &[u32]) -> SparseVec {
        let m = w.len();
        let mut out = Vec::new();
        let mut pre = 0i64;
        for i in 0..m {
            let s = -sign(pre);
            for (r, v) in self.differential(w[i]) {
                let mut nw = w.to_vec();
                nw[i] = r;
                self.push(&mut out, &nw, &v * &s);
            }
            pre += self.sdeg(w[i]);
        }
        pre = 0;
        for i in 0..m.saturating_sub(1) {
            let s = sign(pre + self.sdeg(w[i]));
            for (r, v) in self.compose(w[i], w[i + 1]) {
                let mut nw = Vec::with_capacity(m - 1);
                nw.extend_from_slice(&w[..i]);
                nw.push(r);
                nw.extend_from_slice(&w[i + 2..]);
                self.push(&mut out, &nw, &v * &s);
            }
            pre += self.sdeg(w[i]);
        }
        if m >= 2 {
            let last = self.sdeg(w[m - 1]);
            let rest: i64 = w[..m - 1].iter().map(|&a| self.sdeg(a)).sum();
            let exponent = last * rest + if self.conv.flip_wrap_sign { 0 } else { last };
            let s = sign(exponent);
            for (r, v) in self.compose(w[m - 1], w[0]) {
                let mut nw = Vec::with_capacity(m - 1);
                nw.push(r);
                nw.extend_from_slice(&w[1..m - 1]);
                self.push(&mut out, &nw, &v * &s);
            }
        }
        SparseVec::from_pairs(out)
    }

    fn big_b(&self, w: &[u32]) -> SparseVec {
        let m = w.len();
        if self.table.get(w[0]).is_identity || m > self.max_len {
            return SparseVec::new();
        }
        let sd: Vec<i64> = w.iter().map(|&a| self.sdeg(a)).collect();
        let total: i64 = sd.iter().sum();
        let mut out = Vec::with_capacity(m);
        let mut left = 0i64;
        for i in 0..m {
            let right = total - left;
            let t = self.table.get(w[i]).target;
            let id = self.global(t, t, self.c.id(t));
            let mut nw = Vec::with_capacity(m + 1);
            nw.push(id);
            nw.extend_from_slice(&w[i..]);
            nw.extend_from_slice(&w[..i]);
            self.push(&mut out, &nw, sign(left * right) * Q::one());
            left += sd[i];
        }
        SparseVec::from_pairs(out)
    }
}

#[cfg(test)]
mod tests;
