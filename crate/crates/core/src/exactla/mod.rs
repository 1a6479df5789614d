//! Exact sparse linear algebra over the rationals.
//!
//! Everything here works on column vectors stored as sorted `(index, value)`
//! lists with no stored zeros. Elimination is semi-echelon: every stored
//! basis vector is normalized so that its smallest index (its pivot) carries
//! a coefficient of one, and reduction always eliminates the smallest pivot
//! index first. The pivot order therefore depends only on the input order,
//! which keeps homology bases reproducible between runs.

mod echelon;
pub mod modp;
mod rational;

pub use echelon::EchelonBasis;
pub use rational::{format_rational, int, parse_rational, Q};

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A sparse vector with entries sorted by index and no stored zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Q)>,
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, (i, v)) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}:{v}")?;
        }
        f.write_str("]")
    }
}

impl SparseVec {
    pub fn new() -> Self {
        Self { entries: Vec::new() }
    }

    pub fn unit(index: usize) -> Self {
        Self { entries: vec![(index, Q::one())] }
    }

    /// Builds a vector from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Q)>>(pairs: I) -> Self {
        let mut raw: Vec<(usize, Q)> = pairs.into_iter().collect();
        raw.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Q)> = Vec::with_capacity(raw.len());
        for (i, v) in raw {
            match entries.last_mut() {
                Some((j, w)) if *j == i => *w += v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        Self { entries }
    }

    pub fn from_dense(values: &[Q]) -> Self {
        Self { entries: values.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect() }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, index: usize) -> Q {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn entries(&self) -> &[(usize, Q)] {
        &self.entries
    }

    pub fn leading(&self) -> Option<(usize, &Q)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scaled(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Self { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect() }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &SparseVec, c: &Q) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => out.push(a.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, w) = b.next().unwrap();
                    out.push((*j, w * c));
                }
                (Some(_), Some(_)) => {
                    let (i, v) = a.next().unwrap();
                    let (_, w) = b.next().unwrap();
                    let s = v + w * c;
                    if !s.is_zero() {
                        out.push((i, s));
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (j, w) = b.next().unwrap();
                    out.push((*j, w * c));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn add(&self, other: &SparseVec) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Q::one());
        out
    }

    pub fn sub(&self, other: &SparseVec) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    /// Relabels indices through `f`; `None` drops the entry.
    pub fn remap<F: Fn(usize) -> Option<usize>>(&self, f: F) -> Self {
        Self::from_pairs(self.entries.iter().filter_map(|(i, v)| f(*i).map(|j| (j, v.clone()))))
    }

    pub fn dot(&self, other: &SparseVec) -> Q {
        let mut acc = Q::zero();
        let (mut x, mut y) = (0, 0);
        while x < self.entries.len() && y < other.entries.len() {
            let (i, v) = &self.entries[x];
            let (j, w) = &other.entries[y];
            match i.cmp(j) {
                std::cmp::Ordering::Less => x += 1,
                std::cmp::Ordering::Greater => y += 1,
                std::cmp::Ordering::Equal => {
                    acc += v * w;
                    x += 1;
                    y += 1;
                }
            }
        }
        acc
    }
}

impl FromIterator<(usize, Q)> for SparseVec {
    fn from_iter<I: IntoIterator<Item = (usize, Q)>>(iter: I) -> Self {
        Self::from_pairs(iter)
    }
}

/// A sparse matrix stored by columns.
///
/// Chain maps are naturally described column by column (the image of each
/// basis element), so that is the primary layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols: vec![SparseVec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: (0..n).map(SparseVec::unit).collect() }
    }

    /// Panics if a column has an entry outside `0..rows`.
    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Self {
        for c in &cols {
            if let Some(m) = c.max_index() {
                assert!(m < rows, "column entry {m} out of bounds for {rows} rows");
            }
        }
        Self { rows, cols }
    }

    pub fn from_rows(cols: usize, rows: &[SparseVec]) -> Self {
        let mut pairs: Vec<Vec<(usize, Q)>> = vec![Vec::new(); cols];
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row.iter() {
                assert!(c < cols, "row entry {c} out of bounds for {cols} columns");
                pairs[c].push((r, v.clone()));
            }
        }
        Self { rows: rows.len(), cols: pairs.into_iter().map(SparseVec::from_pairs).collect() }
    }

    pub fn from_dense(rows: &[Vec<Q>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let sparse: Vec<SparseVec> = rows.iter().map(|r| SparseVec::from_dense(r)).collect();
        Self::from_rows(ncols, &sparse)
    }

    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, Q)>) -> Self {
        let mut pairs: Vec<Vec<(usize, Q)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r},{c}) out of bounds");
            pairs[c].push((r, v));
        }
        Self { rows, cols: pairs.into_iter().map(SparseVec::from_pairs).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        self.cols[c].get(r)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::nnz).sum()
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, c) in v.iter() {
            out.add_scaled(&self.cols[j], c);
        }
        out
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows, "dimension mismatch in matrix product");
        SparseMatrix { rows: self.rows, cols: other.cols.iter().map(|c| self.mul_vec(c)).collect() }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()));
        SparseMatrix { rows: self.rows, cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scaled(&self, c: &Q) -> SparseMatrix {
        SparseMatrix { rows: self.rows, cols: self.cols.iter().map(|v| v.scaled(c)).collect() }
    }

    pub fn transpose(&self) -> SparseMatrix {
        Self::from_rows(self.rows, &self.cols)
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut out = vec![vec![Q::zero(); self.cols()]; self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col.iter() {
                out[r][c] = v.clone();
            }
        }
        out
    }
}

/// Rank of `m` over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    let mut basis = EchelonBasis::new(false);
    for col in m.columns() {
        basis.insert(col.clone(), None);
    }
    basis.len()
}

/// A basis of the kernel of `m`; its length is `cols - rank`.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<SparseVec> {
    kernel_with_free_columns(m).0
}

/// Kernel basis together with the non-pivot column each vector belongs to.
/// The vector for free column `j` has coefficient one at `j` and is otherwise
/// supported on pivot columns, so a kernel element is determined by its
/// entries on the free columns.
fn kernel_with_free_columns(m: &SparseMatrix) -> (Vec<SparseVec>, Vec<usize>) {
    let mut basis = EchelonBasis::new(true);
    let mut kernel = Vec::new();
    let mut free = Vec::new();
    for (j, col) in m.columns().iter().enumerate() {
        if let Some(tag) = basis.insert(col.clone(), Some(SparseVec::unit(j))).dependency() {
            kernel.push(tag);
            free.push(j);
        }
    }
    (kernel, free)
}

/// Solves `m x = target`, returning `None` when the target is not in the image.
pub fn solve(m: &SparseMatrix, target: &SparseVec) -> Option<SparseVec> {
    ColumnSolver::new(m).solve(target)
}

/// A reusable factorization of the column space of a matrix.
pub struct ColumnSolver {
    basis: EchelonBasis,
}

impl ColumnSolver {
    pub fn new(m: &SparseMatrix) -> Self {
        let mut basis = EchelonBasis::new(true);
        for (j, col) in m.columns().iter().enumerate() {
            basis.insert(col.clone(), Some(SparseVec::unit(j)));
        }
        Self { basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn solve(&self, target: &SparseVec) -> Option<SparseVec> {
        let (residual, tag) = self.basis.reduce(target.clone(), Some(SparseVec::new()));
        residual.is_zero().then(|| tag.unwrap().neg())
    }
}

/// Coset representatives of `ambient / sub`.
///
/// The representatives are drawn from `ambient` in order. Fails with
/// [`Error::Inconsistent`] when some vector of `sub` is outside `span(ambient)`.
pub fn quotient_basis(sub: &[SparseVec], ambient: &[SparseVec]) -> Result<Vec<SparseVec>> {
    let mut amb = EchelonBasis::new(false);
    for v in ambient {
        amb.insert(v.clone(), None);
    }
    for (k, v) in sub.iter().enumerate() {
        if !amb.contains(v) {
            return Err(Error::Inconsistent(format!("subspace vector {k} is not contained in the ambient span")));
        }
    }
    let mut q = EchelonBasis::new(false);
    for v in sub {
        q.insert(v.clone(), None);
    }
    let mut reps = Vec::new();
    for v in ambient {
        if q.insert(v.clone(), None).is_independent() {
            reps.push(v.clone());
        }
    }
    Ok(reps)
}

/// Determinant of a square matrix.
pub fn determinant(m: &SparseMatrix) -> Q {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a = m.to_dense();
    let mut det = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            for c in col..n {
                let sub = &f * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

/// Cycles modulo boundaries at one spot of a chain complex.
///
/// `incoming` maps the next chain group into this one; `outgoing` maps this
/// group to the previous one. Coordinates of any cycle with respect to the
/// chosen representatives are available through [`Subquotient::coordinates`].
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient_dim: usize,
    reps: Vec<SparseVec>,
    basis: EchelonBasis,
    cycles: Option<CycleCoordinates>,
}

/// Cycle basis from [`kernel_with_free_columns`]. When present, `basis` lives
/// in cycle coordinates instead of the ambient space.
#[derive(Clone, Debug)]
struct CycleCoordinates {
    slot: HashMap<usize, usize>,
    vectors: Vec<SparseVec>,
}

impl CycleCoordinates {
    fn restrict(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_pairs(v.iter().filter_map(|(i, c)| self.slot.get(&i).map(|&k| (k, c.clone()))))
    }

    /// Cycle coordinates of `v`, or `None` if `v` is not a cycle.
    fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let coords = self.restrict(v);
        let mut residual: HashMap<usize, Q> = v.iter().map(|(i, c)| (i, c.clone())).collect();
        for (k, c) in coords.iter() {
            for (i, x) in self.vectors[k].iter() {
                *residual.entry(i).or_insert_with(Q::zero) -= c * x;
            }
        }
        residual.values().all(|x| x.is_zero()).then_some(coords)
    }
}

impl Subquotient {
    pub fn new(incoming: &SparseMatrix, outgoing: &SparseMatrix) -> Result<Self> {
        let n = outgoing.cols();
        if incoming.rows() != n {
            return Err(Error::Inconsistent(format!("incoming map has {} rows but the chain group has dimension {n}", incoming.rows())));
        }
        if !outgoing.mul(incoming).is_zero() {
            return Err(Error::Inconsistent("composite of consecutive differentials is nonzero".into()));
        }
        let (vectors, free) = kernel_with_free_columns(outgoing);
        let cycles = CycleCoordinates { slot: free.into_iter().enumerate().map(|(k, j)| (j, k)).collect(), vectors };
        let mut basis = EchelonBasis::new(true);
        for b in incoming.columns() {
            basis.insert(cycles.restrict(b), Some(SparseVec::new()));
        }
        let mut reps = Vec::new();
        for (k, z) in cycles.vectors.iter().enumerate() {
            let tag = SparseVec::unit(reps.len());
            if basis.insert(SparseVec::unit(k), Some(tag)).is_independent() {
                reps.push(z.clone());
            }
        }
        Ok(Self { ambient_dim: n, reps, basis, cycles: Some(cycles) })
    }

    /// Builds the quotient `span(cycles) / span(boundaries)`; the boundaries
    /// must lie in the span of the cycles.
    pub fn from_cycles(ambient_dim: usize, boundaries: &[SparseVec], cycles: Vec<SparseVec>) -> Result<Self> {
        let mut basis = EchelonBasis::new(true);
        for b in boundaries {
            basis.insert(b.clone(), Some(SparseVec::new()));
        }
        let mut reps = Vec::new();
        for z in cycles {
            let tag = SparseVec::unit(reps.len());
            if basis.insert(z.clone(), Some(tag)).is_independent() {
                reps.push(z);
            }
        }
        Ok(Self { ambient_dim, reps, basis, cycles: None })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn representatives(&self) -> &[SparseVec] {
        &self.reps
    }

    /// Coordinates of the class of `cycle`, or `None` if `cycle` is not in
    /// `span(cycles) + span(boundaries)`.
    pub fn coordinates(&self, cycle: &SparseVec) -> Option<SparseVec> {
        let v = match &self.cycles {
            Some(cycles) => cycles.coordinates(cycle)?,
            None => cycle.clone(),
        };
        let (residual, tag) = self.basis.reduce(v, Some(SparseVec::new()));
        residual.is_zero().then(|| tag.unwrap().neg())
    }

    pub fn is_boundary(&self, cycle: &SparseVec) -> bool {
        self.coordinates(cycle).is_some_and(|c| c.is_zero())
    }

    /// Matrix of the map induced by `f` into `target`, with columns indexed
    /// by this quotient's representatives.
    pub fn induced_matrix<F: Fn(&SparseVec) -> SparseVec>(&self, target: &Subquotient, f: F) -> Result<SparseMatrix> {
        let mut cols = Vec::with_capacity(self.dim());
        for (k, r) in self.reps.iter().enumerate() {
            let image = f(r);
            let coords = target
                .coordinates(&image)
                .ok_or_else(|| Error::Inconsistent(format!("image of representative {k} is not a cycle of the target")))?;
            cols.push(coords);
        }
        Ok(SparseMatrix::from_columns(target.dim(), cols))
    }
}

/// Index of each item in a list, for building basis lookups.
pub fn index_map<T: std::hash::Hash + Eq + Clone>(items: &[T]) -> HashMap<T, usize> {
    items.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect()
}

#[cfg(test)]
mod tests;
