use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, One, ToPrimitive, Zero};

use super::{SparseVec, Q};

/// Outcome of inserting a vector into an [`EchelonBasis`].
pub enum Insertion {
    Independent,
    /// The vector was dependent; carries the accumulated tag of the zero
    /// residual when tags are tracked.
    Dependent(Option<SparseVec>),
}

impl Insertion {
    pub fn is_independent(&self) -> bool {
        matches!(self, Insertion::Independent)
    }

    pub fn dependency(self) -> Option<SparseVec> {
        match self {
            Insertion::Independent => None,
            Insertion::Dependent(t) => t,
        }
    }
}

/// Incrementally built semi-echelon basis of a subspace.
///
/// Each stored vector has a distinct pivot (its smallest index) normalized
/// to one. Optionally every stored vector carries a *tag*, an arbitrary
/// vector transformed by the same row operations; if tags start as unit
/// vectors `e_j` for columns `c_j` of a matrix `M`, the invariant
/// `stored = M * tag` holds throughout.
///
/// Arithmetic runs on machine-word rationals until an operation would
/// overflow; the basis is then converted to big rationals and the step is
/// redone. Both paths perform the same exact operations, so the stored
/// vectors do not depend on which one ran.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    repr: Repr,
}

#[derive(Clone, Debug)]
enum Repr {
    Small(Core<Small>),
    Big(Core<Q>),
}

impl EchelonBasis {
    pub fn new(track_tags: bool) -> Self {
        Self { repr: Repr::Small(Core::new(track_tags)) }
    }

    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::Small(c) => c.vecs.len(),
            Repr::Big(c) => c.vecs.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vectors(&self) -> Vec<SparseVec> {
        match &self.repr {
            Repr::Small(c) => c.vecs.iter().map(|v| widen(v)).collect(),
            Repr::Big(c) => c.vecs.iter().map(|v| SparseVec { entries: v.clone() }).collect(),
        }
    }

    /// Reduces `v` against the basis. Returns the residual (which has no
    /// entry on any pivot) together with `tag - sum c_k tag_k`.
    pub fn reduce(&self, v: SparseVec, tag: Option<SparseVec>) -> (SparseVec, Option<SparseVec>) {
        match &self.repr {
            Repr::Small(core) => {
                if let Some((r, t)) = narrow_pair(&v, tag.as_ref()).and_then(|(v, t)| core.reduce(v, t)) {
                    return (widen(&r), t.map(|t| widen(&t)));
                }
                big_reduce(&core.to_big(), v, tag)
            }
            Repr::Big(core) => big_reduce(core, v, tag),
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone(), None).0.is_zero()
    }

    pub fn insert(&mut self, v: SparseVec, tag: Option<SparseVec>) -> Insertion {
        if let Repr::Small(core) = &mut self.repr {
            let tag = core.tags.is_some().then(|| tag.clone().unwrap_or_default());
            if let Some(done) = narrow_pair(&v, tag.as_ref()).and_then(|(v, t)| core.insert(v, t)) {
                return match done {
                    None => Insertion::Independent,
                    Some(t) => Insertion::Dependent(t.map(|t| widen(&t))),
                };
            }
            self.repr = Repr::Big(core.to_big());
        }
        let Repr::Big(core) = &mut self.repr else { unreachable!() };
        let tag = core.tags.is_some().then(|| tag.unwrap_or_default().entries);
        match core.insert(v.entries, tag).expect("big rationals do not overflow") {
            None => Insertion::Independent,
            Some(t) => Insertion::Dependent(t.map(|entries| SparseVec { entries })),
        }
    }
}

fn big_reduce(core: &Core<Q>, v: SparseVec, tag: Option<SparseVec>) -> (SparseVec, Option<SparseVec>) {
    let (r, t) = core.reduce(v.entries, tag.map(|t| t.entries)).expect("big rationals do not overflow");
    (SparseVec { entries: r }, t.map(|entries| SparseVec { entries }))
}

type Small = Ratio<i64>;
type Entries<S> = Vec<(usize, S)>;

/// Exact field arithmetic that may refuse an operation.
trait Scalar: Clone + std::fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    fn recip(&self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn add(&self, other: &Self) -> Option<Self>;
}

impl Scalar for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn recip(&self) -> Option<Self> {
        Some(Ratio::recip(self))
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
}

impl Scalar for Small {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn neg(&self) -> Option<Self> {
        Some(Ratio::new_raw(self.numer().checked_neg()?, *self.denom()))
    }
    fn recip(&self) -> Option<Self> {
        let (n, d) = (*self.numer(), *self.denom());
        if n < 0 {
            Some(Ratio::new_raw(d.checked_neg()?, n.checked_neg()?))
        } else {
            Some(Ratio::new_raw(d, n))
        }
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(other)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(other)
    }
}

fn narrow(q: &Q) -> Option<Small> {
    Some(Ratio::new_raw(q.numer().to_i64()?, q.denom().to_i64()?))
}

fn narrow_vec(v: &SparseVec) -> Option<Entries<Small>> {
    v.entries.iter().map(|(i, q)| Some((*i, narrow(q)?))).collect()
}

fn narrow_pair(v: &SparseVec, tag: Option<&SparseVec>) -> Option<(Entries<Small>, Option<Entries<Small>>)> {
    let tag = match tag {
        Some(t) => Some(narrow_vec(t)?),
        None => None,
    };
    Some((narrow_vec(v)?, tag))
}

fn widen_scalar(s: &Small) -> Q {
    Ratio::new_raw(BigInt::from(*s.numer()), BigInt::from(*s.denom()))
}

fn widen(v: &[(usize, Small)]) -> SparseVec {
    SparseVec { entries: v.iter().map(|(i, s)| (*i, widen_scalar(s))).collect() }
}

fn dense<S: Scalar>(v: &[(usize, S)], width: usize) -> Vec<S> {
    let mut out = vec![S::zero(); width];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

fn sparse<S: Scalar>(v: Vec<S>) -> Entries<S> {
    v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

#[derive(Clone, Debug)]
struct Core<S> {
    vecs: Vec<Entries<S>>,
    tags: Option<Vec<Entries<S>>>,
    pivot_of: HashMap<usize, usize>,
    /// One past the largest index among stored vectors, and among tags.
    width: usize,
    tag_width: usize,
}

impl<S: Scalar> Core<S> {
    fn new(track_tags: bool) -> Self {
        Self { vecs: Vec::new(), tags: track_tags.then(Vec::new), pivot_of: HashMap::new(), width: 0, tag_width: 0 }
    }

    fn reduce(&self, v: Entries<S>, tag: Option<Entries<S>>) -> Option<(Entries<S>, Option<Entries<S>>)> {
        // dense accumulators; pivots are smallest indices, so a single
        // increasing sweep eliminates every pivot entry
        let Some(start) = v.first().map(|e| e.0) else {
            return Some((v, tag));
        };
        let width = |e: &Entries<S>| e.last().map_or(0, |l| l.0 + 1);
        let mut acc = dense(&v, self.width.max(width(&v)));
        let mut tag_acc = match (&tag, &self.tags) {
            (Some(t), Some(_)) => Some(dense(t, self.tag_width.max(width(t)))),
            _ => None,
        };
        for col in start..acc.len() {
            if acc[col].is_zero() {
                continue;
            }
            let Some(&k) = self.pivot_of.get(&col) else { continue };
            let c = acc[col].neg()?;
            acc[col] = S::zero();
            for (i, x) in &self.vecs[k][1..] {
                acc[*i] = acc[*i].add(&x.mul(&c)?)?;
            }
            if let (Some(t), Some(tags)) = (tag_acc.as_mut(), self.tags.as_ref()) {
                for (i, x) in &tags[k] {
                    t[*i] = t[*i].add(&x.mul(&c)?)?;
                }
            }
        }
        let tag = match tag_acc {
            Some(t) => Some(sparse(t)),
            None => tag,
        };
        Some((sparse(acc), tag))
    }

    /// `None` on overflow, leaving the basis untouched; otherwise `None`
    /// inside for an independent vector and the dependency tag if not.
    #[allow(clippy::type_complexity)]
    fn insert(&mut self, v: Entries<S>, tag: Option<Entries<S>>) -> Option<Option<Option<Entries<S>>>> {
        let (residual, tag) = self.reduce(v, tag)?;
        let Some((pivot, lead)) = residual.first().cloned() else {
            return Some(Some(tag));
        };
        let inv = lead.recip()?;
        let scale = |v: Entries<S>| -> Option<Entries<S>> {
            if inv.is_one() {
                return Some(v);
            }
            v.into_iter().map(|(i, x)| Some((i, x.mul(&inv)?))).collect()
        };
        let normalized = scale(residual)?;
        let tag = match tag {
            Some(t) => Some(scale(t)?),
            None => None,
        };
        if let (Some(tags), Some(t)) = (self.tags.as_mut(), tag) {
            self.tag_width = self.tag_width.max(t.last().map_or(0, |l| l.0 + 1));
            tags.push(t);
        }
        self.width = self.width.max(normalized.last().map_or(0, |l| l.0 + 1));
        self.pivot_of.insert(pivot, self.vecs.len());
        self.vecs.push(normalized);
        Some(None)
    }
}

impl Core<Small> {
    fn to_big(&self) -> Core<Q> {
        let convert = |v: &Entries<Small>| v.iter().map(|(i, s)| (*i, widen_scalar(s))).collect();
        Core {
            vecs: self.vecs.iter().map(convert).collect(),
            tags: self.tags.as_ref().map(|t| t.iter().map(convert).collect()),
            pivot_of: self.pivot_of.clone(),
            width: self.width,
            tag_width: self.tag_width,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int;

    #[test]
    fn overflow_promotes_without_changing_results() {
        // entries near i64::MAX force the big path partway through
        let huge = Q::from_integer(BigInt::from(i64::MAX));
        let cols = [
            SparseVec::from_pairs([(0, int(2)), (1, int(3))]),
            SparseVec::from_pairs([(0, huge.clone()), (1, int(1))]),
            SparseVec::from_pairs([(0, int(1)), (1, huge.clone() * int(4))]),
        ];
        let mut basis = EchelonBasis::new(true);
        let mut big = Core::<Q>::new(true);
        for (j, c) in cols.iter().enumerate() {
            let a = basis.insert(c.clone(), Some(SparseVec::unit(j))).dependency();
            let b = big.insert(c.entries.clone(), Some(SparseVec::unit(j).entries)).unwrap().flatten();
            assert_eq!(a.map(|t| t.entries), b);
        }
        assert!(matches!(basis.repr, Repr::Big(_)));
        let want: Vec<SparseVec> = big.vecs.iter().map(|v| SparseVec { entries: v.clone() }).collect();
        assert_eq!(basis.vectors(), want);
    }

    #[test]
    fn small_recip_handles_signs() {
        let x = Small::new(-3, 7);
        assert_eq!(Scalar::recip(&x), Some(Small::new(-7, 3)));
        assert_eq!(Scalar::neg(&Small::new_raw(i64::MIN, 1)), None);
        assert!(!Scalar::is_one(&Small::new(1, 2)) && Scalar::is_one(&Small::new(4, 4)));
    }
}
