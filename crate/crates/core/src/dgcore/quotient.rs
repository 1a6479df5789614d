use std::collections::HashMap;

use super::{sign, DGCategory, DGFunctor, GradedBasis};
use crate::error::{Error, Result};
use crate::exactla::{SparseMatrix, SparseVec};

const EPS: &str = "∘ε∘";

/// A basis word `f_n ε f_{n-1} ε … ε f_0`, stored source-first as
/// `[f_0, …, f_n]` (local basis indices in the original category).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Word(Vec<usize>);

struct Builder<'a> {
    c: &'a DGCategory,
    e: usize,
    lo: i32,
    hi: i32,
}

impl Builder<'_> {
    /// Objects `(source, target)` of part `i` in a word of `n + 1` parts from `x` to `y`.
    fn part_objects(&self, x: usize, y: usize, n: usize, i: usize) -> (usize, usize) {
        let s = if i == 0 { x } else { self.e };
        let t = if i == n { y } else { self.e };
        (s, t)
    }

    fn degree(&self, x: usize, y: usize, w: &Word) -> i32 {
        let n = w.0.len() - 1;
        let parts: i32 =
            w.0.iter()
                .enumerate()
                .map(|(i, &f)| {
                    let (s, t) = self.part_objects(x, y, n, i);
                    self.c.hom(s, t).degree(f)
                })
                .sum();
        parts - n as i32
    }

    fn label(&self, x: usize, y: usize, w: &Word) -> String {
        let n = w.0.len() - 1;
        let mut pieces: Vec<&str> =
            w.0.iter()
                .enumerate()
                .map(|(i, &f)| {
                    let (s, t) = self.part_objects(x, y, n, i);
                    self.c.hom(s, t).label(f)
                })
                .collect();
        pieces.reverse();
        pieces.join(EPS)
    }

    fn max_degree(&self, s: usize, t: usize) -> Option<i32> {
        self.c.hom(s, t).degrees().iter().copied().max()
    }

    fn words(&self, x: usize, y: usize) -> Vec<Word> {
        let mut out: Vec<Word> = (0..self.c.hom(x, y).len()).map(|f| Word(vec![f])).collect();
        let (Some(first), Some(last)) = (self.max_degree(x, self.e), self.max_degree(self.e, y)) else {
            return out.into_iter().filter(|w| self.in_window(x, y, w)).collect();
        };
        let mid = self.max_degree(self.e, self.e).unwrap_or(0);
        let mut n = 1;
        while first + last + (n as i32 - 1) * mid - n as i32 >= self.lo {
            let mut partial = Vec::with_capacity(n + 1);
            self.extend(x, y, n, &mut partial, &mut out);
            n += 1;
        }
        out.into_iter().filter(|w| self.in_window(x, y, w)).collect()
    }

    fn extend(&self, x: usize, y: usize, n: usize, partial: &mut Vec<usize>, out: &mut Vec<Word>) {
        let i = partial.len();
        if i == n + 1 {
            out.push(Word(partial.clone()));
            return;
        }
        let (s, t) = self.part_objects(x, y, n, i);
        for f in 0..self.c.hom(s, t).len() {
            partial.push(f);
            self.extend(x, y, n, partial, out);
            partial.pop();
        }
    }

    fn in_window(&self, x: usize, y: usize, w: &Word) -> bool {
        let d = self.degree(x, y, w);
        self.lo <= d && d <= self.hi
    }
}

/// Freely adjoins `ε: e → e` of degree −1 with `d(ε) = id_e`, keeping only
/// basis words whose degree lies in `window`.
///
/// Endomorphisms of `e` must sit in degrees ≤ 0, otherwise infinitely many
/// words share a degree. The window must contain 0 and −1 so that both the
/// identity and `ε` survive.
pub fn drinfeld_quotient(c: &DGCategory, e: usize, window: (i32, i32)) -> Result<DGCategory> {
    let (lo, hi) = window;
    if e >= c.num_objects() {
        return Err(Error::Inconsistent(format!("object index {e} out of range")));
    }
    if lo > -1 || hi < 0 {
        return Err(Error::DegenerateWindow(format!("window [{lo},{hi}] must contain degrees -1 and 0 to hold the identity and ε")));
    }
    if c.hom(e, e).degrees().iter().any(|&d| d > 0) {
        return Err(Error::Unsupported(format!(
            "endomorphisms of {} in positive degree make every degree of the quotient infinite-dimensional",
            c.object(e)
        )));
    }
    let b = Builder { c, e, lo, hi };
    let n = c.num_objects();
    let mut words = Vec::with_capacity(n * n);
    let mut homs = HashMap::new();
    for x in 0..n {
        for y in 0..n {
            let ws = b.words(x, y);
            let basis = GradedBasis::new(ws.iter().map(|w| (b.label(x, y, w), b.degree(x, y, w))))?;
            homs.insert((x, y), basis);
            words.push(ws);
        }
    }
    let lookup: Vec<HashMap<Word, usize>> = words.iter().map(|ws| ws.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect()).collect();
    let ids = (0..n)
        .map(|x| {
            lookup[x * n + x].get(&Word(vec![c.id(x)])).copied().ok_or_else(|| Error::DegenerateWindow("identity outside window".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut q = DGCategory::new(c.objects().to_vec(), homs, ids)?;

    for x in 0..n {
        for y in 0..n {
            let cols = words[x * n + y].iter().map(|w| differential(&b, &lookup, x, y, w)).collect();
            let dim = words[x * n + y].len();
            q.set_d(x, y, SparseMatrix::from_columns(dim, cols))?;
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for (gi, g) in words[y * n + z].iter().enumerate() {
                    for (fi, f) in words[x * n + y].iter().enumerate() {
                        let v = compose(&b, &lookup, [x, y, z], g, f);
                        q.set_compose(x, y, z, gi, fi, v)?;
                    }
                }
            }
        }
    }
    q.set_window(Some(window));
    Ok(q)
}

fn compose(b: &Builder, lookup: &[HashMap<Word, usize>], [x, y, z]: [usize; 3], g: &Word, f: &Word) -> SparseVec {
    let n_obj = b.c.num_objects();
    let (nf, ng) = (f.0.len() - 1, g.0.len() - 1);
    let (s, m) = b.part_objects(x, y, nf, nf);
    let (_, t) = b.part_objects(y, z, ng, 0);
    let glued = b.c.compose(s, m, t, g.0[0], f.0[nf]);
    let target = &lookup[x * n_obj + z];
    let mut out = Vec::new();
    for (k, coeff) in glued.iter() {
        let mut parts = f.0[..nf].to_vec();
        parts.push(k);
        parts.extend_from_slice(&g.0[1..]);
        if let Some(&idx) = target.get(&Word(parts)) {
            out.push((idx, coeff.clone()));
        }
    }
    SparseVec::from_pairs(out)
}

fn differential(b: &Builder, lookup: &[HashMap<Word, usize>], x: usize, y: usize, w: &Word) -> SparseVec {
    let n_obj = b.c.num_objects();
    let target = &lookup[x * n_obj + y];
    let n = w.0.len() - 1;
    let part_deg = |i: usize| {
        let (s, t) = b.part_objects(x, y, n, i);
        b.c.hom(s, t).degree(w.0[i]) as i64
    };
    let mut out = Vec::new();
    // symbols to the left of f_i (in composition order) are f_n … f_{i+1} and n − i copies of ε
    let left_of = |i: usize| -> i64 { (i + 1..=n).map(part_deg).sum::<i64>() - (n - i) as i64 };
    for i in 0..=n {
        let (s, t) = b.part_objects(x, y, n, i);
        let s_i = sign(left_of(i));
        for (k, coeff) in b.c.apply_d(s, t, &SparseVec::unit(w.0[i])).iter() {
            let mut parts = w.0.clone();
            parts[i] = k;
            if let Some(&idx) = target.get(&Word(parts)) {
                out.push((idx, coeff * &s_i));
            }
        }
    }
    for i in 0..n {
        // the ε between f_{i+1} and f_i has n − i − 1 copies of ε to its left
        let s_eps = sign(left_of(i) + 1);
        let (s, _) = b.part_objects(x, y, n, i);
        let (_, t) = b.part_objects(x, y, n, i + 1);
        for (k, coeff) in b.c.compose(s, b.e, t, w.0[i + 1], w.0[i]).iter() {
            let mut parts = w.0[..i].to_vec();
            parts.push(k);
            parts.extend_from_slice(&w.0[i + 2..]);
            if let Some(&idx) = target.get(&Word(parts)) {
                out.push((idx, coeff * &s_eps));
            }
        }
    }
    SparseVec::from_pairs(out)
}

/// The projection of a category onto its Drinfeld quotient, sending each
/// morphism to the corresponding one-part word.
pub fn quotient_projection(c: &DGCategory, q: &DGCategory) -> Result<DGFunctor> {
    DGFunctor::from_fn(c, q, (0..c.num_objects()).collect(), |x, y, i| {
        q.basis_index(x, y, c.hom(x, y).label(i)).map(SparseVec::unit).unwrap_or_default()
    })
}
