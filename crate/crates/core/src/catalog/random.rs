//! Seeded random DG categories.
//!
//! Every object `X` is a small graded vector space `V_X` with a strictly
//! upper-triangular differential. Morphisms are matrix units `E_ij`
//! (`v_j ↦ v_i`) for pairs in a random transitive relation, so composition
//! is matrix multiplication and associativity, unitality, `d² = 0` and the
//! Leibniz rule hold by construction. A random unitriangular change of
//! basis hides the matrix units, and structure constants are recovered by
//! exact solves.

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CatalogEntry;
use crate::dgcore::{DGCategory, GradedBasis};
use crate::exactla::{int, ColumnSolver, SparseMatrix, SparseVec, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomBounds {
    pub max_objects: usize,
    /// Upper bound on the total number of basis morphisms.
    pub max_morphisms: usize,
}

impl Default for RandomBounds {
    fn default() -> Self {
        Self { max_objects: 2, max_morphisms: 4 }
    }
}

type Dense = Vec<Vec<Q>>;

struct Shape {
    owner: Vec<usize>,
    degree: Vec<i32>,
    relation: BTreeSet<(usize, usize)>,
    delta: Vec<(usize, usize, i64)>,
}

fn draw_shape(rng: &mut ChaCha8Rng, bounds: RandomBounds) -> Option<Shape> {
    let objects = rng.gen_range(1..=bounds.max_objects.max(1));
    let vectors = rng.gen_range(objects..=(objects + 2).min(bounds.max_morphisms.max(objects)));
    let mut owner: Vec<usize> = (0..objects).collect();
    owner.extend((objects..vectors).map(|_| rng.gen_range(0..objects)));
    owner.shuffle(rng);
    let degree: Vec<i32> = (0..vectors).map(|_| rng.gen_range(0..=1)).collect();
    let mut relation: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..vectors {
        for j in i + 1..vectors {
            if rng.gen_bool(0.5) {
                relation.insert((i, j));
            }
        }
    }
    // transitive closure; i < j < k keeps it upper triangular
    loop {
        let extra: Vec<_> = relation
            .iter()
            .flat_map(|&(i, j)| relation.range((j, 0)..(j + 1, 0)).map(move |&(_, k)| (i, k)))
            .filter(|p| !relation.contains(p))
            .collect();
        if extra.is_empty() {
            break;
        }
        relation.extend(extra);
    }
    if vectors + relation.len() > bounds.max_morphisms {
        return None;
    }
    let candidates: Vec<_> = relation.iter().copied().filter(|&(i, j)| owner[i] == owner[j] && degree[i] == degree[j] + 1).collect();
    let mut delta = Vec::new();
    for &(i, j) in &candidates {
        if rng.gen_bool(0.75) {
            delta.push((i, j, *[-2, -1, 1, 2].choose(rng).unwrap()));
        }
    }
    // δ must square to zero
    if !square_zero(vectors, &delta) {
        return None;
    }
    if delta.is_empty() && !candidates.is_empty() {
        return None;
    }
    Some(Shape { owner, degree, relation, delta })
}

fn square_zero(n: usize, delta: &[(usize, usize, i64)]) -> bool {
    let m = dense_of(n, delta.iter().map(|&(i, j, c)| (i, j, int(c))));
    let sq = matmul(&m, &m);
    sq.iter().all(|row| row.iter().all(Q::is_zero))
}

fn dense_of(n: usize, entries: impl IntoIterator<Item = (usize, usize, Q)>) -> Dense {
    let mut m = vec![vec![Q::zero(); n]; n];
    for (i, j, c) in entries {
        m[i][j] += c;
    }
    m
}

fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut out = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

fn flatten(m: &Dense) -> SparseVec {
    let n = m.len();
    SparseVec::from_pairs(m.iter().enumerate().flat_map(|(i, row)| row.iter().enumerate().map(move |(j, c)| (i * n + j, c.clone()))))
}

/// Generates a random DG category. The same seed always gives the same
/// category.
pub fn random_category(seed: u64, bounds: RandomBounds) -> CatalogEntry {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = (0..1000).find_map(|_| draw_shape(&mut rng, bounds)).unwrap_or_else(|| Shape {
        owner: vec![0],
        degree: vec![0],
        relation: BTreeSet::new(),
        delta: Vec::new(),
    });
    let n_vec = shape.owner.len();
    let n_obj = shape.owner.iter().max().map_or(1, |m| m + 1);
    let delta = dense_of(n_vec, shape.delta.iter().map(|&(i, j, c)| (i, j, int(c))));
    let unit = |i: usize, j: usize| dense_of(n_vec, [(i, j, Q::one())]);
    let mut counter = 0;
    // realized basis of each hom space as matrices, plus labels and degrees
    let mut realized: HashMap<(usize, usize), Vec<(String, i32, Dense)>> = HashMap::new();
    let mut ids = vec![0; n_obj];
    for x in 0..n_obj {
        for y in 0..n_obj {
            let mut units: Vec<(usize, usize)> = (0..n_vec)
                .flat_map(|i| (0..n_vec).map(move |j| (i, j)))
                .filter(|&(i, j)| shape.owner[i] == y && shape.owner[j] == x && (i == j || shape.relation.contains(&(i, j))))
                .collect();
            units.sort();
            let mut by_degree: Vec<(i32, Vec<Dense>)> = Vec::new();
            for d in -1..=1 {
                let group: Vec<Dense> =
                    units.iter().filter(|&&(i, j)| shape.degree[i] - shape.degree[j] == d).map(|&(i, j)| unit(i, j)).collect();
                if !group.is_empty() {
                    by_degree.push((d, group));
                }
            }
            let mut basis = Vec::new();
            for (d, mut group) in by_degree {
                let mut fixed = 0;
                if x == y && d == 0 {
                    // replace the first diagonal unit by the identity
                    let first = units.iter().filter(|&&(i, j)| shape.degree[i] == shape.degree[j]).position(|&(i, j)| i == j).unwrap();
                    group.remove(first);
                    let id = dense_of(n_vec, (0..n_vec).filter(|&i| shape.owner[i] == x).map(|i| (i, i, Q::one())));
                    group.insert(0, id);
                    fixed = 1;
                }
                for k in (fixed..group.len()).rev() {
                    for l in 0..k {
                        let r: i64 = rng.gen_range(-1..=1);
                        if r != 0 {
                            let add: Dense = group[l].iter().map(|row| row.iter().map(|c| c * int(r)).collect()).collect();
                            for (row, arow) in group[k].iter_mut().zip(add) {
                                for (c, a) in row.iter_mut().zip(arow) {
                                    *c += a;
                                }
                            }
                        }
                    }
                }
                for (k, m) in group.into_iter().enumerate() {
                    let label = if fixed == 1 && k == 0 {
                        ids[x] = basis.len();
                        format!("id_o{x}")
                    } else {
                        counter += 1;
                        format!("m{}", counter - 1)
                    };
                    basis.push((label, d, m));
                }
            }
            realized.insert((x, y), basis);
        }
    }
    let homs = realized
        .iter()
        .map(|(&k, b)| (k, GradedBasis::new(b.iter().map(|(l, d, _)| (l.clone(), *d))).expect("labels are unique")))
        .collect();
    let mut c = DGCategory::new((0..n_obj).map(|x| format!("o{x}")).collect(), homs, ids).expect("valid shape");
    let solvers: HashMap<(usize, usize), ColumnSolver> = realized
        .iter()
        .map(|(&k, b)| {
            let cols = b.iter().map(|(_, _, m)| flatten(m)).collect();
            (k, ColumnSolver::new(&SparseMatrix::from_columns(n_vec * n_vec, cols)))
        })
        .collect();
    let coords = |x: usize, y: usize, m: &Dense| solvers[&(x, y)].solve(&flatten(m)).expect("closed under composition");
    for x in 0..n_obj {
        for y in 0..n_obj {
            let hf = &realized[&(x, y)];
            let cols = hf
                .iter()
                .map(|(_, d, f)| {
                    let sign = if d % 2 == 0 { Q::one() } else { -Q::one() };
                    let df: Dense = matmul(&delta, f)
                        .into_iter()
                        .zip(matmul(f, &delta))
                        .map(|(a, b)| a.into_iter().zip(b).map(|(p, q)| p - &sign * q).collect())
                        .collect();
                    coords(x, y, &df)
                })
                .collect();
            c.set_d(x, y, SparseMatrix::from_columns(hf.len(), cols)).expect("degree +1");
            for z in 0..n_obj {
                for (g, (_, _, mg)) in realized[&(y, z)].iter().enumerate() {
                    for (f, (_, _, mf)) in hf.iter().enumerate() {
                        c.set_compose(x, y, z, g, f, coords(x, z, &matmul(mg, mf))).expect("degrees add");
                    }
                }
            }
        }
    }
    CatalogEntry {
        name: format!("random_{seed}"),
        description: format!("random DG category from seed {seed}"),
        category: c,
        expected: None,
        arrows: None,
    }
}
