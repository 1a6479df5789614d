use std::collections::HashMap;

use crate::dgcore::{opposite, tensor, DGBimodule, DGCategory, TensorLayout};
use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, rank, ColumnSolver, EchelonBasis, SparseMatrix, SparseVec};

/// Checks that `c` is concentrated in degree 0 with zero differential,
/// every endomorphism space is spanned by the identity, and nonzero homs
/// between distinct objects form no oriented cycle.
pub fn check_directed(c: &DGCategory) -> Result<()> {
    if !c.is_degree_zero() {
        return Err(Error::Unsupported("category is not concentrated in degree 0".into()));
    }
    let n = c.num_objects();
    for x in 0..n {
        for y in 0..n {
            if !c.d(x, y).is_zero() {
                return Err(Error::Unsupported(format!("nonzero differential on hom({}, {})", c.object(x), c.object(y))));
            }
        }
        if c.hom(x, x).len() != 1 {
            return Err(Error::Unsupported(format!("endomorphisms of {} are not just the identity", c.object(x))));
        }
    }
    // Kahn's algorithm on the relation "hom(x, y) ≠ 0, x ≠ y".
    let mut indegree = vec![0usize; n];
    for x in 0..n {
        for y in 0..n {
            if x != y && !c.hom(x, y).is_empty() {
                indegree[y] += 1;
            }
        }
    }
    let mut ready: Vec<usize> = (0..n).filter(|&y| indegree[y] == 0).collect();
    let mut seen = 0;
    while let Some(x) = ready.pop() {
        seen += 1;
        for y in 0..n {
            if x != y && !c.hom(x, y).is_empty() {
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    ready.push(y);
                }
            }
        }
    }
    if seen < n {
        return Err(Error::Unsupported("homs between distinct objects form an oriented cycle".into()));
    }
    Ok(())
}

/// A finite-dimensional covariant module over a degree-zero category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinModule {
    dims: Vec<usize>,
    /// `action[&(x, y)][i]` is the matrix `M(x) → M(y)` of basis morphism `i`.
    action: HashMap<(usize, usize), Vec<SparseMatrix>>,
}

impl FinModule {
    /// Builds a module from the action of each basis morphism and checks
    /// shapes, unitality and compatibility with composition.
    pub fn new(c: &DGCategory, dims: Vec<usize>, act: impl Fn(usize, usize, usize) -> SparseMatrix) -> Result<Self> {
        let n = c.num_objects();
        if dims.len() != n {
            return Err(Error::Inconsistent(format!("module has {} spaces for {n} objects", dims.len())));
        }
        let mut action = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                let maps: Vec<SparseMatrix> = (0..c.hom(x, y).len()).map(|i| act(x, y, i)).collect();
                if let Some(m) = maps.iter().find(|m| m.rows() != dims[y] || m.cols() != dims[x]) {
                    return Err(Error::Inconsistent(format!(
                        "action on hom({}, {}) is {}×{}, expected {}×{}",
                        c.object(x),
                        c.object(y),
                        m.rows(),
                        m.cols(),
                        dims[y],
                        dims[x]
                    )));
                }
                action.insert((x, y), maps);
            }
        }
        let module = Self { dims, action };
        module.check_functor(c)?;
        Ok(module)
    }

    fn check_functor(&self, c: &DGCategory) -> Result<()> {
        let n = c.num_objects();
        for x in 0..n {
            if self.act(x, x, c.id(x)) != &SparseMatrix::identity(self.dims[x]) {
                return Err(Error::Axiom(format!("identity of {} does not act trivially", c.object(x))));
            }
            for y in 0..n {
                for z in 0..n {
                    for f in 0..c.hom(x, y).len() {
                        for g in 0..c.hom(y, z).len() {
                            let composite = self.act_vec(x, z, c.compose(x, y, z, g, f));
                            if composite != self.act(y, z, g).mul(self.act(x, y, f)) {
                                return Err(Error::Axiom(format!(
                                    "action does not respect {} ∘ {}",
                                    c.hom(y, z).label(g),
                                    c.hom(x, y).label(f)
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The representable module `hom(s, -)`.
    pub fn representable(c: &DGCategory, s: usize) -> Self {
        let n = c.num_objects();
        let dims = (0..n).map(|u| c.hom(s, u).len()).collect();
        let mut action = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                let maps = (0..c.hom(x, y).len())
                    .map(|f| {
                        let cols = (0..c.hom(s, x).len()).map(|h| c.compose(s, x, y, f, h).clone()).collect();
                        SparseMatrix::from_columns(c.hom(s, y).len(), cols)
                    })
                    .collect();
                action.insert((x, y), maps);
            }
        }
        Self { dims, action }
    }

    /// An `(a, b)`-bimodule as a module over `tensor(opposite(a), b)`,
    /// returned together with that category.
    pub fn of_bimodule(a: &DGCategory, b: &DGCategory, m: &DGBimodule) -> Result<(DGCategory, Self)> {
        if !m.fits(a, b) {
            return Err(Error::Inconsistent("bimodule does not fit the given categories".into()));
        }
        let op = opposite(a);
        let q = tensor(&op, b)?;
        let lay = TensorLayout::new(&op, b);
        let dims = (0..q.num_objects())
            .map(|o| {
                let (v, u) = lay.split_object(o);
                m.space(v, u).len()
            })
            .collect();
        let module = Self::new(&q, dims, |s, t, i| {
            let ((v, u), (v2, u2)) = (lay.split_object(s), lay.split_object(t));
            // f ∈ a(v2, v), g ∈ b(u, u2); the element acts by x ↦ g ∘ x ∘ f
            let (f, g) = lay.split_basis(u, u2, i);
            let cols = (0..m.space(v, u).len())
                .map(|x| {
                    let mut out = SparseVec::new();
                    for (k, coeff) in m.precompose(v2, v, u, x, f).iter() {
                        out.add_scaled(m.postcompose(v2, u, u2, g, k), coeff);
                    }
                    out
                })
                .collect();
            SparseMatrix::from_columns(m.space(v2, u2).len(), cols)
        })?;
        Ok((q, module))
    }

    pub fn dim(&self, x: usize) -> usize {
        self.dims[x]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn act(&self, x: usize, y: usize, i: usize) -> &SparseMatrix {
        &self.action[&(x, y)][i]
    }

    /// Action of a linear combination of basis morphisms in `hom(x, y)`.
    pub fn act_vec(&self, x: usize, y: usize, f: &SparseVec) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.dims[y], self.dims[x]);
        for (i, c) in f.iter() {
            out = out.add(&self.act(x, y, i).scaled(c));
        }
        out
    }
}

/// A projective resolution `… → P₁ → P₀ → M`, recorded by the objects of
/// the representables summed in each term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub terms: Vec<Vec<usize>>,
}

impl Resolution {
    /// Σᵢ (-1)^i dim Pᵢ(u) for every object `u`.
    pub fn euler_dims(&self, c: &DGCategory) -> Vec<i64> {
        let mut out = vec![0i64; c.num_objects()];
        for (i, term) in self.terms.iter().enumerate() {
            let s = if i % 2 == 0 { 1 } else { -1 };
            for &g in term {
                for (u, slot) in out.iter_mut().enumerate() {
                    *slot += s * c.hom(g, u).len() as i64;
                }
            }
        }
        out
    }
}

/// Minimal projective resolution of `m` over a directed category.
///
/// Each step covers the top `M / rad M` by representables and passes to
/// the kernel; surjectivity of every cover is checked by rank.
pub fn minimal_resolution(c: &DGCategory, m: &FinModule) -> Result<Resolution> {
    check_directed(c)?;
    let n = c.num_objects();
    let mut terms = Vec::new();
    let mut current = m.clone();
    while current.total_dim() > 0 {
        if terms.len() > n {
            return Err(Error::Inconsistent("resolution did not terminate within the number of objects".into()));
        }
        let generators = top_generators(c, &current);
        // P(u) = ⊕_g hom(y_g, u), in generator order
        let offsets: Vec<Vec<usize>> = (0..n)
            .map(|u| {
                generators
                    .iter()
                    .scan(0, |acc, (y, _)| {
                        let start = *acc;
                        *acc += c.hom(*y, u).len();
                        Some(start)
                    })
                    .collect()
            })
            .collect();
        let p_dim = |u: usize| generators.iter().map(|(y, _)| c.hom(*y, u).len()).sum::<usize>();
        let mut kernels = Vec::with_capacity(n);
        for u in 0..n {
            let mut cols = Vec::with_capacity(p_dim(u));
            for (y, v) in &generators {
                for h in 0..c.hom(*y, u).len() {
                    cols.push(current.act(*y, u, h).mul_vec(v));
                }
            }
            let cover = SparseMatrix::from_columns(current.dim(u), cols);
            if rank(&cover) != current.dim(u) {
                return Err(Error::Inconsistent(format!("cover is not onto at {}", c.object(u))));
            }
            kernels.push(kernel_basis(&cover));
        }
        let solvers: Vec<ColumnSolver> =
            (0..n).map(|u| ColumnSolver::new(&SparseMatrix::from_columns(p_dim(u), kernels[u].clone()))).collect();
        let dims = kernels.iter().map(Vec::len).collect();
        let next = FinModule::new(c, dims, |x, y, f| {
            let cols = kernels[x]
                .iter()
                .map(|k| {
                    let mut image = SparseVec::new();
                    for (g, (s, _)) in generators.iter().enumerate() {
                        for h in 0..c.hom(*s, x).len() {
                            let coeff = k.get(offsets[x][g] + h);
                            if coeff != num_traits::Zero::zero() {
                                let moved = c.compose(*s, x, y, f, h).remap(|i| Some(offsets[y][g] + i));
                                image.add_scaled(&moved, &coeff);
                            }
                        }
                    }
                    solvers[y].solve(&image).expect("kernels are submodules")
                })
                .collect();
            SparseMatrix::from_columns(kernels[y].len(), cols)
        })?;
        terms.push(generators.into_iter().map(|(y, _)| y).collect());
        current = next;
    }
    Ok(Resolution { terms })
}

/// Vectors spanning a complement of the radical at each object.
fn top_generators(c: &DGCategory, m: &FinModule) -> Vec<(usize, SparseVec)> {
    let n = c.num_objects();
    let mut out = Vec::new();
    for y in 0..n {
        let mut radical = EchelonBasis::new(false);
        for x in (0..n).filter(|&x| x != y) {
            for f in 0..c.hom(x, y).len() {
                for v in m.act(x, y, f).columns() {
                    radical.insert(v.clone(), None);
                }
            }
        }
        for j in 0..m.dim(y) {
            if radical.insert(SparseVec::unit(j), None).is_independent() {
                out.push((y, SparseVec::unit(j)));
            }
        }
    }
    out
}
