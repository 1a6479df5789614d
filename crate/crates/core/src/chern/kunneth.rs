use serde::Serialize;

use super::diagonal::DiagonalResolution;
use super::{ch_in, hh0, K0Class};
use crate::cyclic::{delta_with, matrix_strings, CyclicModel, Verdict};
use crate::dgcore::{opposite, tensor, DGCategory, TensorLayout};
use crate::error::{Error, Result};
use crate::exactla::{determinant, format_rational, rank, ColumnSolver, SparseMatrix, SparseVec};
use crate::hochschild::HochschildHomology;
use crate::params::ComputationParams;

/// Homology bases of `b`, `c` and `tensor(b, c)` in degree 0, with the
/// products `βᵢ × γⱼ` expressed in the basis of the tensor product.
pub struct KunnethBases {
    pub left: HochschildHomology,
    pub right: HochschildHomology,
    pub product: HochschildHomology,
    pub category: DGCategory,
    products: SparseMatrix,
    solver: ColumnSolver,
}

/// Coefficients `sᵢⱼ` with `x = Σ sᵢⱼ βᵢ × γⱼ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KunnethComponents {
    /// Rows index the basis of `HH₀(b)`, columns that of `HH₀(c)`.
    pub matrix: SparseMatrix,
}

impl KunnethComponents {
    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

impl KunnethBases {
    pub fn new(b: &DGCategory, c: &DGCategory, params: &ComputationParams) -> Result<Self> {
        let category = tensor(b, c)?;
        let (left, right, product) = (hh0(b, params)?, hh0(c, params)?, hh0(&category, params)?);
        let lay = TensorLayout::new(b, c);
        let mut cols = Vec::with_capacity(left.dim(0) * right.dim(0));
        for i in 0..left.dim(0) {
            let beta = left.representative(0, i);
            for j in 0..right.dim(0) {
                let gamma = right.representative(0, j);
                let mut chain = SparseVec::new();
                for (wb, cb) in beta.iter() {
                    let f = *left.complex.table().get(left.complex.word(wb)[0]);
                    for (wc, cc) in gamma.iter() {
                        let g = *right.complex.table().get(right.complex.word(wc)[0]);
                        let obj = lay.object(f.source, g.source);
                        let global = category.global_index(obj, obj, lay.basis(g.source, g.source, f.local, g.local));
                        let word =
                            product.complex.find(&[global as u32]).ok_or_else(|| Error::Inconsistent("product word missing".into()))?;
                        chain.add_scaled(&SparseVec::unit(word), &(cb * cc));
                    }
                }
                cols.push(product.coordinates(0, &chain).ok_or_else(|| Error::Inconsistent("product of classes is not a cycle".into()))?);
            }
        }
        let products = SparseMatrix::from_columns(product.dim(0), cols);
        if products.cols() != products.rows() || rank(&products) != products.rows() {
            return Err(Error::Inconsistent(format!(
                "Künneth map in degree 0 is not invertible ({} products, HH_0 of dimension {})",
                products.cols(),
                products.rows()
            )));
        }
        let solver = ColumnSolver::new(&products);
        Ok(Self { left, right, product, category, products, solver })
    }

    /// Splits a class given by its coordinates in `HH₀(tensor(b, c))`.
    pub fn split(&self, x: &SparseVec) -> Result<KunnethComponents> {
        let s = self.solver.solve(x).ok_or_else(|| Error::Inconsistent("class outside the span of products".into()))?;
        let (nb, nc) = (self.left.dim(0), self.right.dim(0));
        let matrix = SparseMatrix::from_triplets(nb, nc, s.iter().map(|(k, q)| (k / nc, k % nc, q.clone())));
        Ok(KunnethComponents { matrix })
    }

    /// Inverse of [`KunnethBases::split`].
    pub fn assemble(&self, parts: &KunnethComponents) -> SparseVec {
        let nc = self.right.dim(0);
        let flat = SparseVec::from_pairs(
            (0..parts.matrix.cols())
                .flat_map(|j| parts.matrix.column(j).iter().map(move |(i, q)| (i * nc + j, q.clone())).collect::<Vec<_>>()),
        );
        self.products.mul_vec(&flat)
    }
}

/// Splits `ch(x)` for a class over `tensor(b, c)`.
pub fn kunneth_split(b: &DGCategory, c: &DGCategory, x: &K0Class, params: &ComputationParams) -> Result<(KunnethBases, KunnethComponents)> {
    let bases = KunnethBases::new(b, c, params)?;
    let coords = ch_in(&bases.category, &bases.product, x)?;
    let parts = bases.split(&coords)?;
    Ok((bases, parts))
}

/// The map `HH₀(aᵒᵖ)^∨ → HH₀(a)` induced by `ch([I_a])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingVerdict {
    pub matrix: Vec<Vec<String>>,
    pub determinant: Option<String>,
    pub invertible: bool,
}

pub fn pairing_check(a: &DGCategory, params: &ComputationParams) -> Result<PairingVerdict> {
    let r = DiagonalResolution::new(a)?;
    let (_, parts) = kunneth_split(&opposite(a), a, &r.class(), params)?;
    let m = parts.matrix.transpose();
    let det = (m.rows() == m.cols()).then(|| determinant(&m));
    let invertible = det.as_ref().is_some_and(|d| *d != num_traits::Zero::zero());
    Ok(PairingVerdict { matrix: matrix_strings(&m), determinant: det.as_ref().map(format_rational), invertible })
}

/// `φ₀(x) = (id ⊗ δ)(split ch x)` in `HH₀(b) ⊗ HC⁻₁(c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Phi0Report {
    /// Rows index `HH₀(b)`, columns the target of `δ` in degree 1.
    pub value: Vec<Vec<String>>,
    pub zero: bool,
    pub delta_verdict: Verdict,
    /// `Zero` or `Nonzero` for the computed value, `Unstable` when `δ` is.
    pub verdict: Verdict,
    pub bar_length: usize,
    pub u_power: usize,
}

pub fn phi0(b: &DGCategory, c: &DGCategory, x: &K0Class, params: &ComputationParams) -> Result<Phi0Report> {
    let (bases, parts) = kunneth_split(b, c, x, params)?;
    let model = CyclicModel::new(c, &params.with_window(0, 0))?;
    let (l, n_pow) = (params.max_bar_length, params.max_u_power);
    if n_pow < 2 {
        return Err(Error::DegenerateWindow("φ₀ needs at least two powers of u".into()));
    }
    let maps = model.delta_matrix(l, n_pow, 0)?;
    // express the basis of HH₀(c) in the basis used by δ
    let cols = (0..bases.right.dim(0))
        .map(|j| {
            let rep = bases.right.representative(0, j);
            let words = rep
                .iter()
                .map(|(w, q)| {
                    let v = model.complex().find(bases.right.complex.word(w));
                    v.map(|v| (v, q.clone())).ok_or_else(|| Error::Inconsistent("word missing from the cyclic model".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            let chain = maps.source_tower.place(&SparseVec::from_pairs(words), 0)?;
            maps.source.coordinates(&chain).ok_or_else(|| Error::Inconsistent("HH_0 class is not a cycle of the tower".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let change = SparseMatrix::from_columns(maps.source.dim(), cols);
    let delta_c = maps.matrix.mul(&change);
    let value = parts.matrix.mul(&delta_c.transpose());
    let delta_verdict = delta_with(&model)?.verdicts.get(&0).map_or(Verdict::Unstable, |v| v.verdict);
    let zero = value.is_zero();
    let verdict = match (delta_verdict, zero) {
        (Verdict::Unstable, _) => Verdict::Unstable,
        (_, true) => Verdict::Zero,
        (_, false) => Verdict::Nonzero,
    };
    Ok(Phi0Report { value: matrix_strings(&value), zero, delta_verdict, verdict, bar_length: l, u_power: n_pow })
}
