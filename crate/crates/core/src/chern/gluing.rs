use serde::Serialize;

use super::diagonal::{diagonal_class, DiagonalResolution};
use super::kunneth::KunnethBases;
use super::module::{minimal_resolution, FinModule};
use super::{ch_in, K0Class};
use crate::constructions::{glue, Side};
use crate::cyclic::matrix_strings;
use crate::dgcore::{opposite, DGBimodule, DGCategory, DGFunctor};
use crate::error::{Error, Result};
use crate::exactla::{ColumnSolver, SparseMatrix, SparseVec};
use crate::hochschild::induced_on_hh;
use crate::params::ComputationParams;

/// One block of the split of `ch([I_D])` next to its predicted value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentCheck {
    pub name: String,
    pub computed: Vec<Vec<String>>,
    pub expected: Vec<Vec<String>>,
    pub equal: bool,
}

/// Components of `ch([I_D])` for a gluing `D` of `b` and `c` along `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluingReport {
    pub components: Vec<ComponentCheck>,
}

impl GluingReport {
    pub fn holds(&self) -> bool {
        self.components.iter().all(|c| c.equal)
    }
}

fn inclusion(source: &DGCategory, target: &DGCategory, objects: Vec<usize>) -> Result<DGFunctor> {
    DGFunctor::from_fn(source, target, objects, |_, _, i| SparseVec::unit(i))
}

fn inverse(m: &SparseMatrix) -> Result<SparseMatrix> {
    if m.rows() != m.cols() {
        return Err(Error::Inconsistent("HH_0 of the gluing does not split".into()));
    }
    let solver = ColumnSolver::new(m);
    let cols = (0..m.rows())
        .map(|i| solver.solve(&SparseVec::unit(i)).ok_or_else(|| Error::Inconsistent("HH_0 of the gluing does not split".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseMatrix::from_columns(m.cols(), cols))
}

fn block(m: &SparseMatrix, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> SparseMatrix {
    let triplets = cols.clone().flat_map(|j| {
        m.column(j).iter().filter(|(i, _)| rows.contains(i)).map(|(i, q)| (i - rows.start, j - cols.start, q.clone())).collect::<Vec<_>>()
    });
    SparseMatrix::from_triplets(rows.len(), cols.len(), triplets)
}

fn side_by_side(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    SparseMatrix::from_columns(a.rows(), a.columns().iter().chain(b.columns()).cloned().collect())
}

/// Splits `ch([I_D])` for `D = glue(b, c, m)` along
/// `HH₀(Dᵒᵖ) ⊗ HH₀(D) = (HH₀(bᵒᵖ) ⊕ HH₀(cᵒᵖ)) ⊗ (HH₀(b) ⊕ HH₀(c))` and
/// compares the four blocks with `ch([I_b])`, `ch([I_c])`, `−ch([m])` and 0.
///
/// The diagonal of `D` is resolved minimally, those of `b` and `c` by the
/// two-term path-category resolution, and `m` minimally over `bᵒᵖ ⊗ c`.
pub fn gluing_component_check(b: &DGCategory, c: &DGCategory, m: &DGBimodule, params: &ComputationParams) -> Result<GluingReport> {
    let glued = glue(b, c, m)?;
    let d = &glued.category;
    let (op_b, op_c, op_d) = (opposite(b), opposite(c), opposite(d));

    let whole = KunnethBases::new(&op_d, d, params)?;
    let (_, diagonal) = diagonal_class(d)?;
    let split = whole.split(&ch_in(&whole.category, &whole.product, &diagonal)?)?;

    let on_b = KunnethBases::new(&op_b, b, params)?;
    let on_c = KunnethBases::new(&op_c, c, params)?;
    let cross = KunnethBases::new(&op_b, c, params)?;

    let objects = |side: Side, n: usize| (0..n).map(|x| glued.object(side, x)).collect::<Vec<_>>();
    let (ob, oc) = (objects(Side::A, b.num_objects()), objects(Side::B, c.num_objects()));
    let j_b = induced_on_hh(d, &inclusion(b, d, ob.clone())?, &on_b.right, &whole.right)?;
    let j_c = induced_on_hh(d, &inclusion(c, d, oc.clone())?, &on_c.right, &whole.right)?;
    let jo_b = induced_on_hh(&op_d, &inclusion(&op_b, &op_d, ob)?, &on_b.left, &whole.left)?;
    let jo_c = induced_on_hh(&op_d, &inclusion(&op_c, &op_d, oc)?, &on_c.left, &whole.left)?;
    let zero_map = || Error::Inconsistent("inclusion has no HH_0 matrix".into());
    let right = side_by_side(j_b.matrix(0).ok_or_else(zero_map)?, j_c.matrix(0).ok_or_else(zero_map)?);
    let left = side_by_side(jo_b.matrix(0).ok_or_else(zero_map)?, jo_c.matrix(0).ok_or_else(zero_map)?);
    let blocks = inverse(&left)?.mul(&split.matrix).mul(&inverse(&right)?.transpose());

    let expect_b = on_b.split(&ch_in(&on_b.category, &on_b.product, &DiagonalResolution::new(b)?.class())?)?;
    let expect_c = on_c.split(&ch_in(&on_c.category, &on_c.product, &DiagonalResolution::new(c)?.class())?)?;
    let (q, module) = FinModule::of_bimodule(b, c, m)?;
    let resolution =
        minimal_resolution(&q, &module).map_err(|e| Error::Unsupported(format!("no projective resolution of the bimodule: {e}")))?;
    let class_m = K0Class::of_resolution(&q, &resolution);
    let expect_m = cross.split(&ch_in(&cross.category, &cross.product, &class_m)?)?;

    let (nb, nc) = (on_b.right.dim(0), on_c.right.dim(0));
    let (nob, noc) = (on_b.left.dim(0), on_c.left.dim(0));
    let minus_one = -crate::exactla::int(1);
    let checks = [
        ("ch[I_B]", block(&blocks, 0..nob, 0..nb), expect_b.matrix),
        ("ch[I_C]", block(&blocks, nob..nob + noc, nb..nb + nc), expect_c.matrix),
        ("-ch[M]", block(&blocks, 0..nob, nb..nb + nc), expect_m.matrix.scaled(&minus_one)),
        ("0", block(&blocks, nob..nob + noc, 0..nb), SparseMatrix::zeros(noc, nb)),
    ];
    let components = checks
        .into_iter()
        .map(|(name, computed, expected)| ComponentCheck {
            name: name.into(),
            equal: computed == expected,
            computed: matrix_strings(&computed),
            expected: matrix_strings(&expected),
        })
        .collect();
    Ok(GluingReport { components })
}
