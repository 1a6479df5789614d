use std::collections::HashMap;

use super::{tensor, DGCategory, DGFunctor, GradedBasis, TensorLayout};
use crate::error::{Error, Result};
use crate::exactla::SparseVec;

/// The category with objects `1..=n` and exactly one morphism between any
/// two objects. Its matrix units compose as `E(r,q) ∘ E(q,p) = E(r,p)`.
pub fn indiscrete(n: usize) -> DGCategory {
    let objects = (1..=n).map(|p| p.to_string()).collect();
    let homs = (0..n)
        .flat_map(|p| (0..n).map(move |q| ((p, q), GradedBasis::new([(format!("E({},{})", q + 1, p + 1), 0)]).unwrap())))
        .collect::<HashMap<_, _>>();
    let mut c = DGCategory::new(objects, homs, vec![0; n]).expect("indiscrete category");
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                c.set_compose(p, q, r, 0, 0, SparseVec::unit(0)).unwrap();
            }
        }
    }
    c
}

/// A matrix amplification together with the functors relating it to the
/// original category.
pub struct Amplification {
    pub category: DGCategory,
    /// `X ↦ (X, 1)`, `f ↦ f ⊗ E(1,1)`; fully faithful and essentially
    /// surjective up to the summands it generates.
    pub inclusion: DGFunctor,
    /// `(X, p) ↦ X`, `f ⊗ E(q,p) ↦ f`.
    pub collapse: DGFunctor,
}

/// Replaces every object by `n` copies with `n × n` matrices of homs between
/// the copies. Realized as the tensor product with the indiscrete category,
/// which is Morita equivalent to the original.
pub fn matrix_amplification(c: &DGCategory, n: usize) -> Result<Amplification> {
    if n == 0 {
        return Err(Error::Inconsistent("matrix amplification needs n ≥ 1".into()));
    }
    let ind = indiscrete(n);
    let category = tensor(c, &ind)?;
    let lay = TensorLayout::new(c, &ind);
    let inclusion = DGFunctor::from_fn(c, &category, (0..c.num_objects()).map(|x| lay.object(x, 0)).collect(), |_, _, i| {
        SparseVec::unit(lay.basis(0, 0, i, 0))
    })?;
    let collapse = DGFunctor::from_fn(&category, c, (0..category.num_objects()).map(|o| lay.split_object(o).0).collect(), |s, t, i| {
        let (_, p) = lay.split_object(s);
        let (_, q) = lay.split_object(t);
        SparseVec::unit(lay.split_basis(p, q, i).0)
    })?;
    Ok(Amplification { category, inclusion, collapse })
}
