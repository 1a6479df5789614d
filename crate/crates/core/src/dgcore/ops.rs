use std::collections::HashMap;

use super::{sign, DGCategory, GradedBasis};
use crate::error::Result;
use crate::exactla::{SparseMatrix, SparseVec};

/// The opposite category: `hom_op(x, y) = hom(y, x)` with
/// `f ∘_op g = (-1)^{|f||g|} g ∘ f`. Labels and object names are kept, so
/// taking the opposite twice returns an identical category.
pub fn opposite(c: &DGCategory) -> DGCategory {
    let n = c.num_objects();
    let homs = (0..n).flat_map(|x| (0..n).map(move |y| ((x, y), c.hom(y, x).clone()))).collect::<HashMap<_, _>>();
    let mut op = DGCategory::new(c.objects().to_vec(), homs, c.ids().to_vec()).expect("opposite of a well-formed category");
    for x in 0..n {
        for y in 0..n {
            op.set_d(x, y, c.d(y, x).clone()).expect("shape preserved");
        }
    }
    // in op: g ∈ hom_op(y, z) = hom(z, y), f ∈ hom_op(x, y) = hom(y, x)
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (hf, hg) = (c.hom(y, x), c.hom(z, y));
                for g in 0..hg.len() {
                    for f in 0..hf.len() {
                        let s = sign(hf.degree(f) as i64 * hg.degree(g) as i64);
                        let v = c.compose(z, y, x, f, g).scaled(&s);
                        op.set_compose(x, y, z, g, f, v).expect("degrees preserved");
                    }
                }
            }
        }
    }
    op.set_window(c.window());
    op
}

/// Index bookkeeping for `tensor(a, b)`.
///
/// Object `(x, u)` sits at `x * |Ob b| + u`; the basis element `f ⊗ g` of
/// `hom((x,u), (y,v))` sits at `f * dim b(u, v) + g`.
#[derive(Clone, Debug)]
pub struct TensorLayout {
    pub left_objects: usize,
    pub right_objects: usize,
    right_dims: Vec<usize>,
}

impl TensorLayout {
    pub fn new(a: &DGCategory, b: &DGCategory) -> Self {
        let nb = b.num_objects();
        let right_dims = (0..nb * nb).map(|k| b.hom(k / nb, k % nb).len()).collect();
        Self { left_objects: a.num_objects(), right_objects: nb, right_dims }
    }

    pub fn object(&self, x: usize, u: usize) -> usize {
        x * self.right_objects + u
    }

    pub fn split_object(&self, o: usize) -> (usize, usize) {
        (o / self.right_objects, o % self.right_objects)
    }

    fn right_dim(&self, u: usize, v: usize) -> usize {
        self.right_dims[u * self.right_objects + v]
    }

    /// Index of `f ⊗ g` where `g ∈ b(u, v)`.
    pub fn basis(&self, u: usize, v: usize, f: usize, g: usize) -> usize {
        f * self.right_dim(u, v) + g
    }

    pub fn split_basis(&self, u: usize, v: usize, i: usize) -> (usize, usize) {
        let m = self.right_dim(u, v);
        (i / m, i % m)
    }
}

fn tensor_name(s: &str) -> String {
    if s.contains('⊗') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

pub(crate) fn tensor_label(a: &str, b: &str) -> String {
    format!("{}⊗{}", tensor_name(a), tensor_name(b))
}

/// Tensor product with Koszul signs:
/// `(g₁⊗g₂)∘(f₁⊗f₂) = (-1)^{|g₂||f₁|} (g₁∘f₁)⊗(g₂∘f₂)` and
/// `d(f₁⊗f₂) = df₁⊗f₂ + (-1)^{|f₁|} f₁⊗df₂`.
pub fn tensor(a: &DGCategory, b: &DGCategory) -> Result<DGCategory> {
    let lay = TensorLayout::new(a, b);
    let (na, nb) = (a.num_objects(), b.num_objects());
    let mut objects = Vec::with_capacity(na * nb);
    for x in 0..na {
        for u in 0..nb {
            objects.push(tensor_label(a.object(x), b.object(u)));
        }
    }
    let mut homs = HashMap::new();
    for x in 0..na {
        for y in 0..na {
            for u in 0..nb {
                for v in 0..nb {
                    let (ha, hb) = (a.hom(x, y), b.hom(u, v));
                    let mut elems = Vec::with_capacity(ha.len() * hb.len());
                    for (fl, fd) in ha.iter() {
                        for (gl, gd) in hb.iter() {
                            elems.push((tensor_label(fl, gl), fd + gd));
                        }
                    }
                    homs.insert((lay.object(x, u), lay.object(y, v)), GradedBasis::new(elems)?);
                }
            }
        }
    }
    let ids = (0..na * nb)
        .map(|o| {
            let (x, u) = lay.split_object(o);
            lay.basis(u, u, a.id(x), b.id(u))
        })
        .collect();
    let mut t = DGCategory::new(objects, homs, ids)?;

    for x in 0..na {
        for y in 0..na {
            for u in 0..nb {
                for v in 0..nb {
                    let (ha, hb) = (a.hom(x, y), b.hom(u, v));
                    let mut cols = Vec::with_capacity(ha.len() * hb.len());
                    for f in 0..ha.len() {
                        let df = a.apply_d(x, y, &SparseVec::unit(f));
                        for g in 0..hb.len() {
                            let dg = b.apply_d(u, v, &SparseVec::unit(g));
                            let mut col = SparseVec::from_pairs(df.iter().map(|(i, c)| (lay.basis(u, v, i, g), c.clone())));
                            let s = sign(ha.degree(f) as i64);
                            col.add_scaled(&SparseVec::from_pairs(dg.iter().map(|(j, c)| (lay.basis(u, v, f, j), c.clone()))), &s);
                            cols.push(col);
                        }
                    }
                    let dim = cols.len();
                    t.set_d(lay.object(x, u), lay.object(y, v), SparseMatrix::from_columns(dim, cols))?;
                }
            }
        }
    }

    for x in 0..na {
        for y in 0..na {
            for z in 0..na {
                for u in 0..nb {
                    for v in 0..nb {
                        for w in 0..nb {
                            tensor_compose_block(a, b, &lay, &mut t, [x, y, z], [u, v, w])?;
                        }
                    }
                }
            }
        }
    }
    if a.window().is_some() || b.window().is_some() {
        let merged = match (a.window(), b.window()) {
            (Some((l1, h1)), Some((l2, h2))) => (l1 + l2, h1 + h2),
            (Some(w), None) | (None, Some(w)) => {
                let (l, h) = if a.window().is_some() { b.degree_range() } else { a.degree_range() }.unwrap_or((0, 0));
                (w.0 + l, w.1 + h)
            }
            (None, None) => unreachable!(),
        };
        t.set_window(Some(merged));
    }
    Ok(t)
}

fn tensor_compose_block(
    a: &DGCategory,
    b: &DGCategory,
    lay: &TensorLayout,
    t: &mut DGCategory,
    [x, y, z]: [usize; 3],
    [u, v, w]: [usize; 3],
) -> Result<()> {
    let (af, ag) = (a.hom(x, y), a.hom(y, z));
    let (bf, bg) = (b.hom(u, v), b.hom(v, w));
    for g1 in 0..ag.len() {
        for f1 in 0..af.len() {
            let left = a.compose(x, y, z, g1, f1);
            if left.is_zero() {
                continue;
            }
            for g2 in 0..bg.len() {
                let s = sign(bg.degree(g2) as i64 * af.degree(f1) as i64);
                for f2 in 0..bf.len() {
                    let right = b.compose(u, v, w, g2, f2);
                    if right.is_zero() {
                        continue;
                    }
                    let mut out = SparseVec::new();
                    for (i, ci) in left.iter() {
                        let term = SparseVec::from_pairs(right.iter().map(|(j, cj)| (lay.basis(u, w, i, j), ci * cj)));
                        out.add_scaled(&term, &s);
                    }
                    t.set_compose(
                        lay.object(x, u),
                        lay.object(y, v),
                        lay.object(z, w),
                        lay.basis(v, w, g1, g2),
                        lay.basis(u, v, f1, f2),
                        out,
                    )?;
                }
            }
        }
    }
    Ok(())
}
