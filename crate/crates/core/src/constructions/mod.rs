//! Gluings, diagonal bimodules and restriction of bimodules.

use std::collections::{HashMap, HashSet};

use crate::dgcore::{validate, DGBimodule, DGCategory, DGFunctor, GradedBasis, ValidationReport};
use crate::error::{Error, Result};
use crate::exactla::SparseVec;

/// Which factor of a gluing an object came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    A,
    B,
}

/// The upper-triangular category built from `A`, `B` and an `(A, B)`-bimodule.
#[derive(Clone, Debug)]
pub struct GluedCategory {
    pub category: DGCategory,
    /// Side of each object of `category`, in object order. Objects of `A`
    /// come first, in their original order, then those of `B`.
    pub sides: Vec<Side>,
    pub a_objects: usize,
}

impl GluedCategory {
    /// Index in the glued category of object `x` of the given side.
    pub fn object(&self, side: Side, x: usize) -> usize {
        match side {
            Side::A => x,
            Side::B => self.a_objects + x,
        }
    }

    pub fn objects_on(&self, side: Side) -> Vec<usize> {
        (0..self.sides.len()).filter(|&i| self.sides[i] == side).collect()
    }
}

/// Glues `a` and `b` along `m`: homs within each side are those of the
/// factor, homs from an `a`-object `x` to a `b`-object `y` are `m(x, y)`,
/// and there are no homs from `b` back to `a`.
pub fn glue(a: &DGCategory, b: &DGCategory, m: &DGBimodule) -> Result<GluedCategory> {
    if !m.fits(a, b) {
        let hint = if m.fits(b, a) { " (it fits the reversed pair)" } else { "" };
        return Err(Error::Inconsistent(format!("bimodule orientation mismatch{hint}")));
    }
    let (na, nb) = (a.num_objects(), b.num_objects());
    let names_a: HashSet<&String> = a.objects().iter().collect();
    let clash = b.objects().iter().any(|o| names_a.contains(o));
    let mut objects = Vec::with_capacity(na + nb);
    for o in a.objects() {
        objects.push(if clash { format!("A/{o}") } else { o.clone() });
    }
    for o in b.objects() {
        objects.push(if clash { format!("B/{o}") } else { o.clone() });
    }
    let mut homs = HashMap::new();
    for x in 0..na {
        for y in 0..na {
            homs.insert((x, y), a.hom(x, y).clone());
        }
        for y in 0..nb {
            homs.insert((x, na + y), m.space(x, y).clone());
        }
    }
    for x in 0..nb {
        for y in 0..nb {
            homs.insert((na + x, na + y), b.hom(x, y).clone());
        }
    }
    let ids = a.ids().iter().chain(b.ids()).copied().collect();
    let mut d = DGCategory::new(objects, homs, ids)?;
    for x in 0..na {
        for y in 0..na {
            d.set_d(x, y, a.d(x, y).clone())?;
        }
        for y in 0..nb {
            d.set_d(x, na + y, m.d(x, y).clone())?;
        }
    }
    for x in 0..nb {
        for y in 0..nb {
            d.set_d(na + x, na + y, b.d(x, y).clone())?;
        }
    }
    let n = na + nb;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let sides = (x >= na, y >= na, z >= na);
                let (nf, ng) = (d.hom(x, y).len(), d.hom(y, z).len());
                for g in 0..ng {
                    for f in 0..nf {
                        let v = match sides {
                            (false, false, false) => a.compose(x, y, z, g, f).clone(),
                            (true, true, true) => b.compose(x - na, y - na, z - na, g, f).clone(),
                            (false, false, true) => m.precompose(x, y, z - na, g, f).clone(),
                            (false, true, true) => m.postcompose(x, y - na, z - na, g, f).clone(),
                            _ => SparseVec::new(),
                        };
                        d.set_compose(x, y, z, g, f, v)?;
                    }
                }
            }
        }
    }
    let sides = (0..n).map(|i| if i < na { Side::A } else { Side::B }).collect();
    Ok(GluedCategory { category: d, sides, a_objects: na })
}

/// Validates a bimodule by validating the gluing it defines.
pub fn validate_bimodule(a: &DGCategory, b: &DGCategory, m: &DGBimodule) -> Result<ValidationReport> {
    Ok(validate(&glue(a, b, m)?.category))
}

/// `a` as a bimodule over itself: `I(x, y) = a(x, y)`, both actions by composition.
pub fn diagonal_bimodule(a: &DGCategory) -> DGBimodule {
    let n = a.num_objects();
    let spaces = (0..n).flat_map(|x| (0..n).map(move |y| ((x, y), a.hom(x, y).clone()))).collect();
    let mut m = DGBimodule::new(a, a, spaces).expect("diagonal spaces match");
    for x in 0..n {
        for y in 0..n {
            m.set_d(x, y, a.d(x, y).clone()).expect("diagonal differential");
            for x2 in 0..n {
                for mi in 0..a.hom(x, y).len() {
                    for f in 0..a.hom(x2, x).len() {
                        m.set_precompose(a, x2, x, y, mi, f, a.compose(x2, x, y, mi, f).clone()).unwrap();
                    }
                }
            }
            for y2 in 0..n {
                for g in 0..a.hom(y, y2).len() {
                    for mi in 0..a.hom(x, y).len() {
                        m.set_postcompose(a, x, y, y2, g, mi, a.compose(x, y, y2, g, mi).clone()).unwrap();
                    }
                }
            }
        }
    }
    m
}

/// Pulls an `(a, b)`-bimodule back along `f: a' → a` and `g: b' → b`.
#[allow(clippy::too_many_arguments)]
pub fn restrict_bimodule(
    a_src: &DGCategory,
    a: &DGCategory,
    f: &DGFunctor,
    b_src: &DGCategory,
    b: &DGCategory,
    g: &DGFunctor,
    m: &DGBimodule,
) -> Result<DGBimodule> {
    if !m.fits(a, b) {
        return Err(Error::Inconsistent("bimodule does not fit the functor targets".into()));
    }
    let (na, nb) = (a_src.num_objects(), b_src.num_objects());
    let spaces: HashMap<(usize, usize), GradedBasis> =
        (0..na).flat_map(|x| (0..nb).map(move |y| ((x, y), m.space(f.object(x), g.object(y)).clone()))).collect();
    let mut r = DGBimodule::new(a_src, b_src, spaces)?;
    for x in 0..na {
        for y in 0..nb {
            let (fx, gy) = (f.object(x), g.object(y));
            r.set_d(x, y, m.d(fx, gy).clone())?;
            let dim = m.space(fx, gy).len();
            for x2 in 0..na {
                let fx2 = f.object(x2);
                for h in 0..a_src.hom(x2, x).len() {
                    let image = f.apply(x2, x, &SparseVec::unit(h));
                    for mi in 0..dim {
                        let mut v = SparseVec::new();
                        for (k, c) in image.iter() {
                            v.add_scaled(m.precompose(fx2, fx, gy, mi, k), c);
                        }
                        r.set_precompose(a_src, x2, x, y, mi, h, v)?;
                    }
                }
            }
            for y2 in 0..nb {
                let gy2 = g.object(y2);
                for h in 0..b_src.hom(y, y2).len() {
                    let image = g.apply(y, y2, &SparseVec::unit(h));
                    for mi in 0..dim {
                        let mut v = SparseVec::new();
                        for (k, c) in image.iter() {
                            v.add_scaled(m.postcompose(fx, gy, gy2, k, mi), c);
                        }
                        r.set_postcompose(b_src, x, y, y2, h, mi, v)?;
                    }
                }
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests;
