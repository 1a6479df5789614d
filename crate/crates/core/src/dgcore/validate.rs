use std::fmt;

use num_traits::One;

use super::{sign, DGCategory};
use crate::exactla::{SparseVec, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    DSquared,
    Leibniz,
    Associativity,
    Unit,
    ClosedIdentity,
    FunctorDegree,
    FunctorDifferential,
    FunctorComposition,
    FunctorIdentity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::DSquared => "d∘d = 0",
            Axiom::Leibniz => "Leibniz rule",
            Axiom::Associativity => "associativity",
            Axiom::Unit => "unit",
            Axiom::ClosedIdentity => "unit: d(id) = 0",
            Axiom::FunctorDegree => "functor preserves degree",
            Axiom::FunctorDifferential => "functor commutes with d",
            Axiom::FunctorComposition => "functor preserves composition",
            Axiom::FunctorIdentity => "functor preserves identities",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Number of identities skipped because some term left the degree window.
    pub skipped: usize,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub(crate) fn push(&mut self, axiom: Axiom, witness: String) {
        self.violations.push(Violation { axiom, witness });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{}: {}", v.axiom, v.witness)?;
        }
        Ok(())
    }
}

/// Checks d∘d = 0, the Leibniz rule, associativity and the unit axioms on
/// every basis tuple. For window-truncated categories, identities with a
/// term outside the window are skipped and counted.
pub fn validate(c: &DGCategory) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = c.num_objects();
    let inside = |k: i32| c.window().is_none_or(|(lo, hi)| lo <= k && k <= hi);
    let name = |x: usize, y: usize, i: usize| format!("{} ∈ hom({}, {})", c.hom(x, y).label(i), c.object(x), c.object(y));

    for x in 0..n {
        let id = c.id(x);
        if !c.apply_d(x, x, &SparseVec::unit(id)).is_zero() {
            report.push(Axiom::ClosedIdentity, format!("d({}) ≠ 0", name(x, x, id)));
        }
        for y in 0..n {
            let h = c.hom(x, y);
            for f in 0..h.len() {
                let deg = h.degree(f);
                if inside(deg + 1) && inside(deg + 2) {
                    let dd = c.apply_d(x, y, &c.apply_d(x, y, &SparseVec::unit(f)));
                    if !dd.is_zero() {
                        report.push(Axiom::DSquared, format!("d(d({})) ≠ 0", name(x, y, f)));
                    }
                } else {
                    report.skipped += 1;
                }
                if c.compose(x, y, y, c.id(y), f) != &SparseVec::unit(f) {
                    report.push(Axiom::Unit, format!("id_{} ∘ {} ≠ {}", c.object(y), name(x, y, f), h.label(f)));
                }
                if c.compose(x, x, y, f, c.id(x)) != &SparseVec::unit(f) {
                    report.push(Axiom::Unit, format!("{} ∘ id_{} ≠ {}", name(x, y, f), c.object(x), h.label(f)));
                }
            }
        }
    }

    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                check_leibniz(c, x, y, z, &inside, &mut report);
                for w in 0..n {
                    check_associativity(c, x, y, z, w, &inside, &mut report);
                }
            }
        }
    }
    report
}

fn check_leibniz(c: &DGCategory, x: usize, y: usize, z: usize, inside: &dyn Fn(i32) -> bool, report: &mut ValidationReport) {
    let (hf, hg) = (c.hom(x, y), c.hom(y, z));
    for g in 0..hg.len() {
        let dg = c.apply_d(y, z, &SparseVec::unit(g));
        let gd = hg.degree(g);
        for f in 0..hf.len() {
            let fd = hf.degree(f);
            if ![gd + 1, fd + 1, gd + fd, gd + fd + 1].into_iter().all(inside) {
                report.skipped += 1;
                continue;
            }
            let df = c.apply_d(x, y, &SparseVec::unit(f));
            let lhs = c.apply_d(x, z, c.compose(x, y, z, g, f));
            let mut rhs = c.compose_vec(x, y, z, &dg, &SparseVec::unit(f));
            rhs.add_scaled(&c.compose_vec(x, y, z, &SparseVec::unit(g), &df), &sign(gd as i64));
            if lhs != rhs {
                report.push(Axiom::Leibniz, format!("d({} ∘ {}) in hom({}, {})", hg.label(g), hf.label(f), c.object(x), c.object(z)));
            }
        }
    }
}

fn check_associativity(
    c: &DGCategory,
    x: usize,
    y: usize,
    z: usize,
    w: usize,
    inside: &dyn Fn(i32) -> bool,
    report: &mut ValidationReport,
) {
    let (hf, hg, hh) = (c.hom(x, y), c.hom(y, z), c.hom(z, w));
    let one = Q::one();
    for h in 0..hh.len() {
        for g in 0..hg.len() {
            let hg_comp = c.compose(y, z, w, h, g);
            for f in 0..hf.len() {
                let degs = [hh.degree(h) + hg.degree(g), hg.degree(g) + hf.degree(f)];
                if !degs.into_iter().all(inside) {
                    report.skipped += 1;
                    continue;
                }
                let left = c.compose_vec(x, y, w, hg_comp, &SparseVec::unit(f));
                let right = c.compose_vec(x, z, w, &SparseVec::unit(h), c.compose(x, y, z, g, f));
                let mut diff = left;
                diff.add_scaled(&right, &-one.clone());
                if !diff.is_zero() {
                    report.push(
                        Axiom::Associativity,
                        format!(
                            "({} ∘ {}) ∘ {} over {} → {} → {} → {}",
                            hh.label(h),
                            hg.label(g),
                            hf.label(f),
                            c.object(x),
                            c.object(y),
                            c.object(z),
                            c.object(w)
                        ),
                    );
                }
            }
        }
    }
}
