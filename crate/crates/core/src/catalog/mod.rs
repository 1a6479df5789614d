//! Built-in example categories with independently computed expected
//! invariants, and a seeded random category generator.

pub mod oracles;
mod random;

pub use random::{random_category, RandomBounds};

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::dgcore::{DGCategory, GradedBasis};
use crate::error::{Error, Result};
use crate::exactla::SparseVec;

/// Expected invariants of a catalog entry together with the oracle that
/// produced them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub oracle: String,
    /// Hochschild homology dimensions in the degrees the oracle covers.
    pub hh: BTreeMap<i64, usize>,
    /// Cyclic homology dimensions, when the oracle covers them.
    pub hc: BTreeMap<i64, usize>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub category: DGCategory,
    pub expected: Option<Expected>,
    /// Arrows of a quiver presentation, as `(source, target, local index)`.
    pub arrows: Option<Vec<(usize, usize, usize)>>,
}

/// Highest homological degree covered by the built-in oracles.
pub const ORACLE_DEGREE: i64 = 6;

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] = &["ground_field", "a2", "a3", "dual_numbers", "exterior_-1", "exterior_1", "random_<seed>"];

/// Looks up a catalog entry: `ground_field` (or `k`), `a2`, `a3`,
/// `dual_numbers`, `exterior_<odd degree>`, `random_<seed>`.
pub fn by_name(name: &str) -> Result<CatalogEntry> {
    match name {
        "ground_field" | "k" => Ok(ground_field()),
        "a2" => Ok(a2()),
        "a3" => Ok(a3()),
        "dual_numbers" => Ok(dual_numbers()),
        _ => {
            if let Some(d) = name.strip_prefix("exterior_") {
                let d = d.parse().map_err(|_| Error::schema("catalog", format!("bad degree in {name:?}")))?;
                return exterior_generator(d);
            }
            if let Some(s) = name.strip_prefix("random_") {
                let seed = s.parse().map_err(|_| Error::schema("catalog", format!("bad seed in {name:?}")))?;
                return Ok(random_category(seed, RandomBounds::default()));
            }
            Err(Error::schema("catalog", format!("unknown catalog entry {name:?}; known: {}", NAMES.join(", "))))
        }
    }
}

/// One object with `hom = k·id`.
pub fn ground_field() -> CatalogEntry {
    let mut entry = acyclic_quiver(&["pt"], &[]).expect("single vertex");
    entry.name = "ground_field".into();
    entry.description = "the ground field: one object, hom = k·id".into();
    entry
}

/// The path category of `x → y`.
pub fn a2() -> CatalogEntry {
    let mut e = acyclic_quiver(&["x", "y"], &[("a", "x", "y")]).expect("A2 is acyclic");
    e.name = "a2".into();
    e
}

/// The path category of `x → y → z`.
pub fn a3() -> CatalogEntry {
    let mut e = acyclic_quiver(&["x", "y", "z"], &[("a", "x", "y"), ("b", "y", "z")]).expect("A3 is acyclic");
    e.name = "a3".into();
    e
}

/// The path category of a finite acyclic quiver; composition is
/// concatenation of paths. Path labels read right to left, `b∘a` for `a`
/// followed by `b`.
pub fn acyclic_quiver(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<CatalogEntry> {
    let n = vertices.len();
    let vidx = |v: &str| vertices.iter().position(|&w| w == v).ok_or_else(|| Error::schema("quiver", format!("unknown vertex {v:?}")));
    let mut out_arrows: Vec<Vec<(usize, &str)>> = vec![Vec::new(); n];
    for &(name, s, t) in arrows {
        out_arrows[vidx(s)?].push((vidx(t)?, name));
    }
    // paths as arrow-index sequences; detect cycles by bounded search
    let mut paths: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n * n];
    let arrow_ends: Vec<(usize, usize)> = arrows.iter().map(|&(_, s, t)| Ok((vidx(s)?, vidx(t)?))).collect::<Result<_>>()?;
    for start in 0..n {
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(start, Vec::new())];
        while let Some((v, p)) = stack.pop() {
            if p.len() > arrows.len() {
                return Err(Error::Unsupported("quiver has an oriented cycle".into()));
            }
            paths[start * n + v].push(p.clone());
            for (k, &(s, t)) in arrow_ends.iter().enumerate() {
                if s == v {
                    let mut q = p.clone();
                    q.push(k);
                    stack.push((t, q));
                }
            }
        }
    }
    for ps in &mut paths {
        ps.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    }
    let label = |start: usize, p: &[usize]| -> String {
        if p.is_empty() {
            format!("id_{}", vertices[start])
        } else {
            p.iter().rev().map(|&k| arrows[k].0).collect::<Vec<_>>().join("∘")
        }
    };
    let mut homs = HashMap::new();
    let mut lookup: Vec<HashMap<Vec<usize>, usize>> = vec![HashMap::new(); n * n];
    for x in 0..n {
        for y in 0..n {
            let ps = &paths[x * n + y];
            homs.insert((x, y), GradedBasis::new(ps.iter().map(|p| (label(x, p), 0)))?);
            for (i, p) in ps.iter().enumerate() {
                lookup[x * n + y].insert(p.clone(), i);
            }
        }
    }
    let ids = (0..n).map(|x| lookup[x * n + x][&Vec::new()]).collect();
    let mut c = DGCategory::new(vertices.iter().map(|v| v.to_string()).collect(), homs, ids)?;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for (g, pg) in paths[y * n + z].iter().enumerate() {
                    for (f, pf) in paths[x * n + y].iter().enumerate() {
                        let mut p = pf.clone();
                        p.extend_from_slice(pg);
                        c.set_compose(x, y, z, g, f, SparseVec::unit(lookup[x * n + z][&p]))?;
                    }
                }
            }
        }
    }
    let arrow_list: Vec<(usize, usize, usize)> =
        arrow_ends.iter().enumerate().map(|(k, &(s, t))| (s, t, lookup[s * n + t][&vec![k]])).collect();
    let hh = oracles::quiver_hh(&c, &arrow_list)?;
    let hc = oracles::connes_hc(&oracles::TotalAlgebra::of(&c)?, 0..=4)?;
    Ok(CatalogEntry {
        name: format!("quiver_{}v_{}a", n, arrows.len()),
        description: format!("path category of an acyclic quiver with {} vertices and {} arrows", n, arrows.len()),
        category: c,
        expected: Some(Expected { oracle: "two-term diagonal resolution; Connes complex".into(), hh, hc }),
        arrows: Some(arrow_list),
    })
}

/// `k[x]/x²` with `x` in degree 0 and zero differential.
pub fn dual_numbers() -> CatalogEntry {
    let c = truncated_polynomial(2);
    let hh = oracles::truncated_polynomial_hh(2, ORACLE_DEGREE).expect("resolution is exact");
    let hc = oracles::connes_hc(&oracles::TotalAlgebra::of(&c).expect("degree zero"), 0..=ORACLE_DEGREE).expect("oracle");
    CatalogEntry {
        name: "dual_numbers".into(),
        description: "dual numbers k[x]/x², x in degree 0".into(),
        category: c,
        expected: Some(Expected { oracle: "2-periodic bimodule resolution; Connes complex".into(), hh, hc }),
        arrows: None,
    }
}

/// `k[x]/x^m` on one object.
pub fn truncated_polynomial(m: usize) -> DGCategory {
    let labels = (0..m).map(|i| match i {
        0 => ("1".to_string(), 0),
        1 => ("x".to_string(), 0),
        _ => (format!("x^{i}"), 0),
    });
    let homs = HashMap::from([((0, 0), GradedBasis::new(labels).unwrap())]);
    let mut c = DGCategory::new(vec!["pt".into()], homs, vec![0]).unwrap();
    for i in 0..m {
        for j in 0..m {
            let v = if i + j < m { SparseVec::unit(i + j) } else { SparseVec::new() };
            c.set_compose(0, 0, 0, i, j, v).unwrap();
        }
    }
    c
}

/// One object with `hom` spanned by `id` and `ξ` of the given odd degree,
/// `ξ² = 0`, zero differential.
pub fn exterior_generator(degree: i32) -> Result<CatalogEntry> {
    if degree % 2 == 0 {
        return Err(Error::Unsupported(format!("exterior generator needs odd degree, got {degree}")));
    }
    let homs = HashMap::from([((0, 0), GradedBasis::new([("1", 0), ("ξ", degree)])?)]);
    let c = DGCategory::new(vec!["pt".into()], homs, vec![0])?;
    Ok(CatalogEntry {
        name: format!("exterior_{degree}"),
        description: format!("exterior algebra on one generator of degree {degree}"),
        category: c,
        expected: None,
        arrows: None,
    })
}
