//! Independent computations of expected invariants.
//!
//! Nothing here touches the reduced bar complex: Hochschild homology comes
//! from small explicit bimodule resolutions, cyclic homology from Connes'
//! quotient complex, and negative cyclic homology from the unnormalized
//! Hochschild complex.

use std::collections::{BTreeMap, HashMap};
use std::ops::RangeInclusive;

use num_traits::One;

use crate::dgcore::DGCategory;
use crate::error::{Error, Result};
use crate::exactla::{rank, SparseMatrix, SparseVec, Q};

/// Hochschild homology of `k[x]/x^m` in degrees `0..=max_degree` from the
/// 2-periodic resolution `… → A^e --v--> A^e --u--> A^e → A` with
/// `u = x⊗1 - 1⊗x` and `v = Σ x^i ⊗ x^{m-1-i}`.
pub fn truncated_polynomial_hh(m: usize, max_degree: i64) -> Result<BTreeMap<i64, usize>> {
    let mul = |i: usize, j: usize| if i + j < m { Some(i + j) } else { None };
    // A^e = A ⊗ A with basis (i, j) at i * m + j; commutative, so A^op = A
    let ae = |p: usize, q: usize| p * m + q;
    let mut u = SparseVec::new();
    if m > 1 {
        u = SparseVec::from_pairs([(ae(1, 0), Q::one()), (ae(0, 1), -Q::one())]);
    }
    let v = SparseVec::from_pairs((0..m).map(|i| (ae(i, m - 1 - i), Q::one())));
    let right_mult = |e: &SparseVec| {
        let cols = (0..m * m)
            .map(|k| {
                let (p, q) = (k / m, k % m);
                SparseVec::from_pairs(e.iter().filter_map(|(l, c)| {
                    let (r, s) = (l / m, l % m);
                    Some((ae(mul(p, r)?, mul(q, s)?), c.clone()))
                }))
            })
            .collect();
        SparseMatrix::from_columns(m * m, cols)
    };
    let augmentation =
        SparseMatrix::from_columns(m, (0..m * m).map(|k| mul(k / m, k % m).map(SparseVec::unit).unwrap_or_default()).collect());
    let (mu, mv) = (right_mult(&u), right_mult(&v));
    // exactness of the resolution up to the needed length
    let mut previous = augmentation.clone();
    for n in 1..=max_degree + 1 {
        let d = if n % 2 == 1 { &mu } else { &mv };
        if !previous.mul(d).is_zero() || rank(d) != previous.cols() - rank(&previous) {
            return Err(Error::Inconsistent(format!("periodic resolution is not exact at step {n}")));
        }
        previous = d.clone();
    }
    // A ⊗_{A^e} A^e = A, and right multiplication by p⊗q becomes a ↦ p·a·q
    let collapse = |e: &SparseVec| {
        let mut scalar = SparseVec::new();
        for (l, c) in e.iter() {
            if let Some(k) = mul(l / m, l % m) {
                scalar.add_scaled(&SparseVec::unit(k), c);
            }
        }
        let cols = (0..m).map(|a| SparseVec::from_pairs(scalar.iter().filter_map(|(k, c)| Some((mul(k, a)?, c.clone()))))).collect();
        SparseMatrix::from_columns(m, cols)
    };
    let (cu, cv) = (collapse(&u), collapse(&v));
    let boundary = |n: i64| -> usize {
        match n {
            n if n <= 0 => 0,
            n if n % 2 == 1 => rank(&cu),
            _ => rank(&cv),
        }
    };
    Ok((0..=max_degree).map(|n| (n, m - boundary(n) - boundary(n + 1))).collect())
}

/// Hochschild homology of the path category of an acyclic quiver from the
/// two-term resolution `0 → ⊕_α P(s_α, t_α) → ⊕_v P(v, v) → I → 0`.
///
/// After tensoring with the diagonal the complex is
/// `⊕_α hom(t_α, s_α) → ⊕_v hom(v, v)`, `p ↦ p∘α - α∘p`. Exactness of the
/// resolution is checked first, object pair by object pair.
pub fn quiver_hh(c: &DGCategory, arrows: &[(usize, usize, usize)]) -> Result<BTreeMap<i64, usize>> {
    let n = c.num_objects();
    for x in 0..n {
        for y in 0..n {
            check_resolution(c, arrows, x, y)?;
        }
    }
    let mut c0_offsets = Vec::with_capacity(n);
    let mut c0 = 0;
    for v in 0..n {
        c0_offsets.push(c0);
        c0 += c.hom(v, v).len();
    }
    let mut cols = Vec::new();
    for &(s, t, a) in arrows {
        for p in 0..c.hom(t, s).len() {
            let mut col = SparseVec::new();
            col.add_scaled(&c.compose(s, t, s, p, a).remap(|k| Some(c0_offsets[s] + k)), &Q::one());
            col.add_scaled(&c.compose(t, s, t, a, p).remap(|k| Some(c0_offsets[t] + k)), &-Q::one());
            cols.push(col);
        }
    }
    let dim1 = cols.len();
    let r = rank(&SparseMatrix::from_columns(c0, cols));
    Ok((0..=super::ORACLE_DEGREE)
        .map(|k| {
            (
                k,
                match k {
                    0 => c0 - r,
                    1 => dim1 - r,
                    _ => 0,
                },
            )
        })
        .collect())
}

fn check_resolution(c: &DGCategory, arrows: &[(usize, usize, usize)], x: usize, y: usize) -> Result<()> {
    let n = c.num_objects();
    // P0(x, y) = ⊕_v hom(v, y) ⊗ hom(x, v)
    let mut p0_index = HashMap::new();
    for v in 0..n {
        for g in 0..c.hom(v, y).len() {
            for f in 0..c.hom(x, v).len() {
                let k = p0_index.len();
                p0_index.insert((v, g, f), k);
            }
        }
    }
    let target_dim = c.hom(x, y).len();
    let mut eval_cols = vec![SparseVec::new(); p0_index.len()];
    for (&(v, g, f), &k) in &p0_index {
        eval_cols[k] = c.compose(x, v, y, g, f).clone();
    }
    let eval = SparseMatrix::from_columns(target_dim, eval_cols);
    // P1(x, y) = ⊕_α hom(t, y) ⊗ hom(x, s); g⊗f ↦ (g∘α)⊗f - g⊗(α∘f)
    let mut cols = Vec::new();
    for &(s, t, a) in arrows {
        for g in 0..c.hom(t, y).len() {
            for f in 0..c.hom(x, s).len() {
                let mut col = Vec::new();
                for (k, coeff) in c.compose(s, t, y, g, a).iter() {
                    col.push((p0_index[&(s, k, f)], coeff.clone()));
                }
                for (k, coeff) in c.compose(x, s, t, a, f).iter() {
                    col.push((p0_index[&(t, g, k)], -coeff.clone()));
                }
                cols.push(SparseVec::from_pairs(col));
            }
        }
    }
    let dim1 = cols.len();
    let inc = SparseMatrix::from_columns(p0_index.len(), cols);
    let exact = eval.mul(&inc).is_zero() && rank(&inc) == dim1 && rank(&eval) == target_dim && p0_index.len() == dim1 + target_dim;
    if exact {
        Ok(())
    } else {
        Err(Error::Inconsistent(format!("two-term resolution is not exact at ({}, {})", c.object(x), c.object(y))))
    }
}

/// A finite-dimensional ungraded algebra given by structure constants.
#[derive(Clone, Debug)]
pub struct TotalAlgebra {
    pub dim: usize,
    /// `mult[g * dim + f]` is `g · f`.
    mult: Vec<SparseVec>,
    unit: SparseVec,
}

impl TotalAlgebra {
    /// The algebra `⊕ hom(x, y)` of a degree-zero category, with
    /// non-composable products zero and unit `Σ id_x`. It has the same
    /// Hochschild and cyclic homology as the category.
    pub fn of(c: &DGCategory) -> Result<Self> {
        if !c.is_degree_zero() {
            return Err(Error::Unsupported("total algebra oracle needs a degree-zero category".into()));
        }
        let dim = c.total_dim();
        let morphisms: Vec<_> = c.basis_morphisms().collect();
        let mut mult = vec![SparseVec::new(); dim * dim];
        for (gi, &(y, z, g)) in morphisms.iter().enumerate() {
            for (fi, &(x, y2, f)) in morphisms.iter().enumerate() {
                if y == y2 {
                    mult[gi * dim + fi] = c.compose(x, y, z, g, f).remap(|k| Some(c.global_index(x, z, k)));
                }
            }
        }
        let unit = SparseVec::from_pairs((0..c.num_objects()).map(|x| (c.global_index(x, x, c.id(x)), Q::one())));
        Ok(Self { dim, mult, unit })
    }

    fn product(&self, g: usize, f: usize) -> &SparseVec {
        &self.mult[g * self.dim + f]
    }
}

/// Tensor words `a_0 ⊗ … ⊗ a_n` encoded as base-`dim` integers, `a_0` most significant.
struct Tensors {
    dim: usize,
}

impl Tensors {
    fn count(&self, n: usize) -> usize {
        self.dim.pow(n as u32 + 1)
    }

    fn decode(&self, n: usize, mut code: usize) -> Vec<usize> {
        let mut w = vec![0; n + 1];
        for slot in (0..=n).rev() {
            w[slot] = code % self.dim;
            code /= self.dim;
        }
        w
    }

    fn encode(&self, w: &[usize]) -> usize {
        w.iter().fold(0, |acc, &a| acc * self.dim + a)
    }
}

fn hochschild_b(alg: &TotalAlgebra, tz: &Tensors, n: usize) -> SparseMatrix {
    let rows = if n == 0 { 0 } else { tz.count(n - 1) };
    let cols = (0..tz.count(n))
        .map(|code| {
            if n == 0 {
                return SparseVec::new();
            }
            let w = tz.decode(n, code);
            let mut out = Vec::new();
            for i in 0..n {
                let s = if i % 2 == 0 { Q::one() } else { -Q::one() };
                for (k, c) in alg.product(w[i], w[i + 1]).iter() {
                    let mut nw = w[..i].to_vec();
                    nw.push(k);
                    nw.extend_from_slice(&w[i + 2..]);
                    out.push((tz.encode(&nw), c * &s));
                }
            }
            let s = if n.is_multiple_of(2) { Q::one() } else { -Q::one() };
            for (k, c) in alg.product(w[n], w[0]).iter() {
                let mut nw = vec![k];
                nw.extend_from_slice(&w[1..n]);
                out.push((tz.encode(&nw), c * &s));
            }
            SparseVec::from_pairs(out)
        })
        .collect();
    SparseMatrix::from_columns(rows, cols)
}

/// The signed cyclic operator `t(a_0 ⊗ … ⊗ a_n) = (-1)^n a_n ⊗ a_0 ⊗ … ⊗ a_{n-1}`.
fn cyclic_t(tz: &Tensors, n: usize, code: usize) -> (usize, Q) {
    let w = tz.decode(n, code);
    let mut nw = vec![w[n]];
    nw.extend_from_slice(&w[..n]);
    (tz.encode(&nw), if n.is_multiple_of(2) { Q::one() } else { -Q::one() })
}

/// Cyclic homology of an ungraded algebra from Connes' complex
/// `C^λ_n = A^{⊗(n+1)} / (1 - t)`.
pub fn connes_hc(alg: &TotalAlgebra, degrees: RangeInclusive<i64>) -> Result<BTreeMap<i64, usize>> {
    let tz = Tensors { dim: alg.dim };
    let hi = *degrees.end();
    let budget = 5000;
    let max_n = (0..=hi as usize + 1).take_while(|&n| tz.count(n) <= budget).last().unwrap_or(0);
    let relations = |n: usize| -> Vec<SparseVec> {
        (0..tz.count(n))
            .map(|code| {
                let (tc, s) = cyclic_t(&tz, n, code);
                SparseVec::from_pairs([(code, Q::one()), (tc, -s)])
            })
            .collect()
    };
    let mut rel_rank = HashMap::new();
    let mut rel_rank_of = |n: usize| *rel_rank.entry(n).or_insert_with(|| rank(&SparseMatrix::from_columns(tz.count(n), relations(n))));
    // rank of b̄_n: C^λ_n → C^λ_{n-1}
    let quotient_rank = |n: usize, rel_rank_prev: usize| -> usize {
        if n == 0 {
            return 0;
        }
        let b = hochschild_b(alg, &tz, n);
        let mut cols = b.columns().to_vec();
        cols.extend(relations(n - 1));
        rank(&SparseMatrix::from_columns(tz.count(n - 1), cols)) - rel_rank_prev
    };
    let mut out = BTreeMap::new();
    for n in degrees {
        if n < 0 {
            out.insert(n, 0);
            continue;
        }
        let nu = n as usize;
        if nu + 1 > max_n {
            break;
        }
        let dim_q = tz.count(nu) - rel_rank_of(nu);
        let r_in = if nu == 0 { 0 } else { quotient_rank(nu, rel_rank_of(nu - 1)) };
        let r_out = quotient_rank(nu + 1, rel_rank_of(nu));
        out.insert(n, dim_q - r_in - r_out);
    }
    Ok(out)
}

/// Negative cyclic homology of an ungraded algebra from the unnormalized
/// mixed complex `(b, B)` with `B = (1 - t) s N`, truncated like the main
/// pipeline: pairs `(w, i)` with `i < N` and `len(w) ≤ L - N + 1 + i`, in
/// degree `len(w) - 2i`.
pub fn unnormalized_hc_minus(
    alg: &TotalAlgebra,
    bar_length: usize,
    u_power: usize,
    degrees: RangeInclusive<i64>,
) -> Result<BTreeMap<i64, usize>> {
    if u_power == 0 || bar_length + 1 < u_power {
        return Err(Error::Inconsistent("need 1 ≤ N ≤ L + 1".into()));
    }
    let tz = Tensors { dim: alg.dim };
    let k = bar_length + 1 - u_power;
    // chain basis in each degree: (len, i, code)
    let mut basis: BTreeMap<i64, Vec<(usize, usize, usize)>> = BTreeMap::new();
    for i in 0..u_power {
        for len in 0..=k + i {
            for code in 0..tz.count(len) {
                basis.entry(len as i64 - 2 * i as i64).or_default().push((len, i, code));
            }
        }
    }
    let index: HashMap<(usize, usize, usize), usize> =
        basis.values().flat_map(|v| v.iter().enumerate().map(|(p, &key)| (key, p))).collect();
    let mut b_cache: HashMap<usize, SparseMatrix> = HashMap::new();
    let mut big_b_cache: HashMap<usize, SparseMatrix> = HashMap::new();
    let mut differential = |n: i64| -> SparseMatrix {
        let rows = basis.get(&(n - 1)).map_or(0, Vec::len);
        let cols = basis
            .get(&n)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
            .iter()
            .map(|&(len, i, code)| {
                let mut out = Vec::new();
                if len > 0 {
                    let b = b_cache.entry(len).or_insert_with(|| hochschild_b(alg, &tz, len));
                    for (r, c) in b.column(code).iter() {
                        out.push((index[&(len - 1, i, r)], c.clone()));
                    }
                }
                if i + 1 < u_power {
                    let bb = big_b_cache.entry(len).or_insert_with(|| connes_big_b(alg, &tz, len));
                    for (r, c) in bb.column(code).iter() {
                        out.push((index[&(len + 1, i + 1, r)], c.clone()));
                    }
                }
                SparseVec::from_pairs(out)
            })
            .collect();
        SparseMatrix::from_columns(rows, cols)
    };
    let mut out = BTreeMap::new();
    for n in degrees {
        let d_out = differential(n);
        let d_in = differential(n + 1);
        if !d_out.mul(&d_in).is_zero() {
            return Err(Error::Inconsistent(format!("unnormalized (b + uB)² ≠ 0 in degree {n}")));
        }
        out.insert(n, d_out.cols() - rank(&d_out) - rank(&d_in));
    }
    Ok(out)
}

/// Unnormalized `B = (1 - t) s N` from `A^{⊗(n+1)}` to `A^{⊗(n+2)}`.
fn connes_big_b(alg: &TotalAlgebra, tz: &Tensors, n: usize) -> SparseMatrix {
    let cols = (0..tz.count(n))
        .map(|code| {
            // N = Σ t^j
            let mut orbit = Vec::with_capacity(n + 1);
            let (mut cur, mut sgn) = (code, Q::one());
            for _ in 0..=n {
                orbit.push((cur, sgn.clone()));
                let (next, s) = cyclic_t(tz, n, cur);
                cur = next;
                sgn *= s;
            }
            let mut out = Vec::new();
            for (w, c) in orbit {
                let word = tz.decode(n, w);
                for (u, cu) in alg.unit.iter() {
                    let mut sw = vec![u];
                    sw.extend_from_slice(&word);
                    let scode = tz.encode(&sw);
                    let coeff = &c * cu;
                    out.push((scode, coeff.clone()));
                    let (tc, ts) = cyclic_t(tz, n + 1, scode);
                    out.push((tc, -(coeff * ts)));
                }
            }
            SparseVec::from_pairs(out)
        })
        .collect();
    SparseMatrix::from_columns(tz.count(n + 1), cols)
}

/// Dimension of `HH_n` of an ungraded algebra from the unnormalized
/// Hochschild complex. Used as a sanity check on the other oracles.
pub fn unnormalized_hh(alg: &TotalAlgebra, n: usize) -> usize {
    let tz = Tensors { dim: alg.dim };
    let out = hochschild_b(alg, &tz, n);
    let inc = hochschild_b(alg, &tz, n + 1);
    out.cols() - rank(&out) - rank(&inc)
}
