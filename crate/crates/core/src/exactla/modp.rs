//! Rank over a prime field, used only as a fast pre-check.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{SparseMatrix, Q};

fn reduce_mod(q: &Q, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = q.denom().mod_floor(&pb).to_u64()?;
    if den == 0 {
        return None;
    }
    let num = q.numer().mod_floor(&pb).to_u64()?;
    Some(mul(num, inverse(den, p), p))
}

fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inverse(a: u64, p: u64) -> u64 {
    // Fermat; p is assumed prime
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        e >>= 1;
    }
    acc
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Rank of `m` over `F_p`. Returns `None` if some entry has a denominator
/// divisible by `p`.
pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> Option<usize> {
    assert!(is_prime(p), "{p} is not prime");
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for col in m.columns() {
        let mut v: Vec<(usize, u64)> = Vec::with_capacity(col.nnz());
        for (i, q) in col.iter() {
            let r = reduce_mod(q, p)?;
            if r != 0 {
                v.push((i, r));
            }
        }
        let mut pos = 0;
        while pos < v.len() {
            let (idx, c) = v[pos];
            if let Some(pv) = pivots.get(&idx) {
                v = axpy(&v, pv, p - c, p);
            } else {
                pos += 1;
            }
        }
        if let Some(&(lead, c)) = v.first() {
            let inv = inverse(c, p);
            let normalized = v.into_iter().map(|(i, x)| (i, mul(x, inv, p))).collect();
            pivots.insert(lead, normalized);
        }
    }
    Some(pivots.len())
}

/// `a + c * b` over `F_p`.
fn axpy(a: &[(usize, u64)], b: &[(usize, u64)], c: u64, p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (0, 0);
    while x < a.len() || y < b.len() {
        let take_a = y >= b.len() || (x < a.len() && a[x].0 < b[y].0);
        let take_b = x >= a.len() || (y < b.len() && b[y].0 < a[x].0);
        if take_a {
            out.push(a[x]);
            x += 1;
        } else if take_b {
            out.push((b[y].0, mul(b[y].1, c, p)));
            y += 1;
        } else {
            let s = (a[x].1 + mul(b[y].1, c, p)) % p;
            if s != 0 {
                out.push((a[x].0, s));
            }
            x += 1;
            y += 1;
        }
    }
    out
}
