use std::collections::BTreeMap;

use serde::Serialize;

use super::{build_reduced_complex, hh, MixedComplex};
use crate::constructions::{glue, Side};
use crate::dgcore::{tensor, DGBimodule, DGCategory};
use crate::error::Result;
use crate::exactla::SparseVec;
use crate::params::ComputationParams;

/// Outcome of checking `b² = 0`, `B² = 0` and `bB + Bb = 0` word by word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub words_checked: usize,
    pub b_squared_failures: Vec<String>,
    pub big_b_squared_failures: Vec<String>,
    pub anticommutator_failures: Vec<String>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.b_squared_failures.is_empty() && self.big_b_squared_failures.is_empty() && self.anticommutator_failures.is_empty()
    }
}

/// Checks the mixed-complex identities on every word of length at most
/// `L - 2`, where truncation of `B` cannot interfere.
pub fn check_identities(mc: &MixedComplex) -> IdentityReport {
    let mut report = IdentityReport::default();
    let limit = mc.bar_length().saturating_sub(2);
    for w in 0..mc.num_words() {
        if mc.length(w) > limit {
            continue;
        }
        report.words_checked += 1;
        let unit = SparseVec::unit(w);
        let bw = mc.apply_b(&unit);
        let big_bw = mc.apply_big_b(&unit);
        if !mc.apply_b(&bw).is_zero() {
            report.b_squared_failures.push(mc.label(w).to_string());
        }
        if !mc.apply_big_b(&big_bw).is_zero() {
            report.big_b_squared_failures.push(mc.label(w).to_string());
        }
        if !mc.apply_b(&big_bw).add(&mc.apply_big_b(&bw)).is_zero() {
            report.anticommutator_failures.push(mc.label(w).to_string());
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KunnethRow {
    pub direct: usize,
    pub convolution: usize,
    /// Both sides are stable in this degree, so the comparison is meaningful.
    pub stable: bool,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KunnethReport {
    pub degrees: BTreeMap<i64, KunnethRow>,
}

impl KunnethReport {
    /// Every mutually stable degree matches.
    pub fn passes(&self) -> bool {
        self.degrees.values().all(|r| !r.stable || r.matches)
    }

    pub fn stable_degrees(&self) -> usize {
        self.degrees.values().filter(|r| r.stable).count()
    }
}

/// Compares `dim HH_n(a ⊗ b)` with `Σ_i dim HH_i(a) · dim HH_{n-i}(b)`.
pub fn kunneth_check(a: &DGCategory, b: &DGCategory, params: &ComputationParams) -> Result<KunnethReport> {
    let t = tensor(a, b)?;
    let direct = hh(&t, params)?;
    let fa = build_reduced_complex(a, params.max_bar_length).frontier();
    let fb = build_reduced_complex(b, params.max_bar_length).frontier();
    let bounded = fa.gap.is_none_or(|g| g >= 0) && fb.gap.is_none_or(|g| g >= 0);
    let (lo, hi) = params.window;
    let ha = hh(a, &params.with_window(fa.floor, hi - fb.floor))?;
    let hb = hh(b, &params.with_window(fb.floor, hi - fa.floor))?;
    let mut degrees = BTreeMap::new();
    for n in lo..=hi {
        let mut convolution = 0;
        let mut stable = bounded && direct.is_stable(n);
        for i in fa.floor..=n - fb.floor {
            let j = n - i;
            let (da, db) = (ha.dim(i), hb.dim(j));
            convolution += da * db;
            let known = (ha.is_stable(i) && hb.is_stable(j)) || (ha.is_stable(i) && da == 0) || (hb.is_stable(j) && db == 0);
            stable &= known;
        }
        let d = direct.dim(n);
        degrees.insert(n, KunnethRow { direct: d, convolution, stable, matches: d == convolution });
    }
    Ok(KunnethReport { degrees })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdditivityReport {
    pub glued_words: usize,
    pub a_words: usize,
    pub b_words: usize,
    /// Words of the glued complex meeting both sides; must be empty.
    pub mixed_words: Vec<String>,
    pub b_blocks_equal: bool,
    pub big_b_blocks_equal: bool,
}

impl AdditivityReport {
    pub fn passes(&self) -> bool {
        self.mixed_words.is_empty() && self.glued_words == self.a_words + self.b_words && self.b_blocks_equal && self.big_b_blocks_equal
    }
}

/// Checks that the reduced complex of `glue(a, b, m)` is, word for word,
/// the direct sum of the complexes of `a` and `b`, with `b` and `B`
/// block diagonal and equal to those of the factors.
pub fn gluing_additivity_check(a: &DGCategory, b: &DGCategory, m: &DGBimodule, params: &ComputationParams) -> Result<AdditivityReport> {
    let g = glue(a, b, m)?;
    let l = params.max_bar_length;
    let (cd, ca, cb) = (build_reduced_complex(&g.category, l), build_reduced_complex(a, l), build_reduced_complex(b, l));
    let na = g.a_objects;
    // translate each glued word to (side, word number in the factor complex)
    let mut mixed = Vec::new();
    let mut image: Vec<Option<(Side, usize)>> = Vec::with_capacity(cd.num_words());
    for w in 0..cd.num_words() {
        let ms: Vec<_> = cd.word(w).iter().map(|&x| *cd.table().get(x)).collect();
        let side_of = |o: usize| g.sides[o];
        let side = side_of(ms[0].source);
        if ms.iter().any(|m| side_of(m.source) != side || side_of(m.target) != side) {
            mixed.push(cd.label(w).to_string());
            image.push(None);
            continue;
        }
        let (factor, shift) = match side {
            Side::A => (a, 0),
            Side::B => (b, na),
        };
        let fw: Vec<u32> = ms.iter().map(|m| factor.global_index(m.source - shift, m.target - shift, m.local) as u32).collect();
        let target = match side {
            Side::A => &ca,
            Side::B => &cb,
        };
        image.push(target.find(&fw).map(|i| (side, i)));
    }
    let translate = |v: &SparseVec, side: Side| -> Option<SparseVec> {
        let mut out = Vec::new();
        for (w, c) in v.iter() {
            match image[w] {
                Some((s, i)) if s == side => out.push((i, c.clone())),
                _ => return None,
            }
        }
        Some(SparseVec::from_pairs(out))
    };
    let mut b_equal = true;
    let mut big_b_equal = true;
    let (mut count_a, mut count_b) = (0, 0);
    for w in 0..cd.num_words() {
        let Some((side, i)) = image[w] else { continue };
        let factor = match side {
            Side::A => {
                count_a += 1;
                &ca
            }
            Side::B => {
                count_b += 1;
                &cb
            }
        };
        b_equal &= translate(cd.b_of(w), side).as_ref() == Some(factor.b_of(i));
        big_b_equal &= translate(cd.big_b_of(w), side).as_ref() == Some(factor.big_b_of(i));
    }
    let covered = count_a == ca.num_words() && count_b == cb.num_words();
    Ok(AdditivityReport {
        glued_words: cd.num_words(),
        a_words: ca.num_words(),
        b_words: cb.num_words(),
        mixed_words: mixed,
        b_blocks_equal: b_equal && covered,
        big_b_blocks_equal: big_b_equal && covered,
    })
}
