//! The acceptance suite: every criterion run at fixed truncation bounds,
//! with its verdict recorded in an evidence ledger.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::catalog::{self, oracles::truncated_polynomial_hh, random_category, RandomBounds};
use crate::chern::{gluing_component_check, pairing_check, phi0, DiagonalResolution};
use crate::constructions::diagonal_bimodule;
use crate::cyclic::{degeneration_check, delta, hc, hc_minus, long_exact_check, morita_comparison, Verdict};
use crate::dgcore::{drinfeld_quotient, matrix_amplification, opposite, DGBimodule, DGCategory, GradedBasis};
use crate::error::{Error, Result};
use crate::hochschild::{build_reduced_complex_with, check_identities, gluing_additivity_check, hh, kunneth_check, SignConvention};
use crate::io::{digest, save, ReportDocument};
use crate::params::ComputationParams;

/// Number of criteria in the suite.
pub const CRITERIA: u32 = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteVerdict {
    Pass,
    Fail,
    /// A required quantity was not stable at the chosen bounds.
    Unstable,
}

impl SuiteVerdict {
    fn and(self, other: SuiteVerdict) -> SuiteVerdict {
        use SuiteVerdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Unstable, _) | (_, Unstable) => Unstable,
            _ => Pass,
        }
    }
}

impl std::fmt::Display for SuiteVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SuiteVerdict::Pass => "pass",
            SuiteVerdict::Fail => "fail",
            SuiteVerdict::Unstable => "unstable",
        })
    }
}

/// One ledger line: a criterion, how to rerun it, and what it found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceLedgerEntry {
    pub criterion: u32,
    pub statement: String,
    /// Command line reproducing this entry.
    pub command: String,
    pub verdict: SuiteVerdict,
    pub window: (i64, i64),
    pub bar_length: usize,
    pub u_power: usize,
    /// SHA-256 over the parameters and the canonical documents of every input.
    pub inputs_sha256: String,
    pub evidence: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ledger {
    pub entries: Vec<EvidenceLedgerEntry>,
}

impl Ledger {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.verdict == SuiteVerdict::Pass)
    }

    pub fn entry(&self, criterion: u32) -> Option<&EvidenceLedgerEntry> {
        self.entries.iter().find(|e| e.criterion == criterion)
    }

    pub fn report(&self, options: &SuiteOptions) -> ReportDocument {
        ReportDocument::new("suite", &options.params, self).with_seeds(options.seeds())
    }

    /// The results table used in the README.
    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| # | statement | verdict | L | N | window | inputs |\n|---|---|---|---|---|---|---|\n");
        for e in &self.entries {
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {}..{} | `{}` |\n",
                e.criterion,
                e.statement,
                e.verdict,
                e.bar_length,
                e.u_power,
                e.window.0,
                e.window.1,
                &e.inputs_sha256[..12]
            ));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    pub params: ComputationParams,
    /// Seeds `0..random_categories` feed the mixed-complex identity check.
    pub random_categories: u64,
    /// Sign convention of the Hochschild complex, for mutation checks.
    pub convention: SignConvention,
    /// Criteria to run; all when empty.
    pub only: Vec<u32>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self { params: ComputationParams::default(), random_categories: 100, convention: SignConvention::default(), only: Vec::new() }
    }
}

impl SuiteOptions {
    fn seeds(&self) -> Vec<u64> {
        if self.only.is_empty() || self.only.contains(&1) {
            (0..self.random_categories).collect()
        } else {
            Vec::new()
        }
    }

    fn command(&self, criterion: u32) -> String {
        let p = &self.params;
        format!(
            "hhcyc suite --criterion {criterion} --max-bar-length {} --max-u-power {} --window {}:{}",
            p.max_bar_length, p.max_u_power, p.window.0, p.window.1
        )
    }
}

/// Findings of one criterion before they are bound to a ledger entry.
struct Finding {
    verdict: SuiteVerdict,
    evidence: Vec<String>,
    inputs: Vec<String>,
}

impl Finding {
    fn new() -> Self {
        Self { verdict: SuiteVerdict::Pass, evidence: Vec::new(), inputs: Vec::new() }
    }

    fn input(&mut self, c: &DGCategory) {
        self.inputs.push(save(c));
    }

    fn record(&mut self, verdict: SuiteVerdict, line: impl Into<String>) {
        self.verdict = self.verdict.and(verdict);
        self.evidence.push(format!("{verdict}: {}", line.into()));
    }

    fn check(&mut self, ok: bool, line: impl Into<String>) {
        self.record(if ok { SuiteVerdict::Pass } else { SuiteVerdict::Fail }, line);
    }

    /// Records a computation that may fail; an `Unstable` error is an unstable verdict.
    fn attempt(&mut self, what: &str, run: impl FnOnce(&mut Self) -> Result<()>) {
        if let Err(e) = run(self) {
            let verdict = if matches!(e, Error::Unstable(_)) { SuiteVerdict::Unstable } else { SuiteVerdict::Fail };
            self.record(verdict, format!("{what}: {e}"));
        }
    }
}

fn dims_text(dims: &BTreeMap<i64, usize>) -> String {
    dims.iter().map(|(n, d)| format!("{n}:{d}")).collect::<Vec<_>>().join(" ")
}

/// `M(x, y) = k` in degree 0 with every non-identity action zero; a
/// bimodule whenever `x` is a sink of `a` and `y` a source of `b`.
fn point_bimodule(a: &DGCategory, b: &DGCategory, x: usize, y: usize) -> Result<DGBimodule> {
    DGBimodule::new(a, b, HashMap::from([((x, y), GradedBasis::new([("m", 0)])?)]))
}

fn mixed_complex_identities(o: &SuiteOptions, f: &mut Finding) {
    let mut categories: Vec<(String, DGCategory)> = ["ground_field", "a2", "a3", "dual_numbers", "exterior_-1", "exterior_1"]
        .iter()
        .map(|n| (n.to_string(), catalog::by_name(n).expect("catalog entry").category))
        .collect();
    categories.extend((0..o.random_categories).map(|s| (format!("random_{s}"), random_category(s, RandomBounds::default()).category)));
    let mut failures = Vec::new();
    let mut words = 0;
    for (name, c) in &categories {
        f.input(c);
        let report = check_identities(&build_reduced_complex_with(c, o.params.max_bar_length, o.convention));
        words += report.words_checked;
        if !report.holds() {
            failures.push(name.clone());
        }
    }
    f.check(
        failures.is_empty(),
        format!("b² = B² = bB + Bb = 0 on {words} words of {} categories; failing: {failures:?}", categories.len()),
    );
}

fn ground_field_values(o: &SuiteOptions, f: &mut Finding) {
    let k = catalog::ground_field().category;
    f.input(&k);
    let p = &o.params;
    let expect = |rule: fn(i64) -> bool| p.degrees().map(|n| (n, usize::from(rule(n)))).collect::<BTreeMap<_, _>>();
    f.attempt("ground field", |f| {
        let h = hh(&k, p)?;
        let stable = p.degrees().all(|n| h.is_stable(n));
        compare(f, "HH", &h.dims(), &expect(|n| n == 0), stable);
        let c = hc(&k, p)?;
        let stable = p.degrees().all(|n| c.is_stable(n));
        compare(f, "HC", &c.dims(), &expect(|n| n >= 0 && n % 2 == 0), stable);
        let m = hc_minus(&k, p)?;
        let stable = p.degrees().all(|n| m.is_stable(n));
        compare(f, "HC⁻", &m.dims(), &expect(|n| n <= 0 && n % 2 == 0), stable);
        let d = delta(&k, p)?;
        let verdicts = d.verdicts.values().map(|v| v.verdict).collect::<Vec<_>>();
        let verdict = if verdicts.contains(&Verdict::Nonzero) {
            SuiteVerdict::Fail
        } else if verdicts.contains(&Verdict::Unstable) {
            SuiteVerdict::Unstable
        } else {
            SuiteVerdict::Pass
        };
        f.record(verdict, "δ = 0 in every degree");
        Ok(())
    });
}

/// Compares dimensions; a mismatch only counts as a failure where stable.
fn compare(f: &mut Finding, what: &str, got: &BTreeMap<i64, usize>, want: &BTreeMap<i64, usize>, stable: bool) {
    let verdict = match (got == want, stable) {
        (_, false) => SuiteVerdict::Unstable,
        (true, true) => SuiteVerdict::Pass,
        (false, true) => SuiteVerdict::Fail,
    };
    f.record(verdict, format!("{what} dims {} (expected {})", dims_text(got), dims_text(want)));
}

fn dual_numbers_hh(o: &SuiteOptions, f: &mut Finding) {
    let dual = catalog::dual_numbers().category;
    f.input(&dual);
    f.attempt("dual numbers", |f| {
        let p = o.params.with_window(0, 4);
        let oracle = truncated_polynomial_hh(2, 4)?;
        let h = hh(&dual, &p)?;
        compare(f, "HH (periodic resolution oracle)", &h.dims(), &oracle, (0..=4).all(|n| h.is_stable(n)));
        let longer = hh(&dual, &p.with_bar_length(p.max_bar_length + 1))?;
        f.check(longer.dims() == h.dims(), format!("unchanged at L = {}", p.max_bar_length + 1));
        Ok(())
    });
}

fn kunneth(o: &SuiteOptions, f: &mut Finding) {
    let (k, dual) = (catalog::ground_field().category, catalog::dual_numbers().category);
    f.input(&k);
    f.input(&dual);
    for (name, a, b) in [("k ⊗ dual numbers", &k, &dual), ("dual numbers ⊗ dual numbers", &dual, &dual)] {
        f.attempt(name, |f| {
            let r = kunneth_check(a, b, &o.params)?;
            let stable = r.stable_degrees();
            if stable == 0 {
                f.record(SuiteVerdict::Unstable, format!("{name}: no mutually stable degree"));
            } else {
                f.check(r.passes(), format!("{name}: HH matches the convolution on {stable} stable degrees"));
            }
            Ok(())
        });
    }
}

fn gluing_additivity(o: &SuiteOptions, f: &mut Finding) {
    let (k, a2) = (catalog::ground_field().category, catalog::a2().category);
    f.input(&k);
    f.input(&a2);
    f.attempt("gluing", |f| {
        let m = point_bimodule(&a2, &k, 1, 0)?;
        for (name, a, b, m) in [("glue(A₂, k, m)", &a2, &k, m), ("glue(k, k, k)", &k, &k, diagonal_bimodule(&k))] {
            let r = gluing_additivity_check(a, b, &m, &o.params)?;
            f.check(r.passes(), format!("{name}: b and B block diagonal on {} words", r.glued_words));
        }
        Ok(())
    });
}

fn morita(o: &SuiteOptions, f: &mut Finding) {
    let a2 = catalog::a2().category;
    f.input(&a2);
    f.attempt("Morita", |f| {
        let r = morita_comparison(&a2, &o.params)?;
        let rows = r.stable_rows();
        if rows == 0 {
            f.record(SuiteVerdict::Unstable, "no stable degree to compare");
        } else {
            f.check(r.holds(), format!("HH and HC⁻ of A₂ and its amplification agree on {rows} stable rows"));
        }
        f.check(r.corner_iso_on_hh0, "corner inclusion is an isomorphism on HH₀");
        Ok(())
    });
}

fn long_exact(o: &SuiteOptions, f: &mut Finding) {
    for name in ["ground_field", "a2", "dual_numbers"] {
        let c = catalog::by_name(name).expect("catalog entry").category;
        f.input(&c);
        f.attempt(name, |f| {
            let r = long_exact_check(&c, &o.params)?;
            let stable = r.nodes.values().filter(|n| n.stable).count();
            f.check(r.holds_on_stable(), format!("{name}: exact at {stable} stable nodes"));
            Ok(())
        });
    }
}

fn degeneration(o: &SuiteOptions, f: &mut Finding) {
    let bases = [catalog::ground_field(), catalog::a2(), catalog::a3()];
    for base in bases {
        let amp = matrix_amplification(&base.category, 2).expect("amplification").category;
        for (name, c) in [(base.name.clone(), base.category.clone()), (format!("{}×2", base.name), amp)] {
            f.input(&c);
            f.attempt(&name, |f| {
                let here = degeneration_check(&c, &o.params)?;
                let bumped = degeneration_check(&c, &o.params.bumped())?;
                let disagree = here
                    .zero_degrees
                    .iter()
                    .filter(|n| bumped.nonzero_degrees.contains(n))
                    .chain(here.nonzero_degrees.iter().filter(|n| bumped.zero_degrees.contains(n)))
                    .collect::<Vec<_>>();
                let ok = here.nonzero_degrees.is_empty() && disagree.is_empty();
                if ok && here.zero_degrees.is_empty() {
                    f.record(SuiteVerdict::Unstable, format!("{name}: no stable degree"));
                } else {
                    f.check(ok, format!("{name}: δ = 0 at stable degrees {:?}, unstable {:?}", here.zero_degrees, here.unstable_degrees));
                }
                Ok(())
            });
        }
    }
}

fn pairing(o: &SuiteOptions, f: &mut Finding) {
    for base in [catalog::ground_field(), catalog::a2(), catalog::a3()] {
        f.input(&base.category);
        f.attempt(&base.name, |f| {
            let r = pairing_check(&base.category, &o.params)?;
            f.check(r.invertible, format!("{}: determinant {}", base.name, r.determinant.as_deref().unwrap_or("undefined")));
            Ok(())
        });
    }
}

fn phi0_instances(o: &SuiteOptions, f: &mut Finding) {
    for base in [catalog::a2(), catalog::a3()] {
        f.input(&base.category);
        f.attempt(&base.name, |f| {
            let a = &base.category;
            let r = phi0(&opposite(a), a, &DiagonalResolution::new(a)?.class(), &o.params)?;
            let verdict = match r.verdict {
                Verdict::Zero => SuiteVerdict::Pass,
                Verdict::Nonzero => SuiteVerdict::Fail,
                Verdict::Unstable => SuiteVerdict::Unstable,
            };
            f.record(verdict, format!("{}: φ₀([I]) = {:?}", base.name, r.value));
            Ok(())
        });
    }
}

fn gluing_components(o: &SuiteOptions, f: &mut Finding) {
    let k = catalog::ground_field().category;
    f.input(&k);
    f.attempt("glue(k, k, k)", |f| {
        let r = gluing_component_check(&k, &k, &diagonal_bimodule(&k), &o.params)?;
        for c in &r.components {
            f.check(c.equal, format!("{}: {:?} (expected {:?})", c.name, c.computed, c.expected));
        }
        Ok(())
    });
}

fn drinfeld(o: &SuiteOptions, f: &mut Finding) {
    let (a2, k) = (catalog::a2().category, catalog::ground_field().category);
    f.input(&a2);
    f.attempt("quotient", |f| {
        let p = o.params.with_window(-3, 3);
        let q = drinfeld_quotient(&a2, 0, (-3, 3))?;
        let (hq, hk) = (hh(&q, &p)?, hh(&k, &p)?);
        let stable = p.degrees().all(|n| hq.is_stable(n) && hk.is_stable(n));
        compare(f, "HH of A₂ / x against k", &hq.dims(), &hk.dims(), stable);
        Ok(())
    });
}

struct Criterion {
    number: u32,
    statement: &'static str,
    run: fn(&SuiteOptions, &mut Finding),
}

const RUNNERS: &[Criterion] = &[
    Criterion { number: 1, statement: "mixed-complex identities", run: mixed_complex_identities },
    Criterion { number: 2, statement: "ground field invariants", run: ground_field_values },
    Criterion { number: 3, statement: "HH of the dual numbers", run: dual_numbers_hh },
    Criterion { number: 4, statement: "Künneth formula for HH", run: kunneth },
    Criterion { number: 5, statement: "additivity under gluing", run: gluing_additivity },
    Criterion { number: 6, statement: "Morita invariance under amplification", run: morita },
    Criterion { number: 7, statement: "long exact sequence HC⁻ → HH → HC⁻", run: long_exact },
    Criterion { number: 8, statement: "degeneration for smooth proper examples", run: degeneration },
    Criterion { number: 9, statement: "pairing induced by the diagonal class", run: pairing },
    Criterion { number: 10, statement: "φ₀ of the diagonal class vanishes", run: phi0_instances },
    Criterion { number: 11, statement: "components of ch of a gluing", run: gluing_components },
    Criterion { number: 12, statement: "Drinfeld quotient of A₂ by an object", run: drinfeld },
];

fn entry(o: &SuiteOptions, c: &Criterion) -> EvidenceLedgerEntry {
    let mut f = Finding::new();
    (c.run)(o, &mut f);
    let mut hashed = serde_json::to_string(&o.params).expect("params serialize");
    for text in &f.inputs {
        hashed.push_str(text);
    }
    EvidenceLedgerEntry {
        criterion: c.number,
        statement: c.statement.into(),
        command: o.command(c.number),
        verdict: f.verdict,
        window: o.params.window,
        bar_length: o.params.max_bar_length,
        u_power: o.params.max_u_power,
        inputs_sha256: digest(hashed.as_bytes()),
        evidence: f.evidence,
    }
}

fn wanted(o: &SuiteOptions, n: u32) -> bool {
    o.only.is_empty() || o.only.contains(&n)
}

fn computed_entries(o: &SuiteOptions) -> Vec<EvidenceLedgerEntry> {
    RUNNERS.iter().filter(|c| wanted(o, c.number)).map(|c| entry(o, c)).collect()
}

/// Runs the selected criteria. The determinism criterion reruns the others
/// and compares the serialized reports byte for byte.
pub fn run_suite(options: &SuiteOptions) -> Ledger {
    let mut entries = computed_entries(options);
    if wanted(options, CRITERIA) {
        let others = SuiteOptions { only: (1..CRITERIA).collect(), ..options.clone() };
        let first =
            if options.only.is_empty() { Ledger { entries: entries.clone() } } else { Ledger { entries: computed_entries(&others) } };
        let second = Ledger { entries: computed_entries(&others) };
        let (a, b) = (first.report(&others).to_json(), second.report(&others).to_json());
        let same = a == b;
        let mut f = Finding::new();
        f.check(
            same,
            format!(
                "two runs of criteria 1–{} give reports with SHA-256 {} and {}",
                CRITERIA - 1,
                digest(a.as_bytes()),
                digest(b.as_bytes())
            ),
        );
        let hashed = format!("{}{a}", serde_json::to_string(&options.params).expect("params serialize"));
        entries.push(EvidenceLedgerEntry {
            criterion: CRITERIA,
            statement: "determinism of the suite".into(),
            command: options.command(CRITERIA),
            verdict: f.verdict,
            window: options.params.window,
            bar_length: options.params.max_bar_length,
            u_power: options.params.max_u_power,
            inputs_sha256: digest(hashed.as_bytes()),
            evidence: f.evidence,
        });
    }
    Ledger { entries }
}
