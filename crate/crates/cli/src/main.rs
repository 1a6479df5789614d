mod render;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use hhcyc::catalog::{self, random_category, RandomBounds};
use hhcyc::chern::{ch, pairing_check, phi0, DiagonalResolution, K0Class};
use hhcyc::constructions::{diagonal_bimodule, glue};
use hhcyc::cyclic::{degeneration_check, delta, e1_page, hc, hc_minus, Verdict};
use hhcyc::dgcore::{drinfeld_quotient, opposite, tensor, DGBimodule};
use hhcyc::exactla::{modp, rank};
use hhcyc::hochschild::{build_reduced_complex, check_identities, hh, kunneth_check, IdentityReport};
use hhcyc::io::{self, CategoryBundle, ReportDocument};
use hhcyc::suite::{run_suite, SuiteOptions, SuiteVerdict};
use hhcyc::{ComputationParams, DGCategory, Error, Field};

#[derive(Parser)]
#[command(name = "hhcyc", version, about = "Hochschild, cyclic and negative cyclic homology of small DG categories")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Maximal bar length L of Hochschild words.
    #[arg(long, global = true, default_value_t = 6)]
    max_bar_length: usize,
    /// Number N of u-powers kept in cyclic complexes.
    #[arg(long, global = true, default_value_t = 4)]
    max_u_power: usize,
    /// Homological degrees to report, as lo:hi.
    #[arg(long, global = true, default_value = "-4:6", value_parser = parse_window, allow_hyphen_values = true)]
    window: (i64, i64),
    /// q, or fp:<p> to add a mod-p rank cross-check to `check`.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    field: Field,
    /// Write the JSON report (or category document) to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for `catalog:random`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Exit with status 2 when any reported verdict is unstable.
    #[arg(long, global = true)]
    require_stable: bool,
}

/// Inputs are a file path, `catalog:<name>`, or `-` for standard input.
#[derive(Subcommand)]
enum Command {
    /// Validate a category and its companions, and check b² = B² = bB + Bb = 0.
    Check { input: String },
    /// Hochschild homology.
    Hh { input: String },
    /// Cyclic homology.
    Hc { input: String },
    /// Negative cyclic homology.
    HcMinus { input: String },
    /// The connecting map δ: HH_n → HC⁻_{n+1} with per-degree verdicts.
    Delta { input: String },
    /// Whether δ vanishes on every stable degree of the window.
    Degeneration { input: String },
    /// The E₁ page of the u-adic spectral sequence and its d₁.
    E1 { input: String },
    /// Compare HH of a tensor product with the convolution of the factors.
    Kunneth { a: String, b: String },
    /// Glue two categories along a bimodule: a bimodule document, `zero`, or `diagonal`.
    Glue { a: String, b: String, bimodule: String },
    /// Tensor product of two categories.
    Tensor { a: String, b: String },
    /// Opposite category.
    Op { input: String },
    /// Drinfeld quotient by one object, truncated to a degree window.
    Quotient {
        input: String,
        #[arg(long)]
        object: String,
        /// Degree window of the truncated quotient.
        #[arg(long, default_value = "-3:3", value_parser = parse_window, allow_hyphen_values = true)]
        truncate: (i64, i64),
    },
    /// Chern character of a K₀ class: a class name from the document, or rep:<object>.
    Chern {
        input: String,
        #[arg(long)]
        class: String,
    },
    /// The pairing induced by the class of the diagonal.
    Pairing { input: String },
    /// φ₀ of a class over b ⊗ c: `diagonal` (b must be the opposite of c) or rep:<object>.
    Phi0 {
        b: String,
        c: String,
        #[arg(long)]
        class: String,
    },
    /// Print a catalog category as a document; `list` shows the names.
    Catalog { name: String },
    /// Run the acceptance suite and print the evidence ledger.
    Suite {
        /// Criteria to run; all when omitted.
        #[arg(long)]
        criterion: Vec<u32>,
        /// Random categories fed to the identity check.
        #[arg(long, default_value_t = 100)]
        random_categories: u64,
    },
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo: i64 = lo.parse().map_err(|_| format!("bad lower bound {lo:?}"))?;
    let hi: i64 = hi.parse().map_err(|_| format!("bad upper bound {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok((lo, hi))
}

fn parse_field(s: &str) -> Result<Field, String> {
    if s == "q" {
        return Ok(Field::Rationals);
    }
    let p: u64 = s.strip_prefix("fp:").and_then(|p| p.parse().ok()).ok_or("expected q or fp:<prime>")?;
    if !modp::is_prime(p) {
        return Err(format!("{p} is not prime"));
    }
    Ok(Field::Prime(p))
}

enum Failure {
    /// Bad input, usage or a failed check; status 1.
    Input(String),
    /// An unstable verdict under `--require-stable`; status 2.
    Unstable(String),
}

impl Failure {
    fn from_error(e: Error, require_stable: bool) -> Self {
        let text = format!("error [{}]: {e}", e.code());
        if require_stable && matches!(e, Error::Unstable(_)) {
            Failure::Unstable(text)
        } else {
            Failure::Input(text)
        }
    }
}

struct Input {
    name: String,
    bundle: CategoryBundle,
    seed: Option<u64>,
}

impl Input {
    fn category(&self) -> &DGCategory {
        &self.bundle.category
    }
}

struct Context {
    opts: Opts,
    params: ComputationParams,
    stdin_used: bool,
}

impl Context {
    fn fail(&self, e: Error) -> Failure {
        Failure::from_error(e, self.opts.require_stable)
    }

    fn read_text(&mut self, source: &str) -> Result<String, Failure> {
        if source == "-" {
            if self.stdin_used {
                return Err(Failure::Input("error: standard input can be read only once".into()));
            }
            self.stdin_used = true;
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text).map_err(|e| Failure::Input(format!("error: cannot read standard input: {e}")))?;
            Ok(text)
        } else {
            io::read_file(std::path::Path::new(source)).map_err(|e| self.fail(e))
        }
    }

    fn input(&mut self, source: &str) -> Result<Input, Failure> {
        if let Some(name) = source.strip_prefix("catalog:") {
            let (category, seed) = catalog_category(name, self.opts.seed).map_err(|e| self.fail(e))?;
            return Ok(Input { name: source.to_string(), bundle: CategoryBundle::new(category), seed });
        }
        let text = self.read_text(source)?;
        let bundle = io::parse_category(&text).map_err(|e| self.fail(e))?;
        let name = if source == "-" { "<stdin>".to_string() } else { source.to_string() };
        Ok(Input { name, bundle, seed: None })
    }
}

fn catalog_category(name: &str, seed: Option<u64>) -> hhcyc::Result<(DGCategory, Option<u64>)> {
    if name == "random" {
        let seed = seed.unwrap_or(0);
        return Ok((random_category(seed, RandomBounds::default()).category, Some(seed)));
    }
    let seed = name.strip_prefix("random_").and_then(|s| s.parse().ok());
    Ok((catalog::by_name(name)?.category, seed))
}

enum Output {
    Report { report: ReportDocument, unstable: bool },
    Document(String),
    Ledger { report: ReportDocument, text: String, verdicts: Vec<SuiteVerdict> },
}

fn report(command: &str, params: &ComputationParams, inputs: &[&Input], result: &impl Serialize, unstable: bool) -> Output {
    let mut doc = ReportDocument::new(command, params, result);
    for i in inputs {
        doc = doc.with_input(i.name.clone(), &io::save_bundle(&i.bundle));
    }
    let report = doc.with_seeds(inputs.iter().filter_map(|i| i.seed));
    Output::Report { report, unstable }
}

#[derive(Serialize)]
struct CheckResult {
    objects: usize,
    basis_morphisms: usize,
    degree_range: Option<(i32, i32)>,
    truncation_window: Option<(i32, i32)>,
    bimodules: Vec<String>,
    functors: Vec<String>,
    k0_classes: Vec<String>,
    identities: IdentityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    mod_p: Option<ModPCheck>,
}

/// Degrees where `b` loses rank modulo `p`, hinting at `p`-torsion.
#[derive(Serialize)]
struct ModPCheck {
    prime: u64,
    rank_drops: Vec<i64>,
}

fn check(ctx: &Context, input: &Input) -> Result<Output, Failure> {
    let c = input.category();
    let complex = build_reduced_complex(c, ctx.params.max_bar_length);
    let identities = check_identities(&complex);
    if !identities.holds() {
        return Err(Failure::Input(format!("error [axiom]: mixed-complex identities fail: {identities:?}")));
    }
    let mod_p = match ctx.params.field {
        Field::Rationals => None,
        Field::Prime(p) => {
            let rank_drops = ctx
                .params
                .degrees()
                .filter(|&n| {
                    let b = complex.b_matrix(n);
                    modp::rank_mod_p(&b, p) != Some(rank(&b))
                })
                .collect();
            Some(ModPCheck { prime: p, rank_drops })
        }
    };
    let b = &input.bundle;
    let result = CheckResult {
        objects: c.num_objects(),
        basis_morphisms: c.total_dim(),
        degree_range: c.degree_range(),
        truncation_window: c.window(),
        bimodules: b.bimodules.iter().map(|(n, _)| n.clone()).collect(),
        functors: b.functors.iter().map(|(n, _)| n.clone()).collect(),
        k0_classes: b.classes.iter().map(|(n, _)| n.clone()).collect(),
        identities,
        mod_p,
    };
    Ok(report("check", &ctx.params, &[input], &result, false))
}

fn class_by_name(bundle: &CategoryBundle, c: &DGCategory, name: &str) -> hhcyc::Result<K0Class> {
    if let Some(object) = name.strip_prefix("rep:") {
        let x = c.object_index(object).ok_or_else(|| Error::schema("--class", format!("unknown object {object:?}")))?;
        return Ok(K0Class::representable(c, x));
    }
    bundle.class(name).cloned().ok_or_else(|| Error::schema("--class", format!("no K0 class named {name:?}")))
}

fn run(ctx: &mut Context, command: Command) -> Result<Output, Failure> {
    let params = ctx.params;
    let require = ctx.opts.require_stable;
    let e = move |err: Error| Failure::from_error(err, require);
    Ok(match command {
        Command::Check { input } => {
            let i = ctx.input(&input)?;
            check(ctx, &i)?
        }
        Command::Hh { input } => {
            let i = ctx.input(&input)?;
            let p = hh(i.category(), &params).map_err(e)?.presentation();
            let unstable = !p.all_stable();
            report("hh", &params, &[&i], &p, unstable)
        }
        Command::Hc { input } => {
            let i = ctx.input(&input)?;
            let p = hc(i.category(), &params).map_err(e)?.presentation();
            let unstable = !p.all_stable();
            report("hc", &params, &[&i], &p, unstable)
        }
        Command::HcMinus { input } => {
            let i = ctx.input(&input)?;
            let p = hc_minus(i.category(), &params).map_err(e)?.presentation();
            let unstable = !p.all_stable();
            report("hc-minus", &params, &[&i], &p, unstable)
        }
        Command::Delta { input } => {
            let i = ctx.input(&input)?;
            let d = delta(i.category(), &params).map_err(e)?;
            let unstable = d.verdicts.values().any(|v| v.verdict == Verdict::Unstable);
            report("delta", &params, &[&i], &d, unstable)
        }
        Command::Degeneration { input } => {
            let i = ctx.input(&input)?;
            let d = degeneration_check(i.category(), &params).map_err(e)?;
            let unstable = !d.fully_stable();
            report("degeneration", &params, &[&i], &d, unstable)
        }
        Command::E1 { input } => {
            let i = ctx.input(&input)?;
            let page = e1_page(i.category(), &params).map_err(e)?;
            let unstable = page.d1.values().any(|d| !d.stable);
            report("e1", &params, &[&i], &page, unstable)
        }
        Command::Kunneth { a, b } => {
            let (a, b) = (ctx.input(&a)?, ctx.input(&b)?);
            let r = kunneth_check(a.category(), b.category(), &params).map_err(e)?;
            if !r.passes() {
                return Err(Failure::Input("error [inconsistent]: Künneth comparison fails on a stable degree".into()));
            }
            let unstable = r.degrees.values().any(|row| !row.stable);
            report("kunneth", &params, &[&a, &b], &r, unstable)
        }
        Command::Glue { a, b, bimodule } => {
            let (a, b) = (ctx.input(&a)?, ctx.input(&b)?);
            let (ca, cb) = (a.category(), b.category());
            let m = match bimodule.as_str() {
                "zero" => DGBimodule::zero(ca, cb),
                "diagonal" if ca == cb => diagonal_bimodule(ca),
                "diagonal" => return Err(Failure::Input("error [inconsistent]: the diagonal bimodule needs equal categories".into())),
                source => {
                    let text = ctx.read_text(source)?;
                    io::parse_bimodule(&text, ca, cb).map_err(e)?
                }
            };
            Output::Document(io::save(&glue(ca, cb, &m).map_err(e)?.category))
        }
        Command::Tensor { a, b } => {
            let (a, b) = (ctx.input(&a)?, ctx.input(&b)?);
            Output::Document(io::save(&tensor(a.category(), b.category()).map_err(e)?))
        }
        Command::Op { input } => Output::Document(io::save(&opposite(ctx.input(&input)?.category()))),
        Command::Quotient { input, object, truncate } => {
            let i = ctx.input(&input)?;
            let c = i.category();
            let x = c.object_index(&object).ok_or_else(|| Failure::Input(format!("error [schema]: unknown object {object:?}")))?;
            let window = (truncate.0 as i32, truncate.1 as i32);
            Output::Document(io::save(&drinfeld_quotient(c, x, window).map_err(e)?))
        }
        Command::Chern { input, class } => {
            let i = ctx.input(&input)?;
            let x = class_by_name(&i.bundle, i.category(), &class).map_err(e)?;
            let (_, r) = ch(i.category(), &x, &params).map_err(e)?;
            report("chern", &params, &[&i], &r, false)
        }
        Command::Pairing { input } => {
            let i = ctx.input(&input)?;
            let r = pairing_check(i.category(), &params).map_err(e)?;
            report("pairing", &params, &[&i], &r, false)
        }
        Command::Phi0 { b, c, class } => {
            let (b, c) = (ctx.input(&b)?, ctx.input(&c)?);
            let x = if class == "diagonal" {
                if b.category() != &opposite(c.category()) {
                    return Err(Failure::Input(
                        "error [inconsistent]: `diagonal` needs the first category to be the opposite of the second".into(),
                    ));
                }
                DiagonalResolution::new(c.category()).map_err(e)?.class()
            } else {
                let product = tensor(b.category(), c.category()).map_err(e)?;
                class_by_name(&CategoryBundle::new(product.clone()), &product, &class).map_err(e)?
            };
            let r = phi0(b.category(), c.category(), &x, &params).map_err(e)?;
            let unstable = r.verdict == Verdict::Unstable;
            report("phi0", &params, &[&b, &c], &r, unstable)
        }
        Command::Catalog { name } => {
            if name == "list" {
                return Ok(Output::Document(catalog::NAMES.iter().map(|n| format!("{n}\n")).collect()));
            }
            let (category, _) = catalog_category(&name, ctx.opts.seed).map_err(e)?;
            Output::Document(io::save(&category))
        }
        Command::Suite { criterion, random_categories } => {
            let options = SuiteOptions { params, random_categories, only: criterion, ..SuiteOptions::default() };
            let ledger = run_suite(&options);
            let mut text = ledger.to_markdown();
            for entry in &ledger.entries {
                text.push_str(&format!("\n{}. {} [{}]\n   {}\n", entry.criterion, entry.statement, entry.verdict, entry.command));
                for line in &entry.evidence {
                    text.push_str(&format!("   {line}\n"));
                }
            }
            let verdicts = ledger.entries.iter().map(|e| e.verdict).collect();
            Output::Ledger { report: ledger.report(&options), text, verdicts }
        }
    })
}

fn write_out(path: &PathBuf, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("error: cannot write {}: {e}", path.display())))
}

fn emit(ctx: &Context, output: Output) -> Result<(), Failure> {
    match output {
        Output::Document(text) => match &ctx.opts.out {
            Some(path) => write_out(path, &text),
            None => {
                print!("{text}");
                Ok(())
            }
        },
        Output::Report { report, unstable } => {
            if let Some(path) = &ctx.opts.out {
                write_out(path, &report.to_json())?;
            }
            print!("{}", render::render(&report));
            if unstable && ctx.opts.require_stable {
                return Err(Failure::Unstable("unstable verdicts present (--require-stable)".into()));
            }
            Ok(())
        }
        Output::Ledger { report, text, verdicts } => {
            if let Some(path) = &ctx.opts.out {
                write_out(path, &report.to_json())?;
            }
            print!("{text}");
            if verdicts.contains(&SuiteVerdict::Fail) {
                Err(Failure::Input("suite failed".into()))
            } else if verdicts.contains(&SuiteVerdict::Unstable) {
                Err(Failure::Unstable("suite has unstable entries".into()))
            } else {
                Ok(())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let params = ComputationParams {
        max_bar_length: cli.opts.max_bar_length,
        max_u_power: cli.opts.max_u_power,
        window: cli.opts.window,
        field: cli.opts.field,
    };
    let mut ctx = Context { opts: cli.opts, params, stdin_used: false };
    let result = run(&mut ctx, cli.command).and_then(|output| emit(&ctx, output));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Unstable(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}
