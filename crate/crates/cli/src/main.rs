//! `operad`: Gröbner bases, duals and freeness checks for shuffle and nonsymmetric operads.
//!
//! Exit status 0 means the computation succeeded or the verdict holds, 1 means the
//! verdict fails, 2 means the input was rejected.

mod repro;

use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use operad_core::compat::{check_o2_hypothesis, linear_compatibility, total_compatibility, CompatInput};
use operad_core::format::{compat_from_json, presentation_from_json, presentation_to_json, OrderFile};
use operad_core::freeness::{
    check_embedding, check_free_nonsymmetric, check_module_free, check_small, ids_by_name,
};
use operad_core::groebner::{complete_with, CompletionOptions};
use operad_core::koszul::dual_presentation;
use operad_core::presets::{list, preset};
use operad_core::series::{koszul_sign_test, HilbertSeries, SeriesKind, Side};
use operad_core::{GroebnerResult, OperadError, Presentation};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "operad", version, about = "Computations with shuffle and nonsymmetric operads")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for completion.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Completion bound.
    #[arg(long, global = true, default_value_t = 6)]
    max_arity: u32,
    /// Order override: a builtin name or an order JSON file.
    #[arg(long, global = true)]
    order: Option<String>,
    /// Generator names from smallest to largest, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    generator_order: Option<Vec<String>>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Complete a presentation and print the basis.
    Groebner { presentation: String },
    /// Dimensions of the components up to the bound.
    Dims { presentation: String },
    /// Normal monomials of one arity.
    NormalMonomials {
        presentation: String,
        #[arg(long)]
        arity: u32,
    },
    /// The Koszul dual presentation.
    Dual { presentation: String },
    /// Freeness criteria.
    #[command(subcommand)]
    Check(Check),
    /// The linearly or totally compatible doubling of a structure.
    Compat {
        /// A compatibility JSON file or a preset name.
        input: String,
        #[arg(long, value_enum)]
        kind: CompatKind,
    },
    /// Power series tools; series are given by their dimension sequences.
    #[command(subcommand)]
    Series(SeriesCmd),
    /// Bundled presentations.
    #[command(subcommand)]
    Presets(PresetsCmd),
    /// Run a named pipeline end to end.
    Repro {
        /// Pipeline name; `list` prints the available ones.
        id: String,
    },
}

#[derive(Subcommand)]
enum Check {
    /// Leading terms prime, so free as a nonsymmetric operad.
    FreeNs { presentation: String },
    /// The smaller presentation completes inside the larger one.
    Embedding { smaller: String, larger: String },
    /// Module criterion over the operad generated by `--sub`.
    ModuleFree {
        presentation: String,
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
        #[arg(long, value_delimiter = ',', required = true)]
        sub: Vec<String>,
    },
    /// Every tree shape spans each component.
    Small { presentation: String },
    /// Quadratic basis with all right combs normal.
    O2Hypothesis { presentation: String },
}

#[derive(Subcommand)]
enum SeriesCmd {
    /// Inverts `-f(-t)` and looks for negative coefficients.
    KoszulTest(SeriesArgs),
    /// `f(g(t))`.
    Compose {
        #[command(flatten)]
        f: SeriesArgs,
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        g: Vec<i64>,
    },
    /// Compositional inverse.
    Inverse(SeriesArgs),
}

#[derive(Args)]
struct SeriesArgs {
    /// Dimensions in arities 1, 2, ...
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    dims: Vec<i64>,
    #[arg(long, value_enum, default_value = "egf")]
    kind: KindArg,
    /// Pad with zeros up to this degree.
    #[arg(long)]
    degree: Option<usize>,
}

#[derive(Subcommand)]
enum PresetsCmd {
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum CompatKind {
    Linear,
    Total,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Egf,
    Ogf,
}

/// What a command prints and whether its verdict holds.
pub struct Outcome {
    pub holds: bool,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { holds: true, text, json }
    }
}

pub struct Ctx {
    pub max_arity: u32,
    pub threads: Option<usize>,
    order: Option<String>,
    generator_order: Option<Vec<String>>,
}

impl Ctx {
    pub fn complete(&self, p: &Presentation) -> operad_core::Result<GroebnerResult> {
        let bound = self.max_arity.max(p.max_relation_arity());
        complete_with(p, bound, &CompletionOptions { threads: self.threads })
    }

    fn load(&self, arg: &str) -> operad_core::Result<Presentation> {
        let p = if Path::new(arg).is_file() {
            let text = std::fs::read_to_string(arg).map_err(|e| OperadError::Invalid(format!("{arg}: {e}")))?;
            presentation_from_json(&text)?
        } else {
            preset(arg)?
        };
        self.reorder(p)
    }

    fn reorder(&self, p: Presentation) -> operad_core::Result<Presentation> {
        if self.order.is_none() && self.generator_order.is_none() {
            return Ok(p);
        }
        let mut file = match &self.order {
            None => OrderFile::from_spec(&p.order, &p.signature),
            Some(o) if Path::new(o).is_file() => {
                let text = std::fs::read_to_string(o).map_err(|e| OperadError::Invalid(format!("{o}: {e}")))?;
                serde_json::from_str(&text).map_err(|e| OperadError::BadOrder(e.to_string()))?
            }
            Some(o) => OrderFile::builtin(o),
        };
        if let Some(g) = &self.generator_order {
            file.generator_order = Some(g.clone());
        }
        let spec = file.to_spec(&p.signature)?;
        p.with_order(spec)
    }
}

fn lines(items: &[String]) -> String {
    items.iter().map(|s| format!("  {s}\n")).collect()
}

fn groebner(ctx: &Ctx, p: &Presentation) -> operad_core::Result<Outcome> {
    let r = ctx.complete(p)?;
    let rep = r.report();
    let text = format!(
        "presentation: {}\ncomplete up to arity: {}\nquadratic: {}\ngenerator order (smallest first): {}\nbasis ({}):\n{}leading terms:\n{}dims: {:?}\n",
        p.name,
        rep.complete_up_to,
        rep.is_quadratic,
        rep.generator_order.join(" < "),
        rep.basis.len(),
        lines(&rep.basis),
        lines(&rep.leading_terms),
        rep.dims
    );
    let mut json = serde_json::to_value(&rep).expect("serializable");
    json["name"] = json!(p.name);
    Ok(Outcome::ok(text, json))
}

fn dims(ctx: &Ctx, p: &Presentation) -> operad_core::Result<Outcome> {
    let r = ctx.complete(p)?;
    let d = r.hilbert_dims(r.complete_up_to)?;
    let text = format!("complete up to arity: {}\ndims: {:?}\n", r.complete_up_to, d);
    Ok(Outcome::ok(text, json!({"name": p.name, "complete_up_to": r.complete_up_to, "dims": d})))
}

fn normal_monomials(ctx: &Ctx, p: &Presentation, arity: u32) -> operad_core::Result<Outcome> {
    let r = ctx.complete(p)?;
    let ms: Vec<String> = r.normal_monomials(arity)?.iter().map(|m| m.render(&r.signature)).collect();
    let text = format!("arity {arity}: {} normal monomials\n{}", ms.len(), lines(&ms));
    Ok(Outcome::ok(text, json!({"arity": arity, "complete_up_to": r.complete_up_to, "count": ms.len(), "monomials": ms})))
}

fn emit_presentation(p: &Presentation) -> Outcome {
    let text = presentation_to_json(p);
    let json: Value = serde_json::from_str(&text).expect("valid json");
    Outcome::ok(text + "\n", json)
}

fn verdict(holds: bool, title: &str, report: Value, witnesses: &[String]) -> Outcome {
    let mut text = format!("{title}: {}\n", if holds { "holds" } else { "fails" });
    if !witnesses.is_empty() {
        text.push_str(&format!("witnesses ({}):\n{}", witnesses.len(), lines(witnesses)));
    }
    Outcome { holds, text, json: report }
}

fn check(ctx: &Ctx, c: &Check) -> operad_core::Result<Outcome> {
    Ok(match c {
        Check::FreeNs { presentation } => {
            let r = ctx.complete(&ctx.load(presentation)?)?;
            let rep = check_free_nonsymmetric(&r);
            let json = serde_json::to_value(&rep).expect("serializable");
            verdict(rep.holds, "free as a nonsymmetric operad", json, &rep.witnesses)
        }
        Check::Embedding { smaller, larger } => {
            let p = ctx.load(smaller)?;
            let r = ctx.complete(&ctx.load(larger)?)?;
            let rep = check_embedding(&p, &r)?;
            let json = serde_json::to_value(&rep).expect("serializable");
            let mut all = rep.missing.clone();
            all.extend(rep.witnesses.iter().cloned());
            verdict(rep.holds, "embedding", json, &all)
        }
        Check::ModuleFree { presentation, side, sub } => {
            let r = ctx.complete(&ctx.load(presentation)?)?;
            let names: Vec<&str> = sub.iter().map(String::as_str).collect();
            let ids = ids_by_name(&r.signature, &names)?;
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            let rep = check_module_free(&r, &ids, side)?;
            let json = serde_json::to_value(&rep).expect("serializable");
            let mut out = verdict(rep.holds, &format!("free {side:?} module").to_lowercase(), json, &rep.witnesses);
            out.text.push_str(&format!(
                "dims: {:?}\nsuboperad dims: {:?}\ngenerating dims: {:?}\ndecomposition: {}\n",
                rep.q_dims, rep.p_dims, rep.k_dims, rep.decomposition
            ));
            out
        }
        Check::Small { presentation } => {
            let r = ctx.complete(&ctx.load(presentation)?)?;
            let rep = check_small(&r, r.complete_up_to)?;
            let json = serde_json::to_value(&rep).expect("serializable");
            let w: Vec<String> = rep
                .witness
                .iter()
                .map(|w| format!("arity {} shape {}: rank {} < dim {}", w.arity, w.shape, w.rank, w.dim))
                .collect();
            verdict(rep.small, "small", json, &w)
        }
        Check::O2Hypothesis { presentation } => {
            let r = ctx.complete(&ctx.load(presentation)?)?;
            let rep = check_o2_hypothesis(&r)?;
            let json = serde_json::to_value(&rep).expect("serializable");
            verdict(rep.holds, "doubling hypothesis", json, &rep.witnesses)
        }
    })
}

fn compat(ctx: &Ctx, input: &str, kind: CompatKind) -> operad_core::Result<Outcome> {
    let c = if Path::new(input).is_file() {
        let text = std::fs::read_to_string(input).map_err(|e| OperadError::Invalid(format!("{input}: {e}")))?;
        compat_from_json(&text)?
    } else {
        CompatInput::from_presentation(&ctx.load(input)?)?
    };
    let p = match kind {
        CompatKind::Linear => linear_compatibility(&c)?,
        CompatKind::Total => total_compatibility(&c)?,
    };
    Ok(emit_presentation(&p))
}

fn to_series(a: &SeriesArgs) -> operad_core::Result<HilbertSeries> {
    let mut d = a.dims.clone();
    if let Some(n) = a.degree {
        d.resize(n.max(d.len()), 0);
    }
    let kind = match a.kind {
        KindArg::Egf => SeriesKind::Egf,
        KindArg::Ogf => SeriesKind::Ogf,
    };
    HilbertSeries::from_dims(&d, kind)
}

fn series_json(f: &HilbertSeries) -> Value {
    json!({"kind": f.kind, "coefficients": f.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(), "rendered": f.render()})
}

fn series(s: &SeriesCmd) -> operad_core::Result<Outcome> {
    Ok(match s {
        SeriesCmd::KoszulTest(a) => {
            let f = to_series(a)?;
            let t = koszul_sign_test(&f)?;
            let text = match t.first_negative_degree {
                None => format!("no negative coefficient up to degree {}\n", f.degree()),
                Some(d) => format!("negative coefficient in degree {d}; not Koszul\n"),
            };
            Outcome { holds: t.passes, text, json: serde_json::to_value(&t).expect("serializable") }
        }
        SeriesCmd::Compose { f, g } => {
            let a = to_series(f)?;
            let b = to_series(&SeriesArgs { dims: g.clone(), kind: f.kind, degree: f.degree })?;
            let h = a.compose(&b)?;
            Outcome::ok(format!("{h}\n"), series_json(&h))
        }
        SeriesCmd::Inverse(a) => {
            let h = to_series(a)?.comp_inverse()?;
            Outcome::ok(format!("{h}\n"), series_json(&h))
        }
    })
}

fn run(cli: &Cli) -> operad_core::Result<Outcome> {
    let ctx = Ctx {
        max_arity: cli.max_arity,
        threads: cli.threads,
        order: cli.order.clone(),
        generator_order: cli.generator_order.clone(),
    };
    match &cli.command {
        Command::Groebner { presentation } => groebner(&ctx, &ctx.load(presentation)?),
        Command::Dims { presentation } => dims(&ctx, &ctx.load(presentation)?),
        Command::NormalMonomials { presentation, arity } => normal_monomials(&ctx, &ctx.load(presentation)?, *arity),
        Command::Dual { presentation } => Ok(emit_presentation(&dual_presentation(&ctx.load(presentation)?)?)),
        Command::Check(c) => check(&ctx, c),
        Command::Compat { input, kind } => compat(&ctx, input, *kind),
        Command::Series(s) => series(s),
        Command::Presets(PresetsCmd::List) => {
            let text = list().iter().map(|(n, d)| format!("{n:<14} {d}\n")).collect();
            let json = Value::Array(list().iter().map(|(n, d)| json!({"name": n, "description": d})).collect());
            Ok(Outcome::ok(text, json))
        }
        Command::Repro { id } => repro::run(&ctx, id),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = std::time::Instant::now();
    let result = run(&cli);
    if std::env::var_os("OPERAD_VERBOSE").is_some() {
        eprintln!("elapsed: {:.2}s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                print!("{}", out.text);
            }
            if out.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({"error": e.to_string()}));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
