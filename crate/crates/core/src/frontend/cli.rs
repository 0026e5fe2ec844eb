//! Command-line interface. `run` returns the exit code and the text for
//! standard output and standard error, so it can be tested in-process.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_traits::Zero;
use serde_json::{json, Value};

use super::builtins::{builtin_with_budget, BUILTIN_NAMES};
use super::dsl::{parse_expr, parse_with, ParseError, ParseErrorKind};
use super::report::{Report, EXIT_INPUT, EXIT_UNRESOLVED};
use super::serialize::serialize;
use crate::check::{Check, Residual};
use crate::classic::{
    character_variety, classify_extension, goodearl_fiber, normality_search, ExtensionType, FiberResult, Normality,
};
use crate::cpoly::Unknown;
use crate::error::Error;
use crate::hopf::{
    antipode_order, antipode_power, check_hoe_conditions, check_hopf_axioms, gk_dimension, primitives, s4_decompose,
    AntipodeOrder, HopfTower, S4Decomposition,
};
use crate::ore::scalar::parse_scalar;
use crate::ore::{validate_tower, Scalar, DEFAULT_REWRITE_BUDGET};
use crate::sample::Sampler;
use crate::tensor::{mu, Tensor2};

/// Environment variable overriding the default rewrite budget.
pub const BUDGET_ENV: &str = "HOPFORE_REWRITE_BUDGET";

#[derive(Debug, Parser)]
#[command(
    name = "hopfore",
    version,
    about = "Exact checks for Hopf structures on iterated Ore extensions"
)]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled property checks in `check`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Maximum rewrite steps per computation.
    #[arg(long, global = true)]
    rewrite_budget: Option<u64>,
    /// Bind a presentation parameter, as NAME=VALUE.
    #[arg(long = "param", global = true, value_name = "NAME=VALUE")]
    params: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate the tower and check every Hopf and extension identity.
    Check { file: String },
    /// Normal form of an expression.
    Nf { file: String, expr: String },
    /// Primitive elements up to a degree bound.
    Primitives {
        file: String,
        #[arg(long, default_value_t = 3)]
        max_deg: u32,
    },
    /// Apply a power of the antipode to an expression, or to every generator.
    Antipode {
        file: String,
        #[arg(long, default_value_t = 1)]
        power: u32,
        expr: Option<String>,
    },
    /// Decide between S^2 = id and infinite order.
    AntipodeOrder {
        file: String,
        #[arg(long, default_value_t = 10)]
        max_m: u32,
    },
    /// Solve for the characters of the algebra.
    Characters { file: String },
    /// Invariant or variant type of an extension step (1-based).
    Classify {
        file: String,
        #[arg(long)]
        step: usize,
    },
    /// Maximal ideals over a character of the subalgebra below a step.
    Fiber {
        file: String,
        #[arg(long)]
        step: usize,
        /// Character values as "g=val,...", one per earlier generator.
        #[arg(long, default_value = "")]
        at: String,
    },
    /// Express S^4 through left and right windings.
    S4 { file: String },
    /// Search for a witness that an ideal generated by generators is not normal.
    Normality {
        file: String,
        #[arg(long)]
        gens: String,
        #[arg(long, default_value_t = 3)]
        max_deg: u32,
    },
    /// GK-dimension of the algebra.
    Gkdim { file: String },
    /// List the builtin examples, or print one as a presentation.
    Examples {
        #[arg(long)]
        emit: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

struct Loaded {
    ht: HopfTower,
    text: String,
}

fn budget(cli: &Cli, env_budget: Option<&str>) -> Result<u64, String> {
    if let Some(b) = cli.rewrite_budget {
        return Ok(b);
    }
    match env_budget {
        Some(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{BUDGET_ENV} must be a non-negative integer, got `{v}`")),
        None => Ok(DEFAULT_REWRITE_BUDGET),
    }
}

fn bindings(cli: &Cli) -> Result<BTreeMap<String, Scalar>, String> {
    let mut out = BTreeMap::new();
    for p in &cli.params {
        let (name, value) = p
            .split_once('=')
            .ok_or_else(|| format!("--param expects NAME=VALUE, got `{p}`"))?;
        let v = parse_scalar(value.trim()).ok_or_else(|| format!("malformed rational `{}`", value.trim()))?;
        out.insert(name.trim().to_string(), v);
    }
    Ok(out)
}

fn load(file: &str, cli: &Cli, budget: u64) -> Result<Loaded, Failure> {
    let params = bindings(cli)?;
    if let Some(name) = file.strip_prefix("builtin:") {
        if !params.is_empty() {
            return Err(Failure::Input("--param cannot be combined with a builtin".into()));
        }
        let ht = builtin_with_budget(name, Some(budget)).map_err(|e| Failure::Input(e.to_string()))?;
        let text = serialize(&ht);
        return Ok(Loaded { ht, text });
    }
    let path = PathBuf::from(file);
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let ht = parse_with(&text, &params, Some(budget)).map_err(|e| match Failure::from(e) {
        Failure::Input(msg) => Failure::Input(format!("{}:{msg}", path.display())),
        engine => engine,
    })?;
    Ok(Loaded { ht, text })
}

fn step_index(ht: &HopfTower, step: usize) -> Result<usize, String> {
    if step < 2 || step > ht.arity() {
        return Err(Error::StepOutOfRange {
            step,
            min: 2,
            max: ht.arity(),
        }
        .to_string());
    }
    Ok(step - 1)
}

fn scalar_json(v: &Scalar) -> Value {
    Value::String(v.to_string())
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, env_budget: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let budget = match budget(&cli, env_budget) {
        Ok(b) => b,
        Err(e) => return Outcome::input_error(e),
    };
    let result = match &cli.command {
        Command::Examples { emit } => examples(emit.as_deref(), &cli),
        Command::Check { file } => with_file(file, &cli, budget, "check", |l| Ok(check(l, cli.seed))),
        Command::Nf { file, expr } => with_file(file, &cli, budget, "nf", |l| nf(l, expr)),
        Command::Primitives { file, max_deg } => with_file(file, &cli, budget, "primitives", |l| prims(l, *max_deg)),
        Command::Antipode { file, power, expr } => {
            with_file(file, &cli, budget, "antipode", |l| antipode(l, *power, expr.as_deref()))
        }
        Command::AntipodeOrder { file, max_m } => with_file(file, &cli, budget, "antipode-order", |l| order(l, *max_m)),
        Command::Characters { file } => with_file(file, &cli, budget, "characters", |l| Ok(characters(l))),
        Command::Classify { file, step } => with_file(file, &cli, budget, "classify", |l| classify(l, *step)),
        Command::Fiber { file, step, at } => with_file(file, &cli, budget, "fiber", |l| fiber(l, *step, at)),
        Command::S4 { file } => with_file(file, &cli, budget, "s4", s4),
        Command::Normality { file, gens, max_deg } => {
            with_file(file, &cli, budget, "normality", |l| normality(l, gens, *max_deg))
        }
        Command::Gkdim { file } => with_file(file, &cli, budget, "gkdim", |l| Ok(gkdim(l))),
    };
    match result {
        Ok(report) => Outcome {
            code: report.exit_code(),
            stdout: if cli.json {
                format!("{}\n", report.to_json())
            } else {
                report.to_text()
            },
            stderr: String::new(),
        },
        Err(Failure::Input(msg)) => Outcome::input_error(msg),
        Err(Failure::Engine(e)) => Outcome {
            code: EXIT_UNRESOLVED,
            stdout: String::new(),
            stderr: format!("unresolved: {e}\n"),
        },
    }
}

enum Failure {
    Input(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExhausted(_) => Failure::Engine(e),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        match e.kind {
            ParseErrorKind::Semantic(inner @ Error::BudgetExhausted(_)) => Failure::Engine(inner),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure::Input(s)
    }
}

fn with_file<F>(file: &str, cli: &Cli, budget: u64, command: &str, f: F) -> Result<Report, Failure>
where
    F: FnOnce(&Loaded) -> Result<Report, Failure>,
{
    let loaded = load(file, cli, budget)?;
    let mut report = f(&loaded)?;
    report.command = command.into();
    report.input_digest = super::report::digest(&loaded.text);
    report.algebra = Some(loaded.ht.name().to_string());
    Ok(report)
}

fn blank(l: &Loaded) -> Report {
    Report::new("", &l.text, Some(l.ht.name()))
}

fn examples(emit: Option<&str>, cli: &Cli) -> Result<Report, Failure> {
    let mut report = Report::new("examples", "", None);
    match emit {
        None => {
            report.set("builtins", json!(BUILTIN_NAMES));
            if !cli.json {
                return Ok(report);
            }
        }
        Some(name) => {
            let ht = builtin_with_budget(name, None).map_err(|e| e.to_string())?;
            let text = serialize(&ht);
            report.input_digest = super::report::digest(&text);
            report.algebra = Some(ht.name().to_string());
            report.set("source", text);
        }
    }
    Ok(report)
}

fn check(l: &Loaded, seed: Option<u64>) -> Report {
    let ht = &l.ht;
    let mut report = blank(l);
    report.extend(validate_tower(ht.tower()));
    report.extend(check_hopf_axioms(ht));
    for i in 1..ht.arity() {
        match check_hoe_conditions(ht, i) {
            Ok(r) => report.extend(r),
            Err(e) => report.push(Check::from_error(&format!("extension @ {}", ht.names()[i]), "", &e)),
        }
    }
    if let Some(seed) = seed {
        for c in sampled_checks(ht, seed, 20) {
            report.push(c);
        }
        report.set("seed", seed);
    }
    let gk = gk_dimension(ht);
    report.set("gk_dimension", gk.dimension);
    report.set("arity", ht.arity());
    report
}

/// Randomized identities on elements of degree at most 2, beyond the
/// generator-level checks.
pub fn sampled_checks(ht: &HopfTower, seed: u64, cases: usize) -> Vec<Check> {
    let mut s = Sampler::new(seed);
    let t = ht.tower();
    let n = ht.arity();
    let names = ht.names();
    let mut mult = Vec::new();
    let mut coassoc = Vec::new();
    let mut anti = Vec::new();
    let mut axiom = Vec::new();
    for k in 0..cases {
        let p = s.poly(n, 2, 3);
        let q = s.poly(n, 2, 3);
        let label = format!("case {k}");
        mult.push((
            label.clone(),
            (|| -> crate::Result<Residual> {
                let lhs = ht.coproduct(&t.mul(&p, &q)?)?;
                let rhs = ht.coproduct(&p)?.mul(&ht.coproduct(&q)?, t)?;
                Ok(lhs.sub(&rhs)?.into())
            })(),
        ));
        coassoc.push((
            label.clone(),
            (|| -> crate::Result<Residual> {
                let d = ht.coproduct(&p)?;
                let l = d.embed_12(|m| ht.coproduct_monomial(m))?;
                let r = d.embed_23(|m| ht.coproduct_monomial(m))?;
                Ok(l.sub(&r)?.into())
            })(),
        ));
        anti.push((
            label.clone(),
            (|| -> crate::Result<Residual> {
                let lhs = ht.antipode(&t.mul(&p, &q)?)?;
                let rhs = t.mul(&ht.antipode(&q)?, &ht.antipode(&p)?)?;
                Ok(lhs.sub(&rhs)?.into())
            })(),
        ));
        axiom.push((
            label,
            (|| -> crate::Result<Residual> {
                let d: Tensor2 = ht.coproduct(&p)?;
                let eps = t.constant(ht.counit(&p));
                let l = mu(&d.lift_left(|m| ht.antipode_monomial(m))?, t)?.sub(&eps)?;
                let r = mu(&d.lift_right(|m| ht.antipode_monomial(m))?, t)?.sub(&eps)?;
                Ok(if l.is_zero() { r } else { l }.into())
            })(),
        ));
    }
    vec![
        Check::from_residuals(
            "sampled: coproduct multiplicative",
            "Delta(pq) = Delta(p)Delta(q)",
            names,
            mult,
        ),
        Check::from_residuals(
            "sampled: coassociativity",
            "(Delta (x) id)Delta(p) = (id (x) Delta)Delta(p)",
            names,
            coassoc,
        ),
        Check::from_residuals("sampled: antipode anti-multiplicative", "S(pq) = S(q)S(p)", names, anti),
        Check::from_residuals("sampled: antipode axiom", "mu(S (x) id)Delta(p) = eps(p)", names, axiom),
    ]
}

fn nf(l: &Loaded, expr: &str) -> Result<Report, Failure> {
    let p = parse_expr(expr, &l.ht)?;
    let mut report = blank(l);
    report.set("normal_form", l.ht.render(&p));
    Ok(report)
}

fn prims(l: &Loaded, max_deg: u32) -> Result<Report, Failure> {
    let basis = primitives(&l.ht, max_deg)?;
    let mut report = blank(l);
    let rendered: Vec<String> = basis.basis.iter().map(|p| l.ht.render(p)).collect();
    report.set("basis", json!(rendered));
    report.set("dimension", basis.dimension());
    report.set("note", basis.note());
    Ok(report)
}

fn antipode(l: &Loaded, power: u32, expr: Option<&str>) -> Result<Report, Failure> {
    let ht = &l.ht;
    let mut report = blank(l);
    report.set("power", power);
    match expr {
        Some(text) => {
            let p = parse_expr(text, ht)?;
            report.set("result", ht.render(&antipode_power(ht, &p, power)?));
        }
        None => {
            let mut images = serde_json::Map::new();
            for i in 0..ht.arity() {
                let image = antipode_power(ht, &ht.tower().generator(i), power)?;
                images.insert(ht.names()[i].clone(), Value::String(ht.render(&image)));
            }
            report.set("images", Value::Object(images));
        }
    }
    Ok(report)
}

fn order(l: &Loaded, max_m: u32) -> Result<Report, Failure> {
    let ht = &l.ht;
    let mut report = blank(l);
    match antipode_order(ht, max_m)? {
        AntipodeOrder::SquareIsIdentity => report.set("verdict", "S^2 = id"),
        AntipodeOrder::Infinite {
            generator,
            increment,
            verified_up_to,
        } => {
            report.set("verdict", "infinite order");
            report.set("generator", ht.names()[generator].clone());
            report.set("increment", ht.render(&increment));
            report.set(
                "pattern",
                format!(
                    "S^(2m)({x}) = {x} + m*({})",
                    ht.render(&increment),
                    x = ht.names()[generator]
                ),
            );
            report.set("verified_up_to", verified_up_to);
        }
        AntipodeOrder::Undecided { max_m, detail } => {
            report.set("verdict", "undecided");
            report.push(Check::unresolved(
                "antipode-order",
                "S^2 = id or S of infinite order",
                format!("{detail}; searched up to m = {max_m}"),
            ));
        }
    }
    Ok(report)
}

fn characters(l: &Loaded) -> Report {
    let ht = &l.ht;
    let v = character_variety(ht);
    let mut report = blank(l);
    report.set("variety", v.to_string());
    let mut per = serde_json::Map::new();
    for (name, u) in v.names.iter().zip(&v.unknowns) {
        let entry = match u {
            Unknown::Free => Value::String("free".into()),
            Unknown::Fixed(x) => scalar_json(x),
            Unknown::Unresolved => Value::String("unresolved".into()),
        };
        per.insert(name.clone(), entry);
    }
    report.set("generators", Value::Object(per));
    report.set("free_parameters", v.free_count());
    if !v.fully_resolved() {
        report.push(Check::unresolved(
            "character-variety",
            "chi(x_j)chi(x_i) - chi(sigma_j(x_i))chi(x_j) - chi(delta_j(x_i)) = 0",
            if v.inconsistent {
                "equations reduced to a nonzero constant".to_string()
            } else {
                format!("nonlinear equations remain: {}", v.residue.join("; "))
            },
        ));
    }
    report
}

fn classify(l: &Loaded, step: usize) -> Result<Report, Failure> {
    let ht = &l.ht;
    let index = step_index(ht, step)?;
    let kind = classify_extension(ht, index)?;
    let mut report = blank(l);
    report.set("step", step);
    report.set("generator", ht.names()[index].clone());
    report.set("type", kind.to_string());
    if kind == ExtensionType::Inconsistent {
        let t = ht.tower();
        let witness = (0..index)
            .map(|a| t.delta(index, a))
            .find(|d| !ht.counit(d).is_zero())
            .cloned();
        let mut c = Check::fail(
            "extension-type",
            "sigma fixes the counit character, so delta must kill it",
            "the counit ideal is sigma-stable but not delta-stable",
            witness.map(Residual::Poly),
            ht.names(),
        );
        if c.witness.is_none() {
            c.witness = Some("delta([R, R]) not in R+".into());
        }
        report.push(c);
    }
    Ok(report)
}

fn parse_assignment(ht: &HopfTower, index: usize, at: &str) -> Result<Vec<Scalar>, String> {
    let mut values: Vec<Option<Scalar>> = vec![None; index];
    for part in at.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| format!("expected g=val, got `{part}`"))?;
        let a = ht.tower().index_of(name.trim()).map_err(|e| e.to_string())?;
        if a >= index {
            return Err(format!("`{}` is not below step {}", name.trim(), index + 1));
        }
        values[a] = Some(parse_scalar(value.trim()).ok_or_else(|| format!("malformed rational `{}`", value.trim()))?);
    }
    values
        .into_iter()
        .enumerate()
        .map(|(a, v)| v.ok_or_else(|| format!("no value given for `{}`", ht.names()[a])))
        .collect()
}

fn fiber(l: &Loaded, step: usize, at: &str) -> Result<Report, Failure> {
    let ht = &l.ht;
    let index = step_index(ht, step)?;
    let m = parse_assignment(ht, index, at)?;
    let result = goodearl_fiber(ht, index, &m)?;
    let mut report = blank(l);
    report.set("step", step);
    report.set("kind", result.kind());
    report.set("description", result.describe(ht.names()));
    match &result {
        FiberResult::Point { shift, character, .. } => {
            report.set("shift", scalar_json(shift));
            report.set("character", Value::Array(character.iter().map(scalar_json).collect()));
        }
        FiberResult::Unresolved { diagnostic } => {
            report.push(Check::unresolved("fiber", "x + m(delta(r)) in M", diagnostic.clone()));
        }
        _ => {}
    }
    Ok(report)
}

fn s4(l: &Loaded) -> Result<Report, Failure> {
    let ht = &l.ht;
    let mut report = blank(l);
    match s4_decompose(ht)? {
        S4Decomposition::Found { chi, free } => {
            let mut values = serde_json::Map::new();
            for (name, v) in ht.names().iter().zip(&chi) {
                values.insert(name.clone(), scalar_json(v));
            }
            report.set("chi", Value::Object(values));
            let free: Vec<String> = free.iter().map(|&i| ht.names()[i].clone()).collect();
            report.set("free_set_to_zero", json!(free));
            report.set("identity", "S^4 = tau_left(chi) o tau_right(chi o S)");
        }
        S4Decomposition::Unresolved { diagnostic } => {
            report.push(Check::unresolved(
                "s4-decomposition",
                "S^4 = tau_left(chi) o tau_right(chi o S)",
                diagnostic,
            ));
        }
    }
    Ok(report)
}

fn normality(l: &Loaded, gens: &str, max_deg: u32) -> Result<Report, Failure> {
    let ht = &l.ht;
    let idx: Vec<usize> = gens
        .split(',')
        .map(str::trim)
        .filter(|g| !g.is_empty())
        .map(|g| ht.tower().index_of(g))
        .collect::<crate::Result<_>>()?;
    let mut report = blank(l);
    report.set("generators", json!(gens.split(',').map(str::trim).collect::<Vec<_>>()));
    report.set("max_deg", max_deg);
    let citation = "f_1 S(f_3) (x) f_2 in H (x) I and f_2 (x) S(f_1) f_3 in I (x) H";
    let verdict = match normality_search(ht, &idx, max_deg) {
        Err(e @ Error::NotRewriteStable(_)) => {
            report.set("verdict", "undecided");
            report.push(Check::unresolved("normality", citation, e.to_string()));
            return Ok(report);
        }
        other => other?,
    };
    match verdict {
        Normality::NormalUpToDegree { max_deg, searched } => {
            report.set("verdict", format!("normal up to degree {max_deg}"));
            report.push(Check::pass(
                "normality",
                citation,
                format!("{searched} ideal elements searched"),
            ));
        }
        Normality::NotNormal {
            element, side, image, ..
        } => {
            report.set("verdict", "not normal");
            report.set("element", ht.render(&element));
            report.set("side", format!("{side:?}").to_lowercase());
            report.push(Check::fail(
                "normality",
                citation,
                format!("{:?} coaction of {} leaves the ideal", side, ht.render(&element)),
                Some(Residual::Tensor2(image)),
                ht.names(),
            ));
        }
    }
    Ok(report)
}

fn gkdim(l: &Loaded) -> Report {
    let gk = gk_dimension(&l.ht);
    let mut report = blank(l);
    report.set("gk_dimension", gk.dimension);
    report.set("note", gk.note);
    report
}
