//! Command-line front end: reads JSON inputs, runs one decision procedure and
//! prints the result as JSON or as an indented text rendering of the same
//! structure.
//!
//! Exit status: 0 on success (or a matching `--assert`), 1 on an `--assert`
//! mismatch, 2 on input or usage errors, 3 when warned directions leave the
//! answer undecided.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fibrecheck::fibre::{
    artin_check, cook_mu, corank1_existence, corank2_existence, fp_check, greatsph_existence,
    minus_id_check, plan_max_corank, untwisted_check, Answer, TwistMatrix, Verdict,
};
use fibrecheck::json::{
    cook_to_json, factor_from_json, graph_from_json, group_input_from_json, kind_of,
    matrix_from_json, plan_to_json, sigma_to_json, verdict_to_json, Factor,
};
use fibrecheck::sigma::DegenerateMode;
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "fibrecheck", version, about = "Decide finite presentability of twisted fibre products")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// How to treat directions the one-relator criterion cannot settle.
    #[arg(long, global = true, default_value = "warn", value_parser = parse_mode)]
    degenerate: DegenerateMode,

    /// Exit 0 only if the verdict equals this answer, 1 otherwise.
    #[arg(long, global = true, value_enum)]
    assert: Option<Expect>,

    /// Reserved; every run is deterministic.
    #[arg(long, global = true, hide = true)]
    seed_free: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Complement of the first invariant of a one-relator group or RAAG.
    Sigma(Input),
    /// Minimal separators of a graph and whether it is a join.
    Separators(Input),
    /// Untwisted and twisted fibre product verdicts for a RAAG.
    Artin(Input),
    /// Finite presentability of the product twisted by `mu`.
    FpCheck(Input),
    /// Finite presentability of the untwisted product.
    Untwisted(Input),
    /// Finite presentability of the product twisted by minus the identity.
    MinusId(Input),
    /// Existence of a finitely presented co-rank 1 fibre product.
    Corank1(Input),
    /// Existence of a finitely presented co-rank 2 twisted product.
    Corank2(Input),
    /// Existence of a twisted product of full co-rank.
    Greatsph(Input),
    /// Construct a twist making the product finitely presented.
    Cook(Input),
    /// Largest co-rank reachable by the construction, with its data.
    Plan(Input),
}

#[derive(clap::Args)]
struct Input {
    /// Path to a JSON file, or a JSON document given inline.
    input: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Expect {
    Fp,
    NotFp,
    Exists,
    NotExists,
}

impl Expect {
    fn answer(self) -> Answer {
        match self {
            Expect::Fp => Answer::Fp,
            Expect::NotFp => Answer::NotFp,
            Expect::Exists => Answer::Exists,
            Expect::NotExists => Answer::NotExists,
        }
    }

    fn is_presentability(self) -> bool {
        matches!(self, Expect::Fp | Expect::NotFp)
    }
}

fn parse_mode(s: &str) -> std::result::Result<DegenerateMode, String> {
    s.parse().map_err(|_| format!("expected warn, exclude or include, got {s:?}"))
}

/// A loaded document together with the directory used to resolve relative
/// file references inside it.
struct Doc {
    value: Value,
    base: PathBuf,
    label: String,
}

fn load(arg: &str) -> Result<Doc> {
    if arg.trim_start().starts_with('{') {
        let value = serde_json::from_str(arg).with_context(|| "inline JSON: parse error")?;
        return Ok(Doc {
            value,
            base: PathBuf::from("."),
            label: "inline JSON".into(),
        });
    }
    let path = Path::new(arg);
    let text = std::fs::read_to_string(path).with_context(|| format!("{arg}: cannot read file"))?;
    let value = serde_json::from_str(&text).with_context(|| format!("{arg}: parse error"))?;
    Ok(Doc {
        value,
        base: path.parent().map(Path::to_path_buf).unwrap_or_default(),
        label: arg.to_string(),
    })
}

/// Replaces `sigma` fields given as file names by the documents they name.
fn inline_references(doc: &mut Doc) -> Result<()> {
    let Some(obj) = doc.value.as_object_mut() else {
        return Ok(());
    };
    for key in ["factor", "factor1", "factor2"] {
        let Some(sigma) = obj.get_mut(key).and_then(|f| f.get_mut("sigma")) else {
            continue;
        };
        if let Value::String(name) = sigma {
            let path = doc.base.join(&*name);
            let text = std::fs::read_to_string(&path)
                .with_context(|| format!("{}: {key}.sigma: cannot read {}", doc.label, path.display()))?;
            *sigma = serde_json::from_str(&text)
                .with_context(|| format!("{}: parse error", path.display()))?;
        }
    }
    Ok(())
}

fn core<T>(doc: &Doc, r: fibrecheck::Result<T>) -> Result<T> {
    r.map_err(|e| anyhow!(e).context(doc.label.clone()))
}

fn check_kind(doc: &Doc, expected: &str) -> Result<()> {
    match kind_of(&doc.value) {
        Some(k) if k != expected => {
            bail!("{}: kind: expected {expected:?}, got {k:?}", doc.label)
        }
        _ => Ok(()),
    }
}

fn resolve(mut f: Factor, mode: DegenerateMode) -> Factor {
    f.sigma = f.sigma.resolve(mode);
    f
}

fn task_factor(doc: &Doc, key: &str, mode: DegenerateMode) -> Result<Factor> {
    let v = doc
        .value
        .get(key)
        .ok_or_else(|| anyhow!("{}: {key}: missing field", doc.label))?;
    Ok(resolve(core(doc, factor_from_json(v, key))?, mode))
}

/// A single-factor task, or a bare group document meaning `N = G'`.
fn single_factor(doc: &Doc, kind: &str, mode: DegenerateMode) -> Result<Factor> {
    match kind_of(&doc.value) {
        Some("one_relator" | "graph" | "sigma_complement") => {
            let f = core(doc, factor_from_json(&json!({"sigma": doc.value}), ""))?;
            Ok(resolve(f, mode))
        }
        _ => {
            check_kind(doc, kind)?;
            check_task_keys(doc, &["kind", "factor"])?;
            task_factor(doc, "factor", mode)
        }
    }
}

fn check_task_keys(doc: &Doc, allowed: &[&str]) -> Result<()> {
    if let Some(obj) = doc.value.as_object() {
        if let Some(k) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
            bail!("{}: {k}: unknown field", doc.label);
        }
    }
    Ok(())
}

/// Rejects generator lists on commands that only look at complements.
fn sigma_only(doc: &Doc, key: &str) -> Result<()> {
    let v = &doc.value[key];
    for g in ["n_gens", "k_gens"] {
        if v.get(g).is_some() {
            bail!("{}: {key}.{g}: not used by this command", doc.label);
        }
    }
    Ok(())
}

fn twist(doc: &Doc) -> Result<TwistMatrix> {
    let obj = doc.value.as_object().expect("task documents are objects");
    let built = match (obj.get("mu"), obj.get("mu_star")) {
        (Some(_), Some(_)) => bail!("{}: give only one of mu and mu_star", doc.label),
        (Some(m), None) => matrix_from_json(m, "mu").and_then(TwistMatrix::new),
        (None, Some(m)) => matrix_from_json(m, "mu_star").and_then(TwistMatrix::from_mu_star),
        (None, None) => bail!("{}: mu: missing field", doc.label),
    };
    core(doc, built)
}

struct Outcome {
    report: Value,
    verdicts: Vec<Verdict>,
}

fn single(v: Verdict) -> Outcome {
    Outcome {
        report: verdict_to_json(&v),
        verdicts: vec![v],
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let mode = cli.degenerate;
    let (name, arg) = match &cli.command {
        Command::Sigma(i) => ("sigma", i),
        Command::Separators(i) => ("separators", i),
        Command::Artin(i) => ("artin", i),
        Command::FpCheck(i) => ("fp_check", i),
        Command::Untwisted(i) => ("untwisted", i),
        Command::MinusId(i) => ("minus_id", i),
        Command::Corank1(i) => ("corank1", i),
        Command::Corank2(i) => ("corank2", i),
        Command::Greatsph(i) => ("greatsph", i),
        Command::Cook(i) => ("cook", i),
        Command::Plan(i) => ("plan", i),
    };
    let mut doc = load(&arg.input)?;
    if !doc.value.is_object() {
        bail!("{}: expected a JSON object", doc.label);
    }
    inline_references(&mut doc)?;

    match name {
        "sigma" => {
            let input = core(&doc, group_input_from_json(&doc.value, ""))?;
            let (sigma, _) = input.sigma();
            Ok(Outcome {
                report: sigma_to_json(&sigma.resolve(mode)),
                verdicts: vec![],
            })
        }
        "separators" => {
            let g = core(&doc, graph_from_json(&doc.value, ""))?;
            let names = |s: &[usize]| s.iter().map(|&i| g.names()[i].clone()).collect::<Vec<_>>();
            let seps: Vec<_> = g.minimal_separators().iter().map(|s| names(s)).collect();
            Ok(Outcome {
                report: json!({
                    "separators": seps,
                    "connected": g.is_connected(),
                    "is_direct_product": g.is_direct_product(),
                }),
                verdicts: vec![],
            })
        }
        "artin" => {
            let g = core(&doc, graph_from_json(&doc.value, ""))?;
            let (u, t) = core(&doc, artin_check(&g))?;
            Ok(Outcome {
                report: json!({"untwisted": verdict_to_json(&u), "twisted": verdict_to_json(&t)}),
                verdicts: vec![u, t],
            })
        }
        "fp_check" => {
            check_kind(&doc, name)?;
            check_task_keys(&doc, &["kind", "factor1", "factor2", "mu", "mu_star"])?;
            let f1 = task_factor(&doc, "factor1", mode)?;
            let f2 = task_factor(&doc, "factor2", mode)?;
            let mu = twist(&doc)?;
            let v = core(&doc, fp_check(&f1.sigma, &f1.quotient, &f2.sigma, &f2.quotient, &mu))?;
            Ok(single(v))
        }
        "untwisted" | "minus_id" | "corank2" => {
            let f = single_factor(&doc, name, mode)?;
            let v = match name {
                "untwisted" => untwisted_check(&f.sigma, &f.quotient),
                "minus_id" => minus_id_check(&f.sigma, &f.quotient),
                _ => corank2_existence(&f.sigma, &f.quotient),
            };
            Ok(single(core(&doc, v)?))
        }
        "greatsph" => {
            let f = single_factor(&doc, name, mode)?;
            if doc.value.get("factor").is_some() {
                sigma_only(&doc, "factor")?;
            }
            Ok(single(core(&doc, greatsph_existence(&f.sigma))?))
        }
        "corank1" | "plan" => {
            check_kind(&doc, name)?;
            check_task_keys(&doc, &["kind", "factor1", "factor2"])?;
            let f1 = task_factor(&doc, "factor1", mode)?;
            let f2 = task_factor(&doc, "factor2", mode)?;
            sigma_only(&doc, "factor1")?;
            sigma_only(&doc, "factor2")?;
            if name == "corank1" {
                Ok(single(core(&doc, corank1_existence(&f1.sigma, &f2.sigma))?))
            } else {
                let plan = core(&doc, plan_max_corank(&f1.sigma, &f2.sigma))?;
                Ok(Outcome {
                    report: plan_to_json(&plan),
                    verdicts: vec![plan.cook.verdict],
                })
            }
        }
        "cook" => {
            check_kind(&doc, name)?;
            check_task_keys(&doc, &["kind", "factor1", "factor2"])?;
            let f1 = task_factor(&doc, "factor1", mode)?;
            let f2 = task_factor(&doc, "factor2", mode)?;
            let r = core(
                &doc,
                cook_mu(&f1.sigma, &f1.quotient, &f1.k_gens, &f2.sigma, &f2.quotient, &f2.k_gens),
            )?;
            Ok(Outcome {
                report: cook_to_json(&r),
                verdicts: vec![r.verdict],
            })
        }
        _ => unreachable!("every command is listed"),
    }
}

/// Renders JSON as indented `key: value` lines; arrays without objects stay
/// on one line.
fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => render_map(map, indent, out),
        Value::Array(items) if items.iter().any(Value::is_object) => {
            for item in items {
                out.push_str(&pad);
                out.push_str("-\n");
                render_text(item, indent + 1, out);
            }
        }
        other => {
            out.push_str(&pad);
            out.push_str(&inline(other));
            out.push('\n');
        }
    }
}

fn render_map(map: &Map<String, Value>, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    for (k, v) in map {
        let nested = v.is_object() || v.as_array().is_some_and(|a| a.iter().any(Value::is_object));
        if nested {
            out.push_str(&format!("{pad}{k}:\n"));
            render_text(v, indent + 1, out);
        } else {
            out.push_str(&format!("{pad}{k}: {}\n", inline(v)));
        }
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(items) => {
            let parts: Vec<_> = items.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

/// The verdict an `--assert` refers to: the last one whose family matches.
fn asserted(outcome: &Outcome, expect: Expect) -> Option<&Verdict> {
    let fp_family = |a: Answer| matches!(a, Answer::Fp | Answer::NotFp);
    let exists_family = |a: Answer| matches!(a, Answer::Exists | Answer::NotExists);
    outcome.verdicts.iter().rev().find(|v| {
        v.answer == Answer::Unknown
            || if expect.is_presentability() {
                fp_family(v.answer)
            } else {
                exists_family(v.answer)
            }
    })
}

fn exit_status(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<fibrecheck::Error>() {
        Some(fibrecheck::Error::Degenerate(_)) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(exit_status(&e));
        }
    };
    let mut text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&outcome.report).expect("values serialize"),
        Format::Text => {
            let mut s = String::new();
            render_text(&outcome.report, 0, &mut s);
            s.pop();
            s
        }
    };
    text.push('\n');
    print!("{text}");

    let status = match cli.assert {
        None => {
            if outcome.verdicts.iter().any(|v| v.answer == Answer::Unknown) {
                3
            } else {
                0
            }
        }
        Some(expect) => match asserted(&outcome, expect) {
            None => {
                eprintln!("error: --assert does not apply to this command");
                2
            }
            Some(v) if v.answer == Answer::Unknown => 3,
            Some(v) if v.answer == expect.answer() => 0,
            Some(v) => {
                eprintln!(
                    "assertion failed: expected {}, got {}",
                    expect.answer(),
                    v.answer
                );
                1
            }
        },
    };
    if status == 3 {
        eprintln!("warning: the answer depends on directions the criterion cannot settle; see \"warnings\"");
    }
    ExitCode::from(status)
}
