//! The `janet` command: argument parsing, dispatch and report rendering.
//!
//! Every report is a list of [`Line`]s. Each line has a text rendering and a
//! JSON record rendering built from the same values, so both output formats
//! carry the same data.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::complement::{check_partition, complementary_set};
use crate::error::{Error, Result};
use crate::janet::{complete, is_complete, mult_table, MultTable};
use crate::monomial::{enumerate_up_to, random_set, Monomial, MonomialSet, VarSet};
use crate::order::DerivativeSymbol;
use crate::pde::{
    canonicalize, complete_system, compatibility_conditions_monomial, integrability_conditions, monomial_template,
    solve_series_monomial, triangulate, Autoreduced, Canonical, LinExpr, PdeSystem, Stage, Witness,
};
use crate::text::{
    parse_monomial_document, parse_pde_file_with, print_order, print_system, MonomialDocument, PdeBody, PdeDocument,
};

/// Process exit status.
pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Records,
}

/// Janet division, monomial completion and linear PDE integrability.
#[derive(Parser, Debug, Clone, PartialEq, Eq)]
#[command(name = "janet", version)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Degree bound for oracles, Hilbert rows and series truncation.
    #[arg(long, global = true, default_value_t = 8)]
    pub bound: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Order on derivatives: `deglex`, `weight; level c1 .. cn | w1 .. wm; ...`
    /// or a file holding either.
    #[arg(long, global = true)]
    pub order: Option<String>,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Janet completion with the table of multiplicative variables at each step.
    Complete { input: PathBuf },
    /// Multiplicative variables of each monomial.
    MultTable { input: PathBuf },
    /// Complementary monomials and their multiplicative variables.
    Complement { input: PathBuf },
    /// Number of monomials of each degree outside the cone.
    Hilbert { input: PathBuf },
    /// Checks that the cone and the complementary cones partition all
    /// monomials up to deg(U) + bound; without an input, checks random sets.
    PartitionCheck {
        input: Option<PathBuf>,
        /// Number of random sets when no input is given.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Linear PDE systems.
    #[command(subcommand)]
    Pde(PdeCommand),
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum PdeCommand {
    /// Completeness and integrability report.
    Check { input: PathBuf },
    /// Canonical form, or a witness of incompatibility.
    Canonicalize { input: PathBuf },
    /// Truncated series solution of a monomial system.
    SolveMonomial { input: PathBuf },
}

/// One line of output.
#[derive(Clone, Debug, PartialEq)]
pub struct Line {
    pub text: String,
    pub record: Value,
}

fn line(text: impl Into<String>, record: Value) -> Line {
    Line {
        text: text.into(),
        record,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config),
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if status == EXIT_OK { (rendered, String::new()) } else { (String::new(), rendered) };
            Report { status, stdout, stderr }
        }
    }
}

pub fn run(config: &RunConfig) -> Report {
    match dispatch(config) {
        Ok((status, lines)) => Report {
            status,
            stdout: render(&lines, config.format),
            stderr: String::new(),
        },
        Err(e) => Report {
            status: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn render(lines: &[Line], format: Format) -> String {
    let mut out = String::new();
    for l in lines {
        match format {
            Format::Text => {
                out.push_str(&l.text);
                out.push('\n');
            }
            Format::Records => {
                out.push_str(&serde_json::to_string(&l.record).expect("json"));
                out.push('\n');
            }
        }
    }
    out
}

fn read(path: &PathBuf) -> Result<String> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map(|_| s)
    } else {
        std::fs::read_to_string(path)
    };
    text.map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_set(path: &PathBuf) -> Result<MonomialDocument> {
    let doc = parse_monomial_document(&read(path)?)?;
    doc.set.ensure_non_empty()?;
    Ok(doc)
}

fn read_pde(path: &PathBuf, order: Option<&str>) -> Result<PdeDocument> {
    let spec = match order {
        Some(o) if std::path::Path::new(o).is_file() => Some(
            std::fs::read_to_string(o).map_err(|e| Error::Io(format!("order file {o}: {e}")))?,
        ),
        Some(o) => Some(o.to_string()),
        None => None,
    };
    parse_pde_file_with(&read(path)?, spec.as_deref())
}

type Output = (i32, Vec<Line>);

fn dispatch(config: &RunConfig) -> Result<Output> {
    match &config.command {
        Command::Complete { input } => cmd_complete(&read_set(input)?),
        Command::MultTable { input } => cmd_mult_table(&read_set(input)?),
        Command::Complement { input } => cmd_complement(&read_set(input)?),
        Command::Hilbert { input } => cmd_hilbert(&read_set(input)?, config.bound),
        Command::PartitionCheck { input: Some(input), .. } => cmd_partition(&read_set(input)?, config.bound),
        Command::PartitionCheck { input: None, samples } => cmd_partition_random(*samples, config.seed, config.bound),
        Command::Pde(PdeCommand::Check { input }) => cmd_pde_check(&read_pde(input, config.order.as_deref())?),
        Command::Pde(PdeCommand::Canonicalize { input }) => {
            cmd_pde_canonicalize(&read_pde(input, config.order.as_deref())?)
        }
        Command::Pde(PdeCommand::SolveMonomial { input }) => {
            cmd_pde_solve(&read_pde(input, config.order.as_deref())?, config.bound)
        }
    }
}

fn exps(m: &Monomial) -> Value {
    json!(m.exponents())
}

fn vars_json(v: VarSet) -> Value {
    json!(v.iter().rev().collect::<Vec<_>>())
}

/// Rows in descending order; columns `x_n .. x_1`, blank when
/// non-multiplicative.
pub fn table_lines(table: &MultTable, names: &[String], step: usize) -> Vec<Line> {
    let n = table.arity();
    let width = table.iter().map(|(u, _)| u.display_with(names).len()).max().unwrap_or(1);
    table
        .iter()
        .rev()
        .map(|(u, mult)| {
            let mut text = format!("{:<width$} |", u.display_with(names));
            for i in (1..=n).rev() {
                let cell = if mult.contains(i) { names[i - 1].as_str() } else { "" };
                let w = names[i - 1].len();
                write!(text, " {cell:<w$}").expect("string");
            }
            line(
                text.trim_end(),
                json!({"record": "mult", "table": step, "monomial": exps(u), "mult": vars_json(mult)}),
            )
        })
        .collect()
}

fn set_lines(set: &MonomialSet, names: &[String], tag: &str) -> Vec<Line> {
    set.iter()
        .rev()
        .map(|m| line(m.display_with(names), json!({"record": tag, "monomial": exps(m)})))
        .collect()
}

fn cmd_complete(doc: &MonomialDocument) -> Result<Output> {
    let names = &doc.vars;
    let trace = complete(&doc.set)?;
    let sets = trace.intermediate_sets();
    let mut out = Vec::new();
    for (k, set) in sets.iter().enumerate() {
        out.push(line(format!("table {k}"), json!({"record": "table", "table": k, "size": set.len()})));
        out.extend(table_lines(&mult_table(set)?, names, k));
        if let Some(step) = trace.steps.get(k) {
            out.push(line(
                format!(
                    "+ {}  (from {} * {})",
                    step.added.display_with(names),
                    step.source.display_with(names),
                    names[step.var - 1]
                ),
                json!({"record": "step", "step": k + 1, "added": exps(&step.added), "source": exps(&step.source), "var": step.var}),
            ));
        }
    }
    out.push(line(
        format!("complete: {} monomials", trace.result.len()),
        json!({"record": "result", "size": trace.result.len(), "steps": trace.steps.len()}),
    ));
    out.extend(set_lines(&trace.result, names, "member"));
    Ok((EXIT_OK, out))
}

fn cmd_mult_table(doc: &MonomialDocument) -> Result<Output> {
    let mut out = table_lines(&mult_table(&doc.set)?, &doc.vars, 0);
    let c = is_complete(&doc.set)?;
    out.push(line(
        format!("complete: {}", if c { "yes" } else { "no" }),
        json!({"record": "complete", "value": c}),
    ));
    Ok((EXIT_OK, out))
}

fn basis_line(set: &MonomialSet) -> Result<Line> {
    let c = is_complete(set)?;
    let size = if c { set.len() } else { complete(set)?.result.len() };
    Ok(line(
        if c { "basis: complete".to_string() } else { format!("basis: completed to {size} monomials") },
        json!({"record": "basis", "complete": c, "size": size}),
    ))
}

fn cmd_complement(doc: &MonomialDocument) -> Result<Output> {
    let names = &doc.vars;
    let mut out = vec![basis_line(&doc.set)?];
    for e in complementary_set(&doc.set)?.entries() {
        out.push(line(
            format!(
                "{} : level={} : mult={}",
                e.monomial.display_with(names),
                e.level,
                e.cmult.display_with(names)
            ),
            json!({"record": "complement", "monomial": exps(&e.monomial), "level": e.level, "mult": vars_json(e.cmult)}),
        ));
    }
    Ok((EXIT_OK, out))
}

fn cmd_hilbert(doc: &MonomialDocument, bound: u32) -> Result<Output> {
    let comp = complementary_set(&doc.set)?;
    let out = (0..=bound)
        .map(|d| {
            let c = crate::complement::hilbert_from(&comp, d);
            line(format!("{d},{c}"), json!({"record": "hilbert", "degree": d, "count": c}))
        })
        .collect();
    Ok((EXIT_OK, out))
}

fn partition_line(set: &MonomialSet, names: &[String], bound: u32, index: Option<usize>) -> Result<(bool, Line)> {
    let top = set.max_degree() + bound;
    let checked = enumerate_up_to(set.arity(), top).len();
    let label = index.map_or(String::new(), |k| format!("set {k}: "));
    Ok(match check_partition(set, top)? {
        None => (
            true,
            line(
                format!("{label}ok: {checked} monomials up to degree {top}"),
                json!({"record": "partition", "set": index, "ok": true, "checked": checked, "degree": top}),
            ),
        ),
        Some(v) => (
            false,
            line(
                format!(
                    "{label}violation: {} in_cone={} covers={}",
                    v.monomial.display_with(names),
                    v.in_cone,
                    v.covers
                ),
                json!({"record": "partition", "set": index, "ok": false, "monomial": exps(&v.monomial), "in_cone": v.in_cone, "covers": v.covers}),
            ),
        ),
    })
}

fn cmd_partition(doc: &MonomialDocument, bound: u32) -> Result<Output> {
    let (ok, l) = partition_line(&doc.set, &doc.vars, bound, None)?;
    Ok((if ok { EXIT_OK } else { EXIT_NEGATIVE }, vec![l]))
}

fn cmd_partition_random(samples: usize, seed: u64, bound: u32) -> Result<Output> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut failures = 0;
    for k in 0..samples {
        let n = rand::Rng::gen_range(&mut rng, 2..=4);
        let set = random_set(&mut rng, n, 8, 5);
        let names = crate::monomial::default_names(n);
        let (ok, l) = partition_line(&set, &names, bound, Some(k))?;
        if !ok {
            failures += 1;
            out.push(line(
                format!("set {k}: {}", set.iter().map(|m| m.display_with(&names)).collect::<Vec<_>>().join(", ")),
                json!({"record": "set", "set": k, "members": set.iter().map(exps).collect::<Vec<_>>()}),
            ));
        }
        out.push(l);
    }
    out.push(line(
        format!("{} sets, {failures} violations (seed {seed})", samples),
        json!({"record": "summary", "sets": samples, "violations": failures, "seed": seed}),
    ));
    Ok((if failures == 0 { EXIT_OK } else { EXIT_NEGATIVE }, out))
}

fn expr_text(e: &LinExpr, doc: &PdeDocument) -> String {
    e.display_with(&doc.vars, &doc.unknowns, &doc.order)
}

fn system_lines(sys: &PdeSystem, doc: &PdeDocument) -> Vec<Line> {
    let text = print_system(sys, &doc.vars, &doc.unknowns);
    let mut eqs: Vec<_> = sys.equations().collect();
    eqs.sort_by(|a, b| sys.order().cmp(&b.lead, &a.lead));
    text.lines()
        .zip(eqs)
        .map(|(t, e)| {
            line(
                t,
                json!({"record": "equation", "unknown": doc.unknowns[e.lead.unknown - 1], "lead": exps(&e.lead.alpha), "rhs": expr_text(&e.rhs, doc)}),
            )
        })
        .collect()
}

fn header_lines(doc: &PdeDocument) -> Vec<Line> {
    let mut out = vec![
        line(format!("vars {};", doc.vars.join(" ")), json!({"record": "vars", "names": doc.vars})),
        line(
            format!("unknowns {};", doc.unknowns.join(" ")),
            json!({"record": "unknowns", "names": doc.unknowns}),
        ),
    ];
    for (k, t) in print_order(&doc.order).lines().enumerate() {
        out.push(line(t, json!({"record": "order", "index": k, "text": t})));
    }
    out
}

fn witness_lines(w: &Witness, doc: &PdeDocument) -> Vec<Line> {
    let value = expr_text(&w.value, doc);
    let (stage, detail) = match &w.stage {
        Stage::Input { index } => ("input", format!("input equation {index}")),
        Stage::Autoreduction { lead } => (
            "autoreduction",
            format!("round {}: left-reducing {}", w.round, lead.display_with(&doc.unknowns)),
        ),
        Stage::Integrability { source, var } => (
            "integrability",
            format!(
                "round {}: condition from {} and {}",
                w.round,
                source.display_with(&doc.unknowns),
                doc.vars[var - 1]
            ),
        ),
    };
    vec![line(
        format!("incompatible: 0 = {value}  ({detail})"),
        json!({"record": "incompatible", "value": value, "stage": stage, "round": w.round, "detail": detail}),
    )]
}

/// The system a PDE document describes, after solving raw equations.
fn solved(doc: &PdeDocument) -> Result<std::result::Result<PdeSystem, Vec<Line>>> {
    Ok(match &doc.body {
        PdeBody::System(s) => Ok(s.clone()),
        PdeBody::Monomial { system, .. } => Ok(system.to_system()),
        PdeBody::Raw(raw) => match triangulate(doc.arity(), doc.unknowns.len(), &doc.order, raw)? {
            Autoreduced::System(s) => Ok(s),
            Autoreduced::Incompatible(w) => Err(witness_lines(&w, doc)),
        },
    })
}

fn cmd_pde_check(doc: &PdeDocument) -> Result<Output> {
    if let PdeBody::Monomial { system, .. } = &doc.body {
        return monomial_check(doc, system);
    }
    let sys = match solved(doc)? {
        Ok(s) => s,
        Err(lines) => return Ok((EXIT_NEGATIVE, lines)),
    };
    let mut out = Vec::new();
    for r in 1..=sys.unknowns() {
        let u = sys.leading_monomials(r);
        let name = &doc.unknowns[r - 1];
        let state = if u.is_empty() {
            "free"
        } else if is_complete(&u)? {
            "complete"
        } else {
            "incomplete"
        };
        out.push(line(
            format!("unknown {name}: {} leads, {state}", u.len()),
            json!({"record": "unknown", "name": name, "leads": u.len(), "state": state}),
        ));
    }
    let sys = if sys.is_complete_system() {
        sys
    } else {
        let c = complete_system(&sys)?;
        out.push(line(
            format!("completed: {} equations added", c.len() - sys.len()),
            json!({"record": "completed", "added": c.len() - sys.len()}),
        ));
        out.extend(system_lines(&c, doc));
        c
    };
    let conditions = integrability_conditions(&sys)?;
    let mut nontrivial = 0;
    for c in &conditions {
        if !c.is_trivial() {
            nontrivial += 1;
        }
        let source = format!(
            "({}, {}, {})",
            doc.unknowns[c.source.unknown - 1],
            c.source.alpha.to_record(),
            doc.vars[c.var - 1]
        );
        let residual = expr_text(&c.residual, doc);
        out.push(line(
            format!("source={source} residual= {residual}"),
            json!({"record": "condition", "unknown": doc.unknowns[c.source.unknown - 1], "lead": exps(&c.source.alpha), "var": c.var, "divisor": exps(&c.divisor.alpha), "residual": residual, "trivial": c.is_trivial()}),
        ));
    }
    let ok = nontrivial == 0;
    out.push(line(
        format!(
            "{}: conditions={} nontrivial={nontrivial}",
            if ok { "completely integrable" } else { "not completely integrable" },
            conditions.len()
        ),
        json!({"record": "verdict", "integrable": ok, "conditions": conditions.len(), "nontrivial": nontrivial}),
    ));
    Ok((if ok { EXIT_OK } else { EXIT_NEGATIVE }, out))
}

fn monomial_check(doc: &PdeDocument, system: &crate::pde::MonomialPdeSystem) -> Result<Output> {
    let names = &doc.vars;
    let mut out = Vec::new();
    let system = if system.is_complete() {
        system.clone()
    } else {
        let c = system.completed()?;
        out.push(line(
            format!("completed: {} equations added", c.rhs().len() - system.rhs().len()),
            json!({"record": "completed", "added": c.rhs().len() - system.rhs().len()}),
        ));
        c
    };
    let conditions = compatibility_conditions_monomial(&system)?;
    let failures = conditions.iter().filter(|c| !c.holds).count();
    for c in &conditions {
        let lhs = c.lhs.display_with(names);
        let rhs = c.rhs.display_with(names);
        out.push(line(
            format!(
                "d/d{} f{} = D{} f{} : {lhs} = {rhs} : {}",
                names[c.var - 1],
                c.alpha.to_record(),
                c.gamma.to_record(),
                c.beta.to_record(),
                if c.holds { "holds" } else { "fails" }
            ),
            json!({"record": "compatibility", "var": c.var, "alpha": exps(&c.alpha), "beta": exps(&c.beta), "gamma": exps(&c.gamma), "lhs": lhs, "rhs": rhs, "holds": c.holds}),
        ));
    }
    let ok = failures == 0;
    out.push(line(
        format!(
            "{}: conditions={} failing={failures}",
            if ok { "compatible" } else { "not compatible" },
            conditions.len()
        ),
        json!({"record": "verdict", "compatible": ok, "conditions": conditions.len(), "failing": failures}),
    ));
    Ok((if ok { EXIT_OK } else { EXIT_NEGATIVE }, out))
}

fn cmd_pde_canonicalize(doc: &PdeDocument) -> Result<Output> {
    let raw = doc.raw_equations();
    match canonicalize(doc.arity(), doc.unknowns.len(), &doc.order, &raw)? {
        Canonical::Canonical(sys) => {
            let mut out = header_lines(doc);
            out.extend(system_lines(&sys, doc));
            Ok((EXIT_OK, out))
        }
        Canonical::Incompatible(w) => Ok((EXIT_NEGATIVE, witness_lines(&w, doc))),
    }
}

fn cmd_pde_solve(doc: &PdeDocument, bound: u32) -> Result<Output> {
    let PdeBody::Monomial { system, initial } = &doc.body else {
        return Err(Error::Invalid("solve-monomial needs a file with 'kind monomial;'".into()));
    };
    let names = &doc.vars;
    let system = if system.is_complete() { system.clone() } else { system.completed()? };
    if let Some(c) = compatibility_conditions_monomial(&system)?.into_iter().find(|c| !c.holds) {
        let lhs = c.lhs.display_with(names);
        let rhs = c.rhs.display_with(names);
        return Ok((
            EXIT_NEGATIVE,
            vec![line(
                format!(
                    "not compatible: d/d{} f{} = D{} f{} : {lhs} = {rhs}",
                    names[c.var - 1],
                    c.alpha.to_record(),
                    c.gamma.to_record(),
                    c.beta.to_record()
                ),
                json!({"record": "compatibility", "var": c.var, "alpha": exps(&c.alpha), "beta": exps(&c.beta), "gamma": exps(&c.gamma), "lhs": lhs, "rhs": rhs, "holds": false}),
            )],
        ));
    }
    let template = monomial_template(&system)?;
    let Some(data) = initial else {
        let slots: Vec<String> = template
            .slots
            .iter()
            .map(|s| {
                let value = if s.cmult.is_empty() {
                    "<constant>".to_string()
                } else {
                    format!("<polynomial in {}>", s.cmult.display_with(names))
                };
                format!(
                    "initial {} = {value};",
                    DerivativeSymbol::new(1, s.beta.clone()).display_with(&doc.unknowns)
                )
            })
            .collect();
        return Err(Error::DataMismatch(format!("no initial data; expected\n{}", slots.join("\n"))));
    };
    let phi = solve_series_monomial(&system, data, bound)?;
    let text = phi.display_with(names);
    Ok((
        EXIT_OK,
        vec![line(
            format!("{} = {text}", doc.unknowns[0]),
            json!({"record": "series", "unknown": doc.unknowns[0], "degree": bound, "polynomial": text}),
        )],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_2() {
        let r = run_args(["janet", "frobnicate"]);
        assert_eq!(r.status, EXIT_USAGE);
        let r = run_args(["janet", "complete", "/nonexistent/file"]);
        assert_eq!(r.status, EXIT_USAGE);
        assert!(r.stderr.contains("cannot read"));
        let r = run_args(["janet", "--help"]);
        assert_eq!(r.status, EXIT_OK);
    }

    #[test]
    fn defaults() {
        let c = RunConfig::try_parse_from(["janet", "hilbert", "x"]).unwrap();
        assert_eq!((c.bound, c.format, c.seed, c.order), (8, Format::Text, 0, None));
        let c = RunConfig::try_parse_from(["janet", "pde", "check", "f", "--format", "records", "--order", "deglex"]).unwrap();
        assert_eq!(c.format, Format::Records);
        assert_eq!(c.order.as_deref(), Some("deglex"));
    }

    #[test]
    fn random_partition_check() {
        let r = run_args(["janet", "partition-check", "--samples", "5", "--seed", "3", "--bound", "2"]);
        assert_eq!(r.status, EXIT_OK, "{}", r.stdout);
        assert!(r.stdout.ends_with("5 sets, 0 violations (seed 3)\n"));
    }
}
