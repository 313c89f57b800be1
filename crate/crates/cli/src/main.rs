use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use hypercoef::budget::TIME_BUDGET_ENV;
use hypercoef::catalog::{self, FANO_TABLE};
use hypercoef::coeffs::{self, CoefficientVector};
use hypercoef::enumerate;
use hypercoef::hypergraph::presets;
use hypercoef::poly::expand_phi_rowling;
use hypercoef::simplex;
use hypercoef::{aut_order, canonical_key, Budget, Error, MultiHypergraph, Rational};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "hypercoef", version, about = "Exact codegree coefficients of k-uniform hypergraphs")]
struct Cli {
    /// Emit a JSON document instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    /// Wall-clock budget in seconds for enumeration-heavy commands.
    #[arg(long, global = true, env = TIME_BUDGET_ENV, value_parser = positive_f64)]
    time_budget: Option<f64>,

    /// Maximum number of connected Veblen classes to process.
    #[arg(long, global = true, value_parser = positive_usize)]
    max_classes: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Input {
    /// Hypergraph file in the `k=<int> n=<int>` text format.
    #[arg(long)]
    input: Option<PathBuf>,

    /// Built-in hypergraph: rowling, fano, fano-minus-1, simplex-<k>, single-edge-<k>.
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Codegree coefficients c_0..=c_dmax.
    Coeffs {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 6)]
        dmax: usize,
        /// Compare against published tables and closed formulas where they apply.
        #[arg(long)]
        report: bool,
    },
    /// Associated coefficient of a Veblen hypergraph.
    Assoc {
        #[command(flatten)]
        input: Input,
    },
    /// The simplex constant C_k.
    SimplexCk {
        #[arg(long)]
        k: u32,
    },
    /// Count Veblen classes with d edges.
    EnumVeblen {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        /// Only connected classes.
        #[arg(long)]
        connected: bool,
        /// Also print one representative per class.
        #[arg(long)]
        list: bool,
    },
    /// Occurrence count of a Veblen pattern in a host.
    Count {
        #[command(flatten)]
        input: Input,
        /// Pattern in compact notation, e.g. `(123)^3` or `(123)(145)(246)(356)^2`.
        #[arg(long, conflicts_with = "pattern_file")]
        pattern: Option<String>,
        /// Pattern file in the text format.
        #[arg(long)]
        pattern_file: Option<PathBuf>,
    },
    /// f_v(d) for d <= dmax and the largest d with f_v(d) != 0.
    Threshold {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        v: u32,
        #[arg(long, default_value_t = 6)]
        dmax: usize,
    },
    /// Coefficients read off the factored characteristic polynomial.
    ExpandPoly {
        #[arg(long, default_value = "rowling")]
        preset: String,
        #[arg(long, default_value_t = 15)]
        dmax: u32,
    },
    /// Print a hypergraph in the text format.
    Show {
        #[command(flatten)]
        input: Input,
    },
    /// Quick internal consistency checks.
    Selftest,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("`{s}` is not a positive number of seconds")),
    }
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("`{s}` is not a positive integer")),
    }
}

/// A failed command: the message goes to stderr, partial output to stdout.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => 2,
            Error::CapExceeded { .. } | Error::BudgetExhausted(_) | Error::ClassBudgetExhausted(_) => 3,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<String> for Failure {
    fn from(message: String) -> Self {
        Failure { code: 1, message }
    }
}

type Outcome = Result<(), Failure>;

struct Output {
    json: bool,
    text: String,
    doc: Value,
}

impl Output {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn set(&mut self, key: &str, value: Value) {
        self.doc[key] = value;
    }

    fn flush(&self) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(&self.doc).expect("json"));
        } else {
            print!("{}", self.text);
        }
    }
}

fn s(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn load(input: &Input) -> Result<(String, MultiHypergraph), Failure> {
    if let Some(name) = &input.preset {
        return Ok((name.clone(), presets::by_name(name)?));
    }
    let path = input.input.as_ref().expect("clap enforces one input");
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let h = MultiHypergraph::parse(&text).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })?;
    Ok((path.display().to_string(), h))
}

fn budget(cli: &Cli) -> Budget {
    let mut b = Budget::unlimited();
    if let Some(secs) = cli.time_budget {
        b = b.with_time(Duration::from_secs_f64(secs));
    }
    if let Some(max) = cli.max_classes {
        b = b.with_max_classes(max);
    }
    b
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Output {
        json: cli.json,
        text: String::new(),
        doc: json!({}),
    };
    let result = run(&cli, &mut out);
    if let Err(f) = &result {
        out.set("error", Value::String(f.message.clone()));
    }
    out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli, out: &mut Output) -> Outcome {
    match &cli.command {
        Command::Coeffs { input, dmax, report } => cmd_coeffs(cli, out, input, *dmax, *report),
        Command::Assoc { input } => cmd_assoc(out, input),
        Command::SimplexCk { k } => cmd_simplex(out, *k),
        Command::EnumVeblen { k, d, connected, list } => {
            cmd_enum(cli, out, *k, *d, *connected, *list)
        }
        Command::Count {
            input,
            pattern,
            pattern_file,
        } => cmd_count(out, input, pattern.as_deref(), pattern_file.as_ref()),
        Command::Threshold { input, v, dmax } => cmd_threshold(cli, out, input, *v, *dmax),
        Command::ExpandPoly { preset, dmax } => cmd_expand(out, preset, *dmax),
        Command::Show { input } => cmd_show(out, input),
        Command::Selftest => cmd_selftest(out),
    }
}

fn cmd_coeffs(cli: &Cli, out: &mut Output, input: &Input, dmax: usize, report: bool) -> Outcome {
    let (name, host) = load(input)?;
    let vec = coeffs::codegree_coefficients_with(&host, dmax, &budget(cli))?;
    for d in 0..=vec.valid_through {
        out.line(format!("c_{d} = {}", vec.entries[d]));
    }
    out.set("host", json!(name));
    out.set("k", json!(host.k()));
    out.set("n", json!(host.n()));
    out.set("dmax", json!(dmax));
    out.set("valid_through", json!(vec.valid_through));
    out.set("coefficients", Value::Array(vec.entries.iter().map(s).collect()));
    out.set("connected", Value::Array(vec.connected.iter().map(s).collect()));
    if report {
        let lines = coeffs_report(&host, &vec)?;
        for l in &lines {
            out.line(l);
        }
        out.set("report", json!(lines));
    }
    match vec.stopped {
        Some(e) => Err(Failure::from(e)),
        None => Ok(()),
    }
}

fn tag(agrees: bool) -> &'static str {
    if agrees {
        "agree"
    } else {
        "DISCREPANCY"
    }
}

fn coeffs_report(host: &MultiHypergraph, vec: &CoefficientVector) -> Result<Vec<String>, Failure> {
    let mut lines = Vec::new();
    let key = canonical_key(host)?;
    for (column, printed) in FANO_TABLE.iter() {
        let reference = catalog::fano_family_host(column).expect("known column");
        if canonical_key(&reference)? != key {
            continue;
        }
        for (d, &p) in printed.iter().enumerate().take(vec.valid_through + 1) {
            let computed = &vec.entries[d];
            let agrees = *computed == Rational::from_integer(p.into());
            lines.push(format!("{} {column} c_{d}: published {p}, computed {computed}", tag(agrees)));
        }
    }
    if host.k() == 3 && host.is_simple() && vec.valid_through >= 12 {
        for check in catalog::paper_formula_report_3graphs(host)? {
            let scope = if check.complete { "" } else { " (partial class list)" };
            lines.push(format!(
                "{} g_{} formula{scope}: printed constants {}, recomputed constants {}, pipeline {}",
                tag(check.agrees()),
                check.d,
                check.printed_value,
                check.computed_value,
                check.pipeline_value
            ));
        }
    }
    Ok(lines)
}

fn cmd_assoc(out: &mut Output, input: &Input) -> Outcome {
    let (name, h) = load(input)?;
    if !h.is_veblen() {
        return Err(Error::NotVeblen.into());
    }
    let c = hypercoef::associated_coefficient(&h)?;
    let ratio = Rational::new(aut_order(&h.flatten())?, aut_order(&h)?);
    out.line(format!("C = {c}"));
    out.line(format!("components = {}", h.component_count()));
    out.line(format!("aut ratio = {ratio}"));
    out.set("graph", json!(name));
    out.set("c", s(&c));
    out.set("components", json!(h.component_count()));
    out.set("aut_ratio", s(&ratio));
    Ok(())
}

fn cmd_simplex(out: &mut Output, k: u32) -> Outcome {
    let c = simplex::simplex_ck(k)?;
    let digits = c.to_string().trim_start_matches('-').len();
    out.line(c.to_string());
    out.line(format!("digits = {digits}"));
    out.set("k", json!(k));
    out.set("c", json!(c.to_string()));
    out.set("digits", json!(digits));
    Ok(())
}

fn cmd_enum(cli: &Cli, out: &mut Output, k: usize, d: usize, connected: bool, list: bool) -> Outcome {
    let b = budget(cli);
    out.set("k", json!(k));
    out.set("d", json!(d));
    out.set("connected", json!(connected));
    if !list && !connected {
        let count = enumerate::all_veblen_class_counts(k, d, &b)?;
        out.line(count.to_string());
        out.set("count", json!(count.to_string()));
        return Ok(());
    }
    let classes = if connected {
        enumerate::connected_veblen_classes(k, d, &b)?
    } else {
        enumerate::all_veblen_classes(k, d, &b)?
    };
    out.line(classes.len().to_string());
    out.set("count", json!(classes.len().to_string()));
    if list {
        let mut reps = Vec::new();
        for c in &classes {
            let text = c.representative.to_text();
            out.line("");
            out.text.push_str(&text);
            reps.push(Value::String(text));
        }
        out.set("representatives", Value::Array(reps));
    }
    Ok(())
}

fn cmd_count(out: &mut Output, input: &Input, pattern: Option<&str>, file: Option<&PathBuf>) -> Outcome {
    let (name, host) = load(input)?;
    let pattern = match (pattern, file) {
        (Some(p), _) => MultiHypergraph::parse_compact(host.k(), p)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            MultiHypergraph::parse(&text).map_err(|e| Failure {
                code: 2,
                message: format!("{}: {e}", path.display()),
            })?
        }
        (None, None) => return Err("count needs --pattern or --pattern-file".to_string().into()),
    };
    let occurrences = coeffs::occurrence_count(&host, &pattern)?;
    out.line(format!("occurrences = {occurrences}"));
    out.set("host", json!(name));
    out.set("pattern", json!(pattern.to_compact()));
    out.set("occurrences", s(&occurrences));
    Ok(())
}

fn cmd_threshold(cli: &Cli, out: &mut Output, input: &Input, v: u32, dmax: usize) -> Outcome {
    let (name, host) = load(input)?;
    let report = coeffs::threshold_search_with(&host, v, dmax, &budget(cli))?;
    for (d, f) in report.values.iter().enumerate() {
        out.line(format!("f_{d} = {f}"));
    }
    match report.threshold {
        Some(t) => out.line(format!("threshold = {t}")),
        None => out.line("threshold = none"),
    }
    out.set("host", json!(name));
    out.set("v", json!(v));
    out.set("values", Value::Array(report.values.iter().map(s).collect()));
    out.set("threshold", json!(report.threshold));
    Ok(())
}

fn cmd_expand(out: &mut Output, preset: &str, dmax: u32) -> Outcome {
    if !matches!(preset, "rowling" | "fano-minus-2") {
        return Err(format!("no factored polynomial is known for preset `{preset}`").into());
    }
    let phi = expand_phi_rowling(Some(dmax));
    let mut values = Vec::new();
    for d in 0..=dmax {
        let c = phi.codegree_coefficient(d)?;
        out.line(format!("c_{d} = {c}"));
        values.push(Value::String(c.to_string()));
    }
    out.set("preset", json!(preset));
    out.set("degree", json!(phi.degree()));
    out.set("coefficients", Value::Array(values));
    Ok(())
}

fn cmd_show(out: &mut Output, input: &Input) -> Outcome {
    let (name, h) = load(input)?;
    out.text.push_str(&h.to_text());
    out.set("name", json!(name));
    out.set("k", json!(h.k()));
    out.set("n", json!(h.n()));
    out.set("text", json!(h.to_text()));
    Ok(())
}

fn cmd_selftest(out: &mut Output) -> Outcome {
    let mut results = Vec::new();
    let mut failed = 0;
    let mut check = |out: &mut Output, name: &str, ok: bool| {
        out.line(format!("{} {name}", if ok { "ok" } else { "FAIL" }));
        results.push(json!({ "check": name, "ok": ok }));
        if !ok {
            failed += 1;
        }
    };

    let c7 = simplex::simplex_ck(7)?;
    check(out, "simplex C_7 = 220611384", c7 == 220611384.into());

    let none = Budget::unlimited();
    let counts: Vec<usize> = (1..=6)
        .map(|d| enumerate::connected_veblen_classes(3, d, &none).map(|c| c.len()))
        .collect::<Result<_, _>>()?;
    check(out, "connected 3-graph Veblen classes d<=6", counts == [0, 0, 1, 1, 2, 11]);

    let rowling = presets::rowling();
    let vec = coeffs::codegree_coefficients(&rowling, 12)?;
    let phi = expand_phi_rowling(Some(12));
    let agree = (0..=12).all(|d| {
        phi.codegree_coefficient(d as u32)
            .map(|c| Rational::from_integer(c) == vec.entries[d])
            .unwrap_or(false)
    });
    check(out, "rowling c_0..c_12 match the factored polynomial", agree);

    let c2 = presets::cycle(2)?;
    let tri = presets::cycle(3)?;
    let cycles = hypercoef::associated_coefficient(&c2)? == Rational::from_integer(1.into())
        && hypercoef::associated_coefficient(&tri)? == Rational::from_integer(2.into());
    check(out, "2-cycle and triangle coefficients", cycles);

    let mut convolution = true;
    for d in 0..=6 {
        convolution &= coeffs::codegree_by_class_sum(&rowling, d)? == vec.entries[d];
    }
    check(out, "class sum equals convolution on rowling d<=6", convolution);

    for line in catalog::figure_one_lines()? {
        if line.starts_with("DISCREPANCY") {
            out.line(&line);
        }
    }

    out.set("checks", Value::Array(results));
    out.set("failed", json!(failed));
    if failed > 0 {
        return Err(format!("{failed} selftest check(s) failed").into());
    }
    out.line("selftest passed");
    Ok(())
}
