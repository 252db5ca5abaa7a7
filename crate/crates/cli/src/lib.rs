//! The `poim` command line: CONSTRUCT and SELECT evaluation, match
//! listing, isomorphism checks and POIM traces.
//!
//! [`run`] takes the argument list and returns the exit code with the text
//! destined for standard output and standard error, so the binary is a thin
//! wrapper and tests can drive commands in-process. Nothing is written to
//! standard output when a command fails.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use poim_core::syntax::{
    parse_data, parse_query_with, serialize_graph, serialize_multirelation, serialize_raw,
    ParseError, ParseErrorKind, Query,
};
use poim_core::{
    coproduct, enumerate_matches, eval_construct, eval_select, filter_well_formed, iso_check, poim,
    EvalMode, FixedSet, FreshNames, Graph, Morphism, Term,
};

/// Overrides the prefix of generated blank and variable names.
pub const PREFIX_ENV: &str = "POIM_BLANK_PREFIX";

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_NOT_ISOMORPHIC: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_UNBOUND_COLUMN: i32 = 3;
pub const EXIT_MATCH_COUNT: i32 = 4;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "poim",
    version,
    about = "Evaluate basic CONSTRUCT and SELECT queries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Direct,
    High,
    Low,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Fix {
    #[value(name = "I")]
    I,
    #[value(name = "IB")]
    Ib,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Nt,
    Csv,
    JsonLines,
}

#[derive(Debug, clap::Args)]
struct Inputs {
    /// Data file (Turtle subset); repeat to merge several files.
    #[arg(long = "data", required = true)]
    data: Vec<PathBuf>,
    /// Query file.
    #[arg(long)]
    query: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a CONSTRUCT query and print the resulting graph.
    Construct {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_enum, default_value = "direct")]
        mode: Mode,
        /// Keep only RDF triples in the result.
        #[arg(long)]
        strict_rdf: bool,
        #[arg(long, value_enum, default_value = "nt")]
        format: Format,
    },
    /// Run a SELECT query and print the result table.
    Select {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// List the matches of the query pattern, one JSON object per line.
    Matches {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Check whether two data files are isomorphic.
    Iso {
        left: PathBuf,
        right: PathBuf,
        /// Attributes that must be preserved: identifiers only, or also blanks.
        #[arg(long, value_enum, default_value = "I")]
        fix: Fix,
    },
    /// Show every graph and map of the POIM step for a single-match query.
    PoimTrace {
        #[command(flatten)]
        inputs: Inputs,
    },
}

/// The outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Output {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

struct Failure(Output);

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure(Output::fail(code, message))
    }

    fn parse(path: &Path, e: ParseError) -> Self {
        let code = match e.kind {
            ParseErrorKind::UnboundColumn(_) => EXIT_UNBOUND_COLUMN,
            _ => EXIT_PARSE,
        };
        Failure::new(
            code,
            format!("{}:{}:{}: {}", path.display(), e.line, e.column, e.kind),
        )
    }
}

type Outcome = Result<String, Failure>;

/// Runs the command line given by `args` (including the program name),
/// reading the generated-name prefix from the environment.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let prefix = std::env::var(PREFIX_ENV).ok();
    run_with_prefix(args, prefix.as_deref())
}

/// Like [`run`] with an explicit generated-name prefix.
pub fn run_with_prefix<I, T>(args: I, prefix: Option<&str>) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output::fail(EXIT_USAGE, text)
            } else {
                Output::ok(text)
            };
        }
    };
    let mut fresh = match prefix {
        Some(p) if valid_prefix(p) => FreshNames::with_prefix(p),
        Some(p) => {
            return Output::fail(
                EXIT_USAGE,
                format!("{PREFIX_ENV}: `{p}` is not a valid name prefix"),
            )
        }
        None => FreshNames::default(),
    };
    let outcome = match cli.command {
        Command::Construct {
            inputs,
            mode,
            strict_rdf,
            format,
        } => construct(&inputs, mode, strict_rdf, format, &mut fresh),
        Command::Select { inputs, format } => select(&inputs, format, &mut fresh),
        Command::Matches { inputs } => matches(&inputs, &mut fresh),
        Command::Iso { left, right, fix } => iso(&left, &right, fix),
        Command::PoimTrace { inputs } => poim_trace(&inputs, &mut fresh),
    };
    match outcome {
        Ok(stdout) => Output::ok(stdout),
        Err(Failure(out)) => out,
    }
}

fn valid_prefix(p: &str) -> bool {
    !p.is_empty()
        && p.chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '-')
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    let text = read(path)?;
    parse_data(&text)
        .map(|doc| doc.graph)
        .map_err(|e| Failure::parse(path, e))
}

/// Each file is its own blank scope, so files are merged by a coproduct
/// fixing identifiers.
fn load_data(paths: &[PathBuf], fresh: &mut FreshNames) -> Result<Graph, Failure> {
    let parts = paths
        .iter()
        .map(|p| load_graph(p))
        .collect::<Result<Vec<_>, _>>()?;
    if parts.len() == 1 {
        return Ok(parts.into_iter().next().expect("one part"));
    }
    Ok(coproduct(&parts, &FixedSet::I, fresh).object)
}

fn load_query(path: &Path, fresh: &mut FreshNames) -> Result<Query, Failure> {
    let text = read(path)?;
    parse_query_with(&text, fresh)
        .map(|doc| doc.query)
        .map_err(|e| Failure::parse(path, e))
}

fn load(inputs: &Inputs, fresh: &mut FreshNames) -> Result<(Graph, Query), Failure> {
    let data = load_data(&inputs.data, fresh)?;
    let query = load_query(&inputs.query, fresh)?;
    Ok((data, query))
}

fn expect_construct(query: Query, path: &Path) -> Result<poim_core::ConstructQuery, Failure> {
    match query {
        Query::Construct(q) => Ok(q),
        Query::Select(_) => Err(Failure::new(
            EXIT_PARSE,
            format!("{}: expected a CONSTRUCT query", path.display()),
        )),
    }
}

fn pattern_of(query: &Query) -> &Graph {
    match query {
        Query::Construct(q) => q.lhs(),
        Query::Select(q) => q.lhs(),
    }
}

fn json_str(s: &str) -> String {
    serde_json::Value::String(s.to_string()).to_string()
}

/// A JSON object with keys in the given order.
fn json_object(entries: impl IntoIterator<Item = (String, String)>) -> String {
    let fields: Vec<String> = entries
        .into_iter()
        .map(|(k, v)| format!("{}:{}", json_str(&k), json_str(&v)))
        .collect();
    format!("{{{}}}", fields.join(","))
}

fn unsupported(command: &str, format: Format) -> Failure {
    let name = format
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    Failure::new(
        EXIT_USAGE,
        format!("{command} cannot write format `{name}`"),
    )
}

fn construct(
    inputs: &Inputs,
    mode: Mode,
    strict_rdf: bool,
    format: Format,
    fresh: &mut FreshNames,
) -> Outcome {
    let (data, query) = load(inputs, fresh)?;
    let query = expect_construct(query, &inputs.query)?;
    let mode = match mode {
        Mode::Direct => EvalMode::Direct,
        Mode::High => EvalMode::High,
        Mode::Low => EvalMode::Low,
    };
    let mut h = eval_construct(&query, &data, mode, fresh);
    if strict_rdf {
        h = filter_well_formed(&h);
    }
    match format {
        Format::Nt => Ok(serialize_graph(&h)),
        Format::JsonLines => {
            let text = serialize_graph(&h);
            let relabelled = parse_data(&text)
                .expect("serialized graphs parse back")
                .graph;
            let mut out = String::new();
            for t in &relabelled {
                let line = json_object([
                    ("subject".to_string(), t.subject.to_string()),
                    ("predicate".to_string(), t.predicate.to_string()),
                    ("object".to_string(), t.object.to_string()),
                ]);
                let _ = writeln!(out, "{line}");
            }
            Ok(out)
        }
        Format::Csv => Err(unsupported("construct", format)),
    }
}

fn select(inputs: &Inputs, format: Format, fresh: &mut FreshNames) -> Outcome {
    let (data, query) = load(inputs, fresh)?;
    let Query::Select(query) = query else {
        return Err(Failure::new(
            EXIT_PARSE,
            format!("{}: expected a SELECT query", inputs.query.display()),
        ));
    };
    let table =
        eval_select(&query, &data, fresh).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    match format {
        Format::Csv => Ok(serialize_multirelation(&table)),
        Format::JsonLines => {
            let mut out = String::new();
            for row in table.rows() {
                let line = json_object(
                    table
                        .columns()
                        .iter()
                        .cloned()
                        .zip(row.iter().map(Term::to_string)),
                );
                let _ = writeln!(out, "{line}");
            }
            Ok(out)
        }
        Format::Nt => Err(unsupported("select", format)),
    }
}

fn matches(inputs: &Inputs, fresh: &mut FreshNames) -> Outcome {
    let (data, query) = load(inputs, fresh)?;
    let mut out = String::new();
    for m in enumerate_matches(pattern_of(&query), &data) {
        let line = json_object(m.assignment().map(|(k, v)| (k.to_string(), v.to_string())));
        let _ = writeln!(out, "{line}");
    }
    Ok(out)
}

fn iso(left: &Path, right: &Path, fix: Fix) -> Outcome {
    let g1 = load_graph(left)?;
    let g2 = load_graph(right)?;
    let fixed = match fix {
        Fix::I => FixedSet::I,
        Fix::Ib => FixedSet::IB,
    };
    match iso_check(&g1, &g2, &fixed) {
        Some(w) => Ok(map_table(&w, |x| !fixed.contains(x))),
        None => Err(Failure::new(
            EXIT_NOT_ISOMORPHIC,
            format!(
                "{} and {} are not isomorphic",
                left.display(),
                right.display()
            ),
        )),
    }
}

/// One `x -> y` line per attribute selected by `keep`, in canonical order.
fn map_table(m: &Morphism, keep: impl Fn(&Term) -> bool) -> String {
    let mut out = String::new();
    for (x, y) in m.map() {
        if keep(x) {
            let _ = writeln!(out, "{x} -> {y}");
        }
    }
    out
}

fn poim_trace(inputs: &Inputs, fresh: &mut FreshNames) -> Outcome {
    let (data, query) = load(inputs, fresh)?;
    let query = expect_construct(query, &inputs.query)?;
    let found = enumerate_matches(query.lhs(), &data);
    if found.len() != 1 {
        return Err(Failure::new(
            EXIT_MATCH_COUNT,
            format!("poim-trace needs exactly one match, found {}", found.len()),
        ));
    }
    let trace = poim(query.rule(), &found[0], fresh)
        .map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    let not_identifier = |x: &Term| !x.is_identifier();
    let mut out = String::new();
    out.push_str("L --l--> K <--r-- R\n");
    out.push_str("|m       |n       |p\n");
    out.push_str("G --g--> D <--h-- H\n");
    let sections: [(&str, String); 10] = [
        ("L", serialize_raw(trace.working_rule.left())),
        ("K", serialize_raw(trace.working_rule.middle())),
        ("R", serialize_raw(trace.working_rule.right())),
        ("G", serialize_raw(&data)),
        ("D", serialize_raw(&trace.pushout_graph)),
        ("H", serialize_raw(&trace.result_graph)),
        (
            "m : L -> G",
            map_table(trace.input_match.morphism(), not_identifier),
        ),
        (
            "n : K -> D",
            map_table(&trace.pushout_match, not_identifier),
        ),
        ("p : R -> H", map_table(&trace.result_match, not_identifier)),
        ("H (canonical)", serialize_graph(&trace.result_graph)),
    ];
    for (title, body) in sections {
        let _ = write!(out, "\n# {title}\n{body}");
    }
    Ok(out)
}
