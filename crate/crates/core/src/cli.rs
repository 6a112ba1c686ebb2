//! The `kforest` command-line front end.
//!
//! Every subcommand builds a JSON payload; `--format text` renders the
//! same payload as `key: value` lines. Exit codes: 0 success / valid /
//! true, 1 invalid / false / counterexample, 2 usage or input error,
//! 3 solver budget exhausted.

use std::fs;
use std::io::{self, Read};
use std::path::Path;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bounds::{lower_bound, mad_threshold, params, upper_bound, ParamMode};
use crate::colorer::{color, ColorError, ColorOptions};
use crate::coloring::{verify, Color, Coloring, ListAssignment};
use crate::config::find_configuration;
use crate::discharging::{apply, check_bound, RuleSet};
use crate::error::Error;
use crate::format::{parse_edge_list, parse_graph6, to_edge_list, to_graph6};
use crate::generate::{generate, FamilySpec};
use crate::graph::Graph;
use crate::mad::{densest_subgraph, densest_subgraph_brute};
use crate::rational;
use crate::solver::{kf_choice_number, kf_choosable, kf_chromatic, kf_list_color, SolveBudget, SolveError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    #[value(alias = "graph6")]
    G6,
    #[value(alias = "edge-list")]
    El,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Cycle,
    Path,
    Star,
    Complete,
    CompleteBipartite,
    Petersen,
    RandomTree,
}

#[derive(Debug, Parser)]
#[command(name = "kforest", version, about = "k-forested coloring toolkit for sparse graphs")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "KFOREST_FORMAT", default_value = "json")]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// Graph file (`.g6` or `.el`), or `-` for stdin.
    #[arg(long = "in", value_name = "PATH")]
    pub input: String,
    /// Override format detection for the graph input.
    #[arg(long, value_enum)]
    pub input_format: Option<GraphFormat>,
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Cap on assignments tried by one backtracking search.
    #[arg(long)]
    pub max_nodes: Option<u64>,
    /// Wall-clock cap in milliseconds.
    #[arg(long)]
    pub timeout_ms: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> SolveBudget {
        let mut b = SolveBudget::default();
        if let Some(n) = self.max_nodes {
            b.max_nodes = n;
        }
        b.max_time = self.timeout_ms.map(Duration::from_millis);
        b
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a coloring is k-forested.
    Verify {
        #[command(flatten)]
        graph: GraphInput,
        /// JSON coloring: `{"colors": [...]}`, a bare array, or `color` output.
        #[arg(long)]
        coloring: String,
        #[arg(short)]
        k: usize,
    },
    /// Exact maximum average degree with a densest-subgraph witness.
    Mad {
        #[command(flatten)]
        graph: GraphInput,
        /// Use subset enumeration instead of max-flow.
        #[arg(long)]
        brute: bool,
    },
    Girth {
        #[command(flatten)]
        graph: GraphInput,
    },
    /// k-forested chromatic number.
    Chromatic {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// k-forested coloring from given lists.
    ListColor {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(short)]
        k: usize,
        /// JSON lists: `{"lists": [[...], ...]}` or a bare array of arrays.
        #[arg(long)]
        lists: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Whether every assignment of q-lists admits a k-forested coloring.
    Choosable {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        q: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// k-forested choice number.
    ChoiceNumber {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// First reducible configuration for part p.
    FindConfig {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(short)]
        p: usize,
        #[arg(short)]
        k: usize,
    },
    /// Constructive list coloring by peeling configurations.
    Color {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        p: usize,
        /// Degree cap M; defaults to max(Δ, k).
        #[arg(short = 'M')]
        max_degree: Option<usize>,
        /// JSON lists; without it, random lists of size q are drawn.
        #[arg(long)]
        lists: Option<String>,
        /// Seed for random lists.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Colors available to random lists; defaults to 2q.
        #[arg(long)]
        palette: Option<usize>,
        /// Write the extension trace as JSON.
        #[arg(long, value_name = "PATH")]
        trace: Option<String>,
        /// Verify the partial coloring after every extension step.
        #[arg(long)]
        check_steps: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Replay the discharging rules for part p.
    Discharge {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(short)]
        p: usize,
        #[arg(short, default_value_t = 4)]
        k: usize,
    },
    /// Parameter arithmetic: Q, q, lower and upper bounds.
    Bounds {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        p: usize,
        #[arg(short = 'M')]
        max_degree: usize,
        /// A mad value (`a/b`) to pick the upper bound from.
        #[arg(long)]
        mad: Option<String>,
        /// Accept k < 4 or M < k.
        #[arg(long)]
        relaxed: bool,
    },
    /// Generate a named graph.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// Order (leaves for a star, first side for complete bipartite).
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Second side of a complete bipartite graph.
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Internal vertices added to every edge.
        #[arg(long, default_value_t = 0)]
        subdivide: usize,
        #[arg(long, value_enum, default_value = "g6")]
        to: GraphFormat,
        /// Write the graph here instead of into the payload.
        #[arg(long, value_name = "PATH")]
        out: Option<String>,
    },
    /// Convert between graph6 and edge lists.
    Convert {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long, value_enum)]
        to: GraphFormat,
        #[arg(long, value_name = "PATH")]
        out: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Verify { .. } => "verify",
            Command::Mad { .. } => "mad",
            Command::Girth { .. } => "girth",
            Command::Chromatic { .. } => "chromatic",
            Command::ListColor { .. } => "list-color",
            Command::Choosable { .. } => "choosable",
            Command::ChoiceNumber { .. } => "choice-number",
            Command::FindConfig { .. } => "find-config",
            Command::Color { .. } => "color",
            Command::Discharge { .. } => "discharge",
            Command::Bounds { .. } => "bounds",
            Command::Gen { .. } => "gen",
            Command::Convert { .. } => "convert",
        }
    }
}

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommandResult {
    pub command: String,
    /// SHA-256 of the graph input bytes, when there is one.
    pub input_digest: Option<String>,
    pub payload: Value,
    pub exit_code: i32,
    /// Diagnostics for the error stream.
    #[serde(skip)]
    pub warnings: Vec<String>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Exhausted(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Exhausted(x) => Failure::Exhausted(json!({ "exhausted": x })),
            SolveError::Input(e) => e.into(),
        }
    }
}

/// Reads files and stdin; stdin may be consumed once.
struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
    digest: Option<String>,
    warnings: Vec<String>,
}

impl Inputs<'_> {
    fn read(&mut self, path: &str) -> Result<Vec<u8>, Failure> {
        if path == "-" {
            if self.stdin_used {
                return Err(Failure::Usage("stdin can be used for one input only".into()));
            }
            self.stdin_used = true;
            let mut buf = Vec::new();
            self.stdin.read_to_end(&mut buf).map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
            Ok(buf)
        } else {
            fs::read(path).map_err(|e| Failure::Usage(format!("reading {path}: {e}")))
        }
    }

    fn read_text(&mut self, path: &str) -> Result<String, Failure> {
        String::from_utf8(self.read(path)?).map_err(|_| Failure::Usage(format!("{path} is not UTF-8")))
    }

    fn graph(&mut self, input: &GraphInput) -> Result<Graph, Failure> {
        let bytes = self.read(&input.input)?;
        self.digest = Some(hex::encode(Sha256::digest(&bytes)));
        let text = String::from_utf8(bytes).map_err(|_| Failure::Usage(format!("{} is not UTF-8", input.input)))?;
        let format = input.input_format.unwrap_or_else(|| detect_format(&input.input, &text));
        match format {
            GraphFormat::G6 => Ok(parse_graph6(&text)?),
            GraphFormat::El => {
                let parsed = parse_edge_list(&text)?;
                if parsed.duplicate_edges > 0 {
                    self.warnings.push(format!("collapsed {} duplicate edges", parsed.duplicate_edges));
                }
                Ok(parsed.graph)
            }
        }
    }

    fn json(&mut self, path: &str) -> Result<Value, Failure> {
        let text = self.read_text(path)?;
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))
    }
}

/// By extension, then by content: a single token on the first data line
/// is graph6.
fn detect_format(path: &str, text: &str) -> GraphFormat {
    match Path::new(path).extension().and_then(|e| e.to_str()) {
        Some("g6") => return GraphFormat::G6,
        Some("el" | "edges" | "txt") => return GraphFormat::El,
        _ => {}
    }
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(line) if line.split_whitespace().count() == 1 => GraphFormat::G6,
        _ => GraphFormat::El,
    }
}

fn coloring_from(value: Value) -> Result<Coloring, Failure> {
    let value = match value {
        Value::Object(mut map) if map.contains_key("coloring") => map.remove("coloring").expect("checked"),
        Value::Array(colors) => json!({ "colors": colors }),
        other => other,
    };
    serde_json::from_value(value).map_err(|e| Failure::Usage(format!("coloring: {e}")))
}

fn lists_from(value: Value) -> Result<ListAssignment, Failure> {
    let value = match value {
        Value::Array(lists) => json!({ "lists": lists }),
        other => other,
    };
    serde_json::from_value(value).map_err(|e| Failure::Usage(format!("lists: {e}")))
}

fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("payload types serialize")
}

fn graph_text(g: &Graph, to: GraphFormat) -> String {
    match to {
        GraphFormat::G6 => to_graph6(g) + "\n",
        GraphFormat::El => to_edge_list(g),
    }
}

fn emit_graph(g: &Graph, to: GraphFormat, out: &Option<String>) -> Result<Value, Failure> {
    let text = graph_text(g, to);
    let format = match to {
        GraphFormat::G6 => "graph6",
        GraphFormat::El => "edge_list",
    };
    let mut payload = json!({ "n": g.n(), "edges": g.edge_count(), "format": format });
    match out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Failure::Usage(format!("writing {path}: {e}")))?;
            payload["path"] = json!(path);
        }
        None => payload["graph"] = json!(text),
    }
    Ok(payload)
}

fn random_lists(n: usize, q: usize, palette: usize, seed: u64) -> ListAssignment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lists = (0..n)
        .map(|_| sample(&mut rng, palette, q).into_iter().map(|c| c as Color + 1).collect())
        .collect();
    ListAssignment::new(lists).expect("sampled lists are valid")
}

fn execute(cmd: &Command, inputs: &mut Inputs<'_>) -> Result<(Value, i32), Failure> {
    let verdict = |ok: bool| if ok { EXIT_OK } else { EXIT_FALSE };
    match cmd {
        Command::Verify { graph, coloring, k } => {
            let g = inputs.graph(graph)?;
            let c = coloring_from(inputs.json(coloring)?)?;
            let report = verify(&g, &c, *k)?;
            Ok((to_json(&report), verdict(report.valid)))
        }
        Command::Mad { graph, brute } => {
            let g = inputs.graph(graph)?;
            let r = if *brute { densest_subgraph_brute(&g)? } else { densest_subgraph(&g)? };
            let mad = &r.density * rational::integer(2);
            Ok((json!({ "mad": rational::to_string(&mad), "witness": r.witness }), EXIT_OK))
        }
        Command::Girth { graph } => {
            let g = inputs.graph(graph)?;
            Ok((json!({ "girth": g.girth() }), EXIT_OK))
        }
        Command::Chromatic { graph, k, budget } => {
            let g = inputs.graph(graph)?;
            let r = kf_chromatic(&g, *k, &budget.budget())?;
            Ok((to_json(&r), EXIT_OK))
        }
        Command::ListColor { graph, k, lists, budget } => {
            let g = inputs.graph(graph)?;
            let lists = lists_from(inputs.json(lists)?)?;
            let c = kf_list_color(&g, &lists, *k, &budget.budget())?;
            let found = c.is_some();
            Ok((json!({ "colorable": found, "coloring": c }), verdict(found)))
        }
        Command::Choosable { graph, k, q, budget } => {
            let g = inputs.graph(graph)?;
            let r = kf_choosable(&g, *k, *q, &budget.budget())?;
            Ok((to_json(&r), verdict(r.choosable)))
        }
        Command::ChoiceNumber { graph, k, budget } => {
            let g = inputs.graph(graph)?;
            let r = kf_choice_number(&g, *k, &budget.budget())?;
            Ok((json!({ "choice_number": r }), EXIT_OK))
        }
        Command::FindConfig { graph, p, k } => {
            let g = inputs.graph(graph)?;
            params(g.max_degree_or_zero().max(*k), *k, *p, ParamMode::Relaxed)?;
            let c = find_configuration(&g, *p, *k);
            let found = c.is_some();
            Ok((json!({ "configuration": c }), verdict(found)))
        }
        Command::Color { graph, k, p, max_degree, lists, seed, palette, trace, check_steps, budget } => {
            let g = inputs.graph(graph)?;
            let m = max_degree.unwrap_or_else(|| g.max_degree_or_zero().max(*k));
            let prm = params(m, *k, *p, ParamMode::Strict)?;
            let lists = match lists {
                Some(path) => lists_from(inputs.json(path)?)?,
                None => {
                    let palette = palette.unwrap_or(2 * prm.q);
                    if palette < prm.q {
                        return Err(Failure::Usage(format!("palette {palette} is smaller than q = {}", prm.q)));
                    }
                    random_lists(g.n(), prm.q, palette, *seed)
                }
            };
            let options = ColorOptions { check_each_step: *check_steps, budget: budget.budget() };
            let (payload, code, trace_value) = match color(&g, &lists, *k, *p, m, &options) {
                Ok(out) => {
                    if let Some(mad) = &out.trace.mad_at_fallback {
                        if mad >= &mad_threshold(*p)? {
                            inputs.warnings.push(format!(
                                "mad {} is not below the threshold for p = {p}",
                                rational::to_string(mad)
                            ));
                        }
                    }
                    let payload = json!({
                        "coloring": out.coloring,
                        "q": prm.q,
                        "steps": out.trace.steps.len(),
                        "fallbacks": out.trace.fallbacks.len(),
                    });
                    (payload, EXIT_OK, to_json(&out.trace))
                }
                Err(ColorError::Input(e)) => return Err(e.into()),
                Err(ColorError::Failure { reason, trace }) => {
                    let code = if reason.contains("budget") { EXIT_EXHAUSTED } else { EXIT_FALSE };
                    (json!({ "coloring": null, "error": reason }), code, to_json(&trace))
                }
                Err(ColorError::Unsound { coloring, trace }) => {
                    (json!({ "coloring": null, "error": "unsound coloring", "produced": coloring }), EXIT_FALSE, to_json(&trace))
                }
            };
            if let Some(path) = trace {
                let text = serde_json::to_string_pretty(&trace_value).expect("trace serializes");
                fs::write(path, text).map_err(|e| Failure::Usage(format!("writing {path}: {e}")))?;
            }
            Ok((payload, code))
        }
        Command::Discharge { graph, p, k } => {
            let g = inputs.graph(graph)?;
            let report = check_bound(&g, *p, *k)?;
            let charges = apply(&g, &RuleSet::for_part(*p)?);
            let consistent = report.consistent;
            Ok((json!({ "report": report, "charges": charges.charges }), verdict(consistent)))
        }
        Command::Bounds { k, p, max_degree, mad, relaxed } => {
            let mode = if *relaxed { ParamMode::Relaxed } else { ParamMode::Strict };
            let prm = params(*max_degree, *k, *p, mode)?;
            let threshold = mad_threshold(*p)?;
            let mut payload = json!({
                "k": prm.k,
                "p": prm.p,
                "M": prm.max_degree,
                "Q": prm.base,
                "q": prm.q,
                "lower_bound": lower_bound(*max_degree, *k),
                "mad_threshold": rational::to_string(&threshold),
            });
            if let Some(text) = mad {
                let value = rational::parse(text)?;
                payload["mad_below_threshold"] = json!(value < threshold);
                payload["upper_bound"] = json!(upper_bound(&value, *max_degree, *k));
            }
            Ok((payload, EXIT_OK))
        }
        Command::Gen { family, n, m, seed, subdivide, to, out } => {
            let base = match family {
                Family::Cycle => FamilySpec::Cycle { n: *n },
                Family::Path => FamilySpec::Path { n: *n },
                Family::Star => FamilySpec::Star { leaves: *n },
                Family::Complete => FamilySpec::Complete { n: *n },
                Family::CompleteBipartite => FamilySpec::CompleteBipartite { a: *n, b: *m },
                Family::Petersen => FamilySpec::Petersen,
                Family::RandomTree => FamilySpec::RandomTree { n: *n, seed: *seed },
            };
            let spec = if *subdivide > 0 { FamilySpec::Subdivision { base: Box::new(base), t: *subdivide } } else { base };
            let g = generate(&spec)?;
            Ok((emit_graph(&g, *to, out)?, EXIT_OK))
        }
        Command::Convert { graph, to, out } => {
            let g = inputs.graph(graph)?;
            Ok((emit_graph(&g, *to, out)?, EXIT_OK))
        }
    }
}

/// Runs a parsed command, reading `-` inputs from `stdin`.
pub fn run(cli: &Cli, stdin: &mut dyn Read) -> CommandResult {
    let mut inputs = Inputs { stdin, stdin_used: false, digest: None, warnings: Vec::new() };
    let (payload, exit_code) = match execute(&cli.command, &mut inputs) {
        Ok(done) => done,
        Err(Failure::Usage(msg)) => (json!({ "error": msg }), EXIT_USAGE),
        Err(Failure::Exhausted(payload)) => (payload, EXIT_EXHAUSTED),
    };
    CommandResult {
        command: cli.command.name().to_string(),
        input_digest: inputs.digest,
        payload,
        exit_code,
        warnings: inputs.warnings,
    }
}

/// Renders a payload for stdout.
pub fn render(payload: &Value, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string(payload).expect("JSON values serialize") + "\n",
        OutputFormat::Text => {
            let mut out = String::new();
            match payload {
                Value::Object(map) => {
                    for (key, value) in map {
                        match value {
                            Value::String(s) if s.contains('\n') => out.push_str(&format!("{key}:\n{s}")),
                            Value::String(s) => out.push_str(&format!("{key}: {s}\n")),
                            other => out.push_str(&format!("{key}: {other}\n")),
                        }
                    }
                }
                other => out.push_str(&format!("{other}\n")),
            }
            out
        }
    }
}

/// Parses `std::env::args`, runs, prints, and returns the exit code.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = run(&cli, &mut io::stdin().lock());
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    if result.exit_code == EXIT_USAGE {
        if let Some(msg) = result.payload.get("error").and_then(Value::as_str) {
            eprintln!("error: {msg}");
        }
        return EXIT_USAGE;
    }
    print!("{}", render(&result.payload, cli.format));
    result.exit_code
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn run_args(args: &[&str], stdin: &str) -> CommandResult {
        let cli = Cli::try_parse_from(std::iter::once("kforest").chain(args.iter().copied())).unwrap();
        run(&cli, &mut Cursor::new(stdin.as_bytes().to_vec()))
    }

    #[test]
    fn mad_of_c5_from_stdin() {
        let r = run_args(&["mad", "--in", "-"], "Dhc\n");
        assert_eq!(r.exit_code, EXIT_OK);
        assert_eq!(r.payload, json!({ "mad": "2/1", "witness": [0, 1, 2, 3, 4] }));
        assert_eq!(r.input_digest.as_deref().map(str::len), Some(64));
        let b = run_args(&["mad", "--in", "-", "--brute"], "Dhc\n");
        assert_eq!(b.payload["mad"], "2/1");
    }

    #[test]
    fn find_config_exit_codes() {
        let r = run_args(&["find-config", "--in", "-", "-p", "3", "-k", "4"], "C~\n");
        assert_eq!(r.exit_code, EXIT_FALSE);
        assert_eq!(r.payload, json!({ "configuration": null }));
        let r = run_args(&["find-config", "--in", "-", "-p", "1", "-k", "4"], "Dhc\n");
        assert_eq!(r.exit_code, EXIT_OK);
        assert_eq!(r.payload["configuration"]["kind"], "C3");
    }

    #[test]
    fn verify_star_witness() {
        let dir = tempfile::tempdir().unwrap();
        let coloring = dir.path().join("c.json");
        fs::write(&coloring, r#"{"colors":[3,1,1,1,2,2,2]}"#).unwrap();
        let el = "0 1\n0 2\n0 3\n0 4\n0 5\n0 6\n";
        let r = run_args(&["verify", "--in", "-", "--input-format", "el", "--coloring", coloring.to_str().unwrap(), "-k", "4"], el);
        assert_eq!(r.exit_code, EXIT_OK);
        assert_eq!(r.payload["valid"], true);
        let r = run_args(&["verify", "--in", "-", "--input-format", "el", "--coloring", coloring.to_str().unwrap(), "-k", "3"], el);
        assert_eq!(r.exit_code, EXIT_FALSE);
    }

    #[test]
    fn input_errors_exit_2() {
        let r = run_args(&["mad", "--in", "-", "--input-format", "g6"], "~\n");
        assert_eq!(r.exit_code, EXIT_USAGE);
        let r = run_args(&["girth", "--in", "/nonexistent/graph.g6"], "");
        assert_eq!(r.exit_code, EXIT_USAGE);
        assert!(Cli::try_parse_from(["kforest", "frobnicate"]).is_err());
    }

    #[test]
    fn budget_exhaustion_exits_3() {
        let r = run_args(&["chromatic", "--in", "-", "-k", "2", "--max-nodes", "3"], "I~~~~~~~w\n");
        assert_eq!(r.exit_code, EXIT_EXHAUSTED);
        assert!(r.payload.get("exhausted").is_some());
    }

    #[test]
    fn color_is_deterministic_and_valid() {
        let a = run_args(&["color", "--in", "-", "-k", "4", "-p", "1", "--seed", "5"], "Dhc\n");
        let b = run_args(&["color", "--in", "-", "-k", "4", "-p", "1", "--seed", "5"], "Dhc\n");
        assert_eq!(a.exit_code, EXIT_OK);
        assert_eq!(render(&a.payload, OutputFormat::Json), render(&b.payload, OutputFormat::Json));
        let c = coloring_from(a.payload.clone()).unwrap();
        let g = parse_graph6("Dhc").unwrap();
        assert!(verify(&g, &c, 4).unwrap().valid);
    }

    #[test]
    fn gen_and_convert_round_trip() {
        let r = run_args(&["gen", "--family", "cycle", "--n", "5"], "");
        assert_eq!(r.payload["graph"], "Dhc\n");
        let r = run_args(&["gen", "--family", "complete", "--n", "4", "--subdivide", "1", "--to", "el"], "");
        assert_eq!(r.payload["n"], 10);
        assert_eq!(r.payload["edges"], 12);
        let el = r.payload["graph"].as_str().unwrap().to_string();
        let back = run_args(&["convert", "--in", "-", "--to", "g6"], &el);
        let g = parse_graph6(back.payload["graph"].as_str().unwrap()).unwrap();
        assert_eq!(to_edge_list(&g), el);
    }

    #[test]
    fn bounds_payload() {
        let r = run_args(&["bounds", "-k", "4", "-p", "1", "-M", "6", "--mad", "7/3"], "");
        assert_eq!(r.payload["Q"], 2);
        assert_eq!(r.payload["q"], 3);
        assert_eq!(r.payload["mad_threshold"], "12/5");
        assert_eq!(r.payload["upper_bound"], 3);
        assert_eq!(r.exit_code, EXIT_OK);
    }

    #[test]
    fn discharge_subdivided_k4() {
        let g = crate::generate::subdivide_edges(&generate(&FamilySpec::Complete { n: 4 }).unwrap(), &[(0, 1)]);
        let r = run_args(&["discharge", "--in", "-", "-p", "1"], &to_graph6(&g));
        assert_eq!(r.exit_code, EXIT_OK);
        assert_eq!(r.payload["report"]["min_charge"], "12/5");
        assert_eq!(r.payload["charges"][4]["final"], "12/5");
    }

    #[test]
    fn text_rendering() {
        let text = render(&json!({ "mad": "2/1", "witness": [0, 1] }), OutputFormat::Text);
        assert_eq!(text, "mad: 2/1\nwitness: [0,1]\n");
    }
}
