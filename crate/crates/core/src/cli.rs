//! Command-line front end.
//!
//! [`run`] takes the argument vector and a standard-input reader and returns
//! what to print and the exit code, so the whole interface is testable
//! in-process. Exit codes: 0 when a computation completed (including
//! negative or inconclusive answers), 2 for usage and I/O errors, 3 for
//! unparsable input, 4 when the input violates a precondition.

use std::io::Read;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::chord::{interlacement, is_d_diagram, realize, RealizeOptions, DEFAULT_REALIZE_BOUND};
use crate::correspondence::{bits_to_string, chi, parse_bits, psi_with_completion, roundtrip_check, seed_diagonal};
use crate::error::Error;
use crate::format::{directive, parse_document, write_chord, write_labeled, write_looped, Document};
use crate::graph::Graph;
use crate::invariants::{component_count, is_graph_knot, writhe};
use crate::moves::{apply_graph_move, apply_loop_move, list_graph_moves, list_loop_moves, Family, Move};
use crate::search::{prove_equivalent, MoveSystem, Outcome, SearchBounds};
use crate::selftest::run_selftest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "graphlink", version, about = "Graph-links, looped interlacement graphs and chord diagrams")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Components, knot test and writhe numbers of a graph.
    Info {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Looped graph of a graph-knot.
    Chi {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Graph-knot of a looped graph.
    Psi {
        /// Diagonal to try first, as a bit string, or `input` to read the
        /// `# seed-diagonal` comment written by `chi`.
        #[arg(long)]
        seed_diagonal: Option<String>,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Checks that chi and psi invert each other on a graph-knot.
    Roundtrip {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Lists or applies moves.
    Moves {
        #[command(subcommand)]
        action: MovesAction,
    },
    /// Searches for a chord diagram realizing a graph.
    Realize {
        #[arg(long, default_value_t = DEFAULT_REALIZE_BOUND)]
        max_vertices: usize,
        /// Time budget in seconds.
        #[arg(long)]
        time_budget: Option<f64>,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Interlacement graph of a chord diagram.
    Interlace {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Whether a chord diagram is a d-diagram.
    Ddiagram {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Bounded search for a move sequence between two graphs.
    Equiv {
        /// Comma-separated move families (default: all for the graph kind).
        #[arg(long, value_delimiter = ',')]
        families: Vec<Family>,
        #[arg(long, default_value_t = 8)]
        max_depth: usize,
        #[arg(long, default_value_t = 100_000)]
        max_states: usize,
        #[arg(long)]
        max_vertices: Option<usize>,
        first: String,
        second: String,
    },
    /// Runs the property checks at reduced scale.
    Selftest,
}

#[derive(Debug, Subcommand)]
pub enum MovesAction {
    /// Applicable removals and in-place moves.
    List {
        #[arg(long, value_delimiter = ',')]
        families: Vec<Family>,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Applies the given moves in order.
    Apply {
        /// A move descriptor such as `Og4 a b`; may be repeated.
        #[arg(long = "move", required = true)]
        moves: Vec<String>,
        #[arg(default_value = "-")]
        input: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

enum Failure {
    Usage(String),
    Parse(String),
    Precondition(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Precondition(e.to_string())
    }
}

/// What a command produced: a structured result, optionally a document that
/// the text format prints verbatim.
struct Report {
    input: Value,
    result: Value,
    stats: Value,
    text: Option<String>,
    code: i32,
}

impl Report {
    fn new(input: Value, result: Value) -> Self {
        Self { input, result, stats: json!({}), text: None, code: 0 }
    }
}

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    stdin_text: Option<String>,
}

impl Ctx<'_> {
    fn read(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            if self.stdin_text.is_none() {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s).map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
                self.stdin_text = Some(s);
            }
            Ok(self.stdin_text.clone().unwrap_or_default())
        } else {
            std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("reading {path}: {e}")))
        }
    }

    fn load(&mut self, path: &str) -> Result<(String, Document), Failure> {
        let text = self.read(path)?;
        let doc = parse_document(&text).map_err(|e| Failure::Parse(format!("{path}: {e}")))?;
        Ok((text, doc))
    }
}

fn input_info(path: &str, doc: &Document) -> Value {
    json!({ "path": path, "kind": doc.kind() })
}

fn wrong_kind(doc: &Document, wanted: &str) -> Failure {
    Failure::Precondition(format!("expected a {wanted}, got a {}", doc.kind()))
}

pub fn run(args: &[String], stdin: &mut dyn Read) -> Output {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Output { stdout: rendered, stderr: String::new(), code: 0 }
                }
                _ => Output { stdout: String::new(), stderr: rendered, code: 2 },
            };
        }
    };
    let mut ctx = Ctx { stdin, stdin_text: None };
    let name = command_name(&cli.command);
    match execute(&cli, &mut ctx) {
        Ok(report) => {
            let stdout = match cli.format {
                OutputFormat::Json => {
                    let doc = json!({
                        "command": name,
                        "input": report.input,
                        "result": report.result,
                        "stats": report.stats,
                    });
                    serde_json::to_string_pretty(&doc).expect("JSON values serialize") + "\n"
                }
                OutputFormat::Text => report.text.unwrap_or_else(|| render_text(&report.result)),
            };
            Output { stdout, stderr: String::new(), code: report.code }
        }
        Err(f) => {
            let (code, kind, msg) = match f {
                Failure::Usage(m) => (2, "usage error", m),
                Failure::Parse(m) => (3, "parse error", m),
                Failure::Precondition(m) => (4, "error", m),
            };
            Output { stdout: String::new(), stderr: format!("graphlink: {kind}: {msg}\n"), code }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Info { .. } => "info",
        Command::Chi { .. } => "chi",
        Command::Psi { .. } => "psi",
        Command::Roundtrip { .. } => "roundtrip",
        Command::Moves { action: MovesAction::List { .. } } => "moves list",
        Command::Moves { action: MovesAction::Apply { .. } } => "moves apply",
        Command::Realize { .. } => "realize",
        Command::Interlace { .. } => "interlace",
        Command::Ddiagram { .. } => "ddiagram",
        Command::Equiv { .. } => "equiv",
        Command::Selftest => "selftest",
    }
}

/// `key: value` lines, arrays space-separated.
fn render_text(v: &Value) -> String {
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(" "),
            other => other.to_string(),
        }
    }
    match v {
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k}: {}\n", scalar(v))).collect(),
        other => format!("{}\n", scalar(other)),
    }
}

fn execute(cli: &Cli, ctx: &mut Ctx) -> Result<Report, Failure> {
    match &cli.command {
        Command::Info { input } => {
            let (_, doc) = ctx.load(input)?;
            Ok(Report::new(input_info(input, &doc), info(&doc)))
        }
        Command::Chi { input } => {
            let (_, doc) = ctx.load(input)?;
            let Document::Labeled(g) = &doc else { return Err(wrong_kind(&doc, "labeled graph")) };
            let l = chi(g)?;
            let seed = bits_to_string(&seed_diagonal(g)?);
            let graph = write_looped(&l);
            let mut r = Report::new(input_info(input, &doc), json!({ "graph": graph, "seed_diagonal": seed }));
            r.text = Some(format!("# seed-diagonal {seed}\n{graph}"));
            Ok(r)
        }
        Command::Psi { seed_diagonal, input } => {
            let (text, doc) = ctx.load(input)?;
            let Document::Looped(l) = &doc else { return Err(wrong_kind(&doc, "looped graph")) };
            let preferred = match seed_diagonal.as_deref() {
                None => None,
                Some("input") => {
                    let bits = directive(&text, "seed-diagonal")
                        .ok_or_else(|| Failure::Usage("input has no `# seed-diagonal` comment".into()))?;
                    Some(parse_bits(bits).ok_or_else(|| Failure::Parse(format!("bad seed diagonal `{bits}`")))?)
                }
                Some(bits) => Some(parse_bits(bits).ok_or_else(|| Failure::Usage(format!("bad seed diagonal `{bits}`")))?),
            };
            if let Some(p) = &preferred {
                if p.len() != l.len() {
                    return Err(Failure::Usage(format!("seed diagonal has {} bits for {} vertices", p.len(), l.len())));
                }
            }
            let (g, completion) = psi_with_completion(l, preferred.as_deref())?;
            let graph = write_labeled(&g);
            let used_seed = preferred.as_ref().is_some_and(|p| *p == completion.diagonal);
            let result = json!({
                "graph": graph,
                "diagonal": bits_to_string(&completion.diagonal),
                "seed_used": used_seed,
            });
            let mut r = Report::new(input_info(input, &doc), result);
            r.text = Some(graph);
            Ok(r)
        }
        Command::Roundtrip { input } => {
            let (_, doc) = ctx.load(input)?;
            let Document::Labeled(g) = &doc else { return Err(wrong_kind(&doc, "labeled graph")) };
            let report = roundtrip_check(g)?;
            let result = serde_json::to_value(&report).expect("report serializes");
            Ok(Report::new(input_info(input, &doc), result))
        }
        Command::Moves { action: MovesAction::List { families, input } } => {
            let (_, doc) = ctx.load(input)?;
            let listed: Vec<Move> = match &doc {
                Document::Labeled(g) => list_graph_moves(g, &pick(families, &Family::GRAPH)),
                Document::Looped(l) => list_loop_moves(l, &pick(families, &Family::LOOP)),
                Document::Chord(_) => return Err(wrong_kind(&doc, "graph")),
            };
            let lines: Vec<String> = listed.iter().map(Move::to_string).collect();
            let mut r = Report::new(input_info(input, &doc), json!({ "moves": lines }));
            r.text = Some(lines.iter().map(|l| format!("{l}\n")).collect());
            Ok(r)
        }
        Command::Moves { action: MovesAction::Apply { moves, input } } => {
            let (_, doc) = ctx.load(input)?;
            let parsed: Vec<Move> = moves
                .iter()
                .map(|m| m.parse::<Move>().map_err(|e| Failure::Parse(format!("move `{m}`: {e}"))))
                .collect::<Result<_, _>>()?;
            let graph = match &doc {
                Document::Labeled(g) => {
                    let mut cur = g.clone();
                    for m in &parsed {
                        cur = apply_graph_move(&cur, m)?;
                    }
                    write_labeled(&cur)
                }
                Document::Looped(l) => {
                    let mut cur = l.clone();
                    for m in &parsed {
                        cur = apply_loop_move(&cur, m)?;
                    }
                    write_looped(&cur)
                }
                Document::Chord(_) => return Err(wrong_kind(&doc, "graph")),
            };
            let mut r = Report::new(input_info(input, &doc), json!({ "graph": graph, "applied": moves.len() }));
            r.text = Some(graph);
            Ok(r)
        }
        Command::Realize { max_vertices, time_budget, input } => {
            let (_, doc) = ctx.load(input)?;
            let budget = match time_budget {
                Some(s) if !s.is_finite() || *s < 0.0 => return Err(Failure::Usage(format!("bad time budget {s}"))),
                Some(s) => Some(Duration::from_secs_f64(*s)),
                None => None,
            };
            let opts = RealizeOptions { max_vertices: *max_vertices, time_budget: budget };
            let outcome = match &doc {
                Document::Labeled(g) => realize(g, opts),
                Document::Looped(l) => realize(l, opts),
                Document::Chord(_) => return Err(wrong_kind(&doc, "graph")),
            };
            let mut r = Report::new(input_info(input, &doc), Value::Null);
            match outcome {
                Ok(real) => {
                    r.stats = json!({ "nodes": real.nodes });
                    r.result = match &real.diagram {
                        Some(d) => json!({ "realizable": true, "exhaustive": true, "diagram": write_chord(d) }),
                        None => json!({ "realizable": false, "exhaustive": true }),
                    };
                }
                Err(Error::BudgetExceeded { nodes }) => {
                    r.stats = json!({ "nodes": nodes });
                    r.result = json!({ "realizable": Value::Null, "exhaustive": false, "budget_exceeded": true });
                }
                Err(e) => return Err(e.into()),
            }
            Ok(r)
        }
        Command::Interlace { input } => {
            let (_, doc) = ctx.load(input)?;
            let Document::Chord(d) = &doc else { return Err(wrong_kind(&doc, "chord diagram")) };
            let graph = write_labeled(&interlacement(d));
            let mut r = Report::new(input_info(input, &doc), json!({ "graph": graph }));
            r.text = Some(graph);
            Ok(r)
        }
        Command::Ddiagram { input } => {
            let (_, doc) = ctx.load(input)?;
            let Document::Chord(d) = &doc else { return Err(wrong_kind(&doc, "chord diagram")) };
            Ok(Report::new(input_info(input, &doc), json!({ "d_diagram": is_d_diagram(d) })))
        }
        Command::Equiv { families, max_depth, max_states, max_vertices, first, second } => {
            let (_, d1) = ctx.load(first)?;
            let (_, d2) = ctx.load(second)?;
            let bounds = SearchBounds { max_depth: *max_depth, max_states: *max_states, max_vertices: *max_vertices };
            let input = json!([input_info(first, &d1), input_info(second, &d2)]);
            let result = match (&d1, &d2) {
                (Document::Labeled(a), Document::Labeled(b)) => {
                    equiv(a, b, &pick(families, &Family::GRAPH), &Family::GRAPH, bounds)?
                }
                (Document::Looped(a), Document::Looped(b)) => equiv(a, b, &pick(families, &Family::LOOP), &Family::LOOP, bounds)?,
                _ => return Err(Failure::Precondition("equiv needs two labeled or two looped graphs".into())),
            };
            let mut r = Report::new(input, result.0);
            r.stats = result.1;
            Ok(r)
        }
        Command::Selftest => {
            let report = run_selftest(cli.seed);
            let mut r = Report::new(json!({ "seed": cli.seed }), serde_json::to_value(&report).expect("serializes"));
            r.text = Some(
                report
                    .checks
                    .iter()
                    .map(|c| format!("{} {} ({} cases)\n", if c.passed { "pass" } else { "FAIL" }, c.name, c.cases))
                    .collect(),
            );
            r.code = if report.passed { 0 } else { 1 };
            Ok(r)
        }
    }
}

fn pick(requested: &[Family], all: &[Family]) -> Vec<Family> {
    if requested.is_empty() {
        all.to_vec()
    } else {
        requested.to_vec()
    }
}

fn equiv<L: MoveSystem>(
    a: &Graph<L>,
    b: &Graph<L>,
    families: &[Family],
    allowed: &[Family],
    bounds: SearchBounds,
) -> Result<(Value, Value), Failure> {
    let wrong: Vec<String> = families.iter().filter(|f| !allowed.contains(f)).map(|f| f.to_string()).collect();
    if !wrong.is_empty() {
        return Err(Failure::Usage(format!("move families {} do not act on this graph kind", wrong.join(","))));
    }
    let r = prove_equivalent(a, b, families, bounds)?;
    let stats = serde_json::to_value(r.stats).expect("serializes");
    let result = match r.outcome {
        Outcome::Certificate(c) => json!({
            "status": "certificate",
            "start_key": c.start_key.to_hex(),
            "end_key": c.end_key.to_hex(),
            "steps": c.steps.iter().map(Move::to_string).collect::<Vec<_>>(),
        }),
        Outcome::Distinguished { reason } => json!({ "status": "distinguished", "reason": reason }),
        Outcome::Inconclusive => json!({ "status": "inconclusive" }),
    };
    Ok((result, stats))
}

fn info(doc: &Document) -> Value {
    match doc {
        Document::Labeled(g) => {
            let mut v = json!({
                "vertices": g.len(),
                "edges": g.edge_count(),
                "components": component_count(g),
                "knot": is_graph_knot(g),
            });
            if let Ok(w) = writhe(g) {
                v["w"] = json!(w.per_vertex);
                v["total"] = json!(w.total);
                v["signs"] = json!(w.signs);
                v["framings"] = json!(w.framings);
            }
            v
        }
        Document::Looped(l) => json!({
            "vertices": l.len(),
            "edges": l.edge_count(),
            "looped": (0..l.len()).filter(|&i| l.is_looped(i)).count(),
        }),
        Document::Chord(d) => json!({
            "chords": d.chord_count(),
            "interlacement_edges": interlacement(d).edge_count(),
            "d_diagram": is_d_diagram(d),
        }),
    }
}
