//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a negative answer (`no`, `none`, `infeasible`),
//! 2 usage, I/O or input errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::arborescence::{self, Arborescence};
use crate::error::Error;
use crate::graph::{parse_graph, ColorConstraint, ColoredDigraph, ColoredMultigraph, ParsedGraph};
use crate::minweight::{self, MinWeightConfig, WeightedInstance};
use crate::oracle;
use crate::symdet::Engine;

#[derive(Debug, Parser)]
#[command(name = "ccarb", version, about = "Color-constrained arborescence counting and search")]
struct Cli {
    /// Worker threads for the determinant engine.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Rooted {
    file: PathBuf,
    /// Root vertex label.
    #[arg(long)]
    root: String,
}

#[derive(Debug, Args)]
struct Constrained {
    #[command(flatten)]
    target: Rooted,
    /// Counts for colors 1..q-1, comma separated (empty when q = 1).
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    alpha: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Number of alpha-colored arborescences.
    Count(Constrained),
    /// Counts for every color constraint.
    CountAll {
        #[command(flatten)]
        target: Rooted,
        /// Also print the determinant polynomial.
        #[arg(long)]
        poly: bool,
    },
    /// Whether an alpha-colored arborescence exists.
    Decide(Constrained),
    /// One alpha-colored arborescence.
    Find(Constrained),
    /// Minimum weight of an alpha-colored arborescence.
    MinWeight(Constrained),
    /// A minimum-weight alpha-colored arborescence.
    FindMin(Constrained),
    /// Number of alpha-colored spanning trees of an undirected graph.
    SpanningTrees {
        file: PathBuf,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        alpha: String,
    },
    /// Brute-force counts, for test tooling.
    #[command(hide = true)]
    Oracle {
        #[command(flatten)]
        target: Rooted,
        #[arg(long)]
        alpha: Option<String>,
    },
}

/// Outcome of one command: text lines, the JSON twin, and an exit code.
struct Report {
    text: String,
    json: Value,
    code: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, code: 0 }
    }

    fn negative(text: String, json: Value) -> Self {
        Self { text, json, code: 1 }
    }
}

#[derive(Debug)]
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self(e.to_string())
    }
}

type Outcome = Result<Report, Failure>;

/// Runs the CLI on `args` (program name first), writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let body = if cli.json {
                format!("{}\n", report.json)
            } else {
                report.text
            };
            let _ = out.write_all(body.as_bytes());
            report.code
        }
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn execute(cli: &Cli) -> Outcome {
    let engine = Engine::new(cli.workers)?;
    match &cli.command {
        Command::Count(c) => {
            let (g, s, alpha) = load_constrained(c)?;
            let n = arborescence::count(&g, s, &alpha, &engine)?;
            Ok(Report::ok(format!("{n}\n"), json!({ "count": n.to_string() })))
        }
        Command::CountAll { target, poly } => {
            let (g, s) = load_rooted(target)?;
            let table = arborescence::count_table(&g, s, &engine)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for (alpha, count) in table.iter() {
                let _ = writeln!(text, "{alpha}\t{count}");
                rows.push(json!({ "alpha": alpha.as_slice(), "count": count.to_string() }));
            }
            let mut obj = json!({ "table": rows });
            if *poly {
                let rendered = table.poly().to_string();
                let _ = writeln!(text, "{rendered}");
                obj["poly"] = json!(rendered);
            }
            Ok(Report::ok(text, obj))
        }
        Command::Decide(c) => {
            let (g, s, alpha) = load_constrained(c)?;
            let yes = arborescence::decide(&g, s, &alpha, &engine)?;
            let obj = json!({ "feasible": yes });
            Ok(if yes {
                Report::ok("yes\n".into(), obj)
            } else {
                Report::negative("no\n".into(), obj)
            })
        }
        Command::Find(c) => {
            let (g, s, alpha) = load_constrained(c)?;
            Ok(match arborescence::find(&g, s, &alpha, &engine)? {
                Some(tree) => {
                    let (text, edges) = render_tree(&g, &tree);
                    Report::ok(text, json!({ "found": true, "edges": edges }))
                }
                None => Report::negative("none\n".into(), json!({ "found": false })),
            })
        }
        Command::MinWeight(c) => {
            let inst = load_weighted(c)?;
            Ok(
                match minweight::min_weight(&inst, &MinWeightConfig::default(), &engine)? {
                    Some(w) => Report::ok(format!("{w}\n"), json!({ "feasible": true, "weight": w })),
                    None => Report::negative("infeasible\n".into(), json!({ "feasible": false })),
                },
            )
        }
        Command::FindMin(c) => {
            let inst = load_weighted(c)?;
            Ok(
                match minweight::find_min(&inst, &MinWeightConfig::default(), &engine)? {
                    Some((tree, w)) => {
                        let (lines, edges) = render_tree(inst.graph(), &tree);
                        Report::ok(
                            format!("{w}\n{lines}"),
                            json!({ "feasible": true, "weight": w, "edges": edges }),
                        )
                    }
                    None => Report::negative("infeasible\n".into(), json!({ "feasible": false })),
                },
            )
        }
        Command::SpanningTrees { file, alpha } => {
            let g = load_undirected(file)?;
            let alpha = parse_alpha(alpha)?;
            let n = arborescence::count_spanning_trees(&g, &alpha, &engine)?;
            Ok(Report::ok(format!("{n}\n"), json!({ "count": n.to_string() })))
        }
        Command::Oracle { target, alpha } => {
            let (g, s) = load_rooted(target)?;
            let table = oracle::oracle_table(&g, s)?;
            match alpha {
                Some(a) => {
                    let alpha = parse_alpha(a)?;
                    let n = oracle::oracle_count(&g, s, &alpha)?;
                    Ok(Report::ok(format!("{n}\n"), json!({ "count": n.to_string() })))
                }
                None => {
                    let mut text = String::new();
                    let mut rows = Vec::new();
                    for (alpha, count) in &table {
                        let alpha = ColorConstraint::new(alpha.clone());
                        let _ = writeln!(text, "{alpha}\t{count}");
                        rows.push(json!({ "alpha": alpha.as_slice(), "count": count.to_string() }));
                    }
                    Ok(Report::ok(text, json!({ "table": rows })))
                }
            }
        }
    }
}

fn render_tree(g: &ColoredDigraph, tree: &Arborescence) -> (String, Vec<Value>) {
    let mut text = String::new();
    let mut edges = Vec::new();
    for &id in &tree.edges {
        let e = g.edge(id).expect("tree edges belong to the graph");
        let (tail, head) = (g.label(e.tail), g.label(e.head));
        match e.weight {
            Some(w) => {
                let _ = writeln!(text, "{tail} {head} {} {w}", e.color);
                edges.push(json!({ "tail": tail, "head": head, "color": e.color, "weight": w }));
            }
            None => {
                let _ = writeln!(text, "{tail} {head} {}", e.color);
                edges.push(json!({ "tail": tail, "head": head, "color": e.color }));
            }
        }
    }
    (text, edges)
}

fn parse_alpha(s: &str) -> Result<ColorConstraint, Failure> {
    s.parse().map_err(Failure)
}

fn read(file: &PathBuf) -> Result<ParsedGraph, Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure(format!("cannot read {}: {e}", file.display())))?;
    parse_graph(&text).map_err(|e| Failure(format!("{}: {e}", file.display())))
}

fn load_directed(file: &PathBuf) -> Result<ColoredDigraph, Failure> {
    match read(file)? {
        ParsedGraph::Directed(g) => Ok(g),
        ParsedGraph::Undirected(_) => Err(Failure(format!(
            "{}: undirected graph given to a directed command (use spanning-trees)",
            file.display()
        ))),
    }
}

fn load_undirected(file: &PathBuf) -> Result<ColoredMultigraph, Failure> {
    match read(file)? {
        ParsedGraph::Undirected(g) => Ok(g),
        ParsedGraph::Directed(_) => Err(Failure(format!(
            "{}: spanning-trees needs an undirected graph",
            file.display()
        ))),
    }
}

fn load_rooted(r: &Rooted) -> Result<(ColoredDigraph, usize), Failure> {
    let g = load_directed(&r.file)?;
    let s = g.vertex(&r.root)?;
    Ok((g, s))
}

fn load_constrained(c: &Constrained) -> Result<(ColoredDigraph, usize, ColorConstraint), Failure> {
    let (g, s) = load_rooted(&c.target)?;
    let alpha = parse_alpha(&c.alpha)?;
    if alpha.len() + 1 != g.q() {
        return Err(Error::AlphaLength {
            expected: g.q() - 1,
            got: alpha.len(),
        }
        .into());
    }
    Ok((g, s, alpha))
}

fn load_weighted(c: &Constrained) -> Result<WeightedInstance, Failure> {
    let (g, s, alpha) = load_constrained(c)?;
    Ok(WeightedInstance::new(&g, s, alpha)?)
}
