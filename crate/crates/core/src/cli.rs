//! The `ricci-flat` command line.
//!
//! Exit codes: 0 when the requested check holds, 1 for a mathematically
//! negative result (a non-flat edge, a flat 3-3 edge without opposite pentagons, a census that
//! disagrees with the classification), 2 for usage and input errors.
//! JSON output has sorted keys and rationals as `"p/q"`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::catalog::{catalog_all, make_family, Family};
use crate::edgelist::{parse_edge_list, write_edge_list, write_one_line};
use crate::graph::{Graph, Vertex};
use crate::pentagon::{
    all_five_cycles, edge_profile, pentagon_embedding, verify_lemma1, EmbeddingResult,
    PentagonError,
};
use crate::rational::Rational;
use crate::search::{classify_ricci_flat, write_census, CensusRecord, EnumerationOptions};
use crate::transport::{is_ricci_flat_on, kappa_alpha, lly_curvature, FlatVerdict};

pub const WORKERS_ENV: &str = "RICCI_WORKERS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(stdout: String) -> Self {
        CommandOutcome { exit_code: 0, stdout, stderr: String::new() }
    }

    fn verdict(holds: bool, stdout: String) -> Self {
        CommandOutcome { exit_code: if holds { 0 } else { 1 }, stdout, stderr: String::new() }
    }

    fn error(msg: impl std::fmt::Display) -> Self {
        CommandOutcome { exit_code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

#[derive(Parser, Debug)]
#[command(name = "ricci-flat", version, about = "Exact Lin-Lu-Yau curvature and Ricci-flat graphs of girth >= 5")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a catalog graph in edge-list format.
    Gen {
        /// path:K, cycle:K, petersen, dodecahedral, half-dodecahedral, triplex, gp:K,T
        #[arg(long)]
        family: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Curvature of every edge (or one edge) of a graph.
    Curvature {
        #[arg(long)]
        graph: PathBuf,
        /// Single edge as U,V.
        #[arg(long)]
        edge: Option<String>,
        /// Report kappa_alpha at this idleness instead of the limit curvature.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Check that every catalog family is Ricci-flat.
    VerifyCatalog {
        #[arg(long, default_value_t = 20)]
        max_cycle: usize,
        #[arg(long, default_value_t = 50)]
        path_length: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Pentagon structure: edge profiles, irregular edges, opposite pairs.
    Structure {
        #[arg(long)]
        graph: PathBuf,
        /// Also attempt the pentagon-gluing surface embedding.
        #[arg(long)]
        embed: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Enumerate small graphs and list the Ricci-flat ones.
    Search {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 2)]
        min_degree: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Defaults to $RICCI_WORKERS, then 1.
        #[arg(long)]
        workers: Option<usize>,
        /// Census file destination.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

/// Runs one command; `argv[0]` is the program name.
pub fn run<S: AsRef<str>>(argv: &[S]) -> CommandOutcome {
    let env_workers = std::env::var(WORKERS_ENV).ok();
    run_with_env(argv, env_workers.as_deref())
}

pub fn run_with_env<S: AsRef<str>>(argv: &[S], env_workers: Option<&str>) -> CommandOutcome {
    let cli = match Cli::try_parse_from(argv.iter().map(|s| s.as_ref())) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutcome { exit_code: 2, stdout: String::new(), stderr: text }
            } else {
                CommandOutcome::ok(text)
            };
        }
    };
    match cli.command {
        Command::Gen { family, out } => gen(&family, out.as_deref()),
        Command::Curvature { graph, edge, alpha, format } => {
            curvature(&graph, edge.as_deref(), alpha.as_deref(), format)
        }
        Command::VerifyCatalog { max_cycle, path_length, format } => {
            verify_catalog(max_cycle, path_length, format)
        }
        Command::Structure { graph, embed, format } => structure(&graph, embed, format),
        Command::Search { max_n, min_degree, max_degree, workers, out, format } => {
            let workers = match (workers, env_workers) {
                (Some(w), _) => w,
                (None, Some(s)) => match s.trim().parse() {
                    Ok(w) => w,
                    Err(_) => return CommandOutcome::error(format!("{WORKERS_ENV}={s:?} is not a count")),
                },
                (None, None) => 1,
            };
            if workers == 0 {
                return CommandOutcome::error("worker count must be positive");
            }
            search(max_n, min_degree, max_degree, workers, out.as_deref(), format)
        }
    }
}

fn to_json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn read_graph(path: &Path) -> Result<Graph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_edge_list(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn edge_json((u, v): (Vertex, Vertex)) -> Value {
    json!([u, v])
}

fn gen(spec: &str, out: Option<&Path>) -> CommandOutcome {
    let graph = match spec.parse::<Family>().and_then(make_family) {
        Ok(g) => g,
        Err(e) => return CommandOutcome::error(e),
    };
    let text = write_edge_list(&graph);
    match out {
        Some(path) => match fs::write(path, &text) {
            Ok(()) => CommandOutcome::ok(String::new()),
            Err(e) => CommandOutcome::error(format!("{}: {e}", path.display())),
        },
        None => CommandOutcome::ok(text),
    }
}

fn parse_edge_arg(s: &str) -> Result<(Vertex, Vertex), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("edge {s:?} is not U,V"))?;
    let parse = |t: &str| t.trim().parse::<Vertex>().map_err(|_| format!("edge {s:?} is not U,V"));
    Ok((parse(a)?, parse(b)?))
}

fn curvature(path: &Path, edge: Option<&str>, alpha: Option<&str>, format: Format) -> CommandOutcome {
    let g = match read_graph(path) {
        Ok(g) => g,
        Err(e) => return CommandOutcome::error(e),
    };
    let alpha = match alpha.map(str::parse::<Rational>).transpose() {
        Ok(a) => a,
        Err(e) => return CommandOutcome::error(e),
    };
    let edges: Vec<(Vertex, Vertex)> = match edge {
        Some(s) => match parse_edge_arg(s) {
            Ok((u, v)) if g.has_edge(u, v) => vec![(u, v)],
            Ok((u, v)) => return CommandOutcome::error(format!("{u}-{v} is not an edge")),
            Err(e) => return CommandOutcome::error(e),
        },
        None => g.edges().collect(),
    };
    if edges.is_empty() {
        return CommandOutcome::error("graph has no edges");
    }

    let mut values = Vec::with_capacity(edges.len());
    for &(u, v) in &edges {
        let k = match &alpha {
            Some(a) => kappa_alpha(&g, u, v, a),
            None => lly_curvature(&g, u, v),
        };
        match k {
            Ok(k) => values.push(((u, v), k)),
            Err(e) => return CommandOutcome::error(e),
        }
    }
    let witness = values.iter().find(|(_, k)| !k.is_zero()).cloned();
    let flat = witness.is_none();

    let stdout = match format {
        Format::Json => to_json_text(&json!({
            "graph": {"n": g.n(), "m": g.m()},
            "alpha": alpha.as_ref().map(|a| a.to_string()),
            "edges": values
                .iter()
                .map(|(e, k)| json!({"edge": edge_json(*e), "kappa": k.to_string()}))
                .collect::<Vec<_>>(),
            "flat": flat,
            "witness": witness
                .as_ref()
                .map(|(e, k)| json!({"edge": edge_json(*e), "kappa": k.to_string()})),
        })),
        Format::Table => {
            let label = match &alpha {
                Some(a) => format!("kappa_{a}"),
                None => "kappa".to_string(),
            };
            let mut s = format!("{:<10} {label}\n", "edge");
            for ((u, v), k) in &values {
                writeln!(s, "{:<10} {k}", format!("{u}-{v}")).unwrap();
            }
            match &witness {
                None => s.push_str("flat: true\n"),
                Some(((u, v), k)) => {
                    writeln!(s, "flat: false (witness {u}-{v}, {label} = {k})").unwrap()
                }
            }
            s
        }
    };
    CommandOutcome::verdict(flat, stdout)
}

fn verify_catalog(max_cycle: usize, path_length: usize, format: Format) -> CommandOutcome {
    let entries = match catalog_all(max_cycle, path_length) {
        Ok(e) => e,
        Err(e) => return CommandOutcome::error(e),
    };
    let mut rows = Vec::new();
    for entry in &entries {
        match is_ricci_flat_on(&entry.graph, &entry.checked_edges) {
            Ok(verdict) => rows.push((entry, verdict)),
            Err(e) => return CommandOutcome::error(format!("{}: {e}", entry.name)),
        }
    }
    let all_flat = rows.iter().all(|(_, v)| v.is_flat());
    let stdout = match format {
        Format::Json => to_json_text(&json!({
            "all_flat": all_flat,
            "families": rows.iter().map(|(e, v)| json!({
                "name": e.name,
                "n": e.graph.n(),
                "m": e.graph.m(),
                "checked_edges": e.checked_edges.len(),
                "flat": v.is_flat(),
                "witness": match v {
                    FlatVerdict::Flat => Value::Null,
                    FlatVerdict::Witness(c) => json!({"edge": edge_json(c.edge), "kappa": c.kappa.to_string()}),
                },
            })).collect::<Vec<_>>(),
        })),
        Format::Table => {
            let mut s = format!("{:<20} {:>4} {:>4} {:>8}  result\n", "family", "n", "m", "checked");
            for (e, v) in &rows {
                let result = match v {
                    FlatVerdict::Flat => "flat: true".to_string(),
                    FlatVerdict::Witness(c) => format!(
                        "flat: false (edge {}-{}, kappa = {})",
                        c.edge.0, c.edge.1, c.kappa
                    ),
                };
                writeln!(
                    s,
                    "{:<20} {:>4} {:>4} {:>8}  {result}",
                    e.name,
                    e.graph.n(),
                    e.graph.m(),
                    e.checked_edges.len()
                )
                .unwrap();
            }
            writeln!(s, "all flat: {all_flat}").unwrap();
            s
        }
    };
    CommandOutcome::verdict(all_flat, stdout)
}

fn structure(path: &Path, embed: bool, format: Format) -> CommandOutcome {
    let g = match read_graph(path) {
        Ok(g) => g,
        Err(e) => return CommandOutcome::error(e),
    };
    let mut profiles = Vec::with_capacity(g.m());
    for (x, y) in g.edges() {
        match edge_profile(&g, x, y) {
            Ok(p) => profiles.push(p),
            Err(e) => return CommandOutcome::error(e),
        }
    }
    let girth = g.girth();
    let c5_total = all_five_cycles(&g).len();
    let irregular: Vec<_> = profiles.iter().filter(|p| p.irregular).map(|p| p.edge).collect();
    let pair_report = match verify_lemma1(&g) {
        Ok(r) => Some(r),
        Err(PentagonError::GirthTooSmall(_)) => None,
        Err(e) => return CommandOutcome::error(e),
    };
    let embedding: Option<EmbeddingResult> = if embed {
        match pentagon_embedding(&g) {
            Ok(r) => Some(r),
            Err(e) => return CommandOutcome::error(e),
        }
    } else {
        None
    };
    let pairs_hold = pair_report.as_ref().is_none_or(|r| r.passed());

    let stdout = match format {
        Format::Json => {
            let mut doc = json!({
                "graph": {"n": g.n(), "m": g.m(), "girth": girth.value()},
                "c5_total": c5_total,
                "profiles": profiles.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
                "irregular_edges": irregular.iter().map(|&e| edge_json(e)).collect::<Vec<_>>(),
                "opposite_pairs": match &pair_report {
                    None => json!({"applicable": false}),
                    Some(r) => json!({
                        "applicable": true,
                        "pass": r.passed(),
                        "checked": r.checked.len(),
                        "violations": r.violations.iter().map(|&e| edge_json(e)).collect::<Vec<_>>(),
                    }),
                },
            });
            if let Some(emb) = &embedding {
                doc["embedding"] = emb.to_json();
            }
            to_json_text(&doc)
        }
        Format::Table => {
            let mut s = format!(
                "n = {}, m = {}, girth = {girth}, distinct 5-cycles = {c5_total}\n",
                g.n(),
                g.m()
            );
            writeln!(s, "{:<10} {:>3}  {:<9} {:<8}", "edge", "c5", "irregular", "opposite").unwrap();
            for p in &profiles {
                writeln!(
                    s,
                    "{:<10} {:>3}  {:<9} {:<8}",
                    format!("{}-{}", p.edge.0, p.edge.1),
                    p.c5_count,
                    p.irregular,
                    p.has_opposite_pair
                )
                .unwrap();
            }
            writeln!(s, "irregular edges: {}", irregular.len()).unwrap();
            match &pair_report {
                None => writeln!(s, "opposite pairs: not applicable (girth {girth})").unwrap(),
                Some(r) if r.passed() => {
                    writeln!(s, "opposite pairs: pass ({} flat 3-3 edges checked)", r.checked.len()).unwrap()
                }
                Some(r) => writeln!(s, "opposite pairs: FAIL at {:?}", r.violations).unwrap(),
            }
            match &embedding {
                None => {}
                Some(EmbeddingResult::Closed { faces, euler_characteristic }) => writeln!(
                    s,
                    "embedding: closed, {} pentagonal faces, euler characteristic {euler_characteristic}",
                    faces.len()
                )
                .unwrap(),
                Some(EmbeddingResult::Failed { witness, reason }) => writeln!(
                    s,
                    "embedding: failed ({}) at {}",
                    reason.as_str(),
                    witness.map_or("-".to_string(), |(a, b)| format!("{a}-{b}"))
                )
                .unwrap(),
            }
            s
        }
    };
    CommandOutcome::verdict(pairs_hold, stdout)
}

fn search(
    max_n: usize,
    min_degree: usize,
    max_degree: usize,
    workers: usize,
    out: Option<&Path>,
    format: Format,
) -> CommandOutcome {
    let opts = EnumerationOptions { workers, ..EnumerationOptions::default() };
    let records = match classify_ricci_flat(max_n, min_degree, max_degree, &opts) {
        Ok(r) => r,
        Err(e) => return CommandOutcome::error(e),
    };
    if let Some(path) = out {
        if let Err(e) = fs::write(path, write_census(&records)) {
            return CommandOutcome::error(format!("{}: {e}", path.display()));
        }
    }
    let matches = records.iter().all(CensusRecord::matches_expectation);
    let flat_name = |f: &crate::search::FlatGraph| f.family.clone().unwrap_or_else(|| "UNKNOWN".into());
    let stdout = match format {
        Format::Json => to_json_text(&json!({
            "constraints": {
                "max_n": max_n,
                "min_degree": min_degree,
                "max_degree": max_degree,
                "min_girth": 5,
            },
            "records": records.iter().map(|r| json!({
                "n": r.n(),
                "enumerated_count": r.enumerated_count,
                "prefiltered": r.prefiltered,
                "ricci_flat": r.ricci_flat.iter().map(|f| json!({
                    "family": flat_name(f),
                    "graph": write_one_line(&f.graph),
                })).collect::<Vec<_>>(),
                "expected": r.expected,
                "matches": r.matches_expectation(),
            })).collect::<Vec<_>>(),
            "matches_classification": matches,
        })),
        Format::Table => {
            let mut s = format!(
                "{:>3} {:>10} {:>11}  ricci-flat\n",
                "n", "classes", "prefiltered"
            );
            for r in &records {
                let names: Vec<String> = r.ricci_flat.iter().map(flat_name).collect();
                writeln!(
                    s,
                    "{:>3} {:>10} {:>11}  {}{}",
                    r.n(),
                    r.enumerated_count,
                    r.prefiltered,
                    if names.is_empty() { "-".to_string() } else { names.join(", ") },
                    if r.matches_expectation() { "" } else { "  MISMATCH" }
                )
                .unwrap();
            }
            writeln!(s, "matches classification: {matches}").unwrap();
            s
        }
    };
    CommandOutcome::verdict(matches, stdout)
}
