//! `domgame`: solve, tabulate and play the domatic number game.
//!
//! Colors are 1-based (`1..=k`) everywhere; vertices are 0-based.

mod output;
mod play;
mod source;

use std::fs;
use std::io::{self, IsTerminal};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use domgame_core::census::{connected_graphs, nonisomorphic_trees, spiders};
use domgame_core::experiments::{
    edge_deletion_scan, expand_range, monotonicity_search, closed_form_suite, verify_family,
};
use domgame_core::graph6::to_graph6;
use domgame_core::solver::{game_domatic_numbers_with, solve_with};
use domgame_core::strategies::{play_match, validate_strategy_with, StrategySpec, Verdict};
use domgame_core::{Error, GameConfig, Graph, KMax, Player, Result, SolverLimits};

use output::{to_value, ResultDocument};
use source::{load_graph6, GraphSource};

const EXIT_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_CAPACITY: u8 = 3;
const EXIT_MISMATCH: u8 = 4;
const EXIT_STRATEGY_FAULT: u8 = 5;
const EXIT_REFUTED: u8 = 6;

#[derive(Parser, Debug)]
#[command(name = "domgame", version, about = "The domatic number game: exact solver, strategies and experiments")]
struct Cli {
    /// Print the structured result document (JSON) instead of tables
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// State guard: refuse instances with (k+1)^n above this
    #[arg(long, global = true, env = "DOMGAME_MAX_STATES", default_value_t = SolverLimits::default().max_states)]
    max_states: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Optimal-play winner for one palette size
    Solve {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "alice")]
        first: Player,
    },
    /// Both win profiles and the game domatic numbers
    #[command(alias = "profile")]
    Numbers {
        #[command(flatten)]
        source: GraphSource,
        /// Largest palette size (default: minimum degree + 1)
        #[arg(long)]
        k_max: Option<usize>,
    },
    /// Compare solver values with the closed forms
    Verify {
        /// Named suite: `closed-forms` (alias `paper-core`)
        #[arg(long)]
        suite: Option<String>,
        /// Family or range, e.g. `path:2..10`, `trees:8`; repeatable
        #[arg(long)]
        family: Vec<String>,
    },
    /// Check a strategy against every adversary line
    Validate {
        /// Strategy id, e.g. `bob_tree_peeler`, `bipartite_general:alice`
        #[arg(long)]
        strategy: String,
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "alice")]
        first: Player,
    },
    /// Play two strategies against each other; `--first` moves first
    Arena {
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        k: usize,
        /// Write the transcript to this file
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Search harnesses for open questions
    Search {
        #[command(subcommand)]
        mode: SearchMode,
    },
    /// Emit graphs as graph6 lines or edge lists
    Generate {
        /// All trees of this order
        #[arg(long, conflicts_with_all = ["spiders", "connected"])]
        trees: Option<usize>,
        /// All spiders of this order
        #[arg(long, conflicts_with = "connected")]
        spiders: Option<usize>,
        /// All connected graphs of this order
        #[arg(long)]
        connected: Option<usize>,
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, value_enum, default_value_t = Format::Graph6)]
        format: Format,
    },
    /// Play against the optimal engine on the terminal
    Play {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "alice")]
        first: Player,
        /// The side you play
        #[arg(long, default_value = "alice")]
        human: Player,
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum SearchMode {
    /// Flag palette sizes where Bob wins with k colors but Alice with k + 1
    Monotonicity {
        /// Connected graphs up to this order: `5` or `n<=5`
        #[arg(long)]
        census: Option<String>,
        /// graph6 file to scan instead
        #[arg(long, conflicts_with = "census")]
        graph6: Option<PathBuf>,
        #[arg(long)]
        k_max: Option<usize>,
        /// Write the full profile archive to this file
        #[arg(long)]
        archive: Option<PathBuf>,
    },
    /// dg and dg′ after deleting each edge
    EdgeDeletion {
        #[command(flatten)]
        source: GraphSource,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Graph6,
    Edges,
}

/// What a command produced: the document plus a human rendering.
struct Outcome {
    doc: ResultDocument,
    text: String,
    exit: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            eprintln!("error: cannot start {w} workers: {e}");
            return ExitCode::from(EXIT_FAILURE);
        }
    }
    let argv: Vec<String> = std::env::args().collect();
    match run(&cli, argv) {
        Ok(Some(out)) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.doc).expect("document serializes"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.exit)
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Input(_) => EXIT_PARSE,
        Error::Capacity(_) => EXIT_CAPACITY,
        Error::StrategyFault { .. } => EXIT_STRATEGY_FAULT,
        _ => EXIT_FAILURE,
    }
}

fn config(source: &GraphSource, k: usize, first: Player) -> Result<GameConfig> {
    GameConfig::new(source.load()?, k, first)
}

/// Accepts the plain spec forms plus `random:seed=7`, `random`, `optimal`, with
/// the side defaulting to `side`.
fn strategy_arg(s: &str, side: Player) -> Result<StrategySpec> {
    let s = s.replace("seed=", "");
    let mut parts: Vec<&str> = s.split(':').collect();
    let needs_side = matches!(parts[0], "random" | "optimal" | "bipartite_general");
    if needs_side && parts.get(1).map_or(true, |p| p.parse::<Player>().is_err()) {
        let name = if side == Player::Alice { "alice" } else { "bob" };
        parts.insert(1, name);
    }
    parts.join(":").parse()
}

fn run(cli: &Cli, argv: Vec<String>) -> Result<Option<Outcome>> {
    let limits = SolverLimits {
        max_states: cli.max_states,
        ..SolverLimits::default()
    };
    let start = Instant::now();
    let done = |outputs, text: String, exit| Outcome {
        doc: ResultDocument::new(argv.clone(), outputs, start.elapsed()),
        text,
        exit,
    };
    let out = match &cli.command {
        Command::Solve { source, k, first } => {
            let c = config(source, *k, *first)?;
            let (winner, stats) = solve_with(&c, limits)?;
            let mut o = done(
                json!({ "winner": winner }),
                format!(
                    "{} k={} first={}: winner {winner} ({} states, {:.3}s)\n",
                    graph_name(&c.graph),
                    k,
                    first,
                    stats.states_expanded,
                    stats.elapsed.as_secs_f64()
                ),
                0,
            );
            o.doc.config = Some(to_value(&c));
            o.doc.stats = Some(to_value(&stats));
            o
        }
        Command::Numbers { source, k_max } => {
            let g = source.load()?;
            let k_max = k_max.map_or(KMax::Auto, KMax::Fixed);
            let (numbers, stats) = game_domatic_numbers_with(&g, k_max, limits)?;
            let text = format!(
                "{}\n  dg  = {}   A-game profile {}\n  dg′ = {}   B-game profile {}\n",
                graph_name(&g),
                numbers.dg,
                numbers.a_profile.letters(),
                numbers.dg_delayed,
                numbers.b_profile.letters()
            );
            let mut o = done(to_value(&numbers), text, 0);
            o.doc.config = Some(json!({ "graph": to_value(&g) }));
            o.doc.stats = Some(to_value(&stats));
            o
        }
        Command::Verify { suite, family } => {
            let mut families = Vec::new();
            match suite.as_deref() {
                Some("closed-forms" | "paper-core") => families.extend(closed_form_suite()?),
                Some(other) => return Err(Error::Usage(format!("unknown suite {other:?}"))),
                None => {}
            }
            for f in family {
                families.extend(expand_range(f)?);
            }
            if families.is_empty() {
                return Err(Error::Usage("give --suite or --family".into()));
            }
            let report = verify_family(&families, limits);
            let mut text = String::new();
            for row in &report.rows {
                let show = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
                text.push_str(&format!(
                    "{:<40} dg {} (expected {})  dg′ {} (expected {})  {}\n",
                    row.family,
                    row.dg,
                    show(row.expected.dg_expected),
                    row.dg_delayed,
                    show(row.expected.dg_delayed_expected),
                    if row.agrees { "ok" } else { "MISMATCH" }
                ));
            }
            for s in &report.skipped {
                text.push_str(&format!("{:<40} skipped: {}\n", s.graph, s.reason));
            }
            text.push_str(&format!(
                "{} instances, {} mismatches, {} skipped\n",
                report.rows.len(),
                report.findings.len(),
                report.skipped.len()
            ));
            let exit = if !report.findings.is_empty() {
                EXIT_MISMATCH
            } else if !report.skipped.is_empty() {
                EXIT_FAILURE
            } else {
                0
            };
            done(to_value(&report), text, exit)
        }
        Command::Validate { strategy, source, k, first } => {
            let c = config(source, *k, *first)?;
            let spec: StrategySpec = strategy.parse()?;
            let report = validate_strategy_with(spec.build(&c)?, &c, limits)?;
            let (verdict, exit) = match &report.verdict {
                Verdict::Holds => ("Holds".to_string(), 0),
                Verdict::Refuted(t) => {
                    let line: Vec<String> = t
                        .moves
                        .iter()
                        .map(|m| format!("{}:{}={}", m.player, m.vertex, m.color))
                        .collect();
                    (format!("Refuted by {}", line.join(" ")), EXIT_REFUTED)
                }
            };
            let text = format!(
                "{} on {} k={} first={}: {verdict} ({} states)\n",
                report.strategy,
                graph_name(&c.graph),
                k,
                first,
                report.states_checked
            );
            done(to_value(&report), text, exit)
        }
        Command::Arena { first, second, source, k, transcript } => {
            let first = strategy_arg(first, Player::Alice)?;
            let second = strategy_arg(second, first.side().other())?;
            let c = config(source, *k, first.side())?;
            let t = play_match(&first, &second, &c)?;
            if let Some(path) = transcript {
                write_json(path, &t)?;
            }
            let mut text = String::new();
            for m in &t.moves {
                text.push_str(&format!("{:>3}. {:<5} colors {} with {}\n", m.ply, m.player, m.vertex, m.color));
            }
            text.push_str(&format!("result: {:?}\n", t.result));
            let mut o = done(json!({ "transcript": t, "result": t.result }), text, 0);
            o.doc.config = Some(to_value(&c));
            o
        }
        Command::Search { mode } => search(mode, limits, done)?,
        Command::Generate { trees, spiders: sp, connected, source, format } => {
            let graphs: Vec<Graph> = if let Some(n) = trees {
                nonisomorphic_trees(*n)?
            } else if let Some(n) = sp {
                spiders(*n)?
            } else if let Some(n) = connected {
                connected_graphs(*n)?
            } else {
                vec![source.load()?]
            };
            let mut text = String::new();
            for g in &graphs {
                match format {
                    Format::Graph6 => {
                        text.push_str(&to_graph6(g)?);
                        text.push('\n');
                    }
                    Format::Edges => text.push_str(&g.to_edge_list_text()),
                }
            }
            let codes = graphs.iter().map(to_graph6).collect::<Result<Vec<_>>>()?;
            done(json!({ "graph6": codes }), text, 0)
        }
        Command::Play { source, k, first, human, transcript } => {
            let c = config(source, *k, *first)?;
            limits.check_capacity(c.graph.order(), c.palette)?;
            let stdin = io::stdin();
            let interactive = stdin.is_terminal();
            let t = play::play(c, *human, limits, stdin.lock(), io::stdout().lock(), interactive)?;
            if let Some(path) = transcript {
                write_json(path, &t)?;
            }
            return Ok(None);
        }
    };
    Ok(Some(out))
}

fn search(
    mode: &SearchMode,
    limits: SolverLimits,
    done: impl Fn(serde_json::Value, String, u8) -> Outcome,
) -> Result<Outcome> {
    match mode {
        SearchMode::Monotonicity { census, graph6, k_max, archive } => {
            let graphs = match (census, graph6) {
                (Some(spec), None) => {
                    let n = parse_census(spec)?;
                    let mut gs = Vec::new();
                    for m in 1..=n {
                        gs.extend(connected_graphs(m)?);
                    }
                    gs
                }
                (None, Some(path)) => load_graph6(path)?,
                _ => return Err(Error::Usage("give --census or --graph6".into())),
            };
            let k_max = k_max.map_or(KMax::Auto, KMax::Fixed);
            let report = monotonicity_search(&graphs, k_max, limits);
            if let Some(path) = archive {
                write_json(path, &report.archive)?;
            }
            let mut text = String::new();
            for r in &report.archive {
                text.push_str(&format!(
                    "{:<12} A {:<8} B {:<8}\n",
                    r.graph,
                    r.a_profile.letters(),
                    r.b_profile.letters()
                ));
            }
            for f in &report.findings {
                text.push_str(&format!("FLAG {} {} {:?}\n", f.flag, f.graph, f.witness));
            }
            for s in &report.skipped {
                text.push_str(&format!("skipped {}: {}\n", s.graph, s.reason));
            }
            text.push_str(&format!(
                "{} graphs, {} flags, {} skipped\n",
                report.archive.len(),
                report.findings.len(),
                report.skipped.len()
            ));
            Ok(done(to_value(&report), text, 0))
        }
        SearchMode::EdgeDeletion { source } => {
            let g = source.load()?;
            let report = edge_deletion_scan(&g, limits)?;
            let mut text = format!("{}: dg {} dg′ {}\n", report.graph, report.dg, report.dg_delayed);
            for row in &report.rows {
                text.push_str(&format!(
                    "  - {:?}: dg {} ({:+}) dg′ {} ({:+})\n",
                    row.edge,
                    row.dg,
                    row.dg as i64 - report.dg as i64,
                    row.dg_delayed,
                    row.dg_delayed as i64 - report.dg_delayed as i64
                ));
            }
            for f in &report.findings {
                text.push_str(&format!("FLAG {} {:?}\n", f.flag, f.witness));
            }
            Ok(done(to_value(&report), text, 0))
        }
    }
}

fn parse_census(spec: &str) -> Result<usize> {
    let s = spec.trim();
    let s = s.strip_prefix("n<=").unwrap_or(s);
    s.trim().parse().map_err(|_| Error::Parse {
        offset: 0,
        message: format!("expected `N` or `n<=N`, got {spec:?}"),
    })
}

fn graph_name(g: &Graph) -> String {
    g.tag().map_or_else(|| to_graph6(g).unwrap_or_default(), str::to_string)
}

fn write_json<T: serde::Serialize>(path: &PathBuf, x: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(x).expect("serializable");
    fs::write(path, text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}
