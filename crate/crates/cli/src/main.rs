use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use racglab::batch::{csv_bytes, run_batch, summary, BatchSpec};
use racglab::cayley::{divergence_profile, CSV_HEADER, DEFAULT_STATE_BUDGET, STATE_CAP_ENV};
use racglab::diagram::{
    check_separation, crossing_curves, fence_levels, fence_type_check, DiskDiagram,
};
use racglab::graph::{parse_graph, GraphFormat};
use racglab::words::{complete_word_certificate, gamma_complete_word, normal_form, reduce, words_equal};
use racglab::{classify, CayleyError, Execution, SimplicialGraph, Word, WordError};
use serde_json::{json, Value};

/// Exploration tools for right-angled Coxeter groups.
#[derive(Parser)]
#[command(name = "racglab", version)]
struct Cli {
    /// JSON file with defaults: {"state_cap": .., "jobs": .., "rmax": ..}
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hypergraph index and the verdicts that follow from it.
    Classify {
        graph: PathBuf,
        /// List every hyperedge of every stage.
        #[arg(long)]
        trace: bool,
        /// JSON output (the default).
        #[arg(long, conflicts_with = "pretty")]
        json: bool,
        /// Human-readable table instead of JSON.
        #[arg(long)]
        pretty: bool,
    },
    /// Classify seeded Erdős–Rényi graphs and write one CSV row per trial.
    Batch(BatchArgs),
    /// Sample the divergence of a periodic geodesic.
    Divergence(DivergenceArgs),
    /// Word problem tools.
    Words {
        graph: PathBuf,
        #[command(subcommand)]
        op: WordOp,
    },
    /// Fence partitions and checks for a disk diagram.
    Fences {
        diagram: PathBuf,
        #[arg(long, default_value_t = 1)]
        level: u32,
    },
}

#[derive(Args)]
struct BatchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; 0 means all cores.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct DivergenceArgs {
    graph: PathBuf,
    #[arg(long, default_value_t = 1)]
    rmin: usize,
    #[arg(long)]
    rmax: Option<usize>,
    /// State budget per search (overrides the environment and config).
    #[arg(long)]
    cap: Option<usize>,
    /// Label of the periodic geodesic; defaults to a complete word.
    #[arg(long)]
    word: Option<String>,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Fit JSON destination; stderr when absent.
    #[arg(long)]
    fit_out: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum WordOp {
    /// A reduced word for the same element.
    Reduce { word: String },
    /// Lexicographically least reduced word.
    Nf { word: String },
    /// Whether two words name the same element.
    Equal { left: String, right: String },
    /// A complete word with its cyclic non-adjacency certificate.
    Complete,
}

#[derive(Default)]
struct Config {
    state_cap: Option<usize>,
    jobs: Option<usize>,
    rmax: Option<usize>,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Infeasible(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Infeasible(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Infeasible(m) => f.write_str(m),
        }
    }
}

fn input<E: fmt::Display>(context: impl fmt::Display) -> impl FnOnce(E) -> Failure {
    move |e| Failure::Input(format!("{context}: {e}"))
}

fn word_failure(e: WordError) -> Failure {
    match e {
        WordError::Join | WordError::TooFewVertices => {
            Failure::Infeasible(format!("no Γ-complete word exists: {e}"))
        }
        e => Failure::Input(e.to_string()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(input(path.display()))
}

fn load_graph(path: &Path) -> Result<SimplicialGraph, Failure> {
    let text = read(path)?;
    parse_graph(&text, GraphFormat::sniff(&text)).map_err(input(path.display()))
}

fn load_config(path: Option<&Path>) -> Result<Config, Failure> {
    let Some(path) = path else {
        return Ok(Config::default());
    };
    let value: Value = serde_json::from_str(&read(path)?).map_err(input(path.display()))?;
    let field = |key: &str| -> Result<Option<usize>, Failure> {
        match value.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => v
                .as_u64()
                .map(|n| Some(n as usize))
                .ok_or_else(|| Failure::Input(format!("{}: `{key}` must be a non-negative integer", path.display()))),
        }
    };
    Ok(Config {
        state_cap: field("state_cap")?,
        jobs: field("jobs")?,
        rmax: field("rmax")?,
    })
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(input(p.display())),
        None => io::stdout().write_all(bytes).map_err(input("stdout")),
    }
}

fn print_json(v: &Value) {
    // a closed pipe (`| head`) is not an error worth reporting
    let _ = writeln!(io::stdout(), "{}", serde_json::to_string_pretty(v).expect("json serializes"));
}

fn cmd_classify(path: &Path, trace: bool, pretty: bool) -> Result<(), Failure> {
    let g = load_graph(path)?;
    let report = classify(&g);
    if !pretty {
        print_json(&report.to_json(&g, trace));
        return Ok(());
    }
    println!("vertices     {}", g.len());
    println!("index        {}", report.index);
    println!("divergence   {}", report.divergence);
    let order = report.thickness_order.map_or("none".to_string(), |k| k.to_string());
    println!("thick order  {order}");
    println!("rel. hyp.    {}", report.relatively_hyperbolic);
    println!("ends         {}", report.ends);
    for h in &report.lambda_trace {
        if trace {
            let edges: Vec<String> = h.hyperedges().iter().map(|&e| g.format_set(e)).collect();
            println!("stage {:<3}    {}", h.stage, edges.join(" "));
        } else {
            println!("stage {:<3}    {} hyperedges", h.stage, h.len());
        }
    }
    Ok(())
}

fn cmd_batch(args: &BatchArgs, config: &Config) -> Result<(), Failure> {
    let spec = BatchSpec::new(args.n, args.p, args.trials, args.seed).map_err(|e| Failure::Input(e.to_string()))?;
    let exec = Execution::from_jobs(args.jobs.or(config.jobs).filter(|&j| j != 0));
    let rows = run_batch(&spec, exec);
    write_output(args.out.as_deref(), &csv_bytes(&rows))?;
    let s = summary(&spec, &rows);
    if args.out.is_some() {
        print_json(&s);
    } else {
        eprintln!("{}", serde_json::to_string_pretty(&s).expect("json serializes"));
    }
    Ok(())
}

fn cmd_divergence(args: &DivergenceArgs, config: &Config) -> Result<(), Failure> {
    let g = load_graph(&args.graph)?;
    let w = match &args.word {
        Some(text) => Word::parse(&g, text).map_err(input("--word"))?,
        None => gamma_complete_word(&g).map_err(word_failure)?,
    };
    let budget = args
        .cap
        .or_else(|| std::env::var(STATE_CAP_ENV).ok().and_then(|v| v.trim().parse().ok()))
        .or(config.state_cap)
        .unwrap_or(DEFAULT_STATE_BUDGET);
    let rmax = args.rmax.or(config.rmax).unwrap_or(4);
    let exec = Execution::from_jobs(args.jobs.or(config.jobs).filter(|&j| j != 0));
    let profile = divergence_profile(&g, &w, args.rmin, rmax, budget, exec).map_err(|e| match e {
        CayleyError::Word(e) => word_failure(e),
        e => Failure::Input(e.to_string()),
    })?;

    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for s in &profile.samples {
        csv.push_str(&s.csv_row());
        csv.push('\n');
    }
    write_output(args.out.as_deref(), csv.as_bytes())?;

    let report = classify(&g);
    let mut fit = profile.fit_json();
    fit["word"] = json!(w.display(&g));
    fit["state_budget"] = json!(budget);
    fit["predicted_degree"] = match report.index.finite() {
        Some(k) => json!(k + 1),
        None => json!(report.divergence.to_string()),
    };
    fit["fitted_degree"] = profile.fit.as_ref().map_or(Value::Null, |f| json!(f.degree));
    let text = serde_json::to_string_pretty(&fit).expect("json serializes");
    match &args.fit_out {
        Some(p) => fs::write(p, text + "\n").map_err(input(p.display()))?,
        None => eprintln!("{text}"),
    }
    Ok(())
}

fn cmd_words(path: &Path, op: &WordOp) -> Result<(), Failure> {
    let g = load_graph(path)?;
    let parse = |text: &str| Word::parse(&g, text).map_err(word_failure);
    match op {
        WordOp::Reduce { word } => println!("{}", reduce(&g, &parse(word)?).display(&g)),
        WordOp::Nf { word } => println!("{}", normal_form(&g, &parse(word)?).display(&g)),
        WordOp::Equal { left, right } => println!("{}", words_equal(&g, &parse(left)?, &parse(right)?)),
        WordOp::Complete => {
            let w = gamma_complete_word(&g).map_err(word_failure)?;
            let pairs = complete_word_certificate(&g, &w).expect("constructed words are complete");
            let pairs: Vec<String> = pairs.iter().map(|&(s, t)| format!("{}-{}", g.name(s), g.name(t))).collect();
            println!("{}", w.display(&g));
            println!("non-adjacent: {}", pairs.join(" "));
        }
    }
    Ok(())
}

/// The arcs `gamma, eta, gamma_prime, eta_prime`, when the document names
/// all four.
fn separation_arcs(d: &DiskDiagram) -> Option<[racglab::diagram::Arc; 4]> {
    let names = ["gamma", "eta", "gamma_prime", "eta_prime"];
    let mut arcs = [racglab::diagram::Arc::new(0, 0); 4];
    for (slot, name) in arcs.iter_mut().zip(names) {
        *slot = d.arc(name).ok()?;
    }
    Some(arcs)
}

fn fences_report(d: &DiskDiagram, level: u32) -> Value {
    let g = d.graph();
    let sep_arcs = separation_arcs(d);
    let mut all_pass = true;
    let levels: Vec<Value> = fence_levels(d, level)
        .iter()
        .enumerate()
        .map(|(l, fences)| {
            let fences: Vec<Value> = fences
                .iter()
                .map(|f| {
                    let tc = fence_type_check(d, f, &crossing_curves(d, f)).expect("crossing curves meet the fence");
                    all_pass &= tc.pass;
                    let mut v = f.to_json();
                    v["type_check"] = tc.to_json(g);
                    if let Some(arcs) = sep_arcs {
                        v["separation"] = match check_separation(d, arcs, f) {
                            Ok(s) => {
                                all_pass &= s.pass();
                                json!({
                                    "transversals": s.transversals,
                                    "violators": s.violators,
                                    "verdict": if s.pass() { "PASS" } else { "FAIL" },
                                })
                            }
                            Err(e) => json!({ "verdict": "N/A", "reason": e.to_string() }),
                        };
                    }
                    v
                })
                .collect();
            json!({ "level": l, "fences": fences })
        })
        .collect();
    json!({
        "bottom": d.bottom().display(g),
        "top": d.top().display(g),
        "curves": d.curves().len(),
        "spokes": racglab::diagram::spokes(d).len(),
        "levels": levels,
        "verdict": if all_pass { "PASS" } else { "FAIL" },
    })
}

fn cmd_fences(path: &Path, level: u32) -> Result<(), Failure> {
    let text = read(path)?;
    let doc: Value = serde_json::from_str(&text).map_err(input(path.display()))?;
    let load = |i: Option<usize>, v: Value| {
        DiskDiagram::from_json_value(v).map_err(|e| match i {
            Some(i) => Failure::Input(format!("{}: diagram {i}: {e}", path.display())),
            None => Failure::Input(format!("{}: {e}", path.display())),
        })
    };
    match doc.get("diagrams").and_then(Value::as_array) {
        Some(list) => {
            let reports = list
                .iter()
                .enumerate()
                .map(|(i, v)| load(Some(i), v.clone()).map(|d| fences_report(&d, level)))
                .collect::<Result<Vec<_>, _>>()?;
            let pass = reports.iter().filter(|r| r["verdict"] == "PASS").count();
            print_json(&json!({
                "diagrams": reports.len(),
                "pass": pass,
                "verdict": if pass == reports.len() { "PASS" } else { "FAIL" },
                "reports": reports,
            }));
        }
        None => print_json(&fences_report(&load(None, doc)?, level)),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let config = load_config(cli.config.as_deref())?;
    match &cli.command {
        Command::Classify { graph, trace, json: _, pretty } => cmd_classify(graph, *trace, *pretty),
        Command::Batch(args) => cmd_batch(args, &config),
        Command::Divergence(args) => cmd_divergence(args, &config),
        Command::Words { graph, op } => cmd_words(graph, op),
        Command::Fences { diagram, level } => cmd_fences(diagram, *level),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("racglab: {e}");
            ExitCode::from(e.code())
        }
    }
}
