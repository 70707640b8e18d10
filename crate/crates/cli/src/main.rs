use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use ppower_core::constructions::{affine_line_code, diagonal_set, hadamard_paley_code};
use ppower_core::delsarte::{
    builtin_p, builtin_q, certificate_bound, check_delsarte_inequalities, distance_distribution, divisible_distances,
    lp_solve, macwilliams,
};
use ppower_core::exact;
use ppower_core::graph::{p_power_capped, strong_power_capped};
use ppower_core::linalg::smallest_divisor;
use ppower_core::ramsey::{bounds, dimension_count, entropy_bound};
use ppower_core::reproduce::reproduce_all;
use ppower_core::search::{hamming_space_search, max_clique, max_independent_set, witness_words, DistanceRelation};
use ppower_core::spectral::{
    hoffman_bound, hoffman_bound_exact, hoffman_floor, kn_power_spectrum_exact, power_spectrum, xal_upper_bound,
    BaseSpectralData,
};
use ppower_core::{CertificatePolynomial, Code, Error, Graph, PowerParams, SearchConfig, SearchResult};

#[derive(Parser)]
#[command(name = "ppower", version, about = "p-powers of graphs: exact search, bounds and constructions")]
struct Cli {
    /// Print results as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for exact search (1 = serial, 0 = all cores).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Largest graph that will be materialized.
    #[arg(long, global = true, env = "PPOWER_MAX_VERTICES", default_value_t = ppower_core::DEFAULT_MAX_VERTICES)]
    max_vertices: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Materialize a p-power (or strong power) of a graph.
    Power {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        k: usize,
        /// Modulus; omit together with --strong for the strong power.
        #[arg(long, required_unless_present = "strong")]
        p: Option<usize>,
        #[arg(long)]
        strong: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Independence number of a graph or of its p-power.
    Alpha(SearchArgs),
    /// Clique number of a graph or of its p-power.
    Omega(SearchArgs),
    /// Upper bounds.
    #[command(subcommand)]
    Bound(BoundCommand),
    /// Explicit codes with all distances divisible by p.
    Construct {
        kind: ConstructKind,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Eigenvalues of a p-power of a regular graph.
    Spectrum {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
        /// Exact integer spectrum; the base must be complete.
        #[arg(long)]
        exact: bool,
    },
    /// Operations on code files.
    #[command(subcommand)]
    Code(CodeCommand),
    /// Recompute the published reference values.
    #[command(subcommand)]
    Reproduce(ReproduceCommand),
}

#[derive(Args)]
struct GraphArg {
    /// Graph file, or one of K<n>, C<n>, P<n>, E<n>, petersen.
    #[arg(long)]
    graph: String,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long, requires = "p")]
    k: Option<usize>,
    #[arg(long, requires = "k")]
    p: Option<usize>,
    /// Search-tree node budget.
    #[arg(long, env = "PPOWER_SEARCH_BUDGET", default_value_t = ppower_core::DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Materialize the power even for a complete base.
    #[arg(long)]
    explicit: bool,
}

#[derive(Subcommand)]
enum BoundCommand {
    /// Delsarte LP or certificate bound on codes with distances divisible by p.
    Delsarte {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
        /// P, Q, lp, or a certificate JSON file.
        #[arg(long, default_value = "lp")]
        certificate: String,
    },
    /// Hoffman ratio bound on the independence number of a p-power.
    Hoffman {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        exact: bool,
    },
    /// Gram-rank bounds.
    Rank {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        regular: bool,
    },
    /// Entropy bound on the growth rate of alpha for complete graphs.
    Entropy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        k: Option<usize>,
    },
    /// max{rho1, rho2} bound for a regular graph.
    Xal {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        p: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    Lines,
    Hadamard,
    Diagonal,
}

#[derive(Subcommand)]
enum CodeCommand {
    /// Check pairwise distances and the Delsarte inequalities.
    Check {
        /// Code file; stdin when omitted.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        p: usize,
        /// Alphabet size; inferred from the symbols when omitted.
        #[arg(long)]
        q: Option<usize>,
    },
}

#[derive(Subcommand)]
enum ReproduceCommand {
    /// Table of computed versus reference values.
    Paper,
}

/// Outcome of a command: 0 success, 1 refusal (cap or budget).
enum Outcome {
    Done(Value),
    Refused(Value),
}

fn load_graph(spec: &str) -> Result<Graph, Error> {
    let path = Path::new(spec);
    if path.exists() {
        return std::fs::read_to_string(path)?.parse();
    }
    let num = |prefix: &str| spec.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok()).filter(|&n| n > 0);
    if spec.eq_ignore_ascii_case("petersen") {
        return Ok(Graph::petersen());
    }
    if let Some(n) = num("K") {
        return Ok(Graph::complete(n));
    }
    if let Some(n) = num("C").filter(|&n| n >= 3) {
        return Ok(Graph::cycle(n));
    }
    if let Some(n) = num("P") {
        return Ok(Graph::path(n));
    }
    if let Some(n) = num("E") {
        return Ok(Graph::empty(n));
    }
    Err(Error::InvalidInput(format!("no graph file or builtin named {spec:?}")))
}

fn is_complete(g: &Graph) -> bool {
    let n = g.vertex_count();
    n >= 2 && g.regularity() == Some(n - 1)
}

fn write_or_print(out: &Option<PathBuf>, text: &str) -> Result<Option<String>, Error> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(Some(path.display().to_string()))
        }
        None => {
            print!("{text}");
            Ok(None)
        }
    }
}

fn search_value(result: &SearchResult, words: Option<Vec<Vec<usize>>>) -> Value {
    let mut v = json!({
        "optimum": result.optimum,
        "proven_optimal": result.proven_optimal,
        "node_count": result.node_count,
        "witness": result.witness,
    });
    if let Some(w) = words {
        v["witness_tuples"] = json!(w);
    }
    v
}

fn run_search(args: &SearchArgs, cli: &Cli, clique: bool) -> Result<Outcome, Error> {
    let g = load_graph(&args.graph.graph)?;
    let cfg = SearchConfig::with_budget(args.budget).threads(cli.threads);
    let result = match (args.k, args.p) {
        (Some(k), Some(p)) => {
            let params = PowerParams::new(k, p)?;
            let n = g.vertex_count();
            if is_complete(&g) && !args.explicit {
                let relation = if clique { DistanceRelation::NonDivisible } else { DistanceRelation::Divisible };
                let r = if clique {
                    hamming_space_search(n, k, p, relation, cfg)?
                } else {
                    ppower_core::search::divisible_code_search(n, k, p, cfg)?
                };
                let words = witness_words(n, k, &r.witness);
                (search_value(&r, Some(words)), r.proven_optimal)
            } else {
                let power = p_power_capped(&g, params, cli.max_vertices)?;
                let r = if clique { max_clique(&power, cfg) } else { max_independent_set(&power, cfg) };
                let words = witness_words(n, k, &r.witness);
                (search_value(&r, Some(words)), r.proven_optimal)
            }
        }
        _ => {
            let r = if clique { max_clique(&g, cfg) } else { max_independent_set(&g, cfg) };
            (search_value(&r, None), r.proven_optimal)
        }
    };
    Ok(if result.1 { Outcome::Done(result.0) } else { Outcome::Refused(result.0) })
}

fn delsarte(q: usize, k: usize, p: usize, certificate: &str) -> Result<Value, Error> {
    let allowed = divisible_distances(k, p);
    let cert = match certificate {
        "lp" | "LP" => {
            let rep = lp_solve(q, k, &allowed)?;
            return Ok(json!({
                "method": "lp",
                "bound": exact::to_string(&rep.bound),
                "floor": exact::floor(&rep.bound).to_string(),
                "distribution": rep.distribution.iter().map(exact::to_string).collect::<Vec<_>>(),
                "certificate": serde_json::to_value(&rep.certificate)?,
                "pivots": rep.pivots,
            }));
        }
        "P" | "Q" => {
            if q != 3 || p != 3 {
                return Err(Error::InvalidInput("certificates P and Q are for q = p = 3".into()));
            }
            if certificate == "P" {
                builtin_p(k)?
            } else {
                builtin_q(k)?
            }
        }
        path => CertificatePolynomial::from_json(&std::fs::read_to_string(path)?)?,
    };
    if let Some(d) = allowed.iter().find(|d| !cert.allowed.contains(d)) {
        return Err(Error::InvalidInput(format!("certificate does not cover distance {d}")));
    }
    let bound = certificate_bound(&cert, q, k)?;
    Ok(json!({
        "method": certificate,
        "bound": exact::to_string(&bound),
        "floor": exact::floor(&bound).to_string(),
        "certificate": serde_json::to_value(&cert)?,
    }))
}

fn spectrum_for(g: &Graph, k: usize, p: usize, exact_path: bool) -> Result<ppower_core::PowerSpectrum, Error> {
    if exact_path {
        if !is_complete(g) {
            return Err(Error::InvalidInput("--exact needs a complete base graph".into()));
        }
        kn_power_spectrum_exact(g.vertex_count(), k, p)
    } else {
        power_spectrum(&BaseSpectralData::from_graph(g)?, k, p)
    }
}

fn bound(cmd: &BoundCommand) -> Result<Value, Error> {
    match cmd {
        BoundCommand::Delsarte { q, k, p, certificate } => delsarte(*q, *k, *p, certificate),
        BoundCommand::Hoffman { graph, k, p, exact: exact_path } => {
            let g = load_graph(&graph.graph)?;
            let spec = spectrum_for(&g, *k, *p, *exact_path)?;
            let value = if spec.is_exact() {
                exact::to_string(&hoffman_bound_exact(&spec)?)
            } else {
                hoffman_bound(&spec)?.to_string()
            };
            Ok(json!({
                "bound": value,
                "floor": hoffman_floor(&spec)?.to_string(),
                "mu1": spec.mu1().to_string(),
                "mu_min": spec.mu_min().to_string(),
                "vertices": spec.vertex_count().to_string(),
            }))
        }
        BoundCommand::Rank { n, k, p, regular } => Ok(serde_json::to_value(bounds(*n, *k, *p, *regular)?)?),
        BoundCommand::Entropy { n, p, k } => {
            if *n < 2 || *p < 2 {
                return Err(Error::InvalidInput("need n >= 2 and p >= 2".into()));
            }
            let mut v = json!({ "n": n, "p": p, "entropy_bound": entropy_bound(*n, *p) });
            if let Some(k) = k {
                let count = dimension_count(*n, *k, *p);
                let root = count.to_string().parse::<f64>().unwrap_or(f64::INFINITY).powf(1.0 / *k as f64);
                v["k"] = json!(k);
                v["dimension_count"] = json!(count.to_string());
                v["dimension_count_root"] = json!(root);
            }
            Ok(v)
        }
        BoundCommand::Xal { graph, p } => {
            let g = load_graph(&graph.graph)?;
            let base = BaseSpectralData::from_graph(&g)?;
            let q = smallest_divisor(*p);
            Ok(serde_json::to_value(xal_upper_bound(base.n, base.d, base.lambda, q)?)?)
        }
    }
}

fn construct(
    kind: ConstructKind,
    p: Option<usize>,
    n: Option<usize>,
    out: &Option<PathBuf>,
    json: bool,
) -> Result<Value, Error> {
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| Error::InvalidInput(format!("--{name} is required")));
    let w = match kind {
        ConstructKind::Lines => affine_line_code(need(p, "p")?)?,
        ConstructKind::Hadamard => hadamard_paley_code(),
        ConstructKind::Diagonal => diagonal_set(need(n, "n")?, need(p, "p")?)?,
    };
    let text = w.to_text();
    let written = if out.is_some() || !json { write_or_print(out, &text)? } else { None };
    let mut v = json!({
        "provenance": w.provenance,
        "q": w.code.alphabet(),
        "k": w.k(),
        "p": w.p,
        "size": w.len(),
        "verified": w.verify(),
        "out": written,
    });
    if out.is_none() {
        v["code"] = json!(text);
    }
    Ok(v)
}

fn code_check(file: &Option<PathBuf>, p: usize, q: Option<usize>) -> Result<Value, Error> {
    let text = match file {
        Some(path) => std::fs::read_to_string(path)?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    if p < 2 {
        return Err(Error::InvalidInput("p must be >= 2".into()));
    }
    let code = Code::parse(&text, q)?;
    let dist = distance_distribution(&code)?;
    let sums = check_delsarte_inequalities(&code);
    let mw = macwilliams(&dist, code.alphabet())?;
    let mut distances: Vec<usize> = code.pair_distances().collect();
    distances.sort_unstable();
    distances.dedup();
    Ok(json!({
        "q": code.alphabet(),
        "k": code.length(),
        "size": code.len(),
        "distances": distances,
        "all_divisible": code.all_distances_divisible(p),
        "distance_distribution": dist.b.iter().map(exact::to_string).collect::<Vec<_>>(),
        "delsarte_sums": sums.iter().map(exact::to_string).collect::<Vec<_>>(),
        "delsarte_ok": mw.is_nonnegative(),
    }))
}

fn execute(cli: &Cli) -> Result<Outcome, Error> {
    let done = |v: Value| Ok(Outcome::Done(v));
    match &cli.command {
        Command::Power { graph, k, p, strong, out } => {
            let g = load_graph(&graph.graph)?;
            let power = match (strong, p) {
                (true, _) => strong_power_capped(&g, *k, cli.max_vertices)?,
                (false, Some(p)) => p_power_capped(&g, PowerParams::new(*k, *p)?, cli.max_vertices)?,
                (false, None) => return Err(Error::InvalidInput("--p is required".into())),
            };
            let written = if out.is_some() { write_or_print(out, &power.to_text())? } else { None };
            if out.is_none() && !cli.json {
                print!("{}", power.to_text());
                return Ok(Outcome::Done(Value::Null));
            }
            let mut v = json!({
                "vertices": power.vertex_count(),
                "edges": power.edge_count(),
                "regularity": power.regularity(),
                "out": written,
            });
            if out.is_none() {
                v["graph"] = json!(power.to_text());
            }
            done(v)
        }
        Command::Alpha(args) => run_search(args, cli, false),
        Command::Omega(args) => run_search(args, cli, true),
        Command::Bound(cmd) => done(bound(cmd)?),
        Command::Construct { kind, p, n, out } => {
            let v = construct(*kind, *p, *n, out, cli.json)?;
            if out.is_none() && !cli.json {
                return Ok(Outcome::Done(Value::Null));
            }
            done(v)
        }
        Command::Spectrum { graph, k, p, exact: exact_path } => {
            let g = load_graph(&graph.graph)?;
            let spec = spectrum_for(&g, *k, *p, *exact_path)?;
            done(serde_json::to_value(&spec)?)
        }
        Command::Code(CodeCommand::Check { file, p, q }) => done(code_check(file, *p, *q)?),
        Command::Reproduce(ReproduceCommand::Paper) => {
            let cfg = SearchConfig::default().threads(cli.threads);
            let rows = reproduce_all(cfg);
            let all = rows.iter().all(|r| r.agrees);
            if !cli.json {
                for r in &rows {
                    println!(
                        "{:<14} {:<5} {:<48} computed {:<28} reference {}",
                        r.id,
                        if r.agrees { "ok" } else { "DIFF" },
                        r.quantity,
                        r.computed,
                        r.reference
                    );
                }
                return Ok(if all { Outcome::Done(Value::Null) } else { Outcome::Refused(Value::Null) });
            }
            let v = json!({ "rows": serde_json::to_value(&rows)?, "all_agree": all });
            Ok(if all { Outcome::Done(v) } else { Outcome::Refused(v) })
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Power { .. } => "power",
        Command::Alpha(_) => "alpha",
        Command::Omega(_) => "omega",
        Command::Bound(BoundCommand::Delsarte { .. }) => "bound delsarte",
        Command::Bound(BoundCommand::Hoffman { .. }) => "bound hoffman",
        Command::Bound(BoundCommand::Rank { .. }) => "bound rank",
        Command::Bound(BoundCommand::Entropy { .. }) => "bound entropy",
        Command::Bound(BoundCommand::Xal { .. }) => "bound xal",
        Command::Construct { .. } => "construct",
        Command::Spectrum { .. } => "spectrum",
        Command::Code(_) => "code check",
        Command::Reproduce(_) => "reproduce paper",
    }
}

fn print_human(prefix: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            for (key, val) in map {
                let name = if prefix.is_empty() { key.clone() } else { format!("{prefix}.{key}") };
                print_human(&name, val);
            }
        }
        Value::Null if prefix.is_empty() => {}
        Value::String(s) => println!("{prefix}: {s}"),
        other => println!("{prefix}: {other}"),
    }
}

fn emit(cli: &Cli, result: &Value, elapsed_ms: u128) {
    if cli.json {
        let mut top = Map::new();
        top.insert("command".into(), json!(command_name(&cli.command)));
        top.insert("args".into(), json!(std::env::args().skip(1).collect::<Vec<_>>()));
        top.insert("results".into(), result.clone());
        top.insert("elapsed_ms".into(), json!(elapsed_ms));
        println!("{}", Value::Object(top));
    } else {
        print_human("", result);
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    match execute(&cli) {
        Ok(Outcome::Done(v)) => {
            emit(&cli, &v, start.elapsed().as_millis());
            ExitCode::SUCCESS
        }
        Ok(Outcome::Refused(v)) => {
            emit(&cli, &v, start.elapsed().as_millis());
            eprintln!("search budget exhausted; result is a lower bound");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::SizeCap { .. } => 1,
                _ => 2,
            })
        }
    }
}
