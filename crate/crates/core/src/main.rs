//! Command-line front end: game simulation, Monte Carlo f estimation,
//! certificate search, weight audits, exact solving, closed-form bound
//! tables, and manifest replay.
//!
//! Exit codes: 0 success, 2 usage error, 3 cap/precondition violation,
//! 4 failed acceptance-style check (audit verdict, sandwich, certificate).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use online_ramsey::bounds;
use online_ramsey::builders;
use online_ramsey::error::SolverError;
use online_ramsey::exact;
use online_ramsey::graph::parse_named_graph;
use online_ramsey::harness;
use online_ramsey::manifest::{run_manifest, GameKind, RunManifest};
use online_ramsey::registry;

#[derive(Parser)]
#[command(name = "online-ramsey", version, about = "Online Ramsey and subgraph-query game toolkit")]
struct Cli {
    /// Root seed for all randomness.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Monte Carlo trials where applicable.
    #[arg(long, global = true, default_value_t = 1000)]
    trials: usize,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Manifest path: written by `simulate`, required by `replay`.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Play games and print their transcripts.
    Simulate(SimulateArgs),
    /// Re-run a saved manifest; output is byte-identical across runs.
    Replay,
    /// Estimate f̂ for a builder over a grid of probabilities.
    EstimateF(EstimateFArgs),
    /// Search for the best certified lower bound N* on the online Ramsey number.
    Certify(CertifyArgs),
    /// Monte Carlo audit of the aggregate weight bound.
    AuditWeights(AuditArgs),
    /// Exact desk-scale solvers.
    SolveExact(SolveArgs),
    /// Closed-form exponents and bounds as a table.
    TabulateBounds(TabulateArgs),
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    game: Game,
    #[arg(long)]
    builder: String,
    /// JSON object of builder parameters.
    #[arg(long, default_value = "{}")]
    builder_params: String,
    #[arg(long)]
    painter: Option<String>,
    #[arg(long, default_value = "{}")]
    painter_params: String,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Named target graph for the query game (K4, C5, H2, S3, E6).
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    turn_cap: usize,
    /// Games to play (defaults to 1 for simulation).
    #[arg(long, default_value_t = 1)]
    games: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Game {
    Colored,
    Query,
}

#[derive(Args)]
struct EstimateFArgs {
    #[arg(long)]
    builder: String,
    #[arg(long, default_value = "{}")]
    builder_params: String,
    #[arg(long)]
    target: String,
    /// Comma-separated probability grid, e.g. "0.4,0.3,0.2,0.1".
    #[arg(long)]
    p_grid: String,
    /// Append a least-squares slope of log f̂ against log p.
    #[arg(long)]
    fit: bool,
    /// Builder parameters that must track the grid probability get it
    /// injected under this key (e.g. "p" for bnf).
    #[arg(long)]
    p_param: Option<String>,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 12)]
    points_per_decade: usize,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long)]
    builder: String,
    #[arg(long, default_value = "{}")]
    builder_params: String,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    c: usize,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    big_n: usize,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    game: SolveGame,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 8)]
    vertex_budget: usize,
    #[arg(long)]
    turn_cap: Option<usize>,
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    budget: Option<usize>,
    /// On-disk result cache.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveGame {
    /// Minimax value of the budgeted colored game.
    Ramsey,
    /// Optimal success probability of the query game.
    Query,
    /// Least budget reaching success probability 1/2.
    F,
    /// r̃(m,n;p) vs. both query values.
    Sandwich,
}

#[derive(Args)]
struct TabulateArgs {
    #[arg(long, default_value_t = 4)]
    m_min: usize,
    #[arg(long, default_value_t = 12)]
    m_max: usize,
    #[arg(long, default_value_t = 0.1)]
    p: f64,
    #[arg(long, default_value_t = 10_000)]
    edges: u64,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: 2, message: msg.into() }
    }
    fn cap(msg: impl Into<String>) -> Self {
        Failure { code: 3, message: msg.into() }
    }
    fn check(msg: impl Into<String>) -> Self {
        Failure { code: 4, message: msg.into() }
    }
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        Failure::cap(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::cap(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// 12 significant digits, plain decimal where reasonable.
fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

fn parse_params(s: &str) -> Result<Value, Failure> {
    serde_json::from_str(s).map_err(|e| Failure::usage(format!("bad JSON parameters: {e}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.cmd {
        Cmd::Simulate(args) => simulate(&cli, args),
        Cmd::Replay => replay(&cli),
        Cmd::EstimateF(args) => estimate_f(&cli, args),
        Cmd::Certify(args) => certify(&cli, args),
        Cmd::AuditWeights(args) => audit(&cli, args),
        Cmd::SolveExact(args) => solve(&cli, args),
        Cmd::TabulateBounds(args) => tabulate(&cli, args),
    }
}

fn manifest_from_args(cli: &Cli, args: &SimulateArgs) -> Result<RunManifest, Failure> {
    let game = match args.game {
        Game::Colored => GameKind::Colored,
        Game::Query => GameKind::Query,
    };
    if game == GameKind::Colored && (args.painter.is_none() || args.m.is_none() || args.n.is_none())
    {
        return Err(Failure::usage("colored game needs --painter, --m and --n"));
    }
    if game == GameKind::Query && (args.target.is_none() || args.p.is_none()) {
        return Err(Failure::usage("query game needs --target and --p"));
    }
    Ok(RunManifest {
        experiment: "cli-simulate".into(),
        game,
        seed: cli.seed,
        trials: args.games,
        turn_cap: args.turn_cap,
        builder: args.builder.clone(),
        builder_params: parse_params(&args.builder_params)?,
        painter: args.painter.clone(),
        painter_params: parse_params(&args.painter_params)?,
        m: args.m,
        n: args.n,
        target: args.target.clone(),
        p: args.p,
        created_unix: online_ramsey::manifest::now_unix(),
    })
}

fn simulate(cli: &Cli, args: &SimulateArgs) -> Result<(), Failure> {
    let manifest = manifest_from_args(cli, args)?;
    if let Some(path) = &cli.manifest {
        std::fs::write(path, manifest.to_json())
            .map_err(|e| Failure::cap(format!("cannot write manifest: {e}")))?;
    }
    let report = run_manifest(&manifest).map_err(|e| Failure::cap(e.to_string()))?;
    emit(&cli.out, &report)
}

fn replay(cli: &Cli) -> Result<(), Failure> {
    let path = cli.manifest.as_ref().ok_or_else(|| Failure::usage("replay needs --manifest"))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read manifest: {e}")))?;
    let manifest =
        RunManifest::from_json(&text).map_err(|e| Failure::usage(format!("bad manifest: {e}")))?;
    let report = run_manifest(&manifest).map_err(|e| Failure::cap(e.to_string()))?;
    emit(&cli.out, &report)
}

fn estimate_f(cli: &Cli, args: &EstimateFArgs) -> Result<(), Failure> {
    let target = parse_named_graph(&args.target)
        .map_err(|e| Failure::usage(format!("bad target '{}': {e}", args.target)))?;
    let base_params = parse_params(&args.builder_params)?;
    let grid: Vec<f64> = args
        .p_grid
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::usage(format!("bad --p-grid: {e}")))?;
    if grid.is_empty() {
        return Err(Failure::usage("--p-grid must list at least one probability"));
    }
    let mut points = Vec::new();
    for &p in &grid {
        let mut params = base_params.clone();
        if let Some(key) = &args.p_param {
            params[key.as_str()] = json!(p);
        }
        // Constructing per trial keeps policies stateless across games.
        let builder_name = args.builder.clone();
        let make = move || {
            registry::make_builder(&builder_name, &params).expect("validated at startup")
        };
        // Validate once up front so errors surface as usage failures.
        registry::make_builder(&args.builder, {
            let mut check = base_params.clone();
            if let Some(key) = &args.p_param {
                check[key.as_str()] = json!(p);
            }
            &check.clone()
        })
        .map_err(|e| Failure::usage(e.to_string()))?;
        let f_hat =
            harness::estimate_f_hat(&make, &target, &args.target, p, cli.trials, cli.seed)
                .map_err(|e| Failure::cap(e.to_string()))?;
        points.push((p, f_hat));
    }
    let fit = if args.fit {
        let logs: Vec<(f64, f64)> =
            points.iter().map(|&(p, f)| (p.ln(), (f as f64).ln())).collect();
        Some(harness::slope_fit(&logs).map_err(Failure::usage)?)
    } else {
        None
    };
    let text = match cli.format {
        Format::Csv => {
            let mut s = String::from("p,f_hat\n");
            for &(p, f) in &points {
                s.push_str(&format!("{},{f}\n", sig12(p)));
            }
            if let Some((slope, stderr)) = fit {
                s.push_str(&format!("# slope,{},stderr,{}\n", sig12(slope), sig12(stderr)));
            }
            s
        }
        Format::Json => {
            let mut doc = json!({
                "builder": args.builder,
                "target": args.target,
                "trials": cli.trials,
                "points": points.iter().map(|&(p, f)| json!({"p": p, "f_hat": f})).collect::<Vec<_>>(),
            });
            if let Some((slope, stderr)) = fit {
                doc["slope"] = json!(slope);
                doc["slope_stderr"] = json!(stderr);
            }
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
        }
    };
    emit(&cli.out, &text)
}

fn certify(cli: &Cli, args: &CertifyArgs) -> Result<(), Failure> {
    if args.m < 3 || args.n < 3 {
        return Err(Failure::usage("certify needs m, n >= 3"));
    }
    let (n_star, cert) = bounds::best_certified_lower_bound(args.m, args.n, args.points_per_decade);
    // n_star = 0 with no certificate is a valid (vacuous) answer: the
    // inequality certifies nothing at this size.
    let text = match cli.format {
        Format::Csv => {
            let mut s = String::from("m,n,n_star,p,c,d,lhs\n");
            match &cert {
                Some(cert) => s.push_str(&format!(
                    "{},{},{n_star},{},{},{},{}\n",
                    args.m,
                    args.n,
                    sig12(cert.p),
                    cert.c,
                    cert.d,
                    sig12(cert.lhs_value()),
                )),
                None => s.push_str(&format!("{},{},0,,,,\n", args.m, args.n)),
            }
            s
        }
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({
                "m": args.m, "n": args.n, "n_star": n_star, "certificate": cert,
            }))
            .expect("serializable")
        ),
    };
    emit(&cli.out, &text)
}

fn audit(cli: &Cli, args: &AuditArgs) -> Result<(), Failure> {
    let params = parse_params(&args.builder_params)?;
    registry::make_builder(&args.builder, &params).map_err(|e| Failure::usage(e.to_string()))?;
    let builder_name = args.builder.clone();
    let make = move || registry::make_builder(&builder_name, &params).expect("validated");
    let report = online_ramsey::audit::audit_run(
        &make,
        args.m,
        args.c,
        args.p,
        args.big_n,
        cli.trials,
        cli.seed,
    )
    .map_err(|e| Failure::cap(e.to_string()))?;
    let text = format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable"));
    emit(&cli.out, &text)?;
    if !report.verdict {
        return Err(Failure::check(format!(
            "audited mean {} + 3se exceeds bound {}",
            report.mean, report.bound
        )));
    }
    Ok(())
}

fn solve(cli: &Cli, args: &SolveArgs) -> Result<(), Failure> {
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| Failure::usage(format!("solve-exact: missing --{name}")))
    };
    match args.game {
        SolveGame::Ramsey => {
            let m = need(args.m, "m")?;
            let n = need(args.n, "n")?;
            let vb = args.vertex_budget;
            let cap = args.turn_cap.unwrap_or(vb * vb.saturating_sub(1) / 2);
            let key = exact::ramsey_cache_key(m, n, vb, cap);
            let mut cache = args.cache.clone().map(exact::SolverCache::open);
            let report_json = match cache.as_ref().and_then(|c| c.get(&key)).cloned() {
                Some(hit) => hit,
                None => {
                    let report = exact::exact_online_ramsey_report(m, n, vb, cap)?;
                    let v = serde_json::to_value(&report).expect("serializable");
                    if let Some(c) = cache.as_mut() {
                        c.put(key, v.clone());
                        c.save().map_err(|e| Failure::cap(format!("cache write: {e}")))?;
                    }
                    v
                }
            };
            emit(&cli.out, &format!("{}\n", serde_json::to_string_pretty(&report_json).unwrap()))
        }
        SolveGame::Query | SolveGame::F => {
            let target_name =
                args.target.as_ref().ok_or_else(|| Failure::usage("missing --target"))?;
            let target = parse_named_graph(target_name)
                .map_err(|e| Failure::usage(format!("bad target: {e}")))?;
            let p = args.p.ok_or_else(|| Failure::usage("missing --p"))?;
            let doc = if matches!(args.game, SolveGame::Query) {
                let budget = need(args.budget, "budget")?;
                let v = exact::exact_query_value(&target, p, budget, args.vertex_budget)?;
                json!({"target": target_name, "p": p, "budget": budget, "value": v})
            } else {
                let (f, prob) = exact::exact_f(&target, p, args.vertex_budget)?;
                json!({"target": target_name, "p": p, "f": f, "probability": prob})
            };
            emit(&cli.out, &format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))
        }
        SolveGame::Sandwich => {
            let m = need(args.m, "m")?;
            let n = need(args.n, "n")?;
            let p = args.p.ok_or_else(|| Failure::usage("missing --p"))?;
            let report = exact::theorem_sandwich_check(m, n, p, args.vertex_budget)?;
            emit(
                &cli.out,
                &format!("{}\n", serde_json::to_string_pretty(&report).unwrap()),
            )?;
            if !report.sandwich_ok {
                return Err(Failure::check("sandwich inequality failed".to_string()));
            }
            Ok(())
        }
    }
}

fn tabulate(cli: &Cli, args: &TabulateArgs) -> Result<(), Failure> {
    if args.m_min < 4 || args.m_max < args.m_min {
        return Err(Failure::usage("need 4 <= m_min <= m_max"));
    }
    if !(args.p > 0.0 && args.p < 1.0) {
        return Err(Failure::usage("--p must lie in (0,1)"));
    }
    let mut rows: Vec<(usize, usize, &str, String, String, String)> = Vec::new();
    for m in args.m_min..=args.m_max {
        let c = bounds::f_lower_optimal_c(m).map_err(|e| Failure::cap(e.to_string()))?;
        let e = bounds::f_lower_exponent(m, c).map_err(|e| Failure::cap(e.to_string()))?;
        let v = bounds::f_lower_bound(m, c, args.p).map_err(|e| Failure::cap(e.to_string()))?;
        rows.push((
            m,
            0,
            "f_lower",
            format!("-{e}"),
            sig12(v.log10()),
            format!("p={};c={c}", sig12(args.p)),
        ));
        let (a, b) = builders::choose_ab(m);
        let te = builders::bnf_turn_exponent(a, b).map_err(|e| Failure::cap(e.to_string()))?;
        rows.push((
            m,
            0,
            "bnf_turns",
            te.to_string(),
            sig12((te.numer().to_owned() as f64 / *te.denom() as f64) * args.p.log10()),
            format!("p={};a={a};b={b}", sig12(args.p)),
        ));
        let cm = bounds::cm(m).map_err(|e| Failure::cap(e.to_string()))?;
        rows.push((m, 0, "cm", cm.to_string(), String::from("0"), String::new()));
        let ts = bounds::t_star(m, args.p, args.edges);
        rows.push((
            m,
            0,
            "t_star",
            format!("{}/2", m),
            sig12(ts.log10()),
            format!("p={};edges={}", sig12(args.p), args.edges),
        ));
    }
    let text = match cli.format {
        Format::Csv => {
            let mut s = String::from("m,n,quantity,exponent,value_log10,parameters\n");
            for (m, n, q, e, v, prm) in &rows {
                s.push_str(&format!("{m},{n},{q},{e},{v},{prm}\n"));
            }
            s
        }
        Format::Json => {
            let arr: Vec<Value> = rows
                .iter()
                .map(|(m, n, q, e, v, prm)| {
                    json!({"m": m, "n": n, "quantity": q, "exponent": e, "value_log10": v, "parameters": prm})
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&arr).expect("serializable"))
        }
    };
    emit(&cli.out, &text)
}
