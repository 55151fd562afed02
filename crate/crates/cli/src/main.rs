//! Command-line front end: exact matching, the phased improver, certified
//! brackets, the sampling estimator, neighborhood statistics, convergence
//! experiments, and family generation.
//!
//! Human-readable tables go to stdout; structured JSON goes to `--out`.
//! Identical flags and seeds produce byte-identical structured output, so
//! reports never embed wall-clock timings.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use matchprobe::hashing::hash3;
use matchprobe::{
    ball_distribution, io as graph_io, matching_ratio, maximum_matching,
    run_convergence_experiment, run_improver, verify_bracket, Error, FamilySpec, Graph,
    ImproverConfig, Oracle, OracleConfig,
};

#[derive(Parser)]
#[command(name = "matchprobe", version, about = "Bounded-degree matching toolkit")]
struct Cli {
    /// Worker threads for parallel sections (0 = library default).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Write the structured JSON report to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact maximum matching (blossom search) and the ratio m(G).
    Exact {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Run the phased local improver and report the matching it builds.
    Improve {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        improver: ImproverArgs,
    },
    /// Improve, then verify a certified bracket for the true ratio.
    Certify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        improver: ImproverArgs,
        /// Also compute the exact ratio and assert it lies in the bracket.
        #[arg(long)]
        check_exact: bool,
    },
    /// Estimate the matching ratio by sampling the local oracle.
    Estimate {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        improver: ImproverArgs,
        /// Target accuracy of the estimate.
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
        /// Failure probability of the bracket.
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        /// Optional cap on adjacency probes per query.
        #[arg(long)]
        probe_budget: Option<u64>,
    },
    /// Empirical distribution of rooted-ball types.
    Stats {
        #[command(flatten)]
        input: InputArgs,
        /// Ball radius.
        #[arg(long, default_value_t = 2)]
        radius: usize,
        /// Show at most this many rows in the table (the report has all).
        #[arg(long, default_value_t = 20)]
        top: usize,
    },
    /// Convergence experiment: one family across several sizes.
    Converge {
        /// Family template, e.g. cycle:n=10 or random_regular:n=10,d=3,seed=1.
        #[arg(long)]
        family: String,
        /// Comma-separated sizes, e.g. 100,1000,10000.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Ball radius for the distributions.
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[command(flatten)]
        improver: ImproverArgs,
        /// Use the exact solver for every size (otherwise the estimator).
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        /// Also write plot-ready CSV (n, tv, m_lower, m_upper) here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Generate a family graph and write it as an edge list to --out.
    Gen {
        /// Family spec, e.g. random_regular:n=1000,d=3,seed=7.
        #[arg(long)]
        family: String,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Edge-list file to load.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Family spec, e.g. cycle:n=100 or random_regular:n=1000,d=3,seed=7.
    #[arg(long)]
    family: Option<String>,
}

impl InputArgs {
    fn load(&self) -> Result<(Graph, String), Error> {
        match (&self.input, &self.family) {
            (Some(path), None) => {
                let g = graph_io::load_graph(path)?;
                Ok((g, path.display().to_string()))
            }
            (None, Some(text)) => {
                let spec = FamilySpec::parse(text)?;
                let g = spec.generate()?;
                Ok((g, spec.to_string()))
            }
            _ => unreachable!("clap enforces exactly one source"),
        }
    }
}

#[derive(Args)]
struct ImproverArgs {
    /// Augmenting-path length cap of the improver and certificate.
    #[arg(long, default_value_t = 3)]
    path_cap: usize,
    /// Improvement rounds.
    #[arg(long, default_value_t = 5)]
    phases: usize,
    /// Seed for every randomized choice.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl ImproverArgs {
    fn config(&self) -> Result<ImproverConfig, Error> {
        ImproverConfig::new(self.path_cap, self.phases, self.seed)
    }
}

fn main() {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("error: could not configure {} threads: {e}", cli.threads);
            std::process::exit(2);
        }
    }
    match run(&cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BallTooLarge { .. }
        | Error::TooLarge { .. }
        | Error::ProbeBudgetExceeded { .. }
        | Error::RetryBudgetExceeded { .. }
        | Error::InfeasibleSpec(_) => 3,
        _ => 2,
    }
}

// Worker count stays out of the manifest: results are contractually
// identical for every thread count, and reports must be byte-identical too.
fn manifest(subcommand: &str, source: &str, extra: serde_json::Value) -> serde_json::Value {
    json!({
        "subcommand": subcommand,
        "version": env!("CARGO_PKG_VERSION"),
        "source": source,
        "config": extra,
    })
}

fn emit(report: &serde_json::Value, out: &Option<PathBuf>) -> Result<(), Error> {
    if let Some(path) = out {
        let mut text = serde_json::to_string_pretty(report).expect("report serializes");
        text.push('\n');
        std::fs::write(path, text)?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Error> {
    match &cli.command {
        Command::Exact { input } => {
            let (g, source) = input.load()?;
            let started = Instant::now();
            let m = maximum_matching(&g);
            let elapsed = started.elapsed();
            let ratio = matching_ratio(&g, &m);
            println!("graph      {source}");
            println!("vertices   {}", g.vertex_count());
            println!("edges      {}", g.edge_count());
            println!("matching   {} edges", m.edge_count());
            println!("ratio      {} = {:.6}", ratio, ratio.value());
            println!("elapsed    {} ms", elapsed.as_millis());
            let report = json!({
                "manifest": manifest("exact", &source, json!({})),
                "n": g.vertex_count(),
                "graph_edges": g.edge_count(),
                "matched_edges": m.edge_count(),
                "ratio": { "numer": ratio.numer, "denom": ratio.denom, "value": ratio.value() },
            });
            emit(&report, &cli.out)
        }
        Command::Improve { input, improver } => {
            let (g, source) = input.load()?;
            let cfg = improver.config()?;
            let started = Instant::now();
            let m = run_improver(&g, &cfg);
            let elapsed = started.elapsed();
            let s = m.edge_count() as f64 / g.vertex_count().max(1) as f64;
            println!("graph      {source}");
            println!(
                "improver   cap={} phases={} seed={}",
                cfg.path_cap, cfg.phases, cfg.seed
            );
            println!("matching   {} edges (s = {:.6})", m.edge_count(), s);
            println!("elapsed    {} ms", elapsed.as_millis());
            let report = json!({
                "manifest": manifest("improve", &source,
                    json!({"path_cap": cfg.path_cap, "phases": cfg.phases, "seed": cfg.seed})),
                "n": g.vertex_count(),
                "matched_edges": m.edge_count(),
                "s": s,
            });
            emit(&report, &cli.out)
        }
        Command::Certify {
            input,
            improver,
            check_exact,
        } => {
            let (g, source) = input.load()?;
            let cfg = improver.config()?;
            let started = Instant::now();
            let m = run_improver(&g, &cfg);
            let bracket = verify_bracket(&g, &m, cfg.path_cap);
            let elapsed = started.elapsed();
            println!("graph      {source}");
            println!(
                "improver   cap={} phases={} seed={}",
                cfg.path_cap, cfg.phases, cfg.seed
            );
            println!(
                "bracket    [{:.6}, {:.6}]  (s = {:.6}, q = {:.6})",
                bracket.lower(),
                bracket.upper(),
                bracket.matched_ratio(),
                bracket.bad_fraction()
            );
            let mut exact_block = json!(null);
            if *check_exact {
                let exact = maximum_matching(&g);
                let ratio = matching_ratio(&g, &exact);
                let contained = bracket.contains_edge_count(exact.edge_count() as u64);
                println!(
                    "exact      m = {:.6} ({} edges), inside bracket: {}",
                    ratio.value(),
                    exact.edge_count(),
                    contained
                );
                exact_block = json!({
                    "matched_edges": exact.edge_count(),
                    "ratio": ratio.value(),
                    "contained": contained,
                });
            }
            println!("elapsed    {} ms", elapsed.as_millis());
            let report = json!({
                "manifest": manifest("certify", &source,
                    json!({"path_cap": cfg.path_cap, "phases": cfg.phases, "seed": cfg.seed,
                           "check_exact": check_exact})),
                "n": bracket.n,
                "matched_edges": bracket.matched_edges,
                "bad_vertices": bracket.bad_vertices,
                "path_cap": bracket.path_cap,
                "s": bracket.matched_ratio(),
                "q": bracket.bad_fraction(),
                "lower": bracket.lower(),
                "upper": bracket.upper(),
                "exact": exact_block,
            });
            emit(&report, &cli.out)
        }
        Command::Estimate {
            input,
            improver,
            epsilon,
            delta,
            probe_budget,
        } => {
            let (g, source) = input.load()?;
            let cfg = OracleConfig {
                improver: improver.config()?,
                probe_budget: *probe_budget,
            };
            let sample_seed = hash3(cfg.improver.seed, 0xE57, 0);
            let started = Instant::now();
            let oracle = Oracle::new(&g, cfg);
            let report = oracle.estimate_matching_ratio(*epsilon, *delta, sample_seed)?;
            let elapsed = started.elapsed();
            println!("graph      {source}");
            println!(
                "estimator  cap={} phases={} seed={} epsilon={} delta={}",
                cfg.improver.path_cap, cfg.improver.phases, cfg.improver.seed, epsilon, delta
            );
            println!("samples    {}", report.samples);
            println!("s_hat      {:.6}", report.s_hat);
            println!("q_hat      {:.6}", report.q_hat);
            println!("bracket    [{:.6}, {:.6}]", report.lower, report.upper);
            println!(
                "probes     {} total, {:.1} per query",
                report.probes,
                report.probes_per_query()
            );
            println!("elapsed    {} ms", elapsed.as_millis());
            let body = json!({
                "manifest": manifest("estimate", &source,
                    json!({"path_cap": cfg.improver.path_cap, "phases": cfg.improver.phases,
                           "seed": cfg.improver.seed, "sample_seed": sample_seed,
                           "probe_budget": probe_budget})),
                "report": report,
            });
            emit(&body, &cli.out)
        }
        Command::Stats { input, radius, top } => {
            let (g, source) = input.load()?;
            let started = Instant::now();
            let dist = ball_distribution(&g, *radius)?;
            let elapsed = started.elapsed();
            println!("graph      {source}");
            println!("radius     {radius}");
            println!("types      {}", dist.type_count());
            println!("digest     {:016x}", dist.digest());
            let mut rows: Vec<(String, u64)> = dist
                .counts()
                .map(|(code, count)| (format!("{code}"), count))
                .collect();
            rows.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
            for (digest, count) in rows.iter().take(*top) {
                println!(
                    "  {digest}  {count:>8}  {:.6}",
                    *count as f64 / dist.total() as f64
                );
            }
            if rows.len() > *top {
                println!("  ... {} more types", rows.len() - top);
            }
            println!("elapsed    {} ms", elapsed.as_millis());
            let types: Vec<serde_json::Value> = dist
                .counts()
                .map(|(code, count)| {
                    json!({
                        "type": format!("{code}"),
                        "count": count,
                        "weight": count as f64 / dist.total() as f64,
                    })
                })
                .collect();
            let report = json!({
                "manifest": manifest("stats", &source, json!({"radius": radius})),
                "n": dist.total(),
                "radius": radius,
                "digest": format!("{:016x}", dist.digest()),
                "types": types,
            });
            emit(&report, &cli.out)
        }
        Command::Converge {
            family,
            sizes,
            radius,
            improver,
            exact,
            epsilon,
            delta,
            csv,
        } => {
            let model = FamilySpec::parse(family)?;
            let cfg = OracleConfig::new(improver.config()?);
            let started = Instant::now();
            let trace =
                run_convergence_experiment(&model, sizes, *radius, &cfg, *exact, *epsilon, *delta)?;
            let elapsed = started.elapsed();
            println!("family     {family}");
            println!("radius     {radius}");
            println!(
                "{:>10}  {:>12}  {:>10}  {:>10}  {:>10}",
                "n", "tv_to_prev", "m_lower", "m_upper", "m_exact"
            );
            for e in &trace.entries {
                println!(
                    "{:>10}  {:>12}  {:>10.6}  {:>10.6}  {:>10}",
                    e.n,
                    e.tv_to_prev.map_or("-".to_string(), |t| format!("{t:.6}")),
                    e.m_lower,
                    e.m_upper,
                    e.m_exact.map_or("-".to_string(), |m| format!("{m:.6}")),
                );
            }
            println!("elapsed    {} ms", elapsed.as_millis());
            if let Some(path) = csv {
                let mut text = String::from("n,tv,m_lower,m_upper\n");
                for e in &trace.entries {
                    text.push_str(&format!(
                        "{},{},{},{}\n",
                        e.n,
                        e.tv_to_prev.map_or(String::new(), |t| t.to_string()),
                        e.m_lower,
                        e.m_upper
                    ));
                }
                std::fs::write(path, text)?;
            }
            if let Some(path) = &cli.out {
                std::fs::write(path, trace.to_jsonl())?;
            }
            Ok(())
        }
        Command::Gen { family } => {
            let spec = FamilySpec::parse(family)?;
            let g = spec.generate()?;
            println!("family     {spec}");
            println!("vertices   {}", g.vertex_count());
            println!("edges      {}", g.edge_count());
            match &cli.out {
                Some(path) => {
                    graph_io::save_graph(&g, path)?;
                    println!("written    {}", path.display());
                    Ok(())
                }
                None => Err(Error::InvalidParameter(
                    "gen requires --out for the edge list".into(),
                )),
            }
        }
    }
}
