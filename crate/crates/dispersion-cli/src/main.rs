//! Batch front end over the dispersion library. Exit codes: 0 success (or
//! decision true), 1 validation failure or decision false, 2 usage error,
//! 3 enumeration budget exceeded.

use std::fs;
use std::path::PathBuf;
use std::process;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dispersion_core::{
    ball_check, default_suite, dispersion_witness, exact_solve, find_reaching, gen_euclidean,
    graph_to_instance, greedy_solve_timed, io, run_suite, BoundingBox, Error, GeneratorSpec,
    MetricInstance, Result, SolveParams, DEFAULT_EXACT_BUDGET, DEFAULT_SEED_BUDGET,
};

#[derive(Parser)]
#[command(
    name = "dispersion",
    version,
    about = "Solvers and checkers for the metric c-dispersion problem",
    after_help = "Exit codes: 0 success/decision-true, 1 validation failure or decision-false, \
                  2 usage error, 3 budget exceeded.\n\
                  DISPERSION_BUDGET overrides default enumeration budgets (a --budget flag wins)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the greedy solver on an instance file
    Solve(SolveArgs),
    /// Find the exact optimum by full enumeration, with a ball report
    Exact(ExactArgs),
    /// Embed a graph file as a {1,2}-distance instance
    Reduce(ReduceArgs),
    /// Decide whether some k-subset reaches cost 2c (graph images)
    Decide(DecideArgs),
    /// Generate a seeded instance
    Gen(GenArgs),
    /// Validate an instance file as a metric
    Check(CheckArgs),
    /// Measure solvers: ratio suite or a single timed greedy run
    Bench(BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file
    instance: PathBuf,
    #[arg(long)]
    c: usize,
    #[arg(long)]
    k: usize,
    /// Write the solution file here
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the solution file with step lines here
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Cap on seed-subset evaluations
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct ExactArgs {
    /// Instance file
    instance: PathBuf,
    #[arg(long)]
    c: usize,
    #[arg(long)]
    k: usize,
    /// Write the solution file here
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the per-point ball report here
    #[arg(long)]
    ball_report: Option<PathBuf>,
    /// Cap on subset evaluations
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct ReduceArgs {
    /// Graph file (native or DIMACS)
    graph: PathBuf,
    /// Write the instance file here
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct DecideArgs {
    /// Instance file (must be a graph image unless --bound is given)
    instance: PathBuf,
    #[arg(long)]
    c: usize,
    #[arg(long)]
    k: usize,
    /// Probe an arbitrary cost threshold instead of the 2c decision
    #[arg(long)]
    bound: Option<f64>,
    /// Write the witness solution here when the answer is yes
    #[arg(long)]
    witness_out: Option<PathBuf>,
    /// Cap on subset evaluations
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    #[value(name = "euclidean_uniform")]
    EuclideanUniform,
    #[value(name = "random_metric")]
    RandomMetric,
    #[value(name = "graph_reduction")]
    GraphReduction,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: GenKind,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    seed: u64,
    /// Bounding box x_min,y_min,x_max,y_max (euclidean_uniform only)
    #[arg(long, value_name = "X0,Y0,X1,Y1")]
    bounds: Option<String>,
    /// Edge probability (graph_reduction only)
    #[arg(long, default_value_t = 0.5)]
    edge_prob: f64,
    /// Write the instance file here
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CheckArgs {
    /// Instance file
    instance: PathBuf,
    /// Triangle-inequality tolerance; default is 0 for integral distances,
    /// otherwise 1e-9 times the largest distance
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct BenchArgs {
    #[command(subcommand)]
    mode: BenchMode,
}

#[derive(Subcommand)]
enum BenchMode {
    /// Run the fixed ratio suite and write a TSV report
    Suite {
        /// Write the TSV here; without it the TSV goes to standard output
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run only the first COUNT suite entries
        #[arg(long, value_name = "COUNT")]
        limit: Option<usize>,
        /// Cap on exact-side subset evaluations
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Time one greedy run on a generated instance, phase by phase
    Greedy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            process::exit(match e {
                Error::BudgetExceeded { .. } => 3,
                Error::InvalidParams(_) => 2,
                _ => 1,
            });
        }
    }
}

/// Flag beats environment beats default. A malformed DISPERSION_BUDGET is
/// a usage error, not a silent fallback.
fn resolve_budget(flag: Option<u64>, default: u64) -> Result<u64> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match std::env::var("DISPERSION_BUDGET") {
        Ok(text) => text
            .parse::<u64>()
            .map_err(|_| Error::InvalidParams(format!("DISPERSION_BUDGET is not a number: `{text}`"))),
        Err(_) => Ok(default),
    }
}

fn load_instance(path: &PathBuf) -> Result<MetricInstance> {
    io::read_instance(&fs::read_to_string(path)?)
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Exact(args) => cmd_exact(args),
        Command::Reduce(args) => cmd_reduce(args),
        Command::Decide(args) => cmd_decide(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Check(args) => cmd_check(args),
        Command::Bench(args) => match args.mode {
            BenchMode::Suite {
                out,
                limit,
                budget,
                threads,
            } => cmd_bench_suite(out, limit, budget, threads),
            BenchMode::Greedy {
                n,
                c,
                k,
                seed,
                budget,
                threads,
            } => cmd_bench_greedy(n, c, k, seed, budget, threads),
        },
    }
}

fn print_solution_summary(sol: &dispersion_core::Solution) {
    println!("cost {}", io::fmt_f64(sol.cost));
    let subset: Vec<String> = sol.subset.iter().map(|i| i.to_string()).collect();
    println!("subset {}", subset.join(" "));
}

fn cmd_solve(args: SolveArgs) -> Result<i32> {
    let budget = resolve_budget(args.budget, DEFAULT_SEED_BUDGET)?;
    let inst = load_instance(&args.instance)?;
    let params = SolveParams::new(args.c, args.k);
    let (sol, trace) =
        dispersion_core::greedy_solve_with(&inst, params, budget, args.threads)?;
    if let Some(path) = &args.out {
        fs::write(path, io::write_solution(&sol, None))?;
    }
    if let Some(path) = &args.trace {
        fs::write(path, io::write_solution(&sol, Some(&trace)))?;
    }
    print_solution_summary(&sol);
    Ok(0)
}

fn cmd_exact(args: ExactArgs) -> Result<i32> {
    let budget = resolve_budget(args.budget, DEFAULT_EXACT_BUDGET)?;
    let inst = load_instance(&args.instance)?;
    let params = SolveParams::new(args.c, args.k);
    let sol = exact_solve(&inst, params, budget)?;
    let report = ball_check(&inst, &sol, args.c);
    if let Some(path) = &args.out {
        fs::write(path, io::write_solution(&sol, None))?;
    }
    if let Some(path) = &args.ball_report {
        fs::write(path, io::write_ball_report(&report))?;
    }
    print_solution_summary(&sol);
    println!("radius {}", io::fmt_f64(report.radius));
    print!("{}", io::write_ball_report(&report));
    println!("violations {}", report.violations.len());
    Ok(0)
}

fn cmd_reduce(args: ReduceArgs) -> Result<i32> {
    let graph = io::read_graph(&fs::read_to_string(&args.graph)?)?;
    let inst = graph_to_instance(&graph)?;
    fs::write(&args.out, io::write_instance(&inst))?;
    println!("vertices {}", graph.n_vertices());
    println!("edges {}", graph.edge_count());
    Ok(0)
}

fn cmd_decide(args: DecideArgs) -> Result<i32> {
    let budget = resolve_budget(args.budget, DEFAULT_EXACT_BUDGET)?;
    let inst = load_instance(&args.instance)?;
    let witness = match args.bound {
        None => dispersion_witness(&inst, args.c, args.k, budget)?,
        Some(bound) => find_reaching(&inst, args.c, args.k, bound, budget, args.threads)?,
    };
    match witness {
        Some(sol) => {
            println!("decision true");
            let subset: Vec<String> = sol.subset.iter().map(|i| i.to_string()).collect();
            println!("witness {}", subset.join(" "));
            println!("cost {}", io::fmt_f64(sol.cost));
            if let Some(path) = &args.witness_out {
                fs::write(path, io::write_solution(&sol, None))?;
            }
            Ok(0)
        }
        None => {
            println!("decision false");
            Ok(1)
        }
    }
}

fn parse_bounds(text: &str) -> Result<BoundingBox> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(Error::InvalidParams(format!(
            "bounds must be x_min,y_min,x_max,y_max, got `{text}`"
        )));
    }
    let vals: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidParams(format!("bad bounds coordinate `{p}`")))
        })
        .collect::<Result<_>>()?;
    Ok(BoundingBox {
        x_min: vals[0],
        y_min: vals[1],
        x_max: vals[2],
        y_max: vals[3],
    })
}

fn cmd_gen(args: GenArgs) -> Result<i32> {
    let spec = match args.kind {
        GenKind::EuclideanUniform => {
            let bounds = match &args.bounds {
                Some(text) => parse_bounds(text)?,
                None => BoundingBox::unit(),
            };
            GeneratorSpec {
                kind: dispersion_core::GeneratorKind::EuclideanUniform { bounds },
                n: args.n,
                seed: args.seed,
            }
        }
        GenKind::RandomMetric => GeneratorSpec::random_metric(args.n, args.seed),
        GenKind::GraphReduction => {
            GeneratorSpec::graph_reduction(args.n, args.seed, args.edge_prob)
        }
    };
    let inst = spec.build()?;
    fs::write(&args.out, io::write_instance(&inst))?;
    println!("generator {spec}");
    println!("n {}", inst.len());
    Ok(0)
}

fn cmd_check(args: CheckArgs) -> Result<i32> {
    let inst = load_instance(&args.instance)?;
    let tol = args.tol.unwrap_or_else(|| inst.default_tolerance());
    let report = inst.validate_metric(tol);
    if report.is_metric() {
        println!("metric: OK");
        Ok(0)
    } else {
        println!("metric: FAIL");
        println!("symmetric {}", report.symmetric);
        println!("identity_ok {}", report.identity_ok);
        println!("triangle_violations {}", report.triangle_violations.len());
        println!("max_gap {}", io::fmt_f64(report.max_gap));
        for v in report.triangle_violations.iter().take(10) {
            println!(
                "violation {} {} {} gap {}",
                v.i,
                v.l,
                v.j,
                io::fmt_f64(v.gap)
            );
        }
        Ok(1)
    }
}

fn cmd_bench_suite(
    out: Option<PathBuf>,
    limit: Option<usize>,
    budget: Option<u64>,
    threads: usize,
) -> Result<i32> {
    let budget = resolve_budget(budget, DEFAULT_EXACT_BUDGET)?;
    let suite = default_suite();
    let take = limit.unwrap_or(suite.len()).min(suite.len());
    let records = run_suite(&suite[..take], budget, threads)?;
    let tsv = io::write_ratio_report(&records);
    match out {
        Some(path) => {
            fs::write(&path, tsv)?;
            let mut max_ratio = 0.0f64;
            let mut overflowed = 0usize;
            for r in &records {
                match r.exact {
                    dispersion_core::ExactOutcome::Solved { ratio, .. } => {
                        max_ratio = max_ratio.max(ratio)
                    }
                    dispersion_core::ExactOutcome::BudgetExceeded { .. } => overflowed += 1,
                }
            }
            println!("records {}", records.len());
            println!("max_ratio {}", io::fmt_f64(max_ratio));
            println!("budget_exceeded {overflowed}");
        }
        None => print!("{tsv}"),
    }
    Ok(0)
}

fn cmd_bench_greedy(
    n: usize,
    c: usize,
    k: usize,
    seed: u64,
    budget: Option<u64>,
    threads: usize,
) -> Result<i32> {
    let budget = resolve_budget(budget, DEFAULT_SEED_BUDGET)?;
    let inst = gen_euclidean(n, seed, BoundingBox::unit())?;
    let (sol, _, timing) =
        greedy_solve_timed(&inst, SolveParams::new(c, k), budget, threads)?;
    let seed_ms = timing.seed.as_secs_f64() * 1e3;
    let ext_ms = timing.extensions.as_secs_f64() * 1e3;
    println!("cost {}", io::fmt_f64(sol.cost));
    println!("seed_ms {seed_ms:.3}");
    println!("extensions_ms {ext_ms:.3}");
    println!("total_ms {:.3}", seed_ms + ext_ms);
    Ok(0)
}
