//! `kfix`: fixed-point iteration, contraction-condition verification, and
//! split convex feasibility from problem files.
//!
//! Exit codes: 0 converged / condition holds, 1 usage error, 2 iteration
//! budget exhausted, 3 cycle detected, 4 violations found.

mod problem;
mod reproduce;

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use kfix_core::{
    krasnoselskij, lambda_from_enrichment, picard, sample_verify, IterationConfig64,
    IterationError, IterationStatus, Vector64,
};
use problem::{
    from_vector, status_str, IterateProblem, ReportJson, ScfpSpec, SolutionJson, VerifyProblem,
};

const EXIT_OK: i32 = 0;
const EXIT_USAGE: i32 = 1;
const EXIT_MAX_ITERS: i32 = 2;
const EXIT_CYCLE: i32 = 3;
const EXIT_VIOLATION: i32 = 4;

#[derive(Parser)]
#[command(
    name = "kfix",
    version,
    about = "Fixed-point iteration, contraction checking, and split feasibility"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an averaged fixed-point iteration and write its trace CSV.
    Iterate(RunArgs),
    /// Sweep a contraction inequality over sampled pairs; write a report JSON.
    Verify(RunArgs),
    /// Solve a split convex feasibility problem; write a solution JSON.
    Scfp(RunArgs),
    /// Regenerate a bundled experiment: table1, table2, example38, or figure3.
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Problem description (JSON file).
    problem: PathBuf,

    /// Averaging parameter in (0, 1]; overrides the problem file.
    #[arg(long)]
    lambda: Option<f64>,

    /// Stopping tolerance; overrides the problem file.
    #[arg(long)]
    tol: Option<f64>,

    /// Iteration budget; overrides the problem file.
    #[arg(long)]
    max_iters: Option<usize>,

    /// Sampling seed; overrides the problem file.
    #[arg(long)]
    seed: Option<u64>,

    /// Iterate the raw map (lambda = 1) instead of its averaged form.
    #[arg(long)]
    picard: bool,

    /// Output directory (the KFIX_OUT environment variable takes precedence).
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct ReproduceArgs {
    /// One of: table1, table2, example38, figure3.
    target: String,

    /// Output directory (the KFIX_OUT environment variable takes precedence).
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version are not usage errors.
            let code = if err.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    let outcome = match cli.command {
        Command::Iterate(args) => cmd_iterate(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Scfp(args) => cmd_scfp(&args),
        Command::Reproduce(args) => reproduce::run(&args.target, &out_dir(&args.out)),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(EXIT_USAGE);
        }
    }
}

fn out_dir(flag: &Path) -> PathBuf {
    std::env::var_os("KFIX_OUT")
        .map(PathBuf::from)
        .unwrap_or_else(|| flag.to_path_buf())
}

fn read_problem<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading problem file {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing problem file {}", path.display()))
}

fn write_artifact(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir)
        .with_context(|| format!("creating output directory {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn to_json(value: &impl serde::Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("output structs serialize");
    text.push('\n');
    text
}

fn cmd_iterate(args: &RunArgs) -> Result<i32> {
    let spec: IterateProblem = read_problem(&args.problem)?;
    let map = spec.mapping.build(spec.norm.as_ref())?;
    let use_picard = args.picard || spec.picard;

    let lambda = match args.lambda.or(spec.lambda) {
        Some(lambda) => lambda,
        None if use_picard => 1.0,
        None => bail!("field `lambda` is missing (set it in the problem file or pass --lambda)"),
    };
    let config = IterationConfig64 {
        lambda,
        max_iters: args.max_iters.or(spec.max_iters).unwrap_or(10_000),
        tol: args.tol.or(spec.tol).unwrap_or(1e-10),
        cycle_window: spec.cycle_window.unwrap_or(0),
    };
    let p0 = problem::to_vector(&spec.p0, "p0")?;

    let result = if use_picard {
        picard(&map, &config, &p0)
    } else {
        krasnoselskij(&map, &config, &p0)
    };
    let trace = match result {
        Ok(trace) => trace,
        Err(IterationError::NonFinite { step, .. }) => {
            bail!("iteration produced a non-finite value at step {step}")
        }
        Err(IterationError::Invalid(err)) => return Err(err.into()),
    };

    let path = write_artifact(&out_dir(&args.out), "trace.csv", &trace.to_csv_string())?;
    let run_map = if use_picard {
        map.clone()
    } else {
        map.averaged(config.lambda)?
    };
    let residual = run_map.fix_residual(trace.final_point());
    println!(
        "status={} iterations={} final_residual={:.6e} trace={}",
        status_str(&trace.status),
        trace.iterations(),
        residual,
        path.display()
    );

    Ok(match trace.status {
        IterationStatus::Converged => EXIT_OK,
        IterationStatus::MaxItersReached => EXIT_MAX_ITERS,
        IterationStatus::CycleDetected { .. } => EXIT_CYCLE,
    })
}

fn cmd_verify(args: &RunArgs) -> Result<i32> {
    let spec: VerifyProblem = read_problem(&args.problem)?;
    let map = spec.mapping.build(spec.norm.as_ref())?;
    let params = spec.params.build()?;
    let zeta = spec.zeta.build()?;
    let sampler = spec.build_sampler(args.seed)?;
    let fix_tol = spec.fix_tol.unwrap_or(1e-9);

    let report = sample_verify(&params, &zeta, &map, &sampler, fix_tol)?;
    let path = write_artifact(
        &out_dir(&args.out),
        "report.json",
        &to_json(&ReportJson::from_report(&report)),
    )?;
    println!(
        "pairs={} skipped={} violations={} worst_margin={} report={}",
        report.n_pairs,
        report.n_skipped,
        report.n_violations,
        report
            .worst_margin
            .map_or("none".to_string(), |m| format!("{m:.6e}")),
        path.display()
    );

    Ok(if report.n_violations == 0 {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}

fn cmd_scfp(args: &RunArgs) -> Result<i32> {
    let spec: ScfpSpec = read_problem(&args.problem)?;
    let problem = spec.build()?;

    let lambda = match (args.lambda.or(spec.lambda), spec.k) {
        (Some(lambda), _) => lambda,
        (None, Some(k)) => lambda_from_enrichment(k)?,
        (None, None) => 0.5,
    };
    let config = IterationConfig64 {
        lambda,
        max_iters: args.max_iters.or(spec.max_iters).unwrap_or(10_000),
        tol: args.tol.or(spec.tol).unwrap_or(1e-10),
        cycle_window: 0,
    };
    let p0 = match &spec.p0 {
        Some(p0) => problem::to_vector(p0, "p0")?,
        None => Vector64::zeros(problem.operator().cols()),
    };

    let solution = match problem.solve(&config, &p0) {
        Ok(solution) => solution,
        Err(IterationError::NonFinite { step, .. }) => {
            bail!("iteration produced a non-finite value at step {step}")
        }
        Err(IterationError::Invalid(err)) => return Err(err.into()),
    };

    let json = SolutionJson {
        x: from_vector(solution.trace.final_point()),
        iterations: solution.trace.iterations(),
        dist_c: solution.dist_c,
        dist_q: solution.dist_q,
        status: status_str(&solution.trace.status).to_string(),
    };
    let path = write_artifact(&out_dir(&args.out), "solution.json", &to_json(&json))?;
    println!(
        "status={} iterations={} dist_C={:.6e} dist_Q={:.6e} solution={}",
        json.status,
        json.iterations,
        json.dist_c,
        json.dist_q,
        path.display()
    );

    let feasible = solution.dist_c < config.tol && solution.dist_q < config.tol;
    Ok(match solution.trace.status {
        _ if feasible => EXIT_OK,
        IterationStatus::CycleDetected { .. } => EXIT_CYCLE,
        _ => EXIT_MAX_ITERS,
    })
}
