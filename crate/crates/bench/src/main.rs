use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use alr_bench::*;
use alr_lyap::problems::{ProblemKind, RhsKind};
use alr_lyap::solvers::{Method, SolverConfig, SolverStatus};
use alr_lyap::sparse::io::{write_matrix_market, write_vector};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "alr-bench", version, about = "Run and tabulate low-rank Lyapunov solver benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve model or external problems and write one CSV row per run.
    Run(RunArgs),
    /// Render result CSVs as a markdown table.
    Table {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Write a generated problem as a Matrix Market file and a vector file.
    Export(ExportArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Comma-separated model problems.
    #[arg(long, value_delimiter = ',', required_unless_present = "matrix", conflicts_with = "matrix")]
    problem: Vec<ProblemKind>,
    /// Interior grid points per dimension.
    #[arg(long, default_value_t = 64)]
    grid: usize,
    #[arg(long, requires = "rhs")]
    matrix: Option<PathBuf>,
    #[arg(long, requires = "matrix")]
    rhs: Option<PathBuf>,
    /// Comma-separated methods.
    #[arg(long, value_delimiter = ',', default_value = "alr")]
    method: Vec<Method>,
    #[arg(long, default_value_t = SolverConfig::DEFAULT_EPS)]
    eps: f64,
    #[arg(long, default_value_t = SolverConfig::DEFAULT_R_MAX)]
    rmax: usize,
    /// Right-hand side; defaults to gaussian2d for laplace2d and ones otherwise.
    #[arg(long)]
    rhs_kind: Option<RhsKind>,
    /// CSV output; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    shifts_out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Cross-check reported residuals (densely when n ≤ 400).
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long)]
    problem: ProblemKind,
    #[arg(long)]
    grid: usize,
    #[arg(long)]
    rhs_kind: Option<RhsKind>,
    #[arg(long)]
    matrix_out: PathBuf,
    #[arg(long)]
    rhs_out: PathBuf,
}

fn run(args: RunArgs) -> Result<bool> {
    let works = match (&args.matrix, &args.rhs) {
        (Some(m), Some(r)) => vec![Workload::external(m, r)?],
        _ => args
            .problem
            .iter()
            .map(|&k| Workload::generated(k, args.grid, args.rhs_kind.unwrap_or_else(|| default_rhs(k))))
            .collect::<Result<_>>()?,
    };
    let opts = RunOptions {
        methods: args.method.clone(),
        eps: args.eps,
        r_max: args.rmax,
        jobs: args.jobs,
        verify: args.verify,
        seed: args.seed,
    };
    let results = run_all(&works, &opts).into_iter().collect::<Result<Vec<_>>>()?;
    let rows: Vec<BenchRow> = results.iter().map(|r| r.row.clone()).collect();
    match &args.out {
        Some(p) => write_csv(&rows, BufWriter::new(File::create(p)?))?,
        None => write_csv(&rows, io::stdout().lock())?,
    }
    if let Some(p) = &args.shifts_out {
        let mut w = BufWriter::new(File::create(p)?);
        write_shifts(&results, &mut w)?;
        w.flush()?;
    }
    let mut all_converged = true;
    for r in &results {
        if r.status != SolverStatus::Converged {
            all_converged = false;
            eprintln!("{} {} {}: {}", r.row.problem, r.row.grid, r.row.method, r.status);
        }
    }
    Ok(all_converged)
}

fn table(inputs: &[PathBuf]) -> Result<()> {
    let mut rows = Vec::new();
    for p in inputs {
        rows.extend(read_csv(p)?);
    }
    print!("{}", render_table(&rows));
    Ok(())
}

fn export(args: ExportArgs) -> Result<()> {
    let work = Workload::generated(args.problem, args.grid, args.rhs_kind.unwrap_or_else(|| default_rhs(args.problem)))?;
    let mut m = BufWriter::new(File::create(&args.matrix_out)?);
    write_matrix_market(&work.a, &mut m)?;
    m.flush()?;
    let mut v = BufWriter::new(File::create(&args.rhs_out)?);
    write_vector(&work.y0, &mut v)?;
    v.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    // usage errors share exit code 1 with runtime errors; 2 means "did not converge"
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Run(args) => run(args).map(|ok| if ok { 0 } else { 2 }),
        Command::Table { inputs } => table(&inputs).map(|_| 0),
        Command::Export(args) => export(args).map(|_| 0),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
