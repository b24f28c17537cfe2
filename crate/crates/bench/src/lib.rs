//! Benchmark plumbing for the `alr-bench` binary: building workloads, running
//! solvers (optionally in parallel), and reading/writing result tables.

use std::cmp::Ordering;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::Path;
use std::time::Instant;

use alr_lyap::dense::DenseMatrix;
use alr_lyap::oracle::{lyapunov_residual, ORACLE_MAX_DIM};
use alr_lyap::problems::{load_external, make_rhs, ProblemKind, ProblemSpec, RhsKind};
use alr_lyap::solvers::{solve, LowRankSolution, Method, SolverConfig, SolverStatus};
use alr_lyap::sparse::{CsrMatrix, ShiftedFactorCache};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Solver(#[from] alr_lyap::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("malformed table at line {line}: {message}")]
    Table { line: usize, message: String },
    #[error("{problem} {method}: verification failed: {message}")]
    Verification {
        problem: String,
        method: Method,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, BenchError>;

/// One line of the result CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub problem: String,
    pub grid: String,
    pub method: String,
    pub iterations: usize,
    pub rank: usize,
    pub residual: f64,
    pub factorize_s: f64,
    pub solve_s: f64,
    pub wall_s: f64,
}

/// An operator with its right-hand side and labels.
#[derive(Clone, Debug)]
pub struct Workload {
    pub problem: String,
    pub grid: String,
    pub a: CsrMatrix<f64>,
    pub y0: Vec<f64>,
}

impl Workload {
    pub fn generated(kind: ProblemKind, grid: usize, rhs: RhsKind) -> Result<Self> {
        let spec = ProblemSpec::new(kind, grid, rhs)?;
        Ok(Self {
            problem: kind.name().to_string(),
            grid: spec.grid_label(),
            a: spec.operator()?,
            y0: make_rhs(&spec)?,
        })
    }

    pub fn external(matrix: &Path, rhs: &Path) -> Result<Self> {
        let (a, y0) = load_external(matrix, rhs)?;
        Ok(Self {
            problem: ProblemKind::External.name().to_string(),
            grid: a.dim().to_string(),
            a,
            y0,
        })
    }
}

/// Right-hand side used for a model problem when none is requested: the
/// Gaussian bump for the 2D Laplacian, all ones otherwise.
pub fn default_rhs(kind: ProblemKind) -> RhsKind {
    if kind == ProblemKind::Laplace2d {
        RhsKind::Gaussian2d
    } else {
        RhsKind::Ones
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub methods: Vec<Method>,
    pub eps: f64,
    pub r_max: usize,
    pub jobs: usize,
    pub verify: bool,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub row: BenchRow,
    pub status: SolverStatus,
    pub shifts: Vec<f64>,
}

/// Solves one workload with one method.
pub fn run_one(work: &Workload, method: Method, opts: &RunOptions) -> Result<RunResult> {
    let config = SolverConfig::new(method).with_eps(opts.eps).with_r_max(opts.r_max);
    let start = Instant::now();
    let mut cache = ShiftedFactorCache::new(&work.a);
    cache.set_verify(opts.verify);
    let out = solve(&mut cache, &work.y0, &config)?;
    let wall_s = start.elapsed().as_secs_f64();
    if opts.verify {
        verify(work, method, &out.solution, out.trace.final_residual(), out.trace.converged(), opts)?;
    }
    let trace = &out.trace;
    Ok(RunResult {
        row: BenchRow {
            problem: work.problem.clone(),
            grid: work.grid.clone(),
            method: method.name().to_string(),
            iterations: trace.iterations(),
            rank: out.solution.rank(),
            residual: trace.final_residual(),
            factorize_s: cache.stats().factorize_seconds,
            solve_s: cache.stats().solve_seconds,
            wall_s,
        },
        status: trace.status,
        shifts: trace.shifts(),
    })
}

/// Cross-checks the reported residual: densely when the operator is small
/// enough, otherwise with a seeded random probe `‖R v‖/‖v‖ ≤ ‖R‖₂ ≤ ‖R‖_F`.
fn verify(
    work: &Workload,
    method: Method,
    sol: &LowRankSolution<f64>,
    reported: f64,
    converged: bool,
    opts: &RunOptions,
) -> Result<()> {
    let y0_sq: f64 = work.y0.iter().map(|v| v * v).sum();
    let fail = |message: String| BenchError::Verification {
        problem: work.problem.clone(),
        method,
        message,
    };
    let n = work.a.dim();
    if n <= ORACLE_MAX_DIM {
        let dense = lyapunov_residual(&work.a.to_dense(), &sol.to_dense(), &work.y0)? / y0_sq;
        let tol = 1e-6 * reported + 1e-12;
        if (dense - reported).abs() > tol {
            return Err(fail(format!("dense residual {dense:e} vs reported {reported:e}")));
        }
        if converged && dense > 1.1 * opts.eps {
            return Err(fail(format!("dense residual {dense:e} exceeds 1.1*eps")));
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let probe = residual_probe(&work.a, sol, &work.y0, &v)? / y0_sq;
        if probe > reported * (1.0 + 1e-6) + 1e-12 {
            return Err(fail(format!("probe {probe:e} exceeds reported residual {reported:e}")));
        }
    }
    Ok(())
}

/// `‖(A X̃ + X̃ Aᵀ + y₀y₀ᵀ) v‖ / ‖v‖` with `X̃ = U Z Uᵀ` kept factored.
fn residual_probe(a: &CsrMatrix<f64>, sol: &LowRankSolution<f64>, y0: &[f64], v: &[f64]) -> Result<f64> {
    let u = &sol.u;
    let apply_x = |w: &[f64]| -> Result<Vec<f64>> {
        let utw = u.tr_matmul(&DenseMatrix::column_vector(w))?;
        Ok(u.matmul(&sol.z.matmul(&utw)?)?.column(0))
    };
    let xv = apply_x(v)?;
    let axv = a.matvec(&xv)?;
    let xatv = apply_x(&a.matvec_transpose(v)?)?;
    let yv: f64 = y0.iter().zip(v).map(|(a, b)| a * b).sum();
    let r: f64 = (0..v.len())
        .map(|i| (axv[i] + xatv[i] + y0[i] * yv).powi(2))
        .sum::<f64>()
        .sqrt();
    Ok(r / v.iter().map(|x| x * x).sum::<f64>().sqrt())
}

/// Runs every (workload, method) pair, `opts.jobs` at a time. Results come
/// back in input order regardless of scheduling.
pub fn run_all(works: &[Workload], opts: &RunOptions) -> Vec<Result<RunResult>> {
    let tasks: Vec<(usize, Method)> = (0..works.len())
        .flat_map(|w| opts.methods.iter().map(move |&m| (w, m)))
        .collect();
    let jobs = opts.jobs.max(1).min(tasks.len().max(1));
    if jobs == 1 {
        return tasks.iter().map(|&(w, m)| run_one(&works[w], m, opts)).collect();
    }
    let mut slots: Vec<Option<Result<RunResult>>> = (0..tasks.len()).map(|_| None).collect();
    let next = std::sync::atomic::AtomicUsize::new(0);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|_| {
                scope.spawn(|| {
                    let mut done = Vec::new();
                    loop {
                        let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                        let Some(&(w, m)) = tasks.get(i) else { break };
                        done.push((i, run_one(&works[w], m, opts)));
                    }
                    done
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("worker panicked") {
                slots[i] = Some(r);
            }
        }
    });
    slots.into_iter().map(|r| r.expect("every task ran")).collect()
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv(path: &Path) -> Result<Vec<BenchRow>> {
    let mut r = csv::Reader::from_reader(BufReader::new(File::open(path)?));
    let mut rows = Vec::new();
    for row in r.deserialize() {
        rows.push(row?);
    }
    Ok(rows)
}

/// Shifts in iteration order, one per line. With several runs each block is
/// preceded by a `# problem grid method` comment line.
pub fn write_shifts<W: Write>(results: &[RunResult], mut out: W) -> Result<()> {
    let labelled = results.len() > 1;
    for r in results {
        if labelled {
            writeln!(out, "# {} {} {}", r.row.problem, r.row.grid, r.row.method)?;
        }
        for s in &r.shifts {
            writeln!(out, "{s:e}")?;
        }
    }
    Ok(())
}

fn grid_size(label: &str) -> usize {
    label.split('x').map(|p| p.parse::<usize>().unwrap_or(0)).product()
}

fn method_rank(name: &str) -> usize {
    Method::ALL.iter().position(|m| m.name() == name).unwrap_or(Method::ALL.len())
}

/// Sorts rows by problem, grid size and method order.
pub fn sort_rows(rows: &mut [BenchRow]) {
    rows.sort_by(|a, b| {
        a.problem
            .cmp(&b.problem)
            .then(grid_size(&a.grid).cmp(&grid_size(&b.grid)))
            .then(a.grid.cmp(&b.grid))
            .then(method_rank(&a.method).cmp(&method_rank(&b.method)))
            .then(a.method.cmp(&b.method))
            .then(a.wall_s.partial_cmp(&b.wall_s).unwrap_or(Ordering::Equal))
    });
}

const TABLE_HEADER: &str = "| problem | grid | method | factorize (s) | solve (s) | final time (s) | residual | it-s/rank |";

/// Markdown table grouped by problem and grid; the grid cell is printed on
/// the first row of each group and an empty row separates groups.
pub fn render_table(rows: &[BenchRow]) -> String {
    let mut rows = rows.to_vec();
    sort_rows(&mut rows);
    let mut out = String::new();
    out.push_str(TABLE_HEADER);
    out.push('\n');
    out.push_str("|---|---|---|---:|---:|---:|---:|---:|\n");
    let mut prev: Option<(String, String)> = None;
    for r in &rows {
        let key = (r.problem.clone(), r.grid.clone());
        let first = prev.as_ref() != Some(&key);
        if first && prev.is_some() {
            out.push_str("| | | | | | | | |\n");
        }
        let (p, g) = if first {
            (r.problem.as_str(), r.grid.as_str())
        } else {
            ("", "")
        };
        out.push_str(&format!(
            "| {p} | {g} | {} | {} | {} | {} | {:e} | {}/{} |\n",
            r.method, r.factorize_s, r.solve_s, r.wall_s, r.residual, r.iterations, r.rank
        ));
        prev = Some(key);
    }
    out
}

/// Inverse of [`render_table`].
pub fn parse_table(text: &str) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    let mut current: Option<(String, String)> = None;
    for (k, line) in text.lines().enumerate().skip(2) {
        let line_no = k + 1;
        let bad = |message: &str| BenchError::Table {
            line: line_no,
            message: message.to_string(),
        };
        let cells: Vec<&str> = line
            .trim()
            .trim_start_matches('|')
            .trim_end_matches('|')
            .split('|')
            .map(str::trim)
            .collect();
        if cells.len() != 8 {
            return Err(bad("expected 8 cells"));
        }
        if cells.iter().all(|c| c.is_empty()) {
            current = None;
            continue;
        }
        if !cells[0].is_empty() {
            current = Some((cells[0].to_string(), cells[1].to_string()));
        }
        let (problem, grid) = current.clone().ok_or_else(|| bad("row without problem/grid"))?;
        let num = |s: &str| s.parse::<f64>().map_err(|_| bad("bad number"));
        let (it, rank) = cells[7].split_once('/').ok_or_else(|| bad("it-s/rank must be I/R"))?;
        rows.push(BenchRow {
            problem,
            grid,
            method: cells[2].to_string(),
            factorize_s: num(cells[3])?,
            solve_s: num(cells[4])?,
            wall_s: num(cells[5])?,
            residual: num(cells[6])?,
            iterations: it.parse().map_err(|_| bad("bad iteration count"))?,
            rank: rank.parse().map_err(|_| bad("bad rank"))?,
        });
    }
    Ok(rows)
}
