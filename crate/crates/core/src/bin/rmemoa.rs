use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use rmemoa::bench::{self, BenchError, BenchPlan, Family, ResultRow, RunConfig};
use rmemoa::cost::{BoundVec, CostError};
use rmemoa::oracle::{oracle_pareto, OracleError};
use rmemoa::problem::{
    compute_heuristic, read_instance, write_instance, GridSpec, Instance, InstanceError, LatticeSpec, SpecError,
};
use rmemoa::search::{rme_moa_star, Fault, SearchConfig, SearchError, ThresholdInit};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("I/O error on {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Bench(BenchError),
    #[error("verification failed")]
    Mismatch,
}

impl From<BenchError> for CliError {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Spec(s) => CliError::Spec(s),
            BenchError::Config { .. } => CliError::Usage(e.to_string()),
            other => CliError::Bench(other),
        }
    }
}

impl From<CostError> for CliError {
    fn from(e: CostError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch => 1,
            CliError::Usage(_) | CliError::Spec(_) | CliError::Search(_) | CliError::Oracle(_) => 2,
            CliError::Instance(_) | CliError::Io { .. } | CliError::Bench(_) => 3,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

#[derive(Parser)]
#[command(name = "rmemoa", version, about = "Memory-bounded multi-objective shortest-path search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate benchmark instance files.
    Gen(GenArgs),
    /// Solve one instance and print its result row.
    Solve(SolveArgs),
    /// Run a (C, D) matrix over generated instances.
    Bench(BenchArgs),
    /// Compare solver output with the brute-force reference.
    Verify(VerifyArgs),
    /// Print the brute-force Pareto front of an instance.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Grid,
    Lattice,
}

#[derive(Args)]
struct FamilyArgs {
    family: FamilyName,
    #[arg(long, default_value_t = 20)]
    rows: usize,
    #[arg(long, default_value_t = 20)]
    cols: usize,
    /// Grid connectedness exponent: each cell has 2^k neighbours.
    #[arg(long, default_value_t = 2)]
    k: u32,
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Obstacle density; defaults to 0 for grids and 0.2 for lattices.
    #[arg(long)]
    density: Option<f64>,
    #[arg(long, default_value_t = 1)]
    cost_min: u64,
    #[arg(long, default_value_t = 10)]
    cost_max: u64,
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Seed of the first instance; later instances use seed+1, seed+2, ...
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl FamilyArgs {
    fn family(&self) -> Family {
        match self.family {
            FamilyName::Grid => Family::Grid(GridSpec {
                rows: self.rows,
                cols: self.cols,
                k: self.k,
                m: self.m,
                cost_min: self.cost_min,
                cost_max: self.cost_max,
                obstacle_density: self.density.unwrap_or(0.0),
                seed: self.seed,
            }),
            FamilyName::Lattice => Family::Lattice(LatticeSpec {
                rows: self.rows,
                cols: self.cols,
                obstacle_density: self.density.unwrap_or(0.2),
                m: self.m,
                seed: self.seed,
            }),
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultName {
    SkipSolutionCheck,
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    /// Partial-expansion window: scalar, `inf`, or one value per objective.
    #[arg(long = "C", default_value = "0")]
    c: String,
    /// Iterative-deepening radius: scalar, `inf`, or one value per objective.
    #[arg(long = "D", default_value = "0")]
    d: String,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Also print each solution cost and its vertex sequence.
    #[arg(long)]
    paths: bool,
    /// Write the expansion trace to this file.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Start iterative-deepening thresholds at h instead of g + h.
    #[arg(long)]
    heuristic_threshold: bool,
    /// Check heuristic consistency before searching.
    #[arg(long)]
    validate: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Comma-separated C/D pairs.
    #[arg(long, default_value = "inf/0,0/0")]
    configs: String,
    #[arg(long, default_value_t = 60.0)]
    time_limit: f64,
    /// Results CSV.
    #[arg(long)]
    out: PathBuf,
    /// Summary JSON; defaults to the CSV path with a `.summary.json` suffix.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Run instances in parallel. Runtimes are noisier.
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct VerifyArgs {
    instance: PathBuf,
    #[arg(long, default_value = "0/0,3/0,inf/0,0/8,0/inf")]
    configs: String,
    /// Deliberately break the solver to check that mismatches are caught.
    #[arg(long, value_enum)]
    inject_fault: Option<FaultName>,
}

#[derive(Args)]
struct OracleArgs {
    instance: PathBuf,
    /// Also print one witness path per cost.
    #[arg(long)]
    paths: bool,
}

fn seconds(s: f64) -> Result<Duration, CliError> {
    Duration::try_from_secs_f64(s).map_err(|_| CliError::Usage(format!("invalid time limit {s}")))
}

fn instance_id(path: &Path, inst: &Instance) -> String {
    match &inst.meta {
        Some(m) => format!("{}_{}", m.family, m.seed),
        None => path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned()),
    }
}

fn join_path(path: &[u32]) -> String {
    path.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_gen(args: &GenArgs) -> Result<(), CliError> {
    fs::create_dir_all(&args.out).map_err(io_err(&args.out))?;
    let family = args.family.family();
    for i in 0..args.family.count {
        let seed = args.family.seed + i as u64;
        let inst = family.instance(seed)?;
        let path = args.out.join(format!("{}_{seed}.json", family.name()));
        write_instance(&inst, &path)?;
    }
    Ok(())
}

fn cmd_solve(args: &SolveArgs) -> Result<(), CliError> {
    let inst = read_instance(&args.instance)?;
    let m = inst.graph.num_objectives();
    let config = RunConfig {
        c: BoundVec::parse(&args.c, m)?,
        d: BoundVec::parse(&args.d, m)?,
    };
    let mut sc = SearchConfig::new(config.c.clone(), config.d.clone());
    sc.time_limit = args.time_limit.map(seconds).transpose()?;
    sc.trace_expansions = args.trace.is_some();
    sc.validate_heuristic = args.validate;
    if args.heuristic_threshold {
        sc.threshold_init = ThresholdInit::StartHeuristic;
    }
    let h = compute_heuristic(&inst.graph);
    let result = rme_moa_star(&inst.graph, &h, &sc)?;
    let row = ResultRow::new(&instance_id(&args.instance, &inst), &inst, &config, &result);

    let stdout = io::stdout();
    let mut out = stdout.lock();
    let stdout_path = Path::new("<stdout>");
    match args.format {
        Format::Csv => bench::write_rows(std::slice::from_ref(&row), &mut out)?,
        Format::Json => {
            let text = serde_json::to_string(&row).expect("result rows serialize");
            writeln!(out, "{text}").map_err(io_err(stdout_path))?;
        }
    }
    if args.paths {
        for s in &result.solutions {
            writeln!(out, "{}: {}", s.cost.to_csv(), join_path(&s.path)).map_err(io_err(stdout_path))?;
        }
    }
    if let Some(path) = &args.trace {
        fs::write(path, result.trace_text()).map_err(io_err(path))?;
    }
    Ok(())
}

fn cmd_bench(args: &BenchArgs) -> Result<(), CliError> {
    let family = args.family.family();
    let m = args.family.m;
    let plan = BenchPlan {
        family,
        configs: bench::parse_configs(&args.configs, m)?,
        count: args.family.count,
        first_seed: args.family.seed,
        time_limit: Some(seconds(args.time_limit)?),
        parallel: args.parallel,
    };
    let rows = bench::run_plan(&plan)?;
    let file = File::create(&args.out).map_err(io_err(&args.out))?;
    bench::write_rows(&rows, BufWriter::new(file))?;

    let summary = bench::summarize(&rows);
    let summary_path = args.summary.clone().unwrap_or_else(|| {
        let mut p = args.out.clone().into_os_string();
        p.push(".summary.json");
        PathBuf::from(p)
    });
    let text = serde_json::to_string_pretty(&summary).expect("summaries serialize");
    fs::write(&summary_path, text + "\n").map_err(io_err(&summary_path))?;
    for c in &summary.configs {
        let fmt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |x| format!("{x:.4}"));
        println!(
            "C={} D={} runs={} timed_out={} memory_ratio={} runtime_ratio={}",
            c.c,
            c.d,
            c.runs,
            c.timed_out,
            fmt(c.memory_ratio_geomean),
            fmt(c.runtime_ratio_geomean)
        );
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let inst = read_instance(&args.instance)?;
    let configs = bench::parse_configs(&args.configs, inst.graph.num_objectives())?;
    let fault = args.inject_fault.map(|FaultName::SkipSolutionCheck| Fault::SkipSolutionCheck);
    let outcomes = bench::verify(&inst, &configs, fault)?;
    let mut ok = true;
    for o in &outcomes {
        let verdict = if o.passed() { "PASS" } else { "FAIL" };
        ok &= o.passed();
        println!(
            "{verdict} C={} D={} solutions={} expected={} paths_valid={}",
            o.config.c, o.config.d, o.got.len(), o.expected.len(), o.paths_valid
        );
    }
    if ok {
        Ok(())
    } else {
        Err(CliError::Mismatch)
    }
}

fn cmd_oracle(args: &OracleArgs) -> Result<(), CliError> {
    let inst = read_instance(&args.instance)?;
    let result = oracle_pareto(&inst.graph)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for (cost, path) in &result.witnesses {
        let line = if args.paths {
            format!("{}: {}", cost.to_csv(), join_path(path))
        } else {
            cost.to_csv()
        };
        writeln!(out, "{line}").map_err(io_err(Path::new("<stdout>")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Oracle(a) => cmd_oracle(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
