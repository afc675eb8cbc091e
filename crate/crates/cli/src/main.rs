//! `fairconf` command line: generate instances, solve them, evaluate
//! schedules, run λ-sweeps and re-check the tension claims.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid input (malformed or
//! failing validation), 3 search budget exhausted before optimality was
//! proven. Sweeps exit 0 and flag such rows instead.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use fairconf::datagen::{generate, GenParams, Pattern};
use fairconf::harness::io::{to_json_pretty, write_solution_json};
use fairconf::harness::{self, default_workers, SweepSpec};
use fairconf::metrics::evaluate;
use fairconf::solvers::solve_method;
use fairconf::{Error, Instance, Method, SolveConfig};

const EXIT_USAGE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "fairconf", version, about = "Fair conference scheduling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated or built-in instance as JSON.
    Gen(GenArgs),
    /// Solve an instance with one method and write the solution JSON.
    Solve(SolveArgs),
    /// Print the metrics of a schedule as JSON.
    Metrics {
        #[arg(long)]
        instance: PathBuf,
        /// A bare slot array or any JSON object with an "assignment" array.
        #[arg(long)]
        schedule: PathBuf,
    },
    /// Solve baselines and a FairConf λ grid, writing one CSV row per point.
    Sweep(SweepArgs),
    /// Re-derive the welfare/fairness tension claims.
    VerifyClaims,
}

#[derive(Args)]
struct GenArgs {
    /// One of uniform, seg-avail-balanced, seg-avail-imbalanced,
    /// seg-interest-balanced, seg-interest-imbalanced, table1, table2, table3.
    #[arg(long)]
    pattern: Pattern,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    /// Seed for the uniform pattern (default 42).
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SearchArgs {
    /// Wall-clock budget for the exact search, in seconds.
    #[arg(long, value_name = "SEC")]
    time_limit: Option<f64>,
    /// Search threads (default: FAIRCONF_THREADS or all cores).
    #[arg(long)]
    workers: Option<usize>,
    /// Single-threaded search with reproducible tie-breaking.
    #[arg(long)]
    deterministic: bool,
}

impl SearchArgs {
    fn config(&self) -> Result<SolveConfig, Error> {
        let mut config = SolveConfig::default().with_workers(self.workers.unwrap_or_else(default_workers));
        config.deterministic = self.deterministic;
        if let Some(sec) = self.time_limit {
            let limit = Duration::try_from_secs_f64(sec)
                .map_err(|_| Error::Argument(format!("invalid time limit {sec}")))?;
            config = config.with_time_limit(limit);
        }
        config.check()?;
        Ok(config)
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    method: Method,
    #[arg(long, default_value_t = 0.5)]
    lambda1: f64,
    #[arg(long, default_value_t = 0.5)]
    lambda2: f64,
    #[command(flatten)]
    search: SearchArgs,
    /// Write time_ms as null so repeated runs are byte-identical.
    #[arg(long)]
    no_time: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Comma-separated subset of swm,iam,pfair,sfair,fairconf.
    #[arg(long, value_delimiter = ',', default_value = "swm,iam,pfair,sfair,fairconf")]
    methods: Vec<Method>,
    /// Comma-separated λ1 grid for FairConf.
    #[arg(long, value_delimiter = ',')]
    lambda1: Vec<f64>,
    /// Comma-separated λ2 grid for FairConf.
    #[arg(long, value_delimiter = ',')]
    lambda2: Vec<f64>,
    /// Pin one λ to a single value, e.g. `lambda2=0.5`.
    #[arg(long, value_name = "lambda1|lambda2=V", value_parser = parse_fix)]
    fix: Option<(Which, f64)>,
    #[arg(long)]
    csv: PathBuf,
    /// Leave the time column empty.
    #[arg(long)]
    no_time: bool,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Clone, Copy, Debug)]
enum Which {
    Lambda1,
    Lambda2,
}

fn parse_fix(s: &str) -> Result<(Which, f64), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected lambda1=V or lambda2=V, got '{s}'"))?;
    let which = match name.trim() {
        "lambda1" => Which::Lambda1,
        "lambda2" => Which::Lambda2,
        other => return Err(format!("unknown parameter '{other}'")),
    };
    let value = value
        .trim()
        .parse::<f64>()
        .map_err(|e| format!("bad value '{value}': {e}"))?;
    Ok((which, value))
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Validation(_) | Error::Format(_) | Error::Structure(_) | Error::InvalidSchedule(_) => {
            EXIT_INVALID
        }
        _ => EXIT_USAGE,
    }
}

fn load(path: &PathBuf) -> Result<Instance, Error> {
    harness::load_instance(path).map_err(|err| match err {
        Error::Io(io) => Error::Argument(format!("{}: {io}", path.display())),
        other => other,
    })
}

fn create(path: &PathBuf) -> Result<BufWriter<File>, Error> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::Argument(format!("{}: {e}", path.display())))
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Gen(args) => {
            let params = GenParams {
                m: args.m,
                n: args.n,
                l: args.l,
                seed: args.seed,
            };
            let instance: Instance = generate(args.pattern, params)?;
            let mut out = create(&args.out)?;
            out.write_all(to_json_pretty(&instance)?.as_bytes())?;
            out.flush()?;
            Ok(0)
        }
        Command::Solve(args) => {
            let instance = load(&args.instance)?;
            if args.method == Method::Bruteforce {
                return Err(Error::Argument("bruteforce is not available from the command line".into()));
            }
            let config = args.search.config()?;
            let solution = solve_method(&instance, args.method, (args.lambda1, args.lambda2), &config)?;
            let mut out = create(&args.out)?;
            write_solution_json(&mut out, &solution, !args.no_time)?;
            out.flush()?;
            let exact = matches!(args.method, Method::Pfair | Method::Sfair | Method::Fairconf);
            if exact && !solution.optimal {
                eprintln!(
                    "search budget exhausted after {} nodes; wrote the best schedule found",
                    solution.nodes_explored
                );
                return Ok(EXIT_BUDGET);
            }
            Ok(0)
        }
        Command::Metrics { instance, schedule } => {
            let instance = load(&instance)?;
            let schedule = harness::load_schedule(&schedule)?;
            let report = evaluate(&instance, &schedule)?;
            print!("{}", to_json_pretty(&report)?);
            Ok(0)
        }
        Command::Sweep(args) => {
            let instance = load(&args.instance)?;
            let (mut lambda1_values, mut lambda2_values) = (args.lambda1, args.lambda2);
            match args.fix {
                Some((Which::Lambda1, v)) => lambda1_values = vec![v],
                Some((Which::Lambda2, v)) => lambda2_values = vec![v],
                None => {}
            }
            let spec = SweepSpec {
                instance,
                methods: args.methods,
                lambda1_values,
                lambda2_values,
                config: args.search.config()?,
            };
            let rows = harness::run_sweep(&spec)?;
            let unproven = rows.iter().filter(|r| !r.optimal && r.method != Method::Iam).count();
            if unproven > 0 {
                eprintln!("{unproven} row(s) hit the search budget and are marked optimal=false");
            }
            let mut out = create(&args.csv)?;
            harness::write_csv(&rows, &mut out, !args.no_time)?;
            out.flush()?;
            Ok(0)
        }
        Command::VerifyClaims => {
            let checks = harness::verify_claims()?;
            let mut stdout = io::stdout().lock();
            for check in &checks {
                writeln!(stdout, "{check}")?;
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            writeln!(stdout, "{} passed, {failed} failed", checks.len() - failed)?;
            Ok(if failed == 0 { 0 } else { EXIT_USAGE })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
