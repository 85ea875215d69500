//! The `lbs` command line.
//!
//! Exit status: [`exit::SUCCESS`], [`exit::RUNTIME`] for failures while
//! working (IO, bad sequence files) and [`exit::USAGE`] for rejected
//! arguments. Machine-readable output goes to stdout or `--output`;
//! progress goes to stderr.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lbs_core::baselines::{self, PrimitivePolynomial};
use lbs_core::oracle::exhaustive_min_psl;
use lbs_core::{compute_sidelobes, evaluate, instance_rng, BinarySequence, CostBaseline};
use serde_json::json;

use crate::bench::{self, BenchConfig, BENCH_CSV_HEADER};
use crate::config::mseq_degree;
use crate::{run_parallel, seqio, InitSource, LbsError, Result, RunConfig, SCHEMA_VERSION};

pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const RUNTIME: u8 = 1;
    pub const USAGE: u8 = 2;
}

/// Environment variable consulted for the master seed when `--seed` is absent.
pub const SEED_ENV: &str = "LBS_SEED";

#[derive(Debug, Parser)]
#[command(name = "lbs", version, about = "Search for long binary sequences with low peak sidelobe level")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a stochastic hill-climbing campaign.
    Optimize(OptimizeArgs),
    /// Generate a baseline sequence (random, m-sequence, Legendre, Rudin-Shapiro).
    Generate(GenerateArgs),
    /// Report PSL, fitness and sidelobes of a sequence file.
    Analyze(AnalyzeArgs),
    /// Compare the optimizer against baselines and the sqrt(n) threshold over many lengths.
    Bench(BenchArgs),
    /// Exact minimum PSL by enumeration (lengths up to 24).
    #[command(hide = true)]
    Exhaustive(ExhaustiveArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Random,
    Mseq,
    Legendre,
    RudinShapiro,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    /// Sequence length (taken from the file when --init file:PATH is used).
    #[arg(long)]
    pub length: Option<usize>,
    #[arg(long, env = SEED_ENV)]
    pub seed: Option<u64>,
    /// Wall-clock budget in seconds.
    #[arg(long, default_value_t = 60.0)]
    pub budget: f64,
    /// Stop as soon as this PSL is reached.
    #[arg(long)]
    pub target_psl: Option<u32>,
    /// Parallel instances [default: available cores, at most 12].
    #[arg(long)]
    pub instances: Option<usize>,
    /// random | mseq | legendre | rudin-shapiro | file:PATH
    #[arg(long, default_value = "random")]
    pub init: String,
    /// Largest number of flips in one kick.
    #[arg(long, default_value_t = 4)]
    pub kick_max: u32,
    /// Keep comparing against the pre-kick best fitness after a kick.
    #[arg(long)]
    pub keep_best_cost: bool,
    /// Stop each instance after this many probes (reproducible runs).
    #[arg(long)]
    pub max_probes: Option<u64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the improvement trace as CSV (elapsed_seconds,psl).
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Write the best sequence to this file.
    #[arg(long)]
    pub sequence_out: Option<PathBuf>,
    /// No progress on stderr.
    #[arg(long, short)]
    pub quiet: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub family: Family,
    /// 2^d - 1 for mseq, an odd prime for legendre, a power of two for rudin-shapiro.
    #[arg(long)]
    pub length: usize,
    /// LFSR start state for mseq.
    #[arg(long, default_value_t = 1)]
    pub init_state: u64,
    /// Seed for the random family.
    #[arg(long, env = SEED_ENV)]
    pub seed: Option<u64>,
    /// Cyclic shift applied to the generated sequence.
    #[arg(long, conflicts_with = "best_rotation")]
    pub rotate: Option<usize>,
    /// Use the rotation with the lowest PSL (cubic in the length).
    #[arg(long)]
    pub best_rotation: bool,
    /// mseq only: try every primitive polynomial of the degree and keep the best (slow).
    #[arg(long)]
    pub search_polynomials: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub file: PathBuf,
    /// List every sidelobe C_u, u = 1..n-1.
    #[arg(long)]
    pub sidelobes: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated lengths.
    #[arg(long, value_delimiter = ',', required_unless_present = "square_grid")]
    pub lengths: Vec<usize>,
    /// Use the lengths x^2 for x = 18..=44.
    #[arg(long, conflicts_with = "lengths")]
    pub square_grid: bool,
    /// Budget per length, in seconds.
    #[arg(long, default_value_t = 60.0)]
    pub budget: f64,
    #[arg(long)]
    pub instances: Option<usize>,
    #[arg(long, env = SEED_ENV)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 4)]
    pub kick_max: u32,
    /// Score every rotation of the m-sequence as well.
    #[arg(long)]
    pub best_rotation: bool,
    /// Move to the next length as soon as PSL < sqrt(n).
    #[arg(long)]
    pub stop_below_sqrt: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, short)]
    pub quiet: bool,
}

#[derive(Debug, Args)]
pub struct ExhaustiveArgs {
    #[arg(long)]
    pub length: usize,
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::SUCCESS });
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::from(exit::SUCCESS),
        Err(e) if e.is_usage() => {
            eprintln!("error: {e}");
            ExitCode::from(exit::USAGE)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit::RUNTIME)
        }
    }
}

pub fn execute(command: Command) -> Result<()> {
    match command {
        Command::Optimize(args) => cmd_optimize(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Exhaustive(args) => cmd_exhaustive(args),
    }
}

pub fn default_instances() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get()).min(12)
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let now = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).unwrap_or_default();
        now.as_nanos() as u64 ^ u64::from(std::process::id()).rotate_left(32)
    })
}

fn budget(seconds: f64) -> Result<Duration> {
    if !(seconds.is_finite() && seconds > 0.0) {
        return Err(LbsError::config(format!("budget must be a positive number of seconds, got {seconds}")));
    }
    Ok(Duration::from_secs_f64(seconds))
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| LbsError::io(path, e)),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| LbsError::io("<stdout>", e))
        }
    }
}

/// Builds the run configuration from flags without doing any work.
pub fn optimize_config(args: &OptimizeArgs) -> Result<(RunConfig, usize)> {
    let init: InitSource = args.init.parse()?;
    let length = match (&init, args.length) {
        (_, Some(n)) => n,
        (InitSource::File(path), None) => seqio::read_sequence(path)?.len(),
        (_, None) => return Err(LbsError::config("--length is required unless --init file:PATH is given")),
    };
    let mut config = RunConfig::new(length, resolve_seed(args.seed)).with_budget(budget(args.budget)?);
    config.target_psl = args.target_psl;
    config.kick_max = args.kick_max;
    config.init = init;
    config.max_probes = args.max_probes;
    config.progress = !args.quiet;
    if args.keep_best_cost {
        config.cost_baseline = CostBaseline::KeepBest;
    }
    config.validate()?;
    let instances = args.instances.unwrap_or_else(default_instances);
    if instances == 0 {
        return Err(LbsError::config("--instances must be at least 1"));
    }
    Ok((config, instances))
}

pub fn cmd_optimize(args: OptimizeArgs) -> Result<()> {
    let (config, instances) = optimize_config(&args)?;
    let report = run_parallel(&config, instances)?;
    if let Some(path) = &args.trace {
        fs::write(path, report.trace_csv()).map_err(|e| LbsError::io(path, e))?;
    }
    if let Some(path) = &args.sequence_out {
        seqio::write_sequence(path, &report.best_sequence.parse()?)?;
    }
    let text = match args.format {
        Format::Json => report.to_json()? + "\n",
        Format::Csv => report.summary_csv(),
        Format::Text => report.summary_text(),
    };
    emit(args.output.as_deref(), &text)
}

fn generate_sequence(args: &GenerateArgs) -> Result<(BinarySequence, Option<u64>)> {
    let n = args.length;
    Ok(match args.family {
        Family::Random => {
            let mut rng = instance_rng(resolve_seed(args.seed), 0);
            (BinarySequence::random(n, &mut rng)?, None)
        }
        Family::Mseq => {
            let degree = mseq_degree(n)
                .filter(|&d| d >= 2)
                .ok_or_else(|| LbsError::config(format!("mseq length must be 2^d - 1 with d >= 2, got {n}")))?;
            if args.search_polynomials {
                let mut best: Option<(u32, BinarySequence, u64)> = None;
                for poly in baselines::primitive_polynomials(degree) {
                    let seq = baselines::mseq(&poly, args.init_state)?;
                    let psl = if args.best_rotation {
                        baselines::best_rotation_psl(&seq).1
                    } else {
                        lbs_core::psl_direct(&seq)
                    };
                    if best.as_ref().is_none_or(|b| psl < b.0) {
                        best = Some((psl, seq, poly.mask()));
                    }
                }
                let (_, seq, mask) = best.expect("every degree has a primitive polynomial");
                (seq, Some(mask))
            } else {
                let poly = PrimitivePolynomial::builtin(degree)
                    .map_err(|_| LbsError::config(format!("no built-in polynomial of degree {degree}")))?;
                (baselines::mseq(&poly, args.init_state)?, Some(poly.mask()))
            }
        }
        Family::Legendre => (baselines::legendre(n as u64).map_err(|e| LbsError::config(e.to_string()))?, None),
        Family::RudinShapiro => {
            if !n.is_power_of_two() || n < 2 {
                return Err(LbsError::config(format!("rudin-shapiro length must be a power of two, got {n}")));
            }
            (baselines::rudin_shapiro(n.trailing_zeros())?, None)
        }
    })
}

pub fn cmd_generate(args: GenerateArgs) -> Result<()> {
    if args.length < 2 {
        return Err(LbsError::config(format!("length must be at least 2, got {}", args.length)));
    }
    if args.search_polynomials && args.family != Family::Mseq {
        return Err(LbsError::config("--search-polynomials only applies to mseq"));
    }
    if args.family == Family::Mseq && args.init_state == 0 {
        return Err(LbsError::config("--init-state must be non-zero"));
    }
    let (base, polynomial) = generate_sequence(&args)?;
    let (shift, seq) = if args.best_rotation {
        let (shift, _) = baselines::best_rotation_psl(&base);
        (shift, baselines::rotate(&base, shift))
    } else {
        let shift = args.rotate.unwrap_or(0) % base.len();
        (shift, baselines::rotate(&base, shift))
    };
    let report = evaluate(&compute_sidelobes(&seq));
    let family = args.family.to_possible_value().expect("no skipped variants").get_name().to_string();
    let text = match args.format {
        Format::Text => format!("{seq}\n"),
        Format::Json => {
            serde_json::to_string_pretty(&json!({
                "schema_version": SCHEMA_VERSION,
                "family": family,
                "n": seq.len(),
                "polynomial": polynomial,
                "shift": shift,
                "psl": report.psl,
                "fitness": report.fitness,
                "sequence": seq.to_string(),
            }))? + "\n"
        }
        Format::Csv => format!(
            "schema,family,n,polynomial,shift,psl,fitness,sequence\n{SCHEMA_VERSION},{family},{},{},{shift},{},{},{seq}\n",
            seq.len(),
            polynomial.map(|m| format!("{m:#x}")).unwrap_or_default(),
            report.psl,
            report.fitness
        ),
    };
    emit(args.output.as_deref(), &text)
}

pub fn cmd_analyze(args: AnalyzeArgs) -> Result<()> {
    let seq = seqio::read_sequence(&args.file)?;
    let omega = compute_sidelobes(&seq);
    let report = evaluate(&omega);
    let n = seq.len();
    let lobes: Vec<i32> = (1..n).map(|u| omega.aacf(u).expect("0 < u < n")).collect();
    let text = match args.format {
        Format::Text => {
            let mut s = format!("n = {n}\npsl = {}\nfitness = {}\n", report.psl, report.fitness);
            if args.sidelobes {
                for (u, c) in lobes.iter().enumerate() {
                    s += &format!("C_{} = {c}\n", u + 1);
                }
            }
            s
        }
        Format::Json => {
            let mut v = json!({
                "schema_version": SCHEMA_VERSION,
                "n": n,
                "psl": report.psl,
                "fitness": report.fitness,
            });
            if args.sidelobes {
                v["sidelobes"] = json!(lobes);
            }
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Csv => {
            let mut s = format!("schema,n,psl,fitness\n{SCHEMA_VERSION},{n},{},{}\n", report.psl, report.fitness);
            if args.sidelobes {
                s += "u,c_u\n";
                for (u, c) in lobes.iter().enumerate() {
                    s += &format!("{},{c}\n", u + 1);
                }
            }
            s
        }
    };
    emit(args.output.as_deref(), &text)
}

pub fn cmd_bench(args: BenchArgs) -> Result<()> {
    let lengths = if args.square_grid { bench::square_grid() } else { args.lengths.clone() };
    let config = BenchConfig {
        lengths,
        budget: budget(args.budget)?,
        instances: args.instances.unwrap_or_else(default_instances),
        seed: resolve_seed(args.seed),
        kick_max: args.kick_max,
        best_rotation: args.best_rotation,
        stop_below_sqrt: args.stop_below_sqrt,
        progress: !args.quiet,
    };
    bench::validate(&config)?;
    if args.kick_max == 0 {
        return Err(LbsError::config("--kick-max must be at least 1"));
    }
    let streaming = args.format == Format::Csv && args.output.is_none();
    if streaming {
        emit(None, &format!("{BENCH_CSV_HEADER}\n"))?;
    }
    let rows = bench::run_bench(&config, |row| {
        if streaming {
            let _ = emit(None, &format!("{}\n", row.csv_line()));
        } else if !args.quiet {
            eprintln!("n = {}: psl {} (sqrt {:.2})", row.n, row.optimizer_psl, row.sqrt_n);
        }
    })?;
    if streaming {
        return Ok(());
    }
    let text = match args.format {
        Format::Csv => {
            let mut s = format!("{BENCH_CSV_HEADER}\n");
            for r in &rows {
                s += &r.csv_line();
                s.push('\n');
            }
            s
        }
        Format::Json => {
            serde_json::to_string_pretty(&json!({ "schema_version": bench::BENCH_SCHEMA_VERSION, "rows": rows }))?
                + "\n"
        }
        Format::Text => rows
            .iter()
            .map(|r| {
                format!(
                    "n = {:6}  psl = {:4}  sqrt(n) = {:8.2}  {}{}\n",
                    r.n,
                    r.optimizer_psl,
                    r.sqrt_n,
                    if r.below_sqrt { "below" } else { "NOT below" },
                    r.mseq_psl.map(|p| format!("  mseq psl = {p}")).unwrap_or_default()
                )
            })
            .collect(),
    };
    emit(args.output.as_deref(), &text)
}

pub fn cmd_exhaustive(args: ExhaustiveArgs) -> Result<()> {
    let (psl, witness) = exhaustive_min_psl(args.length).map_err(|e| LbsError::config(e.to_string()))?;
    emit(None, &format!("n = {}\nmin psl = {psl}\nwitness = {witness}\n", args.length))
}
