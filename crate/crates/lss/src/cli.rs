//! The `lss` command line: trace generation, experiments, sweeps, and the
//! bound selftest.
//!
//! Every subcommand prints its fully resolved configuration to stderr
//! before doing work. Saving that block to a file and passing it back via
//! `--config` reproduces the run exactly (throughput numbers aside).
//!
//! Exit codes: 0 success, 2 usage or configuration error, 3 selftest
//! bound violation, 4 I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::evaluation::experiment::{
    run_experiment, ExperimentConfig, PredictorSpec, TraceSource,
};
use crate::evaluation::sweep::{
    apply_axis, csv_row, run_sweep, sweep_csv, variant_config, SweepAxis, CSV_HEADER,
};
use crate::evaluation::trace::write_trace;
use crate::evaluation::zipf::gen_zipf;
use crate::selftest::{run_selftest, Fault};
use crate::sketch::Variant;

#[derive(Parser)]
#[command(
    name = "lss",
    version,
    about = "Space Saving and learned Space Saving sketches, with an evaluation harness"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a synthetic Zipf trace file (one item token per line)
    Gen(GenArgs),
    /// Run one experiment and emit aggregate CSV
    Run(RunArgs),
    /// Run one experiment per (axis value, variant) and emit CSV
    Sweep(SweepArgs),
    /// Replay the bound checks the sketches are supposed to guarantee
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Zipf skew (0 = uniform)
    #[arg(long)]
    alpha: f64,
    /// Universe size (number of distinct items)
    #[arg(long)]
    n: u64,
    /// Stream length
    #[arg(long)]
    len: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output trace path
    #[arg(short, long)]
    out: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    /// Flat key=value config file; flags below override it
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    overrides: ConfigOverrides,
    /// Write CSV here instead of stdout
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Flat key=value config file with the base experiment
    #[arg(long)]
    config: Option<PathBuf>,
    /// Axis to sweep: memory, p, t, alpha, tau, fixed_ratio,
    /// filter_ratio, or stream_prefix
    #[arg(long)]
    axis: String,
    /// Comma-separated axis values
    #[arg(long)]
    values: String,
    /// Comma-separated variants (default: all six)
    #[arg(long)]
    variants: Option<String>,
    #[command(flatten)]
    overrides: ConfigOverrides,
    /// Write CSV here instead of stdout
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Inject a known bug to prove the checks can fail
    /// (accepted value: skip-correction)
    #[arg(long)]
    fault: Option<String>,
}

#[derive(Args)]
struct ConfigOverrides {
    /// Sketch variant: ss, lss_lfs, lss_lf, lss_hh, lss, lss_plus
    #[arg(long)]
    variant: Option<String>,
    /// Total bit budget for table plus filter
    #[arg(long)]
    memory_bits: Option<u64>,
    /// Trace file to replay instead of a synthetic stream
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Zipf skew for the synthetic trace
    #[arg(long)]
    alpha: Option<f64>,
    /// Universe size for the synthetic trace
    #[arg(long)]
    n: Option<u64>,
    /// Length of the synthetic trace
    #[arg(long)]
    len: Option<u64>,
    /// Predictor kind: sim, constant, or table
    #[arg(long)]
    pred: Option<String>,
    /// Probability the simulated predictor classifies an item correctly
    #[arg(long)]
    p: Option<f64>,
    /// Relative noise on correct simulated predictions
    #[arg(long)]
    noise: Option<f64>,
    /// Probability a low item is promoted past the threshold
    #[arg(long)]
    promote_prob: Option<f64>,
    /// Prediction returned for every item by the constant predictor
    #[arg(long)]
    constant_value: Option<f64>,
    /// Tab-separated token/prediction file for the table predictor
    #[arg(long)]
    table_path: Option<PathBuf>,
    /// Prediction for items missing from the table
    #[arg(long)]
    table_default: Option<f64>,
    /// Low-frequency threshold t
    #[arg(long)]
    t: Option<u64>,
    /// Inverse sampling rate for lss_plus
    #[arg(long)]
    tau_inv: Option<u64>,
    /// Heavy-hitter threshold as a multiple of 1/k at this budget
    #[arg(long)]
    theta_factor: Option<f64>,
    /// Report size for top-k precision
    #[arg(long)]
    top_k: Option<usize>,
    /// Arrivals between metric checkpoints
    #[arg(long)]
    window: Option<u64>,
    /// Fraction of the bit budget given to the filter
    #[arg(long)]
    filter_ratio: Option<f64>,
    /// Fraction of table slots that may be pinned
    #[arg(long)]
    fixed_ratio: Option<f64>,
    /// Slack factor for false-positive theorem checks
    #[arg(long)]
    nu: Option<f64>,
    /// Timing repetitions (accuracy is identical across them)
    #[arg(long)]
    repetitions: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    /// Use exact (collision-free) filters; diagnostic mode
    #[arg(long)]
    exact_filter: bool,
    /// Evaluate only the first PREFIX arrivals
    #[arg(long)]
    prefix: Option<u64>,
    /// Score RMSE on a sample of this many items instead of all
    #[arg(long)]
    rmse_sample: Option<u64>,
}

impl ConfigOverrides {
    fn apply(&self, mut cfg: ExperimentConfig) -> Result<ExperimentConfig> {
        if let Some(v) = &self.variant {
            cfg = variant_config(&cfg, v.parse::<Variant>()?);
        }
        if let Some(path) = &self.trace {
            cfg.trace = TraceSource::File { path: path.clone() };
        }
        if self.alpha.is_some() || self.n.is_some() || self.len.is_some() {
            let (alpha0, n0, len0) = match cfg.trace {
                TraceSource::Zipf { alpha, n, len } => (alpha, n, len),
                TraceSource::File { .. } => {
                    return Err(Error::config(
                        "synthetic trace flags (--alpha/--n/--len) conflict with --trace",
                    ));
                }
            };
            cfg.trace = TraceSource::Zipf {
                alpha: self.alpha.unwrap_or(alpha0),
                n: self.n.unwrap_or(n0),
                len: self.len.unwrap_or(len0),
            };
        }
        if let Some(kind) = &self.pred {
            cfg.predictor = match kind.as_str() {
                "sim" => PredictorSpec::Simulated {
                    p: 0.9,
                    noise: 0.05,
                    promote_prob: 0.01,
                },
                "constant" => PredictorSpec::Constant { value: 1.0 },
                "table" => PredictorSpec::Table {
                    path: self.table_path.clone().ok_or_else(|| {
                        Error::config("--pred table requires --table-path")
                    })?,
                    default: 1.0,
                },
                other => {
                    return Err(Error::config(format!(
                        "predictor must be sim, constant, or table (got {other:?})"
                    )));
                }
            };
        }
        match &mut cfg.predictor {
            PredictorSpec::Simulated { p, noise, promote_prob } => {
                if let Some(v) = self.p {
                    *p = v;
                }
                if let Some(v) = self.noise {
                    *noise = v;
                }
                if let Some(v) = self.promote_prob {
                    *promote_prob = v;
                }
            }
            PredictorSpec::Constant { value } => {
                if let Some(v) = self.constant_value {
                    *value = v;
                }
            }
            PredictorSpec::Table { path, default } => {
                if let Some(v) = &self.table_path {
                    *path = v.clone();
                }
                if let Some(v) = self.table_default {
                    *default = v;
                }
            }
        }
        if let Some(v) = self.memory_bits {
            cfg.memory_bits = v;
        }
        if let Some(v) = self.t {
            cfg.t = v;
        }
        if let Some(v) = self.tau_inv {
            cfg.tau_inv = v;
        }
        if let Some(v) = self.theta_factor {
            cfg.theta_factor = v;
        }
        if let Some(v) = self.top_k {
            cfg.top_k = v;
        }
        if let Some(v) = self.window {
            cfg.window = v;
        }
        if let Some(v) = self.filter_ratio {
            cfg.filter_ratio = v;
        }
        if let Some(v) = self.fixed_ratio {
            cfg.fixed_ratio = v;
        }
        if let Some(v) = self.nu {
            cfg.nu = v;
        }
        if let Some(v) = self.repetitions {
            cfg.repetitions = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if self.exact_filter {
            cfg.exact_filter = true;
        }
        if let Some(v) = self.prefix {
            cfg.prefix = Some(v);
        }
        if let Some(v) = self.rmse_sample {
            cfg.rmse_sample = Some(v);
        }
        Ok(cfg)
    }
}

fn load_base(config: &Option<PathBuf>) -> Result<ExperimentConfig> {
    match config {
        Some(path) => ExperimentConfig::from_file(path),
        None => Ok(ExperimentConfig::baseline()),
    }
}

fn echo_config(cfg: &ExperimentConfig) {
    eprintln!("# effective configuration");
    eprint!("{}", cfg.effective_kv());
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|e| Error::io(path, e)),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_gen(args: &GenArgs) -> Result<ExitCode> {
    eprintln!(
        "# effective configuration\nalpha = {}\nn = {}\nlen = {}\nseed = {}",
        args.alpha, args.n, args.len, args.seed
    );
    if args.len == 0 {
        return Err(Error::config("len must be at least 1"));
    }
    let stream = gen_zipf(args.alpha, args.n, args.len, args.seed)?;
    write_trace(&args.out, &stream)?;
    eprintln!(
        "wrote {} arrivals over universe {} to {}",
        args.len,
        args.n,
        args.out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_run(args: &RunArgs) -> Result<ExitCode> {
    let cfg = args.overrides.apply(load_base(&args.config)?)?;
    cfg.validate()?;
    echo_config(&cfg);
    let report = run_experiment(&cfg)?;
    let mut content = String::from(CSV_HEADER);
    content.push('\n');
    content.push_str(&csv_row(&cfg, None, &report));
    content.push('\n');
    write_output(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn parse_values(raw: &str) -> Result<Vec<f64>> {
    raw.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Error::config(format!("invalid axis value {v:?}")))
        })
        .collect()
}

fn parse_variants(raw: &Option<String>) -> Result<Vec<Variant>> {
    match raw {
        None => Ok(Variant::ALL.to_vec()),
        Some(list) => list.split(',').map(|v| v.trim().parse()).collect(),
    }
}

fn cmd_sweep(args: &SweepArgs) -> Result<ExitCode> {
    let base = args.overrides.apply(load_base(&args.config)?)?;
    let axis: SweepAxis = args.axis.parse()?;
    let values = parse_values(&args.values)?;
    let variants = parse_variants(&args.variants)?;
    // Fail fast on axis/config mismatches before any long runs.
    for &value in &values {
        let mut probe = base.clone();
        apply_axis(&mut probe, axis, value)?;
    }
    echo_config(&base);
    eprintln!(
        "# sweep axis = {axis}, values = [{}], variants = [{}]",
        values
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(", "),
        variants
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    let runs = run_sweep(&base, &variants, axis, &values)?;
    for run in &runs {
        eprintln!("{}", run.summary_line());
    }
    write_output(&args.out, &sweep_csv(&runs))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_selftest(args: &SelftestArgs) -> Result<ExitCode> {
    let fault = match args.fault.as_deref() {
        None => Fault::None,
        Some("skip-correction") => Fault::SkipCorrection,
        Some(other) => {
            return Err(Error::config(format!(
                "unknown fault {other:?} (accepted: skip-correction)"
            )));
        }
    };
    eprintln!(
        "# effective configuration\nseed = {}\nfault = {}",
        args.seed,
        match fault {
            Fault::None => "none",
            Fault::SkipCorrection => "skip-correction",
        }
    );
    let report = run_selftest(args.seed, fault);
    println!("{report}");
    if report.pass() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(3))
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Run(args) => cmd_run(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Selftest(args) => cmd_selftest(args),
    }
}

fn exit_for(err: &Error) -> ExitCode {
    match err {
        Error::Config(_) | Error::Parse { .. } => ExitCode::from(2),
        Error::Io { .. } => ExitCode::from(4),
    }
}

/// Entry point for the binary. Clap handles usage errors itself (exit 2).
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_for(&err)
        }
    }
}
