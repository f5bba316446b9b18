//! All six variants across a range of memory budgets, as CSV.
//!
//! This is the `sweep` subcommand driven through the library API. Each
//! variant re-splits every budget its own way, the workload and seed stay
//! fixed, and the CSV that lands on stdout is ready for a plotting
//! script.

use lss::evaluation::experiment::{ExperimentConfig, TraceSource};
use lss::evaluation::sweep::{run_sweep, sweep_csv, SweepAxis};
use lss::Variant;

fn main() -> lss::Result<()> {
    let mut base = ExperimentConfig::baseline();
    base.trace = TraceSource::Zipf {
        alpha: 1.3,
        n: 10_000,
        len: 50_000,
    };
    base.window = 10_000;

    let budgets = [8_192.0, 16_384.0, 32_768.0, 65_536.0];
    let runs = run_sweep(&base, &Variant::ALL, SweepAxis::Memory, &budgets)?;

    for run in &runs {
        eprintln!("{}", run.summary_line());
    }
    print!("{}", sweep_csv(&runs));
    Ok(())
}
