//! One experiment, end to end: config text in, windowed metrics out.
//!
//! The config below is the exact format the `run` subcommand reads from a
//! file. Every field left out keeps its baseline default, and the
//! effective configuration echoed by the harness can be fed straight back
//! in to reproduce the run.

use lss::evaluation::experiment::{run_experiment, ExperimentConfig};
use lss::evaluation::sweep::{csv_row, CSV_HEADER};

const CONFIG: &str = "
# learned sketch on a mid-skew workload
variant = lss
trace = zipf
alpha = 1.2
n = 20000
len = 100000
memory_bits = 32768
t = 4
predictor = sim
p = 0.9
window = 20000
top_k = 64
seed = 11
";

fn main() -> lss::Result<()> {
    let cfg = ExperimentConfig::from_kv_text(CONFIG)?;
    let report = run_experiment(&cfg)?;

    println!(
        "run: {} with k={}, k_hh={}, filter_bits={}, theta={:.6}",
        cfg.variant, report.k, report.k_hh, report.filter_bits, report.theta
    );
    println!();
    println!(
        "{:>7} {:>9} {:>9} {:>7} {:>7} {:>8}",
        "window", "arrivals", "rmse", "p@k", "recall", "max_err"
    );
    for w in &report.windows {
        println!(
            "{:>7} {:>9} {:>9.2} {:>7.3} {:>7.3} {:>8}",
            w.window, w.arrivals, w.rmse, w.precision_topk, w.recall_hh, w.max_abs_error
        );
    }
    println!();
    println!(
        "means: rmse {:.2}, precision {:.3}, recall {:.3}; {:.0} updates/s, {} filter ops",
        report.rmse,
        report.precision_topk,
        report.recall_hh,
        report.updates_per_sec,
        report.filter_ops
    );

    println!();
    println!("csv:");
    println!("{CSV_HEADER}");
    println!("{}", csv_row(&cfg, None, &report));
    Ok(())
}
