//! How much does the predictor have to be right?
//!
//! Sweeps the simulated predictor's accuracy p and runs plain Space
//! Saving next to the filtered variant at each level. Space Saving
//! ignores the predictor, so its rows are the flat control; the filtered
//! sketch degrades gracefully as predictions get noisier and pulls ahead
//! once the advice is mostly right.

use lss::evaluation::experiment::ExperimentConfig;
use lss::evaluation::sweep::{run_sweep, SweepAxis};
use lss::Variant;

fn main() -> lss::Result<()> {
    let mut base = ExperimentConfig::baseline();
    base.window = 10_000;
    base.top_k = 64;

    let runs = run_sweep(
        &base,
        &[Variant::Ss, Variant::LssLf],
        SweepAxis::P,
        &[0.6, 0.8, 0.95, 1.0],
    )?;

    for run in &runs {
        println!("{}", run.summary_line());
    }
    Ok(())
}
