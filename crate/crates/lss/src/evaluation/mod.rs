//! Workloads, ground truth, metrics, and the experiment harness.

pub mod experiment;
pub mod metrics;
pub mod oracle;
pub mod sweep;
pub mod trace;
pub mod zipf;

pub use experiment::{
    build_predictor, materialize_trace, resolve_budget, run_experiment, ExperimentConfig,
    MetricsReport, PredictorSpec, ResolvedBudget, TraceSource, WindowMetrics,
};
pub use metrics::{max_abs_error, precision_topk, recall_hh, rmse, rmse_sampled};
pub use oracle::ExactOracle;
pub use sweep::{
    apply_axis, csv_row, run_sweep, sweep_csv, variant_config, SweepAxis, SweepRun, CSV_HEADER,
};
pub use trace::{read_trace, write_trace};
pub use zipf::{gen_zipf, ZipfGenerator};
