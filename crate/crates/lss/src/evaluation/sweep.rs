//! Parameter sweeps: one experiment per (axis value, variant) pair.
//!
//! Every run in a sweep shares the base seed, so all variants at a given
//! axis value see the identical arrival sequence and identical predictor
//! draws; differences in their rows are differences between sketches, not
//! between workloads.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::evaluation::experiment::{
    run_experiment, ExperimentConfig, MetricsReport, PredictorSpec, TraceSource,
};
use crate::sketch::Variant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    Memory,
    P,
    T,
    Alpha,
    Tau,
    FixedRatio,
    FilterRatio,
    StreamPrefix,
}

impl SweepAxis {
    pub const ALL: [SweepAxis; 8] = [
        SweepAxis::Memory,
        SweepAxis::P,
        SweepAxis::T,
        SweepAxis::Alpha,
        SweepAxis::Tau,
        SweepAxis::FixedRatio,
        SweepAxis::FilterRatio,
        SweepAxis::StreamPrefix,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SweepAxis::Memory => "memory",
            SweepAxis::P => "p",
            SweepAxis::T => "t",
            SweepAxis::Alpha => "alpha",
            SweepAxis::Tau => "tau",
            SweepAxis::FixedRatio => "fixed_ratio",
            SweepAxis::FilterRatio => "filter_ratio",
            SweepAxis::StreamPrefix => "stream_prefix",
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SweepAxis::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| {
                Error::config(format!(
                    "unknown axis {s:?} (expected one of memory, p, t, alpha, tau, fixed_ratio, filter_ratio, stream_prefix)"
                ))
            })
    }
}

fn integral(axis: SweepAxis, value: f64) -> Result<u64> {
    if value < 1.0 || value.fract() != 0.0 || !value.is_finite() {
        return Err(Error::config(format!(
            "axis {axis} needs positive integer values (got {value})"
        )));
    }
    Ok(value as u64)
}

/// Writes one axis value into a config. The `tau` axis takes the inverse
/// sampling rate (2 means a rate of 1/2).
pub fn apply_axis(cfg: &mut ExperimentConfig, axis: SweepAxis, value: f64) -> Result<()> {
    match axis {
        SweepAxis::Memory => cfg.memory_bits = integral(axis, value)?,
        SweepAxis::P => match &mut cfg.predictor {
            PredictorSpec::Simulated { p, .. } => *p = value,
            _ => {
                return Err(Error::config(
                    "axis p requires the simulated predictor",
                ))
            }
        },
        SweepAxis::T => cfg.t = integral(axis, value)?,
        SweepAxis::Alpha => match &mut cfg.trace {
            TraceSource::Zipf { alpha, .. } => *alpha = value,
            _ => {
                return Err(Error::config(
                    "axis alpha requires a synthetic zipf trace",
                ))
            }
        },
        SweepAxis::Tau => cfg.tau_inv = integral(axis, value)?,
        SweepAxis::FixedRatio => cfg.fixed_ratio = value,
        SweepAxis::FilterRatio => cfg.filter_ratio = value,
        SweepAxis::StreamPrefix => cfg.prefix = Some(integral(axis, value)?),
    }
    Ok(())
}

/// Re-targets a base config at another variant without discarding tuning.
/// The low-frequency threshold drops to 1 where the variant demands it.
/// A zero resource ratio is lifted to the standard 10% split only when the
/// base variant had no use for that ratio, so an unfiltered base can still
/// drive filtered variants while an explicit zero on a base that does use
/// the knob (say, lss with no pinned slots) survives the retarget.
pub fn variant_config(base: &ExperimentConfig, variant: Variant) -> ExperimentConfig {
    let mut cfg = base.clone();
    cfg.variant = variant;
    if variant == Variant::LssLfs {
        cfg.t = 1;
    }
    if variant.uses_filter() && cfg.filter_ratio == 0.0 && !base.variant.uses_filter() {
        cfg.filter_ratio = 0.10;
    }
    if variant.uses_fixed_entries()
        && cfg.fixed_ratio == 0.0
        && !base.variant.uses_fixed_entries()
    {
        cfg.fixed_ratio = 0.10;
    }
    cfg
}

#[derive(Debug, Clone)]
pub struct SweepRun {
    pub variant: Variant,
    pub axis: SweepAxis,
    pub value: f64,
    pub config: ExperimentConfig,
    pub report: MetricsReport,
}

impl SweepRun {
    pub fn summary_line(&self) -> String {
        format!(
            "{}={} variant={}: rmse={:.4} precision_topk={:.4} recall_hh={:.4} max_err={}",
            self.axis,
            self.value,
            self.variant,
            self.report.rmse,
            self.report.precision_topk,
            self.report.recall_hh,
            self.report.max_abs_error
        )
    }
}

/// Runs the full grid: for each axis value (outer), each variant (inner).
pub fn run_sweep(
    base: &ExperimentConfig,
    variants: &[Variant],
    axis: SweepAxis,
    values: &[f64],
) -> Result<Vec<SweepRun>> {
    if variants.is_empty() {
        return Err(Error::config("sweep needs at least one variant"));
    }
    if values.is_empty() {
        return Err(Error::config("sweep needs at least one axis value"));
    }
    let mut runs = Vec::with_capacity(values.len() * variants.len());
    for &value in values {
        for &variant in variants {
            let mut cfg = variant_config(base, variant);
            apply_axis(&mut cfg, axis, value)?;
            let report = run_experiment(&cfg)?;
            runs.push(SweepRun {
                variant,
                axis,
                value,
                config: cfg,
                report,
            });
        }
    }
    Ok(runs)
}

pub const CSV_HEADER: &str = "variant,axis,axis_value,memory_bits,k,k_hh,filter_bits,t,tau_inv,p,alpha,window,rmse,precision_topk,recall_hh,max_abs_error,updates_per_sec,filter_ops,seed";

/// One aggregate CSV row. `axis` is `none` with an empty value for plain
/// single runs. The `p` and `alpha` columns are empty when the predictor
/// is not simulated or the trace is not synthetic.
pub fn csv_row(
    cfg: &ExperimentConfig,
    axis: Option<(SweepAxis, f64)>,
    report: &MetricsReport,
) -> String {
    let (axis_name, axis_value) = match axis {
        Some((a, v)) => (a.as_str().to_string(), format!("{v}")),
        None => ("none".to_string(), String::new()),
    };
    let p = match &cfg.predictor {
        PredictorSpec::Simulated { p, .. } => format!("{p}"),
        _ => String::new(),
    };
    let alpha = match &cfg.trace {
        TraceSource::Zipf { alpha, .. } => format!("{alpha}"),
        _ => String::new(),
    };
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{:.1},{},{}",
        cfg.variant,
        axis_name,
        axis_value,
        cfg.memory_bits,
        report.k,
        report.k_hh,
        report.filter_bits,
        cfg.t,
        cfg.tau_inv,
        p,
        alpha,
        cfg.window,
        report.rmse,
        report.precision_topk,
        report.recall_hh,
        report.max_abs_error,
        report.updates_per_sec,
        report.filter_ops,
        cfg.seed
    )
}

/// Full CSV document for a list of sweep runs.
pub fn sweep_csv(runs: &[SweepRun]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for run in runs {
        out.push_str(&csv_row(&run.config, Some((run.axis, run.value)), &run.report));
        out.push('\n');
    }
    out
}
