//! Single-experiment runner: one trace, one sketch, windowed evaluation.
//!
//! The protocol mirrors how streaming sketches are normally benchmarked.
//! An exact pre-pass over the trace builds the oracle the predictor is
//! derived from. The sketch then ingests arrivals; after every `window`
//! arrivals the harness freezes, queries the sketch for every distinct
//! item seen so far, and scores it against the exact prefix truth. The
//! aggregate report averages the per-window scores.
//!
//! Budgets are expressed in bits and resolved deterministically: a table
//! entry costs [`ENTRY_BITS`], and filtered variants give `filter_ratio`
//! of the budget to the filter. Two sketches configured with the same
//! `memory_bits` are comparable bit for bit.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::evaluation::metrics::{max_abs_error, precision_topk, recall_hh, rmse, rmse_sampled};
use crate::evaluation::oracle::ExactOracle;
use crate::evaluation::trace::read_trace;
use crate::evaluation::zipf::gen_zipf;
use crate::item::{ItemId, ItemInterner};
use crate::predictor::{
    load_prediction_table, ConstantPredictor, PredictorThresholds, SharedPredictor,
    SimulatedPredictor, SimulatedPredictorSpec,
};
use crate::rng::derive_seed;
use crate::sketch::{LssConfig, LssSketch, Variant};
use crate::space_saving::ENTRY_BITS;

#[derive(Debug, Clone, PartialEq)]
pub enum TraceSource {
    Zipf { alpha: f64, n: u64, len: u64 },
    File { path: PathBuf },
}

#[derive(Debug, Clone, PartialEq)]
pub enum PredictorSpec {
    Simulated { p: f64, noise: f64, promote_prob: f64 },
    Constant { value: f64 },
    Table { path: PathBuf, default: f64 },
}

/// Everything one experiment needs, resolvable from a flat key=value file.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub trace: TraceSource,
    pub variant: Variant,
    pub memory_bits: u64,
    pub t: u64,
    pub tau_inv: u64,
    pub predictor: PredictorSpec,
    /// Heavy-hitter threshold as a multiple of the equal-memory Space
    /// Saving error bound: theta = theta_factor / floor(memory_bits /
    /// entry_bits). Constant across variants at the same budget, so their
    /// recall numbers measure the same ground-truth set.
    pub theta_factor: f64,
    pub top_k: usize,
    pub window: u64,
    pub filter_ratio: f64,
    pub fixed_ratio: f64,
    /// Slack factor used by theorem checks on filter false positives.
    pub nu: f64,
    pub repetitions: u32,
    pub seed: u64,
    /// Replace the probabilistic filter with an exact one (diagnostic).
    pub exact_filter: bool,
    pub cell_width: u32,
    /// Evaluate only the first `prefix` arrivals when set.
    pub prefix: Option<u64>,
    /// When set, score RMSE on a uniform item sample of this size instead
    /// of every distinct item.
    pub rmse_sample: Option<u64>,
}

impl ExperimentConfig {
    /// Baseline configuration: plain Space Saving on a small Zipf trace.
    /// Ratio defaults follow the variant; see [`ExperimentConfig::with_variant`].
    pub fn baseline() -> Self {
        ExperimentConfig {
            trace: TraceSource::Zipf {
                alpha: 1.3,
                n: 10_000,
                len: 100_000,
            },
            variant: Variant::Ss,
            memory_bits: 1 << 16,
            t: 4,
            tau_inv: 1,
            predictor: PredictorSpec::Simulated {
                p: 0.9,
                noise: 0.05,
                promote_prob: 0.01,
            },
            theta_factor: 0.25,
            top_k: 64,
            window: 1000,
            filter_ratio: 0.0,
            fixed_ratio: 0.0,
            nu: 0.1,
            repetitions: 1,
            seed: 1,
            exact_filter: false,
            cell_width: 4,
            prefix: None,
            rmse_sample: None,
        }
    }

    /// Switches variant and applies the standard resource splits: 10% of
    /// memory to the filter for filtered variants, 10% of counters fixed
    /// for heavy-hitter variants, and t forced to 1 where required.
    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self.filter_ratio = if variant.uses_filter() { 0.10 } else { 0.0 };
        self.fixed_ratio = if variant.uses_fixed_entries() { 0.10 } else { 0.0 };
        if variant == Variant::LssLfs {
            self.t = 1;
        }
        self
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_kv_text(&text)
    }

    /// Parses the flat `key = value` format (one pair per line, `#`
    /// comments). Unknown or duplicate keys are errors naming the key.
    pub fn from_kv_text(text: &str) -> Result<Self> {
        let mut kv: HashMap<&str, &str> = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::config(format!("line {}: expected key = value", idx + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            if kv.insert(key, value).is_some() {
                return Err(Error::config(format!("duplicate key {key:?}")));
            }
        }

        let mut cfg = ExperimentConfig::baseline();
        if let Some(v) = kv.get("variant") {
            cfg = cfg.with_variant(v.parse()?);
        }

        let mut zipf_alpha: Option<f64> = None;
        let mut zipf_n: Option<u64> = None;
        let mut zipf_len: Option<u64> = None;
        let mut trace_kind: Option<&str> = None;
        let mut trace_path: Option<PathBuf> = None;
        let mut pred_kind: Option<&str> = None;
        let mut sim_p: Option<f64> = None;
        let mut sim_noise: Option<f64> = None;
        let mut sim_promote: Option<f64> = None;
        let mut constant_value: Option<f64> = None;
        let mut table_path: Option<PathBuf> = None;
        let mut table_default: Option<f64> = None;

        for (&key, &value) in &kv {
            match key {
                "variant" => {}
                "trace" => trace_kind = Some(value),
                "alpha" => zipf_alpha = Some(parse_num(key, value)?),
                "n" => zipf_n = Some(parse_num(key, value)?),
                "len" => zipf_len = Some(parse_num(key, value)?),
                "trace_path" => trace_path = Some(PathBuf::from(value)),
                "predictor" => pred_kind = Some(value),
                "p" => sim_p = Some(parse_num(key, value)?),
                "noise" => sim_noise = Some(parse_num(key, value)?),
                "promote_prob" => sim_promote = Some(parse_num(key, value)?),
                "constant_value" => constant_value = Some(parse_num(key, value)?),
                "table_path" => table_path = Some(PathBuf::from(value)),
                "table_default" => table_default = Some(parse_num(key, value)?),
                "memory_bits" => cfg.memory_bits = parse_num(key, value)?,
                "t" => cfg.t = parse_num(key, value)?,
                "tau_inv" => cfg.tau_inv = parse_num(key, value)?,
                "theta_factor" => cfg.theta_factor = parse_num(key, value)?,
                "top_k" => cfg.top_k = parse_num(key, value)?,
                "window" => cfg.window = parse_num(key, value)?,
                "filter_ratio" => cfg.filter_ratio = parse_num(key, value)?,
                "fixed_ratio" => cfg.fixed_ratio = parse_num(key, value)?,
                "nu" => cfg.nu = parse_num(key, value)?,
                "repetitions" => cfg.repetitions = parse_num(key, value)?,
                "seed" => cfg.seed = parse_num(key, value)?,
                "exact_filter" => cfg.exact_filter = parse_bool(key, value)?,
                "cell_width" => cfg.cell_width = parse_num(key, value)?,
                "prefix" => cfg.prefix = Some(parse_num(key, value)?),
                "rmse_sample" => cfg.rmse_sample = Some(parse_num(key, value)?),
                other => {
                    return Err(Error::config(format!("unknown key {other:?}")));
                }
            }
        }

        cfg.trace = match trace_kind {
            None | Some("zipf") => {
                if trace_path.is_some() {
                    return Err(Error::config(
                        "trace_path given but trace is zipf (set trace = file)",
                    ));
                }
                let base = match cfg.trace {
                    TraceSource::Zipf { alpha, n, len } => (alpha, n, len),
                    _ => unreachable!("baseline trace is zipf"),
                };
                TraceSource::Zipf {
                    alpha: zipf_alpha.unwrap_or(base.0),
                    n: zipf_n.unwrap_or(base.1),
                    len: zipf_len.unwrap_or(base.2),
                }
            }
            Some("file") => {
                let path = trace_path
                    .ok_or_else(|| Error::config("trace = file requires trace_path"))?;
                TraceSource::File { path }
            }
            Some(other) => {
                return Err(Error::config(format!(
                    "trace must be zipf or file (got {other:?})"
                )));
            }
        };

        cfg.predictor = match pred_kind {
            None | Some("sim") => PredictorSpec::Simulated {
                p: sim_p.unwrap_or(0.9),
                noise: sim_noise.unwrap_or(0.05),
                promote_prob: sim_promote.unwrap_or(0.01),
            },
            Some("constant") => PredictorSpec::Constant {
                value: constant_value
                    .ok_or_else(|| Error::config("predictor = constant requires constant_value"))?,
            },
            Some("table") => PredictorSpec::Table {
                path: table_path
                    .ok_or_else(|| Error::config("predictor = table requires table_path"))?,
                default: table_default.unwrap_or(1.0),
            },
            Some(other) => {
                return Err(Error::config(format!(
                    "predictor must be sim, constant, or table (got {other:?})"
                )));
            }
        };

        cfg.validate()?;
        Ok(cfg)
    }

    /// Serializes to the same flat format `from_kv_text` accepts; feeding
    /// the output back reproduces this configuration exactly.
    pub fn effective_kv(&self) -> String {
        let mut s = String::new();
        match &self.trace {
            TraceSource::Zipf { alpha, n, len } => {
                writeln!(s, "trace = zipf").unwrap();
                writeln!(s, "alpha = {alpha}").unwrap();
                writeln!(s, "n = {n}").unwrap();
                writeln!(s, "len = {len}").unwrap();
            }
            TraceSource::File { path } => {
                writeln!(s, "trace = file").unwrap();
                writeln!(s, "trace_path = {}", path.display()).unwrap();
            }
        }
        writeln!(s, "variant = {}", self.variant).unwrap();
        writeln!(s, "memory_bits = {}", self.memory_bits).unwrap();
        writeln!(s, "t = {}", self.t).unwrap();
        writeln!(s, "tau_inv = {}", self.tau_inv).unwrap();
        match &self.predictor {
            PredictorSpec::Simulated { p, noise, promote_prob } => {
                writeln!(s, "predictor = sim").unwrap();
                writeln!(s, "p = {p}").unwrap();
                writeln!(s, "noise = {noise}").unwrap();
                writeln!(s, "promote_prob = {promote_prob}").unwrap();
            }
            PredictorSpec::Constant { value } => {
                writeln!(s, "predictor = constant").unwrap();
                writeln!(s, "constant_value = {value}").unwrap();
            }
            PredictorSpec::Table { path, default } => {
                writeln!(s, "predictor = table").unwrap();
                writeln!(s, "table_path = {}", path.display()).unwrap();
                writeln!(s, "table_default = {default}").unwrap();
            }
        }
        writeln!(s, "theta_factor = {}", self.theta_factor).unwrap();
        writeln!(s, "top_k = {}", self.top_k).unwrap();
        writeln!(s, "window = {}", self.window).unwrap();
        writeln!(s, "filter_ratio = {}", self.filter_ratio).unwrap();
        writeln!(s, "fixed_ratio = {}", self.fixed_ratio).unwrap();
        writeln!(s, "nu = {}", self.nu).unwrap();
        writeln!(s, "repetitions = {}", self.repetitions).unwrap();
        writeln!(s, "seed = {}", self.seed).unwrap();
        writeln!(s, "exact_filter = {}", self.exact_filter).unwrap();
        writeln!(s, "cell_width = {}", self.cell_width).unwrap();
        if let Some(prefix) = self.prefix {
            writeln!(s, "prefix = {prefix}").unwrap();
        }
        if let Some(sample) = self.rmse_sample {
            writeln!(s, "rmse_sample = {sample}").unwrap();
        }
        s
    }

    pub fn validate(&self) -> Result<()> {
        match &self.trace {
            TraceSource::Zipf { alpha, n, len } => {
                if *n == 0 {
                    return Err(Error::config("n must be at least 1"));
                }
                if *len == 0 {
                    return Err(Error::config("len must be at least 1"));
                }
                if !alpha.is_finite() || *alpha < 0.0 {
                    return Err(Error::config(format!(
                        "alpha must be finite and non-negative (got {alpha})"
                    )));
                }
            }
            TraceSource::File { .. } => {}
        }
        if self.window == 0 {
            return Err(Error::config("window must be at least 1"));
        }
        if self.top_k == 0 {
            return Err(Error::config("top_k must be at least 1"));
        }
        if !(self.theta_factor > 0.0 && self.theta_factor.is_finite()) {
            return Err(Error::config("theta_factor must be positive"));
        }
        if !(0.0..1.0).contains(&self.filter_ratio) {
            return Err(Error::config(format!(
                "filter_ratio must be in [0, 1) (got {})",
                self.filter_ratio
            )));
        }
        if !(0.0..1.0).contains(&self.fixed_ratio) {
            return Err(Error::config(format!(
                "fixed_ratio must be in [0, 1) (got {})",
                self.fixed_ratio
            )));
        }
        if !(self.nu > 0.0 && self.nu.is_finite()) {
            return Err(Error::config("nu must be positive"));
        }
        if self.repetitions == 0 {
            return Err(Error::config("repetitions must be at least 1"));
        }
        if let PredictorSpec::Simulated { p, noise, promote_prob } = self.predictor {
            SimulatedPredictorSpec {
                t: self.t.max(1),
                p,
                noise,
                promote_prob,
                seed: 0,
            }
            .validate()?;
        }
        if let Some(prefix) = self.prefix {
            if prefix == 0 {
                return Err(Error::config("prefix must be at least 1"));
            }
        }
        let resolved = resolve_budget(
            self.memory_bits,
            self.variant,
            self.filter_ratio,
            self.fixed_ratio,
        )?;
        // Surface sketch-level inconsistencies (t/variant/tau_inv rules)
        // now rather than at run time.
        self.sketch_config(&resolved, None).validate()
    }

    /// Heavy-hitter threshold implied by the memory budget.
    pub fn theta(&self) -> f64 {
        let k_equiv = (self.memory_bits / ENTRY_BITS).max(1);
        self.theta_factor / k_equiv as f64
    }

    fn sketch_config(&self, resolved: &ResolvedBudget, low_distinct: Option<u64>) -> LssConfig {
        LssConfig {
            variant: self.variant,
            k: resolved.k,
            t: self.t,
            k_hh: resolved.k_hh,
            filter_bits: resolved.filter_bits,
            cell_width: self.cell_width,
            expected_low_distinct: low_distinct,
            tau_inv: self.tau_inv,
            exact_filter: self.exact_filter,
            seed: self.seed,
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::config(format!("invalid value for {key}: {value:?}")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "1" => Ok(true),
        "false" | "0" => Ok(false),
        _ => Err(Error::config(format!(
            "invalid value for {key}: {value:?} (expected true or false)"
        ))),
    }
}

/// How a bit budget splits into table slots and filter bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResolvedBudget {
    pub k: usize,
    pub k_hh: usize,
    pub filter_bits: u64,
}

/// Deterministic budget split. Unfiltered variants put everything into
/// `floor(bits / entry_bits)` table slots. Filtered variants reserve
/// `filter_ratio` of the budget: `k = floor((1 - ratio) * bits /
/// entry_bits)` slots, and every bit not spent on slots goes to the
/// filter. Heavy-hitter variants pin `floor(fixed_ratio * k)` slots.
pub fn resolve_budget(
    memory_bits: u64,
    variant: Variant,
    filter_ratio: f64,
    fixed_ratio: f64,
) -> Result<ResolvedBudget> {
    if !(0.0..1.0).contains(&filter_ratio) || !(0.0..1.0).contains(&fixed_ratio) {
        return Err(Error::config("ratios must be in [0, 1)"));
    }
    let k = if variant.uses_filter() {
        ((1.0 - filter_ratio) * memory_bits as f64 / ENTRY_BITS as f64).floor() as u64
    } else {
        memory_bits / ENTRY_BITS
    };
    if k == 0 {
        return Err(Error::config(format!(
            "memory_bits = {memory_bits} cannot hold a single table entry"
        )));
    }
    let filter_bits = if variant.uses_filter() {
        memory_bits - k * ENTRY_BITS
    } else {
        0
    };
    let k_hh = if variant.uses_fixed_entries() {
        (fixed_ratio * k as f64).floor() as u64
    } else {
        0
    };
    Ok(ResolvedBudget {
        k: k as usize,
        k_hh: k_hh as usize,
        filter_bits,
    })
}

/// Produces the arrival sequence for a config: either a seeded synthetic
/// draw or a trace file interned through `interner`.
pub fn materialize_trace(
    cfg: &ExperimentConfig,
    interner: &mut ItemInterner,
) -> Result<Vec<ItemId>> {
    let mut trace = match &cfg.trace {
        TraceSource::Zipf { alpha, n, len } => {
            gen_zipf(*alpha, *n, *len, derive_seed(cfg.seed, "trace"))?
        }
        TraceSource::File { path } => read_trace(path, interner)?,
    };
    if let Some(prefix) = cfg.prefix {
        let keep = (prefix as usize).min(trace.len());
        trace.truncate(keep);
    }
    Ok(trace)
}

/// Builds the configured predictor. Simulated predictors derive their
/// ground truth from `full_oracle` (the exact pass over the whole trace)
/// and their randomness from the purpose-tagged predictor seed.
pub fn build_predictor(
    cfg: &ExperimentConfig,
    full_oracle: &ExactOracle,
    interner: &mut ItemInterner,
) -> Result<SharedPredictor> {
    match &cfg.predictor {
        PredictorSpec::Simulated { p, noise, promote_prob } => {
            let spec = SimulatedPredictorSpec {
                t: cfg.t,
                p: *p,
                noise: *noise,
                promote_prob: *promote_prob,
                seed: derive_seed(cfg.seed, "predictor"),
            };
            Ok(Arc::new(SimulatedPredictor::new(
                spec,
                full_oracle.counts().clone(),
            )?))
        }
        PredictorSpec::Constant { value } => Ok(Arc::new(ConstantPredictor::new(*value))),
        PredictorSpec::Table { path, default } => {
            if let TraceSource::Zipf { n, .. } = cfg.trace {
                // Align table tokens with synthetic ids: rank r is the
                // token "r".
                for rank in 0..n {
                    interner.intern(&rank.to_string());
                }
            }
            Ok(Arc::new(load_prediction_table(path, interner, *default)?))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WindowMetrics {
    /// 1-based window index.
    pub window: u64,
    /// Arrivals ingested when this window was scored.
    pub arrivals: u64,
    pub rmse: f64,
    pub precision_topk: f64,
    pub recall_hh: f64,
    pub max_abs_error: u64,
}

#[derive(Debug, Clone)]
pub struct MetricsReport {
    pub windows: Vec<WindowMetrics>,
    /// Unweighted means over windows.
    pub rmse: f64,
    pub precision_topk: f64,
    pub recall_hh: f64,
    /// Worst window.
    pub max_abs_error: u64,
    /// Wall-clock ingest rate; the one nondeterministic field.
    pub updates_per_sec: f64,
    /// Arrivals that consulted the low-frequency filter.
    pub filter_ops: u64,
    pub arrivals: u64,
    pub distinct: u64,
    pub k: usize,
    pub k_hh: usize,
    pub filter_bits: u64,
    pub theta: f64,
}

impl MetricsReport {
    /// The deterministic fields, for equality assertions in tests.
    pub fn accuracy_fields(&self) -> (Vec<WindowMetrics>, u64) {
        (self.windows.clone(), self.filter_ops)
    }
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<MetricsReport> {
    cfg.validate()?;
    let mut interner = ItemInterner::new();
    let trace = materialize_trace(cfg, &mut interner)?;
    let n = trace.len() as u64;
    if n < cfg.window {
        return Err(Error::config(format!(
            "window {} exceeds stream length {n}; no window would complete",
            cfg.window
        )));
    }
    let full_oracle = ExactOracle::from_stream(&trace);
    let predictor = build_predictor(cfg, &full_oracle, &mut interner)?;
    let resolved = resolve_budget(
        cfg.memory_bits,
        cfg.variant,
        cfg.filter_ratio,
        cfg.fixed_ratio,
    )?;
    let theta = cfg.theta();
    let thresholds = PredictorThresholds {
        low_freq_t: cfg.t,
        hh_count_threshold: theta * n as f64,
    };
    let low_distinct = full_oracle.low_frequency_items(cfg.t);
    let sketch_cfg = cfg.sketch_config(&resolved, Some(low_distinct.max(1)));

    let mut windows: Vec<WindowMetrics> = Vec::new();
    let mut filter_ops = 0u64;
    let mut best_ups = 0.0f64;

    for rep in 0..cfg.repetitions {
        let mut sketch = LssSketch::new(sketch_cfg.clone(), predictor.clone(), thresholds)?;
        let mut prefix_oracle = ExactOracle::new();
        let mut rep_windows = Vec::new();
        let mut ingest = Duration::ZERO;
        let mut pos = 0usize;
        let n_windows = n / cfg.window;

        for w in 1..=n_windows {
            let end = (w * cfg.window) as usize;
            let t0 = Instant::now();
            for &item in &trace[pos..end] {
                sketch.add(item);
            }
            ingest += t0.elapsed();
            for &item in &trace[pos..end] {
                prefix_oracle.observe(item);
            }
            pos = end;
            rep_windows.push(score_window(cfg, &sketch, &prefix_oracle, theta, w)?);
        }
        // Trailing arrivals past the last full window still count toward
        // throughput and final sketch state, but are not scored.
        let t0 = Instant::now();
        for &item in &trace[pos..] {
            sketch.add(item);
        }
        ingest += t0.elapsed();

        let secs = ingest.as_secs_f64();
        if secs > 0.0 {
            best_ups = best_ups.max(n as f64 / secs);
        }
        if rep == 0 {
            windows = rep_windows;
            filter_ops = sketch.filter_probes();
        }
    }

    let count = windows.len() as f64;
    let report = MetricsReport {
        rmse: windows.iter().map(|w| w.rmse).sum::<f64>() / count,
        precision_topk: windows.iter().map(|w| w.precision_topk).sum::<f64>() / count,
        recall_hh: windows.iter().map(|w| w.recall_hh).sum::<f64>() / count,
        max_abs_error: windows.iter().map(|w| w.max_abs_error).max().unwrap_or(0),
        updates_per_sec: best_ups,
        filter_ops,
        arrivals: n,
        distinct: full_oracle.distinct(),
        k: resolved.k,
        k_hh: resolved.k_hh,
        filter_bits: resolved.filter_bits,
        theta,
        windows,
    };
    Ok(report)
}

fn score_window(
    cfg: &ExperimentConfig,
    sketch: &LssSketch,
    prefix_oracle: &ExactOracle,
    theta: f64,
    w: u64,
) -> Result<WindowMetrics> {
    let estimate = |item: ItemId| sketch.query(item);
    let rmse_value = match cfg.rmse_sample {
        Some(sample) => rmse_sampled(
            prefix_oracle,
            estimate,
            sample,
            derive_seed(cfg.seed, "rmse-sample"),
        )?,
        None => rmse(prefix_oracle, estimate)?,
    };
    let reported: Vec<ItemId> = sketch.top_k(cfg.top_k).iter().map(|e| e.item).collect();
    let true_topk = prefix_oracle.top_k(cfg.top_k);
    let reported_hh = sketch.heavy_hitters(theta);
    let true_hh = prefix_oracle.heavy_hitters(theta);
    Ok(WindowMetrics {
        window: w,
        arrivals: prefix_oracle.total(),
        rmse: rmse_value,
        precision_topk: precision_topk(&reported, &true_topk),
        recall_hh: recall_hh(&reported_hh, &true_hh),
        max_abs_error: max_abs_error(prefix_oracle, estimate),
    })
}
