//! End-to-end bound checks at desk scale.
//!
//! Each check replays a small workload and compares a measured quantity
//! against the bound the sketch is supposed to guarantee. The panel runs
//! in seconds and is wired to the `selftest` subcommand so a fresh build
//! can be validated without the full test suite.
//!
//! The `SkipCorrection` fault deliberately queries without the additive
//! correction. It exists to prove the harness can fail: under the fault
//! the frequency lower bound must be violated and the selftest must
//! report it.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::evaluation::oracle::ExactOracle;
use crate::evaluation::zipf::gen_zipf;
use crate::item::ItemId;
use crate::predictor::{
    PredictorThresholds, SimulatedPredictor, SimulatedPredictorSpec, TablePredictor,
};
use crate::rng::derive_seed;
use crate::sketch::{LssConfig, LssSketch, Variant};
use crate::space_saving::SpaceSavingTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    None,
    /// Query sketches without the additive correction term.
    SkipCorrection,
}

#[derive(Debug, Clone)]
pub struct BoundCheck {
    pub name: &'static str,
    pub measured: f64,
    pub allowed: f64,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for BoundCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: measured {:.4}, allowed {:.4} ({})",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.measured,
            self.allowed,
            self.detail
        )
    }
}

#[derive(Debug, Clone)]
pub struct SelftestReport {
    pub checks: Vec<BoundCheck>,
}

impl SelftestReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            writeln!(f, "{check}")?;
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        write!(
            f,
            "{} checks, {} failed",
            self.checks.len(),
            failed
        )
    }
}

fn upper_bound_check(name: &'static str, measured: f64, allowed: f64, detail: String) -> BoundCheck {
    BoundCheck {
        name,
        measured,
        allowed,
        pass: measured <= allowed,
        detail,
    }
}

/// Runs the full panel. Deterministic per seed, fault injection aside.
pub fn run_selftest(seed: u64, fault: Fault) -> SelftestReport {
    let mut checks = Vec::new();
    checks.extend(space_saving_lemmas(seed));
    checks.extend(eps_frequency(seed, fault));
    checks.push(tau_reduction(seed));
    checks.push(hh_exactness());
    SelftestReport { checks }
}

/// minCount and additive-error bounds for plain Space Saving on a Zipf
/// stream, checked at every thousand arrivals.
fn space_saving_lemmas(seed: u64) -> Vec<BoundCheck> {
    let k = 100usize;
    let stream = gen_zipf(1.0, 2000, 20_000, derive_seed(seed, "selftest-ss"))
        .expect("static parameters");
    let mut table = SpaceSavingTable::new(k, 0).expect("static parameters");
    let mut oracle = ExactOracle::new();
    let mut worst_min_ratio = 0.0f64;
    let mut worst_over = 0u64;
    let mut worst_under = 0i64;

    for (idx, &item) in stream.iter().enumerate() {
        table.insert(item, false, 1);
        oracle.observe(item);
        if (idx + 1) % 1000 == 0 {
            let bound = table.inserted().div_ceil(k as u64);
            worst_min_ratio = worst_min_ratio.max(table.min_count() as f64 / bound as f64);
            let min = table.min_count();
            for (&it, &f) in oracle.counts() {
                let q = table.query(it);
                worst_under = worst_under.max(f as i64 - q as i64);
                if q > f {
                    let over = q - f;
                    if over > worst_over && over > min {
                        worst_over = over;
                    }
                }
            }
        }
    }
    vec![
        upper_bound_check(
            "ss-min-count",
            worst_min_ratio,
            1.0,
            "minCount / ceil(inserted/k), worst checkpoint".into(),
        ),
        upper_bound_check(
            "ss-overestimate-within-min",
            worst_over as f64,
            0.0,
            "overestimates exceeding minCount at their checkpoint".into(),
        ),
        upper_bound_check(
            "ss-no-undercount",
            worst_under as f64,
            0.0,
            "max(truth - estimate) over all checkpoints".into(),
        ),
    ]
}

/// The frequency guarantee for the filtered sketches: truth <= estimate <=
/// truth + eps * N on every checkpoint, with k sized from eps. Two legs:
/// the single-occurrence screen with an honest predictor, and the
/// threshold filter under the all-low adversary, where the first table
/// entrants provably carry raw counters t below truth and only the query
/// correction restores the lower bound.
fn eps_frequency(seed: u64, fault: Fault) -> Vec<BoundCheck> {
    let n_stream = 20_000u64;
    let eps = 0.02f64;
    let k = (1.0 / (eps - 1.0 / n_stream as f64)).ceil() as usize;
    let allowance = eps * n_stream as f64;
    let stream = gen_zipf(1.3, 2000, n_stream, derive_seed(seed, "selftest-trace"))
        .expect("static parameters");
    let oracle = ExactOracle::from_stream(&stream);

    let spec = SimulatedPredictorSpec::new(1, 0.9, derive_seed(seed, "selftest-pred"));
    let predictor =
        SimulatedPredictor::new(spec, oracle.counts().clone()).expect("valid spec");
    let mut cfg = LssConfig::new(Variant::LssLfs, k);
    cfg.filter_bits = 4096;
    cfg.expected_low_distinct = Some(oracle.low_frequency_items(1).max(1));
    cfg.seed = derive_seed(seed, "selftest-sketch");
    let thresholds = PredictorThresholds {
        low_freq_t: 1,
        hh_count_threshold: f64::INFINITY,
    };
    let sketch =
        LssSketch::new(cfg, Arc::new(predictor), thresholds).expect("valid config");
    let (under, over) = frequency_envelope(sketch, &stream, fault);
    let mut checks = vec![
        upper_bound_check(
            "eps-frequency-lower",
            under as f64,
            0.0,
            "max(truth - estimate); positive means undercount".into(),
        ),
        upper_bound_check(
            "eps-frequency-upper",
            over as f64,
            allowance,
            format!("max(estimate - truth) against eps*N = {allowance}"),
        ),
    ];

    let mut cfg = LssConfig::new(Variant::LssLf, k);
    cfg.t = 4;
    cfg.exact_filter = true;
    cfg.seed = derive_seed(seed, "selftest-sketch-lf");
    let thresholds = PredictorThresholds {
        low_freq_t: 4,
        hh_count_threshold: f64::INFINITY,
    };
    let sketch = LssSketch::new(
        cfg,
        Arc::new(crate::predictor::ConstantPredictor::new(1.0)),
        thresholds,
    )
    .expect("valid config");
    let (under, over) = frequency_envelope(sketch, &stream, fault);
    checks.push(upper_bound_check(
        "eps-frequency-lf-lower",
        under as f64,
        0.0,
        "all-low adversary; positive means the +t correction is missing".into(),
    ));
    checks.push(upper_bound_check(
        "eps-frequency-lf-upper",
        over as f64,
        allowance,
        format!("all-low adversary against eps*N = {allowance}"),
    ));
    checks
}

/// Streams arrivals and tracks the worst undercount and overcount across
/// thousand-arrival checkpoints.
fn frequency_envelope(
    mut sketch: LssSketch,
    stream: &[ItemId],
    fault: Fault,
) -> (i64, u64) {
    let mut prefix = ExactOracle::new();
    let mut worst_under = 0i64;
    let mut worst_over = 0u64;
    for (idx, &item) in stream.iter().enumerate() {
        sketch.add(item);
        prefix.observe(item);
        if (idx + 1) % 1000 == 0 {
            for (&it, &f) in prefix.counts() {
                let q = match fault {
                    Fault::None => sketch.query(it),
                    Fault::SkipCorrection => sketch.query_uncorrected(it),
                };
                worst_under = worst_under.max(f as i64 - q as i64);
                worst_over = worst_over.max(q.saturating_sub(f));
            }
        }
    }
    (worst_under, worst_over)
}

/// With the sampling gate at rate 1, the sampled sketch must be
/// indistinguishable from the unsampled one.
fn tau_reduction(seed: u64) -> BoundCheck {
    let stream = gen_zipf(1.1, 800, 10_000, derive_seed(seed, "selftest-tau"))
        .expect("static parameters");
    let oracle = ExactOracle::from_stream(&stream);
    let spec = SimulatedPredictorSpec::new(4, 0.9, derive_seed(seed, "selftest-tau-pred"));
    let predictor: Arc<SimulatedPredictor> =
        Arc::new(SimulatedPredictor::new(spec, oracle.counts().clone()).expect("valid spec"));
    let thresholds = PredictorThresholds {
        low_freq_t: 4,
        hh_count_threshold: 0.005 * stream.len() as f64,
    };

    let mut lss_cfg = LssConfig::new(Variant::Lss, 64);
    lss_cfg.filter_bits = 2048;
    lss_cfg.k_hh = 6;
    lss_cfg.seed = derive_seed(seed, "selftest-tau-sketch");
    let mut plus_cfg = lss_cfg.clone();
    plus_cfg.variant = Variant::LssPlus;
    plus_cfg.tau_inv = 1;

    let mut a = LssSketch::new(lss_cfg, predictor.clone(), thresholds).expect("valid config");
    let mut b = LssSketch::new(plus_cfg, predictor, thresholds).expect("valid config");
    for &item in &stream {
        a.add(item);
        b.add(item);
    }
    let diverged = !a.state_eq(&b);
    BoundCheck {
        name: "tau-one-reduction",
        measured: f64::from(u8::from(diverged)),
        allowed: 0.0,
        pass: !diverged,
        detail: "state difference between rate-1 sampling and no sampling".into(),
    }
}

/// Perfect heavy-hitter predictions, heavies arriving first: their pinned
/// counters must be exact and everyone else must stay under the reduced
/// eviction bound.
fn hh_exactness() -> BoundCheck {
    let k = 50usize;
    let k_hh = 10usize;
    let n_stream = 20_000u64;
    let theta = 0.02f64;
    let heavy_count = 800u64;
    let heavies: Vec<ItemId> = (0..k_hh as u64).map(ItemId).collect();

    let mut stream: Vec<ItemId> = heavies.clone();
    for _ in 1..heavy_count {
        stream.extend(heavies.iter().copied());
    }
    let tail_universe = 3000u64;
    let mut next_tail = 0u64;
    while (stream.len() as u64) < n_stream {
        stream.push(ItemId(1000 + next_tail % tail_universe));
        next_tail += 1;
    }

    let mut predictions: HashMap<ItemId, f64> = HashMap::new();
    for &h in &heavies {
        predictions.insert(h, heavy_count as f64);
    }
    let predictor = TablePredictor::new(predictions, 1.0);
    let thresholds = PredictorThresholds {
        low_freq_t: 1,
        hh_count_threshold: theta * n_stream as f64,
    };
    let mut cfg = LssConfig::new(Variant::LssHh, k);
    cfg.t = 1;
    cfg.k_hh = k_hh;
    let mut sketch =
        LssSketch::new(cfg, Arc::new(predictor), thresholds).expect("valid config");
    for &item in &stream {
        sketch.add(item);
    }

    let oracle = ExactOracle::from_stream(&stream);
    let mut heavy_err = 0u64;
    for &h in &heavies {
        heavy_err = heavy_err.max(sketch.query(h).abs_diff(oracle.count(h)));
    }
    let bound = (n_stream as f64 - k_hh as f64 * theta * n_stream as f64) / (k - k_hh) as f64;
    let mut other_err = 0u64;
    for (&item, &f) in oracle.counts() {
        if !heavies.contains(&item) {
            other_err = other_err.max(sketch.query(item).abs_diff(f));
        }
    }
    BoundCheck {
        name: "hh-perfect-predictions",
        measured: other_err as f64 + heavy_err as f64 * 1e6,
        allowed: bound,
        pass: heavy_err == 0 && (other_err as f64) < bound,
        detail: format!(
            "pinned error {heavy_err} (must be 0), mutable error {other_err} (bound {bound})"
        ),
    }
}
