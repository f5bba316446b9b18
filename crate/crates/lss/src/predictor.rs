//! Frequency predictors and the two classification thresholds derived from
//! them.
//!
//! A predictor maps an item to a predicted count. The sketches only ever
//! consume two boolean views of that number: "is this item low frequency"
//! (predicted count at or below `t`) and "is this item a heavy hitter"
//! (predicted count at or above `theta * N`). Predictions at exactly `t`
//! classify as low frequency.
//!
//! [`SimulatedPredictor`] stands in for a trained model. It knows the true
//! counts and degrades them in a controlled way: with probability `1 - p`
//! an item is mispredicted into the opposite frequency class, otherwise the
//! true count is jittered by a small multiplicative noise, and rarely a
//! genuinely small item is promoted just past `t`. Every draw is keyed by
//! `(seed, item)`, so a given item receives the same prediction on each
//! arrival and across processes.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::item::{ItemId, ItemInterner};
use crate::rng::{mix64, SplitMix64};

pub trait Predictor: Send + Sync {
    /// Predicted count for `item`; always finite and non-negative.
    fn predict(&self, item: ItemId) -> f64;
}

/// Classification thresholds shared by the learned sketch variants.
#[derive(Debug, Clone, Copy)]
pub struct PredictorThresholds {
    /// Low-frequency cutoff; predictions `<= low_freq_t` classify as low.
    pub low_freq_t: u64,
    /// Heavy-hitter cutoff in absolute counts (`theta * N`); predictions
    /// `>= hh_count_threshold` classify as heavy.
    pub hh_count_threshold: f64,
}

impl PredictorThresholds {
    pub fn is_low_frequency(&self, predictor: &dyn Predictor, item: ItemId) -> bool {
        predictor.predict(item) <= self.low_freq_t as f64
    }

    pub fn is_heavy_hitter(&self, predictor: &dyn Predictor, item: ItemId) -> bool {
        predictor.predict(item) >= self.hh_count_threshold
    }
}

/// Tuning knobs for [`SimulatedPredictor`].
#[derive(Debug, Clone)]
pub struct SimulatedPredictorSpec {
    /// Low-frequency threshold separating the small and big classes.
    pub t: u64,
    /// Probability that an item is predicted from its true class.
    pub p: f64,
    /// Half-width of the multiplicative noise band around the true count.
    pub noise: f64,
    /// Chance that a small item's prediction is pushed just past `t`.
    pub promote_prob: f64,
    pub seed: u64,
}

impl SimulatedPredictorSpec {
    pub fn new(t: u64, p: f64, seed: u64) -> Self {
        SimulatedPredictorSpec {
            t,
            p,
            noise: 0.05,
            promote_prob: 0.01,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.t == 0 {
            return Err(Error::config("t must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::config(format!("p must be in [0, 1] (got {})", self.p)));
        }
        if !(0.0..1.0).contains(&self.noise) {
            return Err(Error::config(format!(
                "noise must be in [0, 1) (got {})",
                self.noise
            )));
        }
        if !(0.0..=1.0).contains(&self.promote_prob) {
            return Err(Error::config(format!(
                "promote_prob must be in [0, 1] (got {})",
                self.promote_prob
            )));
        }
        Ok(())
    }
}

/// Oracle-backed predictor with tunable accuracy.
pub struct SimulatedPredictor {
    spec: SimulatedPredictorSpec,
    true_counts: HashMap<ItemId, u64>,
    /// True counts of the small class (`f < t`), index-addressable for
    /// misprediction draws. Sorted for determinism.
    small_counts: Vec<u64>,
    /// True counts of the big class (`f >= t`).
    big_counts: Vec<u64>,
}

impl SimulatedPredictor {
    pub fn new(spec: SimulatedPredictorSpec, true_counts: HashMap<ItemId, u64>) -> Result<Self> {
        spec.validate()?;
        let mut small_counts = Vec::new();
        let mut big_counts = Vec::new();
        for &f in true_counts.values() {
            if f < spec.t {
                small_counts.push(f);
            } else {
                big_counts.push(f);
            }
        }
        small_counts.sort_unstable();
        big_counts.sort_unstable();
        Ok(SimulatedPredictor {
            spec,
            true_counts,
            small_counts,
            big_counts,
        })
    }
}

impl Predictor for SimulatedPredictor {
    fn predict(&self, item: ItemId) -> f64 {
        let truth = *self.true_counts.get(&item).unwrap_or_else(|| {
            // Unknown items mean the harness wired a predictor to the wrong
            // trace; that is a bug, not a runtime condition.
            panic!("simulated predictor queried for item {item} absent from its oracle")
        });
        let spec = &self.spec;
        let mut rng = SplitMix64::new(mix64(spec.seed ^ item.0));

        if rng.next_f64() >= spec.p {
            // Misprediction: report a count drawn from the opposite class.
            let opposite = if truth < spec.t {
                &self.big_counts
            } else {
                &self.small_counts
            };
            if opposite.is_empty() {
                return truth as f64;
            }
            return opposite[rng.next_index(opposite.len())] as f64;
        }

        let factor = 1.0 - spec.noise + rng.next_f64() * 2.0 * spec.noise;
        let mut prediction = truth as f64 * factor;
        if truth < spec.t && rng.next_f64() < spec.promote_prob {
            // Rare false promotion: land strictly above t.
            prediction = spec.t as f64 + (1.0 - rng.next_f64());
        }
        prediction
    }
}

/// Fixed prediction for every item. `ConstantPredictor::new(1.0)` claims
/// everything is low frequency; a large constant claims everything is a
/// heavy hitter. Both are adversarial-robustness probes.
#[derive(Debug, Clone, Copy)]
pub struct ConstantPredictor {
    value: f64,
}

impl ConstantPredictor {
    pub fn new(value: f64) -> Self {
        ConstantPredictor { value }
    }
}

impl Predictor for ConstantPredictor {
    fn predict(&self, _item: ItemId) -> f64 {
        self.value
    }
}

/// Lookup-table predictor; items missing from the table fall back to a
/// default (1, i.e. presumed low frequency, unless configured otherwise).
#[derive(Debug, Clone)]
pub struct TablePredictor {
    predictions: HashMap<ItemId, f64>,
    default: f64,
}

impl TablePredictor {
    pub fn new(predictions: HashMap<ItemId, f64>, default: f64) -> Self {
        TablePredictor {
            predictions,
            default,
        }
    }
}

impl Predictor for TablePredictor {
    fn predict(&self, item: ItemId) -> f64 {
        self.predictions.get(&item).copied().unwrap_or(self.default)
    }
}

/// Reads a `<token>\t<predicted-count>` file into a [`TablePredictor`].
///
/// Tokens are resolved through the same interner as the trace so ids line
/// up. Malformed lines are reported with their 1-based line number.
pub fn load_prediction_table(
    path: impl AsRef<Path>,
    interner: &mut ItemInterner,
    default: f64,
) -> Result<TablePredictor> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let file = File::open(path).map_err(|e| Error::io(display.clone(), e))?;
    let mut predictions = HashMap::new();
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(display.clone(), e))?;
        if line.trim().is_empty() {
            continue;
        }
        let (token, value) = line.split_once('\t').ok_or_else(|| Error::Parse {
            path: display.clone(),
            line: lineno + 1,
            msg: "expected <token>\\t<predicted-count>".into(),
        })?;
        let value: f64 = value.trim().parse().map_err(|_| Error::Parse {
            path: display.clone(),
            line: lineno + 1,
            msg: format!("invalid predicted count {:?}", value.trim()),
        })?;
        if !value.is_finite() || value < 0.0 {
            return Err(Error::Parse {
                path: display.clone(),
                line: lineno + 1,
                msg: format!("predicted count must be finite and non-negative (got {value})"),
            });
        }
        predictions.insert(interner.intern(token), value);
    }
    Ok(TablePredictor::new(predictions, default))
}

/// Convenience alias used across the harness.
pub type SharedPredictor = Arc<dyn Predictor>;
