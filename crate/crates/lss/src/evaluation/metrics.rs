//! Accuracy metrics, computed against the exact oracle.
//!
//! Squared errors accumulate in 128-bit integers and only convert to
//! floating point once, so results do not depend on summation order (the
//! oracle's hash map iterates in arbitrary order).

use crate::error::{Error, Result};
use crate::evaluation::oracle::ExactOracle;
use crate::item::ItemId;
use crate::rng::SplitMix64;

/// Root mean squared error over every distinct item the oracle has seen.
pub fn rmse<F>(oracle: &ExactOracle, estimate: F) -> Result<f64>
where
    F: Fn(ItemId) -> u64,
{
    if oracle.distinct() == 0 {
        return Err(Error::config("rmse over an empty item set"));
    }
    let mut sum_sq: u128 = 0;
    for (&item, &truth) in oracle.counts() {
        let diff = estimate(item).abs_diff(truth);
        sum_sq += u128::from(diff) * u128::from(diff);
    }
    Ok((sum_sq as f64 / oracle.distinct() as f64).sqrt())
}

/// RMSE over a uniform sample of distinct items, for traces too large to
/// probe exhaustively. Deterministic under `seed`; sampling is with
/// replacement.
pub fn rmse_sampled<F>(
    oracle: &ExactOracle,
    estimate: F,
    sample_size: u64,
    seed: u64,
) -> Result<f64>
where
    F: Fn(ItemId) -> u64,
{
    if oracle.distinct() == 0 {
        return Err(Error::config("rmse over an empty item set"));
    }
    if sample_size == 0 {
        return Err(Error::config("rmse sample size must be at least 1"));
    }
    let mut items: Vec<ItemId> = oracle.items().collect();
    items.sort_unstable();
    let mut rng = SplitMix64::new(seed);
    let mut sum_sq: u128 = 0;
    for _ in 0..sample_size {
        let item = items[rng.next_index(items.len())];
        let diff = estimate(item).abs_diff(oracle.count(item));
        sum_sq += u128::from(diff) * u128::from(diff);
    }
    Ok((sum_sq as f64 / sample_size as f64).sqrt())
}

/// Largest absolute estimation error over all distinct items.
pub fn max_abs_error<F>(oracle: &ExactOracle, estimate: F) -> u64
where
    F: Fn(ItemId) -> u64,
{
    oracle
        .counts()
        .iter()
        .map(|(&item, &truth)| estimate(item).abs_diff(truth))
        .max()
        .unwrap_or(0)
}

/// Fraction of reported items that belong to the true top-k. An empty
/// report counts as precision 0.
pub fn precision_topk(reported: &[ItemId], true_topk: &[ItemId]) -> f64 {
    if reported.is_empty() {
        return 0.0;
    }
    let hits = reported
        .iter()
        .filter(|item| true_topk.contains(item))
        .count();
    hits as f64 / reported.len() as f64
}

/// Fraction of true heavy hitters that were reported. With no true heavy
/// hitters there is nothing to miss, so recall is 1.
pub fn recall_hh(reported: &[ItemId], true_hh: &[ItemId]) -> f64 {
    if true_hh.is_empty() {
        return 1.0;
    }
    let hits = true_hh
        .iter()
        .filter(|item| reported.contains(item))
        .count();
    hits as f64 / true_hh.len() as f64
}
