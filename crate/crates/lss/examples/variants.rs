//! Every variant on the same workload and the same memory budget.
//!
//! The budget is split per variant (entry slots, pinned slots, filter
//! bits), a simulated predictor with 90% accuracy advises the filtered
//! variants, and each sketch ingests an identical 100k-arrival Zipf
//! stream. The table printed at the end shows the tradeoff in one place:
//! filtered variants give up counter slots for a low-frequency screen and
//! add the +t correction to every estimate, so on a mild workload like
//! this one the six land close together; the gap opens on streams whose
//! low-frequency traffic is heavy enough to churn the table.

use std::sync::Arc;

use lss::evaluation::experiment::resolve_budget;
use lss::evaluation::metrics::{precision_topk, recall_hh, rmse};
use lss::evaluation::oracle::ExactOracle;
use lss::evaluation::zipf::gen_zipf;
use lss::predictor::{PredictorThresholds, SimulatedPredictor, SimulatedPredictorSpec};
use lss::rng::derive_seed;
use lss::{LssConfig, LssSketch, Variant};

const MEMORY_BITS: u64 = 32_768;
const THETA: f64 = 0.002;
const SEED: u64 = 9;

fn main() -> lss::Result<()> {
    let stream = gen_zipf(1.3, 10_000, 100_000, derive_seed(SEED, "trace"))?;
    let oracle = ExactOracle::from_stream(&stream);
    let true_top = oracle.top_k(64);
    let true_hh = oracle.heavy_hitters(THETA);
    let hh_count = THETA * oracle.total() as f64;

    println!(
        "workload: {} arrivals, {} distinct, {} true heavy hitters at theta = {THETA}",
        oracle.total(),
        oracle.distinct(),
        true_hh.len()
    );
    println!("budget: {MEMORY_BITS} bits for every variant");
    println!();
    println!(
        "{:>8} {:>5} {:>5} {:>7} {:>9} {:>7} {:>7} {:>6}",
        "variant", "k", "k_hh", "filter", "rmse", "p@64", "recall", "worst"
    );

    for variant in Variant::ALL {
        let t = if variant == Variant::LssLfs { 1 } else { 4 };
        let budget = resolve_budget(MEMORY_BITS, variant, 0.10, 0.10)?;

        let mut cfg = LssConfig::new(variant, budget.k);
        cfg.t = t;
        cfg.k_hh = budget.k_hh;
        cfg.filter_bits = budget.filter_bits;
        if variant == Variant::LssPlus {
            cfg.tau_inv = 8;
        }
        cfg.seed = derive_seed(SEED, "sketch");
        if variant == Variant::LssLfs {
            cfg.expected_low_distinct = Some(oracle.low_frequency_items(1).max(1));
        }

        let spec = SimulatedPredictorSpec::new(t, 0.9, derive_seed(SEED, "predictor"));
        let predictor = SimulatedPredictor::new(spec, oracle.counts().clone())?;
        let thresholds = PredictorThresholds {
            low_freq_t: t,
            hh_count_threshold: hh_count,
        };
        let mut sketch = LssSketch::new(cfg, Arc::new(predictor), thresholds)?;
        for &item in &stream {
            sketch.add(item);
        }

        let err = rmse(&oracle, |it| sketch.query(it))?;
        let reported: Vec<_> = sketch.top_k(64).iter().map(|e| e.item).collect();
        let p_at_64 = precision_topk(&reported, &true_top);
        let recall = recall_hh(&sketch.heavy_hitters(THETA), &true_hh);
        let worst = oracle
            .items()
            .map(|it| sketch.query(it).saturating_sub(oracle.count(it)))
            .max()
            .unwrap_or(0);

        println!(
            "{:>8} {:>5} {:>5} {:>7} {:>9.2} {:>7.3} {:>7.3} {:>6}",
            variant,
            budget.k,
            budget.k_hh,
            budget.filter_bits,
            err,
            p_at_64,
            recall,
            worst
        );
    }

    Ok(())
}
