//! The sampled filter gate: trading filter traffic for noise.
//!
//! LSS+ only consults the low-frequency filter on a 1-in-tau_inv coin
//! flip, compensating by counting each admitted probe tau_inv times. At
//! tau_inv = 1 the gate is always open and the sketch is state-identical
//! to LSS; raising it cuts filter operations roughly linearly while the
//! frequency estimates stay inside the usual envelope.

use std::sync::Arc;

use lss::evaluation::metrics::rmse;
use lss::evaluation::oracle::ExactOracle;
use lss::evaluation::zipf::gen_zipf;
use lss::predictor::{PredictorThresholds, SimulatedPredictor, SimulatedPredictorSpec};
use lss::rng::derive_seed;
use lss::{LssConfig, LssSketch, Variant};

const SEED: u64 = 21;

fn build(variant: Variant, tau_inv: u64, oracle: &ExactOracle) -> lss::Result<LssSketch> {
    let mut cfg = LssConfig::new(variant, 128);
    cfg.t = 4;
    cfg.k_hh = 12;
    cfg.filter_bits = 4_096;
    cfg.tau_inv = tau_inv;
    cfg.seed = derive_seed(SEED, "sketch");
    let spec = SimulatedPredictorSpec::new(4, 0.9, derive_seed(SEED, "predictor"));
    let predictor = SimulatedPredictor::new(spec, oracle.counts().clone())?;
    let thresholds = PredictorThresholds {
        low_freq_t: 4,
        hh_count_threshold: 500.0,
    };
    LssSketch::new(cfg, Arc::new(predictor), thresholds)
}

fn main() -> lss::Result<()> {
    let stream = gen_zipf(1.1, 5_000, 100_000, derive_seed(SEED, "trace"))?;
    let oracle = ExactOracle::from_stream(&stream);

    // tau_inv = 1 is exactly LSS, not just statistically close.
    let mut lss = build(Variant::Lss, 1, &oracle)?;
    let mut plus = build(Variant::LssPlus, 1, &oracle)?;
    for &item in &stream {
        lss.add(item);
        plus.add(item);
    }
    assert!(plus.state_eq(&lss));
    println!("tau_inv = 1 reproduces LSS state exactly: ok");
    println!();

    println!("{:>7} {:>13} {:>13} {:>9}", "tau_inv", "filter probes", "filter passes", "rmse");
    for tau_inv in [1u64, 4, 16, 64] {
        let mut sketch = build(Variant::LssPlus, tau_inv, &oracle)?;
        for &item in &stream {
            sketch.add(item);
        }
        let err = rmse(&oracle, |it| sketch.query(it))?;
        println!(
            "{:>7} {:>13} {:>13} {:>9.2}",
            tau_inv,
            sketch.filter_probes(),
            sketch.filter_passes(),
            err
        );
    }
    Ok(())
}
