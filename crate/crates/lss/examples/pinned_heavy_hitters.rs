//! Pinning predicted heavy hitters makes their counts exact.
//!
//! A pinned entry is never evicted, so it never inherits another item's
//! counter and its estimate carries zero Space Saving error. Here a table
//! predictor flags ten known-heavy items; after the stream, each pinned
//! estimate equals the exact count while the mutable slots still carry
//! the usual inherited excess.

use std::collections::HashMap;
use std::sync::Arc;

use lss::evaluation::oracle::ExactOracle;
use lss::evaluation::zipf::gen_zipf;
use lss::predictor::{PredictorThresholds, TablePredictor};
use lss::{LssConfig, LssSketch, Variant};

fn main() -> lss::Result<()> {
    let stream = gen_zipf(1.4, 5_000, 100_000, 3)?;
    let oracle = ExactOracle::from_stream(&stream);
    let heavies = oracle.top_k(10);

    let mut predictions = HashMap::new();
    for &item in &heavies {
        predictions.insert(item, oracle.count(item) as f64);
    }
    let predictor = TablePredictor::new(predictions, 1.0);

    let mut cfg = LssConfig::new(Variant::LssHh, 64);
    cfg.k_hh = 10;
    let thresholds = PredictorThresholds {
        low_freq_t: 0,
        hh_count_threshold: oracle.count(heavies[9]) as f64,
    };
    let mut sketch = LssSketch::new(cfg, Arc::new(predictor), thresholds)?;
    for &item in &stream {
        sketch.add(item);
    }

    println!("{:>8} {:>10} {:>10} {:>7}", "item", "estimate", "exact", "error");
    for &item in &heavies {
        let est = sketch.query(item);
        let exact = oracle.count(item);
        println!("{:>8} {:>10} {:>10} {:>7}", item, est, exact, est - exact);
    }

    let pinned_exact = heavies.iter().all(|&it| sketch.query(it) == oracle.count(it));
    println!();
    println!("all pinned estimates exact: {pinned_exact}");
    println!(
        "mutable floor (worst-case excess for everyone else): {}",
        sketch.table().floor_count()
    );
    Ok(())
}
