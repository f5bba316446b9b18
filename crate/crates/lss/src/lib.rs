//! Space Saving and learning-augmented Space Saving sketches, plus the
//! harness used to evaluate them.
//!
//! The core types:
//!
//! * [`space_saving::SpaceSavingTable`]: the classic k-counter summary with
//!   optional pinned ("fixed") slots that eviction cannot touch.
//! * [`sketch::LssSketch`]: the learned wrapper. A predictor routes
//!   arrivals between the table and a low-frequency filter, and query
//!   results carry the correction that keeps estimates one-sided.
//! * [`predictor::Predictor`]: anything that maps an item to a predicted
//!   count. Ships with a simulated oracle with a tunable accuracy dial,
//!   a constant predictor, and a table loaded from disk.
//! * [`evaluation`]: workload generation, exact baselines, metrics, the
//!   experiment runner, and parameter sweeps.
//!
//! # Quick start
//!
//! ```
//! use std::sync::Arc;
//! use lss::item::ItemId;
//! use lss::predictor::{ConstantPredictor, PredictorThresholds};
//! use lss::sketch::{LssConfig, LssSketch, Variant};
//!
//! let mut cfg = LssConfig::new(Variant::LssLf, 64);
//! cfg.filter_bits = 4096;
//! let thresholds = PredictorThresholds { low_freq_t: cfg.t, hh_count_threshold: f64::INFINITY };
//! let mut sketch = LssSketch::new(cfg, Arc::new(ConstantPredictor::new(1.0)), thresholds).unwrap();
//!
//! for i in 0..1000u64 {
//!     sketch.add(ItemId(i % 37));
//! }
//! // Estimates never undercount the true frequency.
//! assert!(sketch.query(ItemId(0)) >= 1000 / 37);
//! ```

pub mod cli;
pub mod error;
pub mod evaluation;
pub mod filters;
pub mod item;
pub mod predictor;
pub mod rng;
pub mod selftest;
pub mod sketch;
pub mod space_saving;

pub use error::{Error, Result};
pub use item::{ItemId, ItemInterner};
pub use sketch::{LssConfig, LssSketch, Variant};
pub use space_saving::SpaceSavingTable;
