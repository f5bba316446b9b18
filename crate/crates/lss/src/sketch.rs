//! Learning-augmented Space Saving.
//!
//! All variants share one skeleton: arrivals predicted above the
//! low-frequency threshold `t` go straight into the counter table, while
//! predicted-low arrivals are parked in a small filter until the filter has
//! seen them `t` times, at which point they start flowing into the table
//! too. Occurrences absorbed by the filter are repaid at query time by a
//! flat `+t` correction, which keeps every estimate an overestimate.
//!
//! Variants differ in which pieces are active:
//!
//! * `Ss`: the plain table, no predictor, no filter.
//! * `LssLfs`: `t = 1`, membership (Bloom) filter; screens out items
//!   predicted to occur once.
//! * `LssLf`: general `t`, counting filter.
//! * `LssHh`: no filter; items predicted to be heavy hitters are pinned
//!   into fixed table slots (first come, up to `k_hh`).
//! * `Lss`: counting filter and fixed slots together.
//! * `LssPlus`: `Lss` plus a sampling gate. A predicted-low arrival only
//!   touches the filter with probability `tau = 1 / tau_inv`; table inserts
//!   from that path count `tau_inv` at once and the query correction scales
//!   to `t * tau_inv`. With `tau_inv = 1` the gate always fires and the
//!   sketch coincides with `Lss` state-for-state.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::filters::{
    BloomFilter, CountingBloomFilter, ExactCountFilter, ExactMembershipFilter, FilterKind,
    filter_sizing, DEFAULT_CELL_WIDTH,
};
use crate::item::ItemId;
use crate::predictor::{Predictor, PredictorThresholds};
use crate::rng::{derive_seed, SplitMix64};
use crate::space_saving::{SketchEntry, SpaceSavingTable, ENTRY_BITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Ss,
    LssLfs,
    LssLf,
    LssHh,
    Lss,
    LssPlus,
}

impl Variant {
    pub const ALL: [Variant; 6] = [
        Variant::Ss,
        Variant::LssLfs,
        Variant::LssLf,
        Variant::LssHh,
        Variant::Lss,
        Variant::LssPlus,
    ];

    pub fn uses_filter(self) -> bool {
        matches!(
            self,
            Variant::LssLfs | Variant::LssLf | Variant::Lss | Variant::LssPlus
        )
    }

    pub fn uses_fixed_entries(self) -> bool {
        matches!(self, Variant::LssHh | Variant::Lss | Variant::LssPlus)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Ss => "ss",
            Variant::LssLfs => "lss_lfs",
            Variant::LssLf => "lss_lf",
            Variant::LssHh => "lss_hh",
            Variant::Lss => "lss",
            Variant::LssPlus => "lss_plus",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ss" => Ok(Variant::Ss),
            "lss_lfs" => Ok(Variant::LssLfs),
            "lss_lf" => Ok(Variant::LssLf),
            "lss_hh" => Ok(Variant::LssHh),
            "lss" => Ok(Variant::Lss),
            "lss_plus" => Ok(Variant::LssPlus),
            other => Err(Error::config(format!(
                "unknown variant {other:?} (expected ss, lss_lfs, lss_lf, lss_hh, lss, lss_plus)"
            ))),
        }
    }
}

/// Full sketch configuration.
#[derive(Debug, Clone)]
pub struct LssConfig {
    pub variant: Variant,
    /// Counter table capacity.
    pub k: usize,
    /// Low-frequency threshold. Forced to 1 for `lss_lfs`.
    pub t: u64,
    /// Pinned-slot budget for the heavy-hitter variants.
    pub k_hh: usize,
    /// Bit budget for the filter (0 for variants without one).
    pub filter_bits: u64,
    /// Counting-cell width in bits.
    pub cell_width: u32,
    /// Expected distinct low-frequency items; sizes the filter's hash count.
    pub expected_low_distinct: Option<u64>,
    /// Inverse sampling rate for `lss_plus`; must be 1 elsewhere.
    pub tau_inv: u64,
    /// Substitute collision-free filters for the Bloom/counting filters.
    /// A diagnostic mode: it isolates sketch error from filter error.
    pub exact_filter: bool,
    pub seed: u64,
}

impl LssConfig {
    /// Plain Space Saving with `k` counters.
    pub fn space_saving(k: usize) -> Self {
        LssConfig {
            variant: Variant::Ss,
            k,
            t: 1,
            k_hh: 0,
            filter_bits: 0,
            cell_width: DEFAULT_CELL_WIDTH,
            expected_low_distinct: None,
            tau_inv: 1,
            exact_filter: false,
            seed: 0,
        }
    }

    pub fn new(variant: Variant, k: usize) -> Self {
        let mut cfg = LssConfig::space_saving(k);
        cfg.variant = variant;
        cfg.t = if variant == Variant::LssLfs { 1 } else { 4 };
        cfg
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::config("k must be at least 1"));
        }
        if self.t == 0 {
            return Err(Error::config("t must be at least 1"));
        }
        if self.variant == Variant::LssLfs && self.t != 1 {
            return Err(Error::config(format!(
                "lss_lfs requires t=1 (got t={})",
                self.t
            )));
        }
        if self.tau_inv == 0 {
            return Err(Error::config("tau_inv must be at least 1"));
        }
        if self.variant != Variant::LssPlus && self.tau_inv != 1 {
            return Err(Error::config(format!(
                "tau_inv={} only applies to lss_plus",
                self.tau_inv
            )));
        }
        if !self.variant.uses_fixed_entries() && self.k_hh != 0 {
            return Err(Error::config(format!(
                "k_hh={} requires a heavy-hitter variant (lss_hh, lss, lss_plus)",
                self.k_hh
            )));
        }
        if self.k_hh >= self.k {
            return Err(Error::config(format!(
                "k_hh must be at most k-1 (got k_hh={}, k={})",
                self.k_hh, self.k
            )));
        }
        if self.variant.uses_filter() && !self.exact_filter && self.filter_bits == 0 {
            return Err(Error::config(format!(
                "{} requires filter_bits > 0",
                self.variant
            )));
        }
        if !self.variant.uses_filter() && self.filter_bits != 0 {
            return Err(Error::config(format!(
                "filter_bits={} has no effect on {}",
                self.filter_bits, self.variant
            )));
        }
        Ok(())
    }
}

enum LowFreqFilter {
    None,
    Bloom(BloomFilter),
    Counting(CountingBloomFilter),
    ExactMembership(ExactMembershipFilter),
    ExactCounting(ExactCountFilter),
}

impl LowFreqFilter {
    /// Has this item cleared the filter, i.e. should it go to the table?
    fn passes(&self, item: ItemId, t: u64) -> bool {
        match self {
            LowFreqFilter::None => true,
            LowFreqFilter::Bloom(f) => f.contains(item),
            LowFreqFilter::Counting(f) => f.get(item) >= t,
            LowFreqFilter::ExactMembership(f) => f.contains(item),
            LowFreqFilter::ExactCounting(f) => f.get(item) >= t,
        }
    }

    fn record(&mut self, item: ItemId) {
        match self {
            LowFreqFilter::None => {}
            LowFreqFilter::Bloom(f) => f.add(item),
            LowFreqFilter::Counting(f) => f.add(item),
            LowFreqFilter::ExactMembership(f) => f.add(item),
            LowFreqFilter::ExactCounting(f) => f.add(item),
        }
    }

    fn state_eq(&self, other: &LowFreqFilter) -> bool {
        match (self, other) {
            (LowFreqFilter::None, LowFreqFilter::None) => true,
            (LowFreqFilter::Bloom(a), LowFreqFilter::Bloom(b)) => a == b,
            (LowFreqFilter::Counting(a), LowFreqFilter::Counting(b)) => a == b,
            (LowFreqFilter::ExactMembership(a), LowFreqFilter::ExactMembership(b)) => a == b,
            (LowFreqFilter::ExactCounting(a), LowFreqFilter::ExactCounting(b)) => a == b,
            _ => false,
        }
    }
}

/// A Space Saving table wrapped with a predictor, an optional
/// low-frequency filter, and an optional sampling gate.
pub struct LssSketch {
    config: LssConfig,
    table: SpaceSavingTable,
    filter: LowFreqFilter,
    thresholds: PredictorThresholds,
    predictor: Arc<dyn Predictor>,
    gate: SplitMix64,
    arrivals: u64,
    filter_probes: u64,
    filter_passes: u64,
}

impl LssSketch {
    /// Builds a sketch. The predictor and thresholds are ignored by the
    /// `ss` variant but must still be supplied; wiring them uniformly keeps
    /// paired comparisons honest.
    pub fn new(
        config: LssConfig,
        predictor: Arc<dyn Predictor>,
        thresholds: PredictorThresholds,
    ) -> Result<Self> {
        config.validate()?;
        let table = SpaceSavingTable::new(config.k, config.k_hh)?;
        let filter_seed = derive_seed(config.seed, "filter");
        let filter = if !config.variant.uses_filter() {
            LowFreqFilter::None
        } else if config.exact_filter {
            match config.variant {
                Variant::LssLfs => LowFreqFilter::ExactMembership(ExactMembershipFilter::new()),
                _ => LowFreqFilter::ExactCounting(ExactCountFilter::new()),
            }
        } else {
            match config.variant {
                Variant::LssLfs => {
                    let (m, h) = filter_sizing(
                        config.filter_bits,
                        FilterKind::Membership,
                        1,
                        config.expected_low_distinct,
                    )?;
                    LowFreqFilter::Bloom(BloomFilter::new(m, h, filter_seed)?)
                }
                _ => {
                    let (m, h) = filter_sizing(
                        config.filter_bits,
                        FilterKind::Counting,
                        config.cell_width,
                        config.expected_low_distinct,
                    )?;
                    LowFreqFilter::Counting(CountingBloomFilter::new(
                        m,
                        config.cell_width,
                        h,
                        filter_seed,
                    )?)
                }
            }
        };
        let gate = SplitMix64::new(derive_seed(config.seed, "gate"));
        Ok(LssSketch {
            config,
            table,
            filter,
            thresholds,
            predictor,
            gate,
            arrivals: 0,
            filter_probes: 0,
            filter_passes: 0,
        })
    }

    /// Feeds one arrival.
    pub fn add(&mut self, item: ItemId) {
        self.arrivals += 1;
        match self.config.variant {
            Variant::Ss => self.table.insert(item, false, 1),
            Variant::LssHh => {
                let pin = self.thresholds.is_heavy_hitter(&*self.predictor, item);
                self.table.insert(item, pin, 1);
            }
            Variant::LssLfs | Variant::LssLf | Variant::Lss => {
                if !self.thresholds.is_low_frequency(&*self.predictor, item) {
                    let pin = self.pin_request(item);
                    self.table.insert(item, pin, 1);
                } else {
                    self.filter_probes += 1;
                    if self.filter.passes(item, self.config.t) {
                        self.filter_passes += 1;
                        let pin = self.pin_request(item);
                        self.table.insert(item, pin, 1);
                    } else {
                        self.filter.record(item);
                    }
                }
            }
            Variant::LssPlus => {
                if !self.thresholds.is_low_frequency(&*self.predictor, item) {
                    let pin = self.pin_request(item);
                    self.table.insert(item, pin, 1);
                } else if self.gate.next_f64() <= 1.0 / self.config.tau_inv as f64 {
                    self.filter_probes += 1;
                    if self.filter.passes(item, self.config.t) {
                        self.filter_passes += 1;
                        let pin = self.pin_request(item);
                        self.table.insert(item, pin, self.config.tau_inv);
                    } else {
                        self.filter.record(item);
                    }
                }
                // Gate closed: the arrival is dropped entirely.
            }
        }
    }

    fn pin_request(&self, item: ItemId) -> bool {
        match self.config.variant {
            Variant::Lss | Variant::LssPlus => {
                self.thresholds.is_heavy_hitter(&*self.predictor, item)
            }
            _ => false,
        }
    }

    /// Frequency estimate including the variant's correction term.
    pub fn query(&self, item: ItemId) -> u64 {
        self.table.query(item) + self.correction()
    }

    /// Raw table estimate without the correction. Exposed for diagnostics;
    /// dropping the correction forfeits the never-undercount guarantee.
    pub fn query_uncorrected(&self, item: ItemId) -> u64 {
        self.table.query(item)
    }

    /// The additive term repaying occurrences the filter absorbed.
    pub fn correction(&self) -> u64 {
        match self.config.variant {
            Variant::Ss | Variant::LssHh => 0,
            Variant::LssLfs | Variant::LssLf | Variant::Lss => self.config.t,
            Variant::LssPlus => self.config.t * self.config.tau_inv,
        }
    }

    /// Resident items whose corrected estimate reaches `theta * arrivals`.
    pub fn heavy_hitters(&self, theta: f64) -> Vec<ItemId> {
        let cutoff = theta * self.arrivals as f64;
        let correction = self.correction();
        let mut hits: Vec<&SketchEntry> = self
            .table
            .entries()
            .filter(|e| (e.count + correction) as f64 >= cutoff)
            .collect();
        hits.sort_by(|a, b| {
            b.count
                .cmp(&a.count)
                .then_with(|| a.last_touch.cmp(&b.last_touch))
        });
        hits.into_iter().map(|e| e.item).collect()
    }

    /// Top `k_req` table entries by raw counter.
    pub fn top_k(&self, k_req: usize) -> Vec<SketchEntry> {
        self.table.top_k(k_req)
    }

    /// Total arrivals offered to the sketch, including those the `lss_plus`
    /// gate dropped.
    pub fn arrivals(&self) -> u64 {
        self.arrivals
    }

    /// Arrivals that consulted the filter. For the deterministic variants
    /// this equals the number of predicted-low arrivals; for `lss_plus` it
    /// only counts arrivals whose gate fired, which is the quantity the
    /// sampling rate scales down.
    pub fn filter_probes(&self) -> u64 {
        self.filter_probes
    }

    /// Filter consultations that cleared the threshold and reached the
    /// table.
    pub fn filter_passes(&self) -> u64 {
        self.filter_passes
    }

    /// Bits of state the sketch is charged for: table entries at
    /// [`ENTRY_BITS`] each plus the configured filter budget.
    pub fn memory_bits(&self) -> u64 {
        self.config.k as u64 * ENTRY_BITS + self.config.filter_bits
    }

    pub fn config(&self) -> &LssConfig {
        &self.config
    }

    pub fn table(&self) -> &SpaceSavingTable {
        &self.table
    }

    /// Structural equality of observable state: table contents, arrival
    /// count, and filter contents. Gate position is deliberately excluded.
    pub fn state_eq(&self, other: &LssSketch) -> bool {
        self.arrivals == other.arrivals
            && self.table.snapshot() == other.table.snapshot()
            && self.filter.state_eq(&other.filter)
    }
}
