//! Approximate membership and counting filters.
//!
//! Both filters derive their probe positions from one keyed 64-bit hash via
//! double hashing: position i is `h1 + i * h2 (mod m)`. A Bloom filter never
//! reports false negatives; the counting filter never undercounts. Those
//! one-sided guarantees are what the learned sketches lean on, so they are
//! covered by property tests rather than assumed.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::item::ItemId;
use crate::rng::mix64;

/// Which filter flavor a bit budget buys.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterKind {
    Membership,
    Counting,
}

/// Default width of a counting cell, in bits.
pub const DEFAULT_CELL_WIDTH: u32 = 4;

/// Default probe count when no load estimate is available.
pub const DEFAULT_HASHES: u32 = 4;

/// Turns a bit budget into `(cells, hashes)`.
///
/// A membership filter spends one bit per cell; a counting filter spends
/// `cell_width` bits per cell (the remainder is unused). The probe count is
/// the usual `ln 2 * m / n` optimum for an expected load of `n_expected`
/// distinct keys, clamped to `[1, 8]`, or 4 when no estimate is given.
pub fn filter_sizing(
    bits_budget: u64,
    kind: FilterKind,
    cell_width: u32,
    n_expected: Option<u64>,
) -> Result<(usize, u32)> {
    if cell_width == 0 || cell_width > 16 {
        return Err(Error::config(format!(
            "cell_width must be in 1..=16 (got {cell_width})"
        )));
    }
    let cells = match kind {
        FilterKind::Membership => bits_budget,
        FilterKind::Counting => bits_budget / u64::from(cell_width),
    };
    if cells == 0 {
        return Err(Error::config(format!(
            "filter_bits budget {bits_budget} too small for one cell"
        )));
    }
    let hashes = match n_expected {
        Some(n) if n > 0 => {
            let h = (std::f64::consts::LN_2 * cells as f64 / n as f64).round();
            (h as i64).clamp(1, 8) as u32
        }
        _ => DEFAULT_HASHES,
    };
    Ok((cells as usize, hashes))
}

#[inline]
fn probe_pair(seed: u64, item: ItemId) -> (u64, u64) {
    let h1 = mix64(seed ^ item.0);
    // Odd stride so power-of-two cell counts still cycle through all cells.
    let h2 = mix64(h1 ^ 0x9e37_79b9_7f4a_7c15) | 1;
    (h1, h2)
}

/// Plain Bloom filter over `m` bits.
#[derive(Debug, Clone, PartialEq)]
pub struct BloomFilter {
    bits: Vec<u64>,
    m: usize,
    hashes: u32,
    seed: u64,
}

impl BloomFilter {
    pub fn new(m: usize, hashes: u32, seed: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::config("bloom filter needs at least one bit"));
        }
        if hashes == 0 {
            return Err(Error::config("bloom filter needs at least one hash"));
        }
        Ok(BloomFilter {
            bits: vec![0; m.div_ceil(64)],
            m,
            hashes,
            seed,
        })
    }

    pub fn add(&mut self, item: ItemId) {
        let (h1, h2) = probe_pair(self.seed, item);
        for i in 0..u64::from(self.hashes) {
            let pos = (h1.wrapping_add(i.wrapping_mul(h2)) % self.m as u64) as usize;
            self.bits[pos / 64] |= 1 << (pos % 64);
        }
    }

    pub fn contains(&self, item: ItemId) -> bool {
        let (h1, h2) = probe_pair(self.seed, item);
        (0..u64::from(self.hashes)).all(|i| {
            let pos = (h1.wrapping_add(i.wrapping_mul(h2)) % self.m as u64) as usize;
            self.bits[pos / 64] & (1 << (pos % 64)) != 0
        })
    }

    pub fn bits(&self) -> usize {
        self.m
    }

    pub fn hashes(&self) -> u32 {
        self.hashes
    }

    /// Textbook false positive rate for `n` distinct insertions:
    /// `(1 - e^(-h n / m))^h`.
    pub fn expected_fpr(m: usize, hashes: u32, n: u64) -> f64 {
        let h = f64::from(hashes);
        (1.0 - (-h * n as f64 / m as f64).exp()).powf(h)
    }
}

/// Counting Bloom filter with saturating fixed-width cells.
///
/// Every add increments all probed cells; a read takes the minimum. Cells
/// saturate at `2^width - 1` and never decrease, so reads can overcount but
/// never undercount an item's own adds.
#[derive(Debug, Clone, PartialEq)]
pub struct CountingBloomFilter {
    cells: Vec<u16>,
    cell_max: u16,
    hashes: u32,
    seed: u64,
    conservative: bool,
}

impl CountingBloomFilter {
    pub fn new(cells: usize, cell_width: u32, hashes: u32, seed: u64) -> Result<Self> {
        if cells == 0 {
            return Err(Error::config("counting filter needs at least one cell"));
        }
        if hashes == 0 {
            return Err(Error::config("counting filter needs at least one hash"));
        }
        if cell_width == 0 || cell_width > 16 {
            return Err(Error::config(format!(
                "cell_width must be in 1..=16 (got {cell_width})"
            )));
        }
        let cell_max = if cell_width == 16 {
            u16::MAX
        } else {
            (1u16 << cell_width) - 1
        };
        Ok(CountingBloomFilter {
            cells: vec![0; cells],
            cell_max,
            hashes,
            seed,
            conservative: false,
        })
    }

    /// Switches to conservative update: an add only raises cells that sit
    /// at the current minimum. Off by default; the evaluation harness uses
    /// the standard update.
    pub fn with_conservative_update(mut self) -> Self {
        self.conservative = true;
        self
    }

    pub fn add(&mut self, item: ItemId) {
        let (h1, h2) = probe_pair(self.seed, item);
        if self.conservative {
            let floor = self.get(item);
            for i in 0..u64::from(self.hashes) {
                let pos = (h1.wrapping_add(i.wrapping_mul(h2)) % self.cells.len() as u64) as usize;
                let c = &mut self.cells[pos];
                if u64::from(*c) <= floor && *c < self.cell_max {
                    *c += 1;
                }
            }
        } else {
            for i in 0..u64::from(self.hashes) {
                let pos = (h1.wrapping_add(i.wrapping_mul(h2)) % self.cells.len() as u64) as usize;
                let c = &mut self.cells[pos];
                if *c < self.cell_max {
                    *c += 1;
                }
            }
        }
    }

    /// Minimum over the probed cells.
    pub fn get(&self, item: ItemId) -> u64 {
        let (h1, h2) = probe_pair(self.seed, item);
        (0..u64::from(self.hashes))
            .map(|i| {
                let pos = (h1.wrapping_add(i.wrapping_mul(h2)) % self.cells.len() as u64) as usize;
                u64::from(self.cells[pos])
            })
            .min()
            .unwrap_or(0)
    }

    pub fn cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_values(&self) -> &[u16] {
        &self.cells
    }
}

/// Exact membership set with the Bloom filter's interface. Collision-free
/// by construction; used as the reference filter when separating the error
/// a filter's false positives contribute from the error the sketch itself
/// contributes.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExactMembershipFilter {
    items: HashSet<ItemId>,
}

impl ExactMembershipFilter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, item: ItemId) {
        self.items.insert(item);
    }

    pub fn contains(&self, item: ItemId) -> bool {
        self.items.contains(&item)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// Exact multiset counter, the collision-free analogue of
/// [`CountingBloomFilter`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExactCountFilter {
    counts: HashMap<ItemId, u64>,
}

impl ExactCountFilter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, item: ItemId) {
        *self.counts.entry(item).or_insert(0) += 1;
    }

    pub fn get(&self, item: ItemId) -> u64 {
        self.counts.get(&item).copied().unwrap_or(0)
    }
}
