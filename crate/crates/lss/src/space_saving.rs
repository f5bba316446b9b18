//! The Space Saving counter table.
//!
//! Space Saving tracks at most `k` items. An arrival of a monitored item
//! bumps its counter; an arrival of an unmonitored item either claims a free
//! slot or takes over the slot with the smallest counter, inheriting that
//! count plus the increment. The inherited count is what makes every
//! estimate an overestimate, and it is bounded by the minimum counter, which
//! in turn never exceeds `inserted / k`.
//!
//! Entries can be pinned ("fixed") up to a configured cap. Fixed entries are
//! exempt from eviction; replacement always picks the minimum among the
//! unfixed entries. Ties on the minimum count break toward the least
//! recently updated entry, which keeps the table fully deterministic and
//! lets a naive linear-scan implementation reproduce it exactly.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::item::ItemId;

/// Bits charged per table entry in memory accounting: a 64-bit id, a 32-bit
/// counter, and the fixed flag.
pub const ENTRY_BITS: u64 = 64 + 32 + 1;

/// One monitored item.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SketchEntry {
    pub item: ItemId,
    pub count: u64,
    /// Exempt from eviction.
    pub fixed: bool,
    /// Monotone sequence number of the last insert that touched this entry.
    pub last_touch: u64,
}

/// Space Saving with a bounded number of pinned entries.
///
/// Replacement and minimum lookups go through ordered sets keyed by
/// `(count, last_touch, slot)`, so inserts cost `O(log k)` and the eviction
/// victim is always the oldest minimum-count unfixed entry.
#[derive(Debug, Clone)]
pub struct SpaceSavingTable {
    capacity: usize,
    fixed_cap: usize,
    fixed_used: usize,
    inserted: u64,
    tick: u64,
    slots: Vec<SketchEntry>,
    index: HashMap<ItemId, usize>,
    /// Unfixed entries, ordered by (count, last_touch, slot).
    unfixed: BTreeSet<(u64, u64, usize)>,
    /// Fixed entries, same ordering; only consulted for the global minimum.
    fixed: BTreeSet<(u64, u64, usize)>,
}

impl SpaceSavingTable {
    /// Creates a table with `capacity` slots of which at most `fixed_cap`
    /// may be pinned. `fixed_cap` must leave at least one evictable slot.
    pub fn new(capacity: usize, fixed_cap: usize) -> Result<Self> {
        if capacity == 0 {
            return Err(Error::config("k must be at least 1"));
        }
        if fixed_cap >= capacity {
            return Err(Error::config(format!(
                "k_hh must be at most k-1 (got k_hh={fixed_cap}, k={capacity})"
            )));
        }
        Ok(SpaceSavingTable {
            capacity,
            fixed_cap,
            fixed_used: 0,
            inserted: 0,
            tick: 0,
            slots: Vec::with_capacity(capacity),
            index: HashMap::with_capacity(capacity),
            unfixed: BTreeSet::new(),
            fixed: BTreeSet::new(),
        })
    }

    /// Feeds one arrival of `item`, counted `increment` times.
    ///
    /// `mark_fixed` asks to pin the entry if the item is new to the table
    /// and a pinned slot is still available; it never re-flags an entry that
    /// is already resident. `increment` is 1 for plain arrivals and larger
    /// only for sampled updates.
    pub fn insert(&mut self, item: ItemId, mark_fixed: bool, increment: u64) {
        debug_assert!(increment >= 1, "increment must be positive");
        self.tick += 1;
        self.inserted += 1;

        if let Some(&slot) = self.index.get(&item) {
            let (count, last_touch, is_fixed) = {
                let e = &self.slots[slot];
                (e.count, e.last_touch, e.fixed)
            };
            let order_key = (count, last_touch, slot);
            if is_fixed {
                self.fixed.remove(&order_key);
            } else {
                self.unfixed.remove(&order_key);
            }
            let e = &mut self.slots[slot];
            e.count += increment;
            e.last_touch = self.tick;
            let new_key = (e.count, e.last_touch, slot);
            if is_fixed {
                self.fixed.insert(new_key);
            } else {
                self.unfixed.insert(new_key);
            }
            return;
        }

        let pin = mark_fixed && self.fixed_used < self.fixed_cap;

        if self.slots.len() < self.capacity {
            let slot = self.slots.len();
            self.slots.push(SketchEntry {
                item,
                count: increment,
                fixed: pin,
                last_touch: self.tick,
            });
            self.index.insert(item, slot);
            let key = (increment, self.tick, slot);
            if pin {
                self.fixed_used += 1;
                self.fixed.insert(key);
            } else {
                self.unfixed.insert(key);
            }
            return;
        }

        // Full table: take over the oldest minimum-count unfixed entry. The
        // fixed cap is strictly below capacity, so this set is never empty.
        let &victim_key @ (victim_count, _, slot) = self
            .unfixed
            .first()
            .expect("full table always keeps an unfixed entry");
        self.unfixed.remove(&victim_key);
        self.index.remove(&self.slots[slot].item);

        let entry = &mut self.slots[slot];
        entry.item = item;
        entry.count = victim_count + increment;
        entry.fixed = pin;
        entry.last_touch = self.tick;
        let new_key = (entry.count, self.tick, slot);
        self.index.insert(item, slot);
        if pin {
            self.fixed_used += 1;
            self.fixed.insert(new_key);
        } else {
            self.unfixed.insert(new_key);
        }
    }

    /// Point estimate for `item`: its counter if monitored, otherwise
    /// [`floor_count`](Self::floor_count).
    pub fn query(&self, item: ItemId) -> u64 {
        match self.index.get(&item) {
            Some(&slot) => self.slots[slot].count,
            None => self.floor_count(),
        }
    }

    pub fn contains(&self, item: ItemId) -> bool {
        self.index.contains_key(&item)
    }

    /// The estimate reported for any absent item: the minimum counter among
    /// mutable entries. Eviction only ever removes a mutable-minimum entry,
    /// and that minimum never decreases once the table is full, so this
    /// value dominates the count any absent item held when it was evicted.
    /// A fixed entry pinned at a small count must not drag this floor down;
    /// if it did, evicted items could be reported below their true
    /// frequency. Before the first eviction absent items have no absorbed
    /// occurrences, so the all-entries minimum (or 0 while empty) is safe.
    pub fn floor_count(&self) -> u64 {
        match self.unfixed.first() {
            Some(&(c, _, _)) => c,
            None => self.fixed.first().map_or(0, |&(c, _, _)| c),
        }
    }

    /// Minimum counter over all entries, fixed included. 0 when empty.
    pub fn min_count(&self) -> u64 {
        let a = self.unfixed.first().map(|&(c, _, _)| c);
        let b = self.fixed.first().map(|&(c, _, _)| c);
        match (a, b) {
            (Some(x), Some(y)) => x.min(y),
            (Some(x), None) => x,
            (None, Some(y)) => y,
            (None, None) => 0,
        }
    }

    /// The `k_req` largest counters, descending; ties go to the entry
    /// touched longest ago. Returns fewer when the table holds fewer.
    pub fn top_k(&self, k_req: usize) -> Vec<SketchEntry> {
        let mut entries: Vec<SketchEntry> = self.slots.clone();
        entries.sort_by(|a, b| {
            b.count
                .cmp(&a.count)
                .then_with(|| a.last_touch.cmp(&b.last_touch))
        });
        entries.truncate(k_req);
        entries
    }

    /// Monitored items whose raw counter reaches `threshold`, in top-k
    /// order. Callers own any estimate correction; this reads counters as
    /// stored.
    pub fn heavy_hitters(&self, threshold: u64) -> Vec<ItemId> {
        let mut hits: Vec<&SketchEntry> =
            self.slots.iter().filter(|e| e.count >= threshold).collect();
        hits.sort_by(|a, b| {
            b.count
                .cmp(&a.count)
                .then_with(|| a.last_touch.cmp(&b.last_touch))
        });
        hits.into_iter().map(|e| e.item).collect()
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn fixed_cap(&self) -> usize {
        self.fixed_cap
    }

    pub fn fixed_used(&self) -> usize {
        self.fixed_used
    }

    /// Number of insert calls so far (not the sum of increments).
    pub fn inserted(&self) -> u64 {
        self.inserted
    }

    pub fn entries(&self) -> impl Iterator<Item = &SketchEntry> {
        self.slots.iter()
    }

    /// Entries sorted by item id; convenient for equality checks between
    /// implementations that lay slots out differently.
    pub fn snapshot(&self) -> Vec<SketchEntry> {
        let mut s = self.slots.clone();
        s.sort_by_key(|e| e.item);
        s
    }
}
