//! Exact ground truth for a stream prefix.
//!
//! The oracle is a plain counting pass. Everything the metrics need — true
//! frequencies, the true top-k, the true heavy hitters, the count of
//! single-occurrence items — is derived from it, so sketch results are
//! always judged against an independent exact computation.

use std::collections::HashMap;

use crate::item::ItemId;

#[derive(Debug, Clone, Default)]
pub struct ExactOracle {
    counts: HashMap<ItemId, u64>,
    first_seen: HashMap<ItemId, u64>,
    total: u64,
}

impl ExactOracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_stream(stream: &[ItemId]) -> Self {
        let mut o = Self::new();
        for &item in stream {
            o.observe(item);
        }
        o
    }

    pub fn observe(&mut self, item: ItemId) {
        self.total += 1;
        let total = self.total;
        self.first_seen.entry(item).or_insert(total);
        *self.counts.entry(item).or_insert(0) += 1;
    }

    pub fn count(&self, item: ItemId) -> u64 {
        self.counts.get(&item).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn distinct(&self) -> u64 {
        self.counts.len() as u64
    }

    /// Number of items that occurred exactly once.
    pub fn singletons(&self) -> u64 {
        self.counts.values().filter(|&&c| c == 1).count() as u64
    }

    /// Number of items with frequency at most `t`.
    pub fn low_frequency_items(&self, t: u64) -> u64 {
        self.counts.values().filter(|&&c| c <= t).count() as u64
    }

    pub fn counts(&self) -> &HashMap<ItemId, u64> {
        &self.counts
    }

    pub fn items(&self) -> impl Iterator<Item = ItemId> + '_ {
        self.counts.keys().copied()
    }

    /// The true top `k_req`, descending by count; ties go to the item seen
    /// earlier, which makes the ranking deterministic.
    pub fn top_k(&self, k_req: usize) -> Vec<ItemId> {
        let mut ranked: Vec<(&ItemId, &u64)> = self.counts.iter().collect();
        ranked.sort_by(|a, b| {
            b.1.cmp(a.1)
                .then_with(|| self.first_seen[a.0].cmp(&self.first_seen[b.0]))
        });
        ranked.into_iter().take(k_req).map(|(i, _)| *i).collect()
    }

    /// Items with true frequency at least `theta * total`.
    pub fn heavy_hitters(&self, theta: f64) -> Vec<ItemId> {
        let cutoff = theta * self.total as f64;
        let mut hits: Vec<(&ItemId, &u64)> = self
            .counts
            .iter()
            .filter(|(_, &c)| c as f64 >= cutoff)
            .collect();
        hits.sort_by(|a, b| {
            b.1.cmp(a.1)
                .then_with(|| self.first_seen[a.0].cmp(&self.first_seen[b.0]))
        });
        hits.into_iter().map(|(i, _)| *i).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(v: u64) -> ItemId {
        ItemId(v)
    }

    #[test]
    fn counts_match_an_independent_pass() {
        let stream: Vec<ItemId> = (0..5000).map(|i| id((i * i) % 37)).collect();
        let oracle = ExactOracle::from_stream(&stream);
        let mut reference: HashMap<ItemId, u64> = HashMap::new();
        for &item in &stream {
            *reference.entry(item).or_insert(0) += 1;
        }
        assert_eq!(oracle.counts(), &reference);
        assert_eq!(oracle.total(), 5000);
        assert_eq!(oracle.distinct(), reference.len() as u64);
    }

    #[test]
    fn top_k_breaks_ties_by_first_occurrence() {
        // B and C tie at 2; B appeared first.
        let stream = [3u64, 2, 2, 5, 3, 1].map(id);
        let oracle = ExactOracle::from_stream(&stream);
        assert_eq!(oracle.top_k(3), vec![id(3), id(2), id(5)]);
        assert_eq!(oracle.top_k(2), vec![id(3), id(2)]);
        assert_eq!(oracle.top_k(10).len(), 4);
    }

    #[test]
    fn singleton_count_is_exact() {
        let stream = [1u64, 2, 1, 3, 4, 1].map(id);
        let oracle = ExactOracle::from_stream(&stream);
        assert_eq!(oracle.singletons(), 3);
        assert_eq!(oracle.low_frequency_items(1), 3);
        assert_eq!(oracle.low_frequency_items(3), 4);
    }

    #[test]
    fn heavy_hitters_include_the_boundary() {
        // total = 10; theta = 0.3 → cutoff 3. Item 1 has exactly 3.
        let stream = [1u64, 1, 1, 2, 2, 2, 2, 3, 3, 4].map(id);
        let oracle = ExactOracle::from_stream(&stream);
        let hh = oracle.heavy_hitters(0.3);
        assert_eq!(hh, vec![id(2), id(1)]);
        assert!(oracle.heavy_hitters(0.05).len() == 4);
        assert!(oracle.heavy_hitters(0.9).is_empty());
    }

    #[test]
    fn queries_on_unseen_items_return_zero() {
        let oracle = ExactOracle::from_stream(&[id(1)]);
        assert_eq!(oracle.count(id(99)), 0);
    }
}
