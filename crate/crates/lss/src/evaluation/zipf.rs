//! Synthetic Zipf workloads.
//!
//! Items are ranks `0..n`, rank `r` drawn with probability proportional to
//! `(r+1)^-alpha`. Draws invert a precomputed cumulative table by binary
//! search, so streams are exact samples (no rejection, no approximation)
//! and byte-stable for a given seed.

use crate::error::{Error, Result};
use crate::item::ItemId;
use crate::rng::SplitMix64;

pub struct ZipfGenerator {
    cdf: Vec<f64>,
    rng: SplitMix64,
}

impl ZipfGenerator {
    /// `alpha = 0` degenerates to the uniform distribution over `n` items.
    pub fn new(alpha: f64, n: u64, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::config("zipf universe must be at least 1"));
        }
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::config(format!(
                "zipf alpha must be finite and non-negative (got {alpha})"
            )));
        }
        let mut cdf = Vec::with_capacity(n as usize);
        let mut acc = 0.0f64;
        for rank in 1..=n {
            acc += (rank as f64).powf(-alpha);
            cdf.push(acc);
        }
        let norm = acc;
        for c in &mut cdf {
            *c /= norm;
        }
        Ok(ZipfGenerator {
            cdf,
            rng: SplitMix64::new(seed),
        })
    }

    pub fn next_item(&mut self) -> ItemId {
        let u = self.rng.next_f64();
        let rank = self.cdf.partition_point(|&c| c <= u);
        ItemId(rank.min(self.cdf.len() - 1) as u64)
    }

    pub fn universe(&self) -> u64 {
        self.cdf.len() as u64
    }
}

/// Materializes a full stream in one call.
pub fn gen_zipf(alpha: f64, n: u64, len: u64, seed: u64) -> Result<Vec<ItemId>> {
    let mut gen = ZipfGenerator::new(alpha, n, seed)?;
    Ok((0..len).map(|_| gen.next_item()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert!(ZipfGenerator::new(1.0, 0, 1).is_err());
        assert!(ZipfGenerator::new(-0.5, 10, 1).is_err());
        assert!(ZipfGenerator::new(f64::NAN, 10, 1).is_err());
    }

    #[test]
    fn same_seed_reproduces_stream() {
        let a = gen_zipf(1.3, 1000, 5000, 42).unwrap();
        let b = gen_zipf(1.3, 1000, 5000, 42).unwrap();
        let c = gen_zipf(1.3, 1000, 5000, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn alpha_zero_is_uniform() {
        // Chi-squared goodness of fit against the uniform distribution:
        // 50 cells, 100k draws, statistic within 3 sigma of its mean
        // (dof = 49, variance = 2 * dof).
        let n = 50u64;
        let draws = 100_000u64;
        let stream = gen_zipf(0.0, n, draws, 11).unwrap();
        let mut obs = vec![0u64; n as usize];
        for item in stream {
            obs[item.0 as usize] += 1;
        }
        let expected = draws as f64 / n as f64;
        let chi2: f64 = obs
            .iter()
            .map(|&o| {
                let d = o as f64 - expected;
                d * d / expected
            })
            .sum();
        let dof = (n - 1) as f64;
        let limit = dof + 3.0 * (2.0 * dof).sqrt();
        assert!(chi2 <= limit, "chi2 {chi2:.1} exceeds {limit:.1}");
    }

    #[test]
    fn rank_one_mass_matches_normalization() {
        // P(rank 1) = 1 / H, H = sum over ranks of r^-alpha; the observed
        // count must sit within 3 sigma of the binomial expectation.
        let alpha = 1.3;
        let n = 10_000u64;
        let draws = 200_000u64;
        let h: f64 = (1..=n).map(|r| (r as f64).powf(-alpha)).sum();
        let p = 1.0 / h;
        let stream = gen_zipf(alpha, n, draws, 17).unwrap();
        let rank1 = stream.iter().filter(|i| i.0 == 0).count() as f64;
        let mean = draws as f64 * p;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        assert!(
            (rank1 - mean).abs() <= 3.0 * sigma,
            "rank-1 count {rank1} outside {mean:.0} +/- {:.0}",
            3.0 * sigma
        );
    }

    #[test]
    fn skew_orders_ranks() {
        let stream = gen_zipf(2.0, 100, 50_000, 3).unwrap();
        let mut counts = vec![0u64; 100];
        for item in stream {
            counts[item.0 as usize] += 1;
        }
        assert!(counts[0] > counts[9]);
        assert!(counts[0] > 25_000, "alpha=2 puts most mass on rank 1");
    }

    #[test]
    fn draws_stay_in_universe() {
        let stream = gen_zipf(1.1, 7, 10_000, 5).unwrap();
        assert!(stream.iter().all(|i| i.0 < 7));
    }
}
