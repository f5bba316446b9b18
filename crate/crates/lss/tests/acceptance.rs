//! Acceptance suite: one test per shipping criterion, each printing the
//! measured quantity against its allowance. Run with `--nocapture` to see
//! the numbers on passing runs too.
//!
//! Every workload is seeded, so each criterion is a deterministic
//! measurement, not a statistical hope. Where a bound is checked across
//! checkpoints, the prefix oracle is rebuilt arrival by arrival next to
//! the sketch under test.

use std::collections::HashMap;
use std::sync::Arc;

use lss::evaluation::experiment::{run_experiment, ExperimentConfig, TraceSource};
use lss::evaluation::metrics::{max_abs_error, precision_topk, recall_hh, rmse};
use lss::evaluation::oracle::ExactOracle;
use lss::evaluation::sweep::variant_config;
use lss::evaluation::zipf::gen_zipf;
use lss::filters::{filter_sizing, BloomFilter, FilterKind};
use lss::predictor::{
    ConstantPredictor, PredictorThresholds, SimulatedPredictor, SimulatedPredictorSpec,
    TablePredictor,
};
use lss::rng::{derive_seed, SplitMix64};
use lss::{ItemId, LssConfig, LssSketch, SpaceSavingTable, Variant};

/// criterion 1: plain Space Saving on Zipf(1.0, n=10^4, N=10^5) with
/// k=100. At every thousandth arrival, every item seen so far satisfies
/// f <= estimate <= f + minCount, and minCount <= ceil(inserted/k).
#[test]
fn criterion_01_space_saving_bounds() {
    let k = 100usize;
    let stream = gen_zipf(1.0, 10_000, 100_000, 101).unwrap();
    let mut table = SpaceSavingTable::new(k, 0).unwrap();
    let mut prefix = ExactOracle::new();

    let mut worst_under = 0i64;
    let mut worst_over_slack = i64::MIN;
    let mut worst_min_ratio = 0.0f64;
    for (idx, &item) in stream.iter().enumerate() {
        table.insert(item, false, 1);
        prefix.observe(item);
        if (idx + 1) % 1000 != 0 {
            continue;
        }
        let min_count = table.min_count();
        let lemma_cap = table.inserted().div_ceil(k as u64);
        assert!(
            min_count <= lemma_cap,
            "minCount {min_count} exceeds ceil(inserted/k) = {lemma_cap} at arrival {}",
            idx + 1
        );
        worst_min_ratio = worst_min_ratio.max(min_count as f64 / lemma_cap as f64);
        for (&it, &f) in prefix.counts() {
            let q = table.query(it);
            let under = f as i64 - q as i64;
            let over_slack = q as i64 - (f + min_count) as i64;
            worst_under = worst_under.max(under);
            worst_over_slack = worst_over_slack.max(over_slack);
            assert!(q >= f, "undercount at arrival {}: item {it} f={f} q={q}", idx + 1);
            assert!(
                q <= f + min_count,
                "estimate above f + minCount at arrival {}: item {it} f={f} q={q} min={min_count}",
                idx + 1
            );
        }
    }
    println!(
        "criterion 1: max(f - q) = {worst_under}, max(q - f - minCount) = {worst_over_slack}, \
         worst minCount/ceil(inserted/k) = {worst_min_ratio:.4}"
    );
}

/// Reference Space Saving: linear scan for the eviction victim, smallest
/// count first and oldest touch on ties, exactly the production rule.
struct NaiveSs {
    k: usize,
    tick: u64,
    entries: Vec<(ItemId, u64, u64)>,
}

impl NaiveSs {
    fn new(k: usize) -> Self {
        NaiveSs { k, tick: 0, entries: Vec::new() }
    }

    fn insert(&mut self, item: ItemId) {
        self.tick += 1;
        if let Some(e) = self.entries.iter_mut().find(|e| e.0 == item) {
            e.1 += 1;
            e.2 = self.tick;
            return;
        }
        if self.entries.len() < self.k {
            self.entries.push((item, 1, self.tick));
            return;
        }
        let victim = self
            .entries
            .iter()
            .enumerate()
            .min_by_key(|(_, e)| (e.1, e.2))
            .map(|(i, _)| i)
            .unwrap();
        let count = self.entries[victim].1;
        self.entries[victim] = (item, count + 1, self.tick);
    }

    fn sorted(&self) -> Vec<(ItemId, u64, u64)> {
        let mut v = self.entries.clone();
        v.sort_unstable();
        v
    }
}

/// criterion 2: the optimized table matches the naive reference, entry for
/// entry, on 10^4 random streams (length <= 200, universe <= 50).
#[test]
fn criterion_02_naive_equivalence() {
    let mut rng = SplitMix64::new(derive_seed(2, "streams"));
    for trial in 0..10_000u32 {
        let universe = 1 + rng.next_index(50) as u64;
        let len = rng.next_index(201);
        let k = 1 + rng.next_index(12);

        let mut fast = SpaceSavingTable::new(k, 0).unwrap();
        let mut naive = NaiveSs::new(k);
        for _ in 0..len {
            let item = ItemId(rng.next_u64() % universe);
            fast.insert(item, false, 1);
            naive.insert(item);
        }

        let mut got: Vec<(ItemId, u64, u64)> = fast
            .entries()
            .map(|e| {
                assert!(!e.fixed);
                (e.item, e.count, e.last_touch)
            })
            .collect();
        got.sort_unstable();
        assert_eq!(
            got,
            naive.sorted(),
            "table mismatch on trial {trial} (universe {universe}, len {len}, k {k})"
        );
    }
    println!("criterion 2: 10000 random streams, tables identical");
}

/// criterion 3: the single-occurrence screen solves the frequency-envelope
/// task for eps = 0.01 with k = ceil(1/(eps - 1/N)): on Zipf(1.3, N=10^5)
/// with an honest 90%-accurate predictor, every item at every thousandth
/// arrival satisfies f <= query <= f + eps*N.
#[test]
fn criterion_03_lfs_eps_frequency() {
    let n_stream = 100_000u64;
    let eps = 0.01f64;
    let k = (1.0 / (eps - 1.0 / n_stream as f64)).ceil() as usize;
    let allowance = (eps * n_stream as f64) as u64;
    let seed = 3u64;

    let stream = gen_zipf(1.3, 10_000, n_stream, derive_seed(seed, "trace")).unwrap();
    let oracle = ExactOracle::from_stream(&stream);

    let spec = SimulatedPredictorSpec::new(1, 0.9, derive_seed(seed, "predictor"));
    let predictor = SimulatedPredictor::new(spec, oracle.counts().clone()).unwrap();
    let mut cfg = LssConfig::new(Variant::LssLfs, k);
    cfg.filter_bits = 32_768;
    cfg.expected_low_distinct = Some(oracle.singletons().max(1));
    cfg.seed = derive_seed(seed, "sketch");
    let thresholds = PredictorThresholds {
        low_freq_t: 1,
        hh_count_threshold: f64::INFINITY,
    };
    let mut sketch = LssSketch::new(cfg, Arc::new(predictor), thresholds).unwrap();

    let mut prefix = ExactOracle::new();
    let mut worst_over = 0u64;
    for (idx, &item) in stream.iter().enumerate() {
        sketch.add(item);
        prefix.observe(item);
        if (idx + 1) % 1000 != 0 {
            continue;
        }
        for (&it, &f) in prefix.counts() {
            let q = sketch.query(it);
            assert!(q >= f, "undercount at arrival {}: item {it} f={f} q={q}", idx + 1);
            assert!(
                q <= f + allowance,
                "estimate past f + eps*N at arrival {}: item {it} f={f} q={q}",
                idx + 1
            );
            worst_over = worst_over.max(q - f);
        }
    }
    println!(
        "criterion 3: k={k}, max(q - f) = {worst_over} against eps*N = {allowance}"
    );
}

/// criterion 4: constant all-low and all-heavy predictors on the same
/// trace. Estimates never undercount at any checkpoint, and top-100
/// precision degrades by at most 0.05 against Space Saving at equal
/// memory.
#[test]
fn criterion_04_adversarial_predictions() {
    let memory_bits = 65_536u64;
    let top = 100usize;
    let stream = gen_zipf(1.3, 10_000, 100_000, derive_seed(4, "trace")).unwrap();
    let oracle = ExactOracle::from_stream(&stream);
    let true_top = oracle.top_k(top);

    let ss_budget =
        lss::evaluation::experiment::resolve_budget(memory_bits, Variant::Ss, 0.10, 0.10)
            .unwrap();
    let mut ss = SpaceSavingTable::new(ss_budget.k, 0).unwrap();
    for &item in &stream {
        ss.insert(item, false, 1);
    }
    let ss_top: Vec<_> = ss.top_k(top).iter().map(|e| e.item).collect();
    let p_ss = precision_topk(&ss_top, &true_top);

    let budget =
        lss::evaluation::experiment::resolve_budget(memory_bits, Variant::Lss, 0.10, 0.10)
            .unwrap();
    let adversaries: [(&str, Arc<dyn lss::predictor::Predictor>, f64); 2] = [
        ("all-low", Arc::new(ConstantPredictor::new(0.0)), f64::INFINITY),
        ("all-heavy", Arc::new(ConstantPredictor::new(1e15)), 1.0),
    ];
    for (name, predictor, hh_threshold) in adversaries {
        let mut cfg = LssConfig::new(Variant::Lss, budget.k);
        cfg.t = 4;
        cfg.k_hh = budget.k_hh;
        cfg.filter_bits = budget.filter_bits;
        cfg.seed = derive_seed(4, "sketch");
        let thresholds = PredictorThresholds {
            low_freq_t: 4,
            hh_count_threshold: hh_threshold,
        };
        let mut sketch = LssSketch::new(cfg, predictor, thresholds).unwrap();
        let mut prefix = ExactOracle::new();
        for (idx, &item) in stream.iter().enumerate() {
            sketch.add(item);
            prefix.observe(item);
            if (idx + 1) % 1000 != 0 {
                continue;
            }
            for (&it, &f) in prefix.counts() {
                let q = sketch.query(it);
                assert!(
                    q >= f,
                    "{name}: undercount at arrival {}: item {it} f={f} q={q}",
                    idx + 1
                );
            }
        }
        let adv_top: Vec<_> = sketch.top_k(top).iter().map(|e| e.item).collect();
        let p_adv = precision_topk(&adv_top, &true_top);
        println!("criterion 4: {name} precision {p_adv:.4} vs ss {p_ss:.4}");
        assert!(
            p_adv >= p_ss - 0.05,
            "{name} precision {p_adv:.4} degrades more than 0.05 below ss {p_ss:.4}"
        );
    }
}

/// Builds the exact-count table predictor the perfect-prediction criteria
/// share: it reports every item's true frequency.
fn perfect_predictor(oracle: &ExactOracle) -> TablePredictor {
    let map: HashMap<ItemId, f64> = oracle
        .counts()
        .iter()
        .map(|(&it, &f)| (it, f as f64))
        .collect();
    TablePredictor::new(map, 0.0)
}

/// criterion 5: perfect single-occurrence predictions plus the exact
/// membership filter keep the worst additive error under (N - l)/k, where
/// l is the oracle's singleton count.
#[test]
fn criterion_05_perfect_filter_gain() {
    let k = 100usize;
    let stream = gen_zipf(1.3, 10_000, 100_000, derive_seed(5, "trace")).unwrap();
    let oracle = ExactOracle::from_stream(&stream);
    let singles = oracle.singletons();

    let mut cfg = LssConfig::new(Variant::LssLfs, k);
    cfg.exact_filter = true;
    cfg.seed = derive_seed(5, "sketch");
    let thresholds = PredictorThresholds {
        low_freq_t: 1,
        hh_count_threshold: f64::INFINITY,
    };
    let mut sketch =
        LssSketch::new(cfg, Arc::new(perfect_predictor(&oracle)), thresholds).unwrap();
    for &item in &stream {
        sketch.add(item);
    }

    let bound = (oracle.total() - singles) as f64 / k as f64;
    let worst = max_abs_error(&oracle, |it| sketch.query(it));
    for (&it, &f) in oracle.counts() {
        assert!(sketch.query(it) >= f, "undercount on item {it}");
    }
    println!(
        "criterion 5: l = {singles} singletons, max additive error {worst} < (N-l)/k = {bound:.2}"
    );
    assert!(
        (worst as f64) < bound,
        "max additive error {worst} not under (N-l)/k = {bound:.2}"
    );
}

/// criterion 6: same workload with a real Bloom filter sized for a 1%
/// false-positive rate at full load. The filter fills as singletons are
/// recorded, so each probe sees its own false-positive rate; the number of
/// singletons leaking to the table is Poisson-binomial, and the measured
/// count must sit within 3 sigma of that envelope (and under the flat
/// l*fpr + 3 sigma cap). The error bound weakens only by the leaked mass:
/// max additive error < (N - l(1 - (1+nu) fpr)) / k with nu = 0.1.
#[test]
fn criterion_06_fpr_adjusted_gain() {
    let k = 100usize;
    let fpr = 0.01f64;
    let nu = 0.1f64;
    let seed = 6u64;
    let stream = gen_zipf(1.3, 10_000, 100_000, derive_seed(seed, "trace")).unwrap();
    let oracle = ExactOracle::from_stream(&stream);
    let singles = oracle.singletons();

    // Textbook sizing: m = -l ln(fpr) / (ln 2)^2, h = round(ln 2 * m / l).
    let m_bits = (-(singles as f64) * fpr.ln() / std::f64::consts::LN_2.powi(2)).ceil() as u64;

    let mut cfg = LssConfig::new(Variant::LssLfs, k);
    cfg.filter_bits = m_bits;
    cfg.expected_low_distinct = Some(singles);
    cfg.seed = derive_seed(seed, "sketch");
    let thresholds = PredictorThresholds {
        low_freq_t: 1,
        hh_count_threshold: f64::INFINITY,
    };
    let mut sketch =
        LssSketch::new(cfg, Arc::new(perfect_predictor(&oracle)), thresholds).unwrap();
    for &item in &stream {
        sketch.add(item);
    }
    let observed = sketch.filter_passes();

    // Replay the filter decisions against a standalone Bloom filter built
    // the same way, accumulating the per-probe false-positive envelope.
    let (m, h) =
        filter_sizing(m_bits, FilterKind::Membership, 1, Some(singles)).unwrap();
    let mut replica =
        BloomFilter::new(m, h, derive_seed(derive_seed(seed, "sketch"), "filter")).unwrap();
    let mut recorded = 0u64;
    let mut replayed = 0u64;
    let mut mean = 0.0f64;
    let mut var = 0.0f64;
    for &item in &stream {
        if oracle.count(item) != 1 {
            continue;
        }
        let p = (1.0 - (1.0 - 1.0 / m as f64).powf(h as f64 * recorded as f64))
            .powi(h as i32);
        mean += p;
        var += p * (1.0 - p);
        if replica.contains(item) {
            replayed += 1;
        } else {
            replica.add(item);
            recorded += 1;
        }
    }
    assert_eq!(
        replayed, observed,
        "filter replay diverged from the sketch's own pass count"
    );
    let sigma = var.sqrt();
    let flat_cap = singles as f64 * fpr + 3.0 * (singles as f64 * fpr * (1.0 - fpr)).sqrt();
    println!(
        "criterion 6: {observed} of {singles} singletons leaked; envelope {mean:.2} +- {:.2}, flat cap {flat_cap:.2}",
        3.0 * sigma
    );
    assert!(
        (observed as f64 - mean).abs() <= 3.0 * sigma,
        "leak count {observed} outside {mean:.2} +- {:.2}",
        3.0 * sigma
    );
    assert!(
        (observed as f64) <= flat_cap,
        "leak count {observed} above the flat cap {flat_cap:.2}"
    );

    let bound = (oracle.total() as f64 - singles as f64 * (1.0 - (1.0 + nu) * fpr))
        / k as f64;
    let worst = max_abs_error(&oracle, |it| sketch.query(it));
    println!("criterion 6: max additive error {worst} < adjusted bound {bound:.2}");
    assert!(
        (worst as f64) < bound,
        "max additive error {worst} not under the fpr-adjusted bound {bound:.2}"
    );
}

/// criterion 7: a stream opening with exactly k_hh heavy hitters and a
/// perfect heavy-hitter predictor. Every pinned entry reports its exact
/// frequency; every other error stays under (N - k_hh theta N)/(k - k_hh).
#[test]
fn criterion_07_perfect_hh_exactness() {
    let k = 100usize;
    let k_hh = 10usize;
    let theta = 0.01f64;
    let heavy_each = 2_500u64;
    let tail_ids = 3_000u64;
    let tail_each = 25u64;

    let mut stream: Vec<ItemId> = (0..k_hh as u64).map(ItemId).collect();
    let mut tail_cursor = 0u64;
    for _ in 0..heavy_each - 1 {
        for h in 0..k_hh as u64 {
            stream.push(ItemId(h));
        }
        for _ in 0..30 {
            stream.push(ItemId(1_000 + tail_cursor % tail_ids));
            tail_cursor += 1;
        }
    }
    // One trailing tail block keeps every tail id at exactly tail_each.
    for _ in 0..30 {
        stream.push(ItemId(1_000 + tail_cursor % tail_ids));
        tail_cursor += 1;
    }
    let n: u64 = stream.len() as u64;
    assert_eq!(n, k_hh as u64 * heavy_each + tail_ids * tail_each);
    let oracle = ExactOracle::from_stream(&stream);

    let mut predictions: HashMap<ItemId, f64> = HashMap::new();
    for h in 0..k_hh as u64 {
        predictions.insert(ItemId(h), heavy_each as f64);
    }
    let predictor = TablePredictor::new(predictions, tail_each as f64);

    let mut cfg = LssConfig::new(Variant::LssHh, k);
    cfg.k_hh = k_hh;
    let thresholds = PredictorThresholds {
        low_freq_t: 0,
        hh_count_threshold: theta * n as f64,
    };
    let mut sketch = LssSketch::new(cfg, Arc::new(predictor), thresholds).unwrap();
    for &item in &stream {
        sketch.add(item);
    }

    for h in 0..k_hh as u64 {
        let q = sketch.query(ItemId(h));
        assert_eq!(
            q, heavy_each,
            "pinned item {h} reports {q}, expected exactly {heavy_each}"
        );
    }
    let bound = (n as f64 - k_hh as f64 * theta * n as f64) / (k - k_hh) as f64;
    let mut worst = 0u64;
    for (&it, &f) in oracle.counts() {
        if it.0 < k_hh as u64 {
            continue;
        }
        let err = sketch.query(it) - f;
        worst = worst.max(err);
        assert!(
            (err as f64) < bound,
            "mutable item {it} error {err} reaches the bound {bound:.2}"
        );
    }
    println!(
        "criterion 7: pinned errors all zero; worst mutable error {worst} < {bound:.2}"
    );
}

/// criterion 8: the sampled filter gate in expectation. Over 1000 seeded
/// runs at sampling rate 1/2, each probe item's mean estimate stays inside
/// [f, f + N/k] within three standard errors, and the total filter-op
/// count matches the halved binomial within 3 sigma.
#[test]
fn criterion_08_sampled_expectation() {
    let master = 8u64;
    let runs = 1_000u32;
    let k = 128usize;
    let stream = gen_zipf(1.3, 2_000, 10_000, derive_seed(master, "trace")).unwrap();
    let oracle = ExactOracle::from_stream(&stream);
    let eps_n = stream.len() as f64 / k as f64;

    let spec = SimulatedPredictorSpec::new(4, 0.9, derive_seed(master, "predictor"));
    let predictor: Arc<dyn lss::predictor::Predictor> =
        Arc::new(SimulatedPredictor::new(spec, oracle.counts().clone()).unwrap());
    let thresholds = PredictorThresholds {
        low_freq_t: 4,
        hh_count_threshold: 500.0,
    };

    let build = |variant: Variant, tau_inv: u64, seed: u64| {
        let mut cfg = LssConfig::new(variant, k);
        cfg.t = 4;
        cfg.k_hh = 12;
        cfg.filter_bits = 4_096;
        cfg.tau_inv = tau_inv;
        cfg.seed = seed;
        LssSketch::new(cfg, Arc::clone(&predictor), thresholds).unwrap()
    };

    let mut baseline = build(Variant::Lss, 1, derive_seed(master, "baseline"));
    for &item in &stream {
        baseline.add(item);
    }
    let base_ops = baseline.filter_probes();

    // Probe panel: twenty items spread from the head of the distribution
    // into the tail, picked by rank quantile.
    let by_rank = oracle.top_k(oracle.distinct() as usize);
    let panel: Vec<ItemId> = (0..20)
        .map(|i| by_rank[i * (by_rank.len() - 1) / 19])
        .collect();

    let mut sum = vec![0.0f64; panel.len()];
    let mut sum_sq = vec![0.0f64; panel.len()];
    let mut total_ops = 0u64;
    for r in 0..runs {
        let tag = format!("run-{r}");
        let mut sketch = build(Variant::LssPlus, 2, derive_seed(master, &tag));
        for &item in &stream {
            sketch.add(item);
        }
        total_ops += sketch.filter_probes();
        for (i, &it) in panel.iter().enumerate() {
            let q = sketch.query(it) as f64;
            sum[i] += q;
            sum_sq[i] += q * q;
        }
    }

    for (i, &it) in panel.iter().enumerate() {
        let f = oracle.count(it) as f64;
        let mean = sum[i] / runs as f64;
        let var = (sum_sq[i] / runs as f64 - mean * mean).max(0.0);
        let se = (var / runs as f64).sqrt();
        assert!(
            mean >= f - 3.0 * se,
            "item {it}: mean {mean:.2} below f {f} minus 3se {:.2}",
            3.0 * se
        );
        assert!(
            mean <= f + eps_n + 3.0 * se,
            "item {it}: mean {mean:.2} above f {f} + N/k {eps_n:.1} + 3se {:.2}",
            3.0 * se
        );
    }

    let expected = 0.5 * (runs as u64 * base_ops) as f64;
    let sigma = ((runs as u64 * base_ops) as f64 * 0.25).sqrt();
    println!(
        "criterion 8: filter ops {total_ops} vs expected {expected:.0} +- {:.0}; \
         panel means within [f, f + {eps_n:.1}]",
        3.0 * sigma
    );
    assert!(
        (total_ops as f64 - expected).abs() <= 3.0 * sigma,
        "filter ops {total_ops} outside {expected:.0} +- {:.0}",
        3.0 * sigma
    );
}

/// criterion 9: sampling at rate 1 is not merely close to the unsampled
/// sketch, it is the same sketch: identical table, filter, and counters on
/// 100 randomized streams.
#[test]
fn criterion_09_tau_one_reduction() {
    for s in 0..100u64 {
        let tag = format!("stream-{s}");
        let seed = derive_seed(9, &tag);
        let stream = gen_zipf(1.1, 500, 2_000, derive_seed(seed, "trace")).unwrap();
        let oracle = ExactOracle::from_stream(&stream);
        let spec = SimulatedPredictorSpec::new(4, 0.85, derive_seed(seed, "predictor"));
        let predictor: Arc<dyn lss::predictor::Predictor> =
            Arc::new(SimulatedPredictor::new(spec, oracle.counts().clone()).unwrap());
        let thresholds = PredictorThresholds {
            low_freq_t: 4,
            hh_count_threshold: 200.0,
        };

        let build = |variant: Variant, tau_inv: u64| {
            let mut cfg = LssConfig::new(variant, 32);
            cfg.t = 4;
            cfg.k_hh = 3;
            cfg.filter_bits = 1_024;
            cfg.tau_inv = tau_inv;
            cfg.seed = derive_seed(seed, "sketch");
            LssSketch::new(cfg, Arc::clone(&predictor), thresholds).unwrap()
        };
        let mut plain = build(Variant::Lss, 1);
        let mut sampled = build(Variant::LssPlus, 1);
        for &item in &stream {
            plain.add(item);
            sampled.add(item);
        }
        assert!(
            sampled.state_eq(&plain),
            "stream {s}: rate-1 sampling diverged from the unsampled sketch"
        );
    }
    println!("criterion 9: 100 streams, rate-1 sampling state-identical");
}

/// Shared configuration for the trend criteria: Zipf(1.3) at a million
/// arrivals, simulated predictions, 90/10 table/filter split, t = 4.
fn trend_base(n: u64, memory_bits: u64, top_k: usize) -> ExperimentConfig {
    let mut base = ExperimentConfig::baseline();
    base.trace = TraceSource::Zipf { alpha: 1.3, n, len: 1_000_000 };
    base.memory_bits = memory_bits;
    base.top_k = top_k;
    base.window = 100_000;
    base
}

/// criterion 10a, ordering half: learned filtering never costs top-k
/// precision at honest (p=0.9) or perfect (p=1.0) predictions.
#[test]
fn criterion_10a_precision_ordering() {
    let base = trend_base(100_000, 131_072, 1_024);
    let p_ss = run_experiment(&variant_config(&base, Variant::Ss))
        .unwrap()
        .precision_topk;
    for p in [0.9f64, 1.0] {
        let mut cfg = variant_config(&base, Variant::Lss);
        if let lss::evaluation::experiment::PredictorSpec::Simulated { p: sim_p, .. } =
            &mut cfg.predictor
        {
            *sim_p = p;
        }
        let p_lss = run_experiment(&cfg).unwrap().precision_topk;
        println!("criterion 10a: p={p} precision lss {p_lss:.5} vs ss {p_ss:.5}");
        assert!(
            p_lss >= p_ss,
            "at p={p}, lss precision {p_lss:.5} fell below ss {p_ss:.5}"
        );
    }
}

/// criterion 10a, gap half: at perfect predictions the precision lift is
/// supposed to reach 1.2x the unassisted sketch. The measured frontier
/// tops out near 1.01x: with alpha = 1.3 the mass sitting at or below
/// t = 4 occurrences is about 6% of arrivals, so a 10% budget slice spent
/// on the filter can never buy a 20% relative precision gain at any
/// universe, budget, or report size in the calibration grid. The assert
/// states the target faithfully and fails with the measured numbers.
#[test]
fn criterion_10a_precision_gap() {
    let base = trend_base(100_000, 131_072, 1_024);
    let p_ss = run_experiment(&variant_config(&base, Variant::Ss))
        .unwrap()
        .precision_topk;
    let mut cfg = variant_config(&base, Variant::Lss);
    if let lss::evaluation::experiment::PredictorSpec::Simulated { p: sim_p, .. } =
        &mut cfg.predictor
    {
        *sim_p = 1.0;
    }
    let p_lss = run_experiment(&cfg).unwrap().precision_topk;
    println!(
        "criterion 10a gap: lss {p_lss:.5} vs 1.2x ss = {:.5} (ratio {:.4})",
        1.2 * p_ss,
        p_lss / p_ss
    );
    assert!(
        p_lss >= 1.2 * p_ss,
        "precision gap unattained: lss {p_lss:.5} vs required {:.5} (ratio {:.4}, best \
         achievable near 1.01 at this skew; see the calibration note in the gap test's doc)",
        1.2 * p_ss,
        p_lss / p_ss
    );
}

/// criterion 10b: growing the pinned-slot share raises heavy-hitter
/// recall (one non-monotone step allowed) and never raises precision.
#[test]
fn criterion_10b_recall_vs_pins() {
    let mut base = variant_config(&trend_base(10_000, 16_384, 128), Variant::Lss);
    let ratios = [0.0f64, 0.05, 0.10, 0.20];
    let mut recalls = Vec::new();
    let mut precisions = Vec::new();
    for &r in &ratios {
        base.fixed_ratio = r;
        let report = run_experiment(&base).unwrap();
        println!(
            "criterion 10b: fixed_ratio {r}: recall {:.5}, precision {:.5}",
            report.recall_hh, report.precision_topk
        );
        recalls.push(report.recall_hh);
        precisions.push(report.precision_topk);
    }
    let drops = recalls
        .windows(2)
        .filter(|w| w[1] < w[0])
        .count();
    assert!(
        drops <= 1,
        "recall fell more than once across {ratios:?}: {recalls:?}"
    );
    for w in precisions.windows(2) {
        assert!(
            w[1] <= w[0],
            "precision increased with more pinned slots: {precisions:?}"
        );
    }
}

/// criterion 10c: doubling memory lowers RMSE at every step for every
/// variant.
#[test]
fn criterion_10c_rmse_vs_memory() {
    let budgets = [16_384u64, 32_768, 65_536, 131_072, 262_144, 524_288];
    for variant in Variant::ALL {
        let mut last = f64::INFINITY;
        for &bits in &budgets {
            let base = variant_config(&trend_base(10_000, bits, 128), variant);
            let report = run_experiment(&base).unwrap();
            assert!(
                report.rmse < last,
                "{variant}: rmse {:.3} at {bits} bits did not improve on {last:.3}",
                report.rmse
            );
            last = report.rmse;
        }
        println!("criterion 10c: {variant} rmse strictly decreasing, ending at {last:.3}");
    }
}

/// criterion 11: the metric formulas against hand-computed values.
#[test]
fn criterion_11_metric_formulas() {
    let a = ItemId(1);
    let b = ItemId(2);
    let c = ItemId(3);
    let d = ItemId(4);

    // Truth a:3, b:5; estimates 4 and 5 -> rmse = sqrt((1+0)/2).
    let mut oracle = ExactOracle::new();
    for _ in 0..3 {
        oracle.observe(a);
    }
    for _ in 0..5 {
        oracle.observe(b);
    }
    let est: HashMap<ItemId, u64> = [(a, 4u64), (b, 5)].into_iter().collect();
    let r = rmse(&oracle, |it| est[&it]).unwrap();
    assert!((r - 0.5f64.sqrt()).abs() < 1e-12, "rmse {r} != sqrt(0.5)");

    let worst = max_abs_error(&oracle, |it| est[&it]);
    assert_eq!(worst, 1);

    assert_eq!(precision_topk(&[a, b, c, d], &[a, b]), 0.5);
    assert_eq!(precision_topk(&[], &[a]), 0.0);
    assert_eq!(recall_hh(&[a], &[a, b]), 0.5);
    assert_eq!(recall_hh(&[a, b], &[a, b]), 1.0);
    assert_eq!(recall_hh(&[], &[]), 1.0);
    println!("criterion 11: rmse, precision, and recall match hand values exactly");
}
