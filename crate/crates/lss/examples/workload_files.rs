//! Trace generation and the on-disk trace format.
//!
//! Generates a Zipf trace, writes it as one token per line, reads it back
//! through an interner, and prints the workload's shape. Same seed, same
//! trace, byte for byte; that determinism is what makes every experiment
//! in this crate reproducible from a config file alone.

use std::env::temp_dir;

use lss::evaluation::oracle::ExactOracle;
use lss::evaluation::trace::{read_trace, write_trace};
use lss::evaluation::zipf::gen_zipf;
use lss::ItemInterner;

fn main() -> lss::Result<()> {
    let path = temp_dir().join("lss_example_trace.txt");

    let stream = gen_zipf(1.1, 2_000, 50_000, 7)?;
    write_trace(&path, &stream)?;

    let mut interner = ItemInterner::new();
    let restored = read_trace(&path, &mut interner)?;
    assert_eq!(stream.len(), restored.len());

    let oracle = ExactOracle::from_stream(&restored);
    println!("trace file: {}", path.display());
    println!("arrivals:   {}", oracle.total());
    println!("distinct:   {}", oracle.distinct());
    println!("singletons: {}", oracle.singletons());
    println!("<= 4 occurrences: {}", oracle.low_frequency_items(4));

    println!("top 5 items:");
    for item in oracle.top_k(5) {
        let share = oracle.count(item) as f64 / oracle.total() as f64;
        println!("  {item}: {} ({:.1}%)", oracle.count(item), share * 100.0);
    }

    // Regenerating with the same seed reproduces the stream exactly.
    let again = gen_zipf(1.1, 2_000, 50_000, 7)?;
    assert_eq!(stream, again);
    println!("regeneration with seed 7 is identical: ok");

    std::fs::remove_file(&path).ok();
    Ok(())
}
