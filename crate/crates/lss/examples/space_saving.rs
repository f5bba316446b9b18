//! Plain Space Saving over a skewed stream.
//!
//! Builds a 256-slot table, feeds it 100k Zipf arrivals, and compares the
//! top estimates against exact counts. The final line checks the classic
//! guarantee: estimates never undercount, and the worst overestimate is
//! capped by the smallest counter in the table.

use lss::evaluation::oracle::ExactOracle;
use lss::evaluation::zipf::gen_zipf;
use lss::SpaceSavingTable;

fn main() -> lss::Result<()> {
    let stream = gen_zipf(1.2, 5_000, 100_000, 42)?;
    let oracle = ExactOracle::from_stream(&stream);

    let mut table = SpaceSavingTable::new(256, 0)?;
    for &item in &stream {
        table.insert(item, false, 1);
    }

    println!(
        "stream: {} arrivals, {} distinct; table: {}/{} slots, min count {}",
        oracle.total(),
        oracle.distinct(),
        table.len(),
        table.capacity(),
        table.min_count(),
    );
    println!();
    println!("{:>8} {:>10} {:>10} {:>8}", "item", "estimate", "exact", "excess");
    for entry in table.top_k(10) {
        let exact = oracle.count(entry.item);
        println!(
            "{:>8} {:>10} {:>10} {:>8}",
            entry.item,
            entry.count,
            exact,
            entry.count - exact
        );
    }

    let worst = oracle
        .items()
        .map(|it| table.query(it) - oracle.count(it))
        .max()
        .unwrap_or(0);
    println!();
    println!(
        "worst overestimate across all {} items: {} (<= min count {})",
        oracle.distinct(),
        worst,
        table.min_count()
    );
    Ok(())
}
