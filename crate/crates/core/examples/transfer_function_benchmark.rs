//! Compare the six transfer functions over 20 seeded splits.
//!
//! Run with `cargo run --release --example transfer_function_benchmark [path/to.csv]`.
//! Without a path the benchmark runs on synthetic data, so the numbers say
//! nothing about the real survey.

use diabetes_elm::data::{self, synthetic};
use diabetes_elm::metrics::benchmark_transfer_functions;
use diabetes_elm::ElmConfig;

fn main() -> diabetes_elm::Result<()> {
    let records = match std::env::args().nth(1) {
        Some(path) => data::parse_csv(std::fs::File::open(path)?)?,
        None => {
            eprintln!("no CSV given, using 520 synthetic records");
            synthetic::generate(520, 1)
        }
    };
    let seeds: Vec<u64> = (0..20).collect();
    let table = benchmark_transfer_functions(&records, ElmConfig::default(), &seeds)?;
    print!("{table}");
    let best = table.ranking()[0];
    let row = table.row(best);
    println!(
        "best: {best}, mean false positives {:.2}, mean false negatives {:.2}",
        row.mean_false_positives(),
        row.mean_false_negatives()
    );
    Ok(())
}
