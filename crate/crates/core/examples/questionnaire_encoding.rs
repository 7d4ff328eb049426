//! Parsing questionnaire CSV, encoding answers into 16 features and making
//! the stratified 70/10/20 split.
//!
//! Run with `cargo run --example questionnaire_encoding [path/to.csv]`.
//! Without a path a small synthetic sample is used.

use diabetes_elm::data::{self, split_dataset, synthetic, FEATURE_KEYS};

fn main() -> diabetes_elm::Result<()> {
    let records = match std::env::args().nth(1) {
        Some(path) => data::parse_csv(std::fs::File::open(path)?)?,
        None => data::parse_csv_str(&data::write_csv(&synthetic::generate(60, 3)))?,
    };
    println!("{} records", records.len());

    let split = split_dataset(&records, 0, true)?;
    let (tr, va, te) = split.sizes();
    println!("train/validation/test = {tr}/{va}/{te}");

    // age scaling statistics come from the training part only
    let stats = data::fit_normalizer(&split.train)?;
    println!("training ages span {}..={}", stats.age_min, stats.age_max);

    let first = &split.test[0];
    println!("first test record: {first:?}");
    for (key, value) in FEATURE_KEYS.iter().zip(data::encode_features(first, &stats)) {
        println!("  {key:<20} {value:.3}");
    }
    Ok(())
}
