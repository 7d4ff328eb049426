//! Save a trained model as JSON and load it back with bit-identical scores.
//!
//! Run with `cargo run --example model_persistence`.

use diabetes_elm::data::synthetic;
use diabetes_elm::{model_file, pipeline, ElmConfig};

fn main() -> diabetes_elm::Result<()> {
    let records = synthetic::generate(300, 2);
    let model = pipeline::train(&records, ElmConfig { seed: 2, ..ElmConfig::default() })?;

    let path = std::env::temp_dir().join("diabetes-elm-example-model.json");
    model_file::save_model(&model, &path)?;
    let bytes = std::fs::metadata(&path)?.len();
    let loaded = model_file::load_model(&path)?;

    let before = pipeline::predict(&model, &records)?;
    let after = pipeline::predict(&loaded, &records)?;
    let identical = before.iter().zip(&after).all(|(a, b)| a.raw_score.to_bits() == b.raw_score.to_bits());
    println!("wrote {} ({bytes} bytes)", path.display());
    println!("{} scores identical after reload: {identical}", before.len());
    std::fs::remove_file(&path)?;
    Ok(())
}
