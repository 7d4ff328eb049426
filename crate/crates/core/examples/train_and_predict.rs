//! Train on a split, score the held-out part and classify a new record.
//!
//! Run with `cargo run --example train_and_predict [path/to.csv]`.

use diabetes_elm::data::{self, split_dataset, synthetic, Gender, QuestionnaireRecord, Symptom};
use diabetes_elm::metrics::report;
use diabetes_elm::{pipeline, ElmConfig};

fn main() -> diabetes_elm::Result<()> {
    let records = match std::env::args().nth(1) {
        Some(path) => data::parse_csv(std::fs::File::open(path)?)?,
        None => synthetic::generate(520, 7),
    };
    let split = split_dataset(&records, 7, true)?;
    let model = pipeline::train(&split.train, ElmConfig { seed: 7, ..ElmConfig::default() })?;

    let cm = pipeline::evaluate(&model, &split.test)?;
    let r = report(&cm, model.train_time().unwrap_or_default());
    println!("{cm}");
    println!(
        "precision {:.4}  recall {:.4}  f1 {:.4}  accuracy {:.4}  fit {:.4} s",
        r.precision, r.recall, r.f1, r.accuracy, r.train_time_s
    );

    let mut symptoms = [false; 14];
    symptoms[Symptom::Polyuria.index()] = true;
    symptoms[Symptom::Polydipsia.index()] = true;
    let patient = QuestionnaireRecord {
        age: 52,
        gender: Gender::Male,
        symptoms,
        label: None,
    };
    let p = pipeline::predict(&model, &[patient])?[0];
    println!("new record: {} (raw score {:.4}); a screening aid, not a diagnosis", p.label, p.raw_score);
    Ok(())
}
