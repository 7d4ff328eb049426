//! Seeded synthetic questionnaire records.
//!
//! Useful for demos, tests and timing when the real survey file is not at
//! hand. Symptoms are drawn independently given the class, with rates picked
//! so that polyuria, polydipsia and partial paresis are strong markers and
//! itching or delayed healing carry almost no signal. Results obtained on
//! these records say nothing about the real survey data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Gender, Label, QuestionnaireRecord, SYMPTOM_COUNT};

/// Fraction of positive records.
pub const POSITIVE_RATE: f64 = 0.615;

/// P(symptom = yes | diabetes), P(symptom = yes | normal), in symptom order.
const SYMPTOM_RATES: [(f64, f64); SYMPTOM_COUNT] = [
    (0.76, 0.08),
    (0.70, 0.04),
    (0.59, 0.15),
    (0.68, 0.44),
    (0.59, 0.24),
    (0.26, 0.17),
    (0.55, 0.29),
    (0.48, 0.50),
    (0.34, 0.08),
    (0.48, 0.43),
    (0.60, 0.16),
    (0.42, 0.30),
    (0.24, 0.51),
    (0.19, 0.14),
];

const MALE_RATE: (f64, f64) = (0.46, 0.90);

/// Generates `n` labelled records deterministically from `seed`.
pub fn generate(n: usize, seed: u64) -> Vec<QuestionnaireRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| sample(&mut rng)).collect()
}

fn sample(rng: &mut ChaCha8Rng) -> QuestionnaireRecord {
    let positive = rng.gen_bool(POSITIVE_RATE);
    let pick = |(pos, neg): (f64, f64)| if positive { pos } else { neg };
    let age = if positive {
        rng.gen_range(25..=70)
    } else {
        rng.gen_range(20..=65)
    };
    let gender = if rng.gen_bool(pick(MALE_RATE)) {
        Gender::Male
    } else {
        Gender::Female
    };
    let mut symptoms = [false; SYMPTOM_COUNT];
    for (s, &rates) in symptoms.iter_mut().zip(&SYMPTOM_RATES) {
        *s = rng.gen_bool(pick(rates));
    }
    QuestionnaireRecord {
        age,
        gender,
        symptoms,
        label: Some(if positive { Label::Diabetes } else { Label::Normal }),
    }
}
