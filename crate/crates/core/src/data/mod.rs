//! Questionnaire records: CSV ingestion, feature encoding, age normalization
//! and the seeded 70/10/20 train/validation/test split.

mod split;
pub mod synthetic;

use std::fmt;
use std::io::Read;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ElmError, Result};
use crate::numerics::Matrix;

pub use split::{split_dataset, DatasetSplit, SPLIT_RATIOS};

/// Number of encoded features per record.
pub const FEATURE_COUNT: usize = 16;

/// Lower-snake-case feature keys, in questionnaire order.
pub const FEATURE_KEYS: [&str; FEATURE_COUNT] = [
    "age",
    "gender",
    "polyuria",
    "polydipsia",
    "sudden_weight_loss",
    "weakness",
    "polyphagia",
    "genital_thrush",
    "visual_blurring",
    "itching",
    "irritability",
    "delayed_healing",
    "partial_paresis",
    "muscle_stiffness",
    "alopecia",
    "obesity",
];

/// Human-readable attribute names, in questionnaire order.
pub const FEATURE_LABELS: [&str; FEATURE_COUNT] = [
    "Age",
    "Gender",
    "Polyuria",
    "Polydipsia",
    "Sudden weight loss",
    "Weakness",
    "Polyphagia",
    "Genital thrush",
    "Visual blurring",
    "Itching",
    "Irritability",
    "Delayed healing",
    "Partial paresis",
    "Muscle stiffness",
    "Alopecia",
    "Obesity",
];

pub const SYMPTOM_COUNT: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symptom {
    Polyuria,
    Polydipsia,
    SuddenWeightLoss,
    Weakness,
    Polyphagia,
    GenitalThrush,
    VisualBlurring,
    Itching,
    Irritability,
    DelayedHealing,
    PartialParesis,
    MuscleStiffness,
    Alopecia,
    Obesity,
}

impl Symptom {
    pub const ALL: [Symptom; SYMPTOM_COUNT] = [
        Symptom::Polyuria,
        Symptom::Polydipsia,
        Symptom::SuddenWeightLoss,
        Symptom::Weakness,
        Symptom::Polyphagia,
        Symptom::GenitalThrush,
        Symptom::VisualBlurring,
        Symptom::Itching,
        Symptom::Irritability,
        Symptom::DelayedHealing,
        Symptom::PartialParesis,
        Symptom::MuscleStiffness,
        Symptom::Alopecia,
        Symptom::Obesity,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn key(self) -> &'static str {
        FEATURE_KEYS[2 + self.index()]
    }

    pub fn label(self) -> &'static str {
        FEATURE_LABELS[2 + self.index()]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gender {
    Male,
    Female,
}

impl FromStr for Gender {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s.trim().to_ascii_lowercase().as_str() {
            "male" => Ok(Gender::Male),
            "female" => Ok(Gender::Female),
            _ => Err(()),
        }
    }
}

/// Screening class; `Diabetes` encodes as 1 and `Normal` as 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    Normal,
    Diabetes,
}

impl Label {
    pub fn class(self) -> u8 {
        match self {
            Label::Normal => 0,
            Label::Diabetes => 1,
        }
    }

    pub fn from_class(class: u8) -> Label {
        if class == 1 {
            Label::Diabetes
        } else {
            Label::Normal
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Diabetes => "Diabetes",
            Label::Normal => "Normal",
        })
    }
}

impl FromStr for Label {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s.trim().to_ascii_lowercase().as_str() {
            "diabetes" | "diabeties" | "positive" => Ok(Label::Diabetes),
            "normal" | "negative" => Ok(Label::Normal),
            _ => Err(()),
        }
    }
}

/// One respondent's answers, optionally labelled.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuestionnaireRecord {
    pub age: u32,
    pub gender: Gender,
    /// Indexed by [`Symptom::index`].
    pub symptoms: [bool; SYMPTOM_COUNT],
    pub label: Option<Label>,
}

impl QuestionnaireRecord {
    pub fn symptom(&self, s: Symptom) -> bool {
        self.symptoms[s.index()]
    }
}

fn parse_yes_no(s: &str) -> Option<bool> {
    match s.trim().to_ascii_lowercase().as_str() {
        "yes" => Some(true),
        "no" => Some(false),
        _ => None,
    }
}

/// Column-name normalization: case, whitespace, `_` and `-` are ignored.
fn normalize_header(name: &str) -> String {
    name.chars()
        .filter(|c| !c.is_whitespace() && *c != '_' && *c != '-')
        .flat_map(char::to_lowercase)
        .collect()
}

#[derive(Clone, Copy, PartialEq)]
enum Column {
    Feature(usize),
    Class,
}

fn column_for(header: &str) -> Option<Column> {
    let norm = normalize_header(header);
    if norm == "class" {
        return Some(Column::Class);
    }
    FEATURE_KEYS
        .iter()
        .position(|k| normalize_header(k) == norm)
        .map(Column::Feature)
}

/// Parses questionnaire CSV text with a header line.
///
/// Columns are matched by name and may appear in any order; the class column
/// is optional and an empty class cell yields an unlabelled record. Row numbers
/// in errors are 1-based file lines, so the first data row is row 2.
pub fn parse_csv<R: Read>(input: R) -> Result<Vec<QuestionnaireRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(input);

    let headers = reader.headers()?.clone();
    let mut layout: Vec<Column> = Vec::with_capacity(headers.len());
    for h in headers.iter() {
        let col = column_for(h).ok_or_else(|| ElmError::UnknownColumn(h.to_string()))?;
        if layout.contains(&col) {
            return Err(ElmError::DuplicateColumn(h.to_string()));
        }
        layout.push(col);
    }
    for (i, label) in FEATURE_LABELS.iter().enumerate() {
        if !layout.contains(&Column::Feature(i)) {
            return Err(ElmError::MissingColumn(label.to_string()));
        }
    }

    let mut records = Vec::new();
    for row in reader.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        let mut age = None;
        let mut gender = None;
        let mut symptoms = [false; SYMPTOM_COUNT];
        let mut label = None;
        for (cell, (&col, header)) in row.iter().zip(layout.iter().zip(headers.iter())) {
            let bad = || ElmError::InvalidCell {
                row: line,
                column: header.to_string(),
                value: cell.to_string(),
            };
            match col {
                Column::Feature(0) => {
                    age = Some(cell.parse::<u32>().map_err(|_| ElmError::InvalidAge {
                        row: line,
                        value: cell.to_string(),
                    })?)
                }
                Column::Feature(1) => gender = Some(cell.parse::<Gender>().map_err(|_| bad())?),
                Column::Feature(i) => symptoms[i - 2] = parse_yes_no(cell).ok_or_else(bad)?,
                Column::Class if cell.is_empty() => {}
                Column::Class => label = Some(cell.parse::<Label>().map_err(|_| bad())?),
            }
        }
        records.push(QuestionnaireRecord {
            // csv rejects rows whose width differs from the header
            age: age.expect("age column present"),
            gender: gender.expect("gender column present"),
            symptoms,
            label,
        });
    }
    Ok(records)
}

pub fn parse_csv_str(text: &str) -> Result<Vec<QuestionnaireRecord>> {
    parse_csv(text.as_bytes())
}

/// Renders records as CSV with the conventional header and Yes/No cells.
pub fn write_csv(records: &[QuestionnaireRecord]) -> String {
    let mut out = FEATURE_LABELS.join(",");
    out.push_str(",class\n");
    for r in records {
        out.push_str(&r.age.to_string());
        out.push(',');
        out.push_str(match r.gender {
            Gender::Male => "Male",
            Gender::Female => "Female",
        });
        for &s in &r.symptoms {
            out.push_str(if s { ",Yes" } else { ",No" });
        }
        out.push(',');
        match r.label {
            Some(Label::Diabetes) => out.push_str("Positive"),
            Some(Label::Normal) => out.push_str("Negative"),
            None => {}
        }
        out.push('\n');
    }
    out
}

/// Min-max statistics for the age feature, taken from the training split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizerStats {
    pub age_min: u32,
    pub age_max: u32,
}

impl NormalizerStats {
    pub fn new(age_min: u32, age_max: u32) -> Result<Self> {
        if age_min > age_max {
            return Err(ElmError::InvalidConfig(format!(
                "age_min {age_min} exceeds age_max {age_max}"
            )));
        }
        Ok(NormalizerStats { age_min, age_max })
    }

    /// Maps an age into [0, 1]; out-of-range ages are clamped and a
    /// degenerate range maps everything to 0.5.
    pub fn scale_age(&self, age: u32) -> f64 {
        if self.age_max == self.age_min {
            return 0.5;
        }
        let span = f64::from(self.age_max - self.age_min);
        ((f64::from(age) - f64::from(self.age_min)) / span).clamp(0.0, 1.0)
    }
}

pub fn fit_normalizer(train: &[QuestionnaireRecord]) -> Result<NormalizerStats> {
    let min = train.iter().map(|r| r.age).min().ok_or(ElmError::EmptyTrainingSet)?;
    let max = train.iter().map(|r| r.age).max().ok_or(ElmError::EmptyTrainingSet)?;
    NormalizerStats::new(min, max)
}

/// Encodes one record: scaled age, gender (Male = 1), then the 14 symptoms as 0/1.
pub fn encode_features(r: &QuestionnaireRecord, stats: &NormalizerStats) -> [f64; FEATURE_COUNT] {
    let mut f = [0.0; FEATURE_COUNT];
    f[0] = stats.scale_age(r.age);
    f[1] = match r.gender {
        Gender::Male => 1.0,
        Gender::Female => 0.0,
    };
    for (slot, &s) in f[2..].iter_mut().zip(&r.symptoms) {
        *slot = if s { 1.0 } else { 0.0 };
    }
    f
}

/// Stacks encoded records into an `N x 16` matrix.
pub fn encode_matrix(records: &[QuestionnaireRecord], stats: &NormalizerStats) -> Result<Matrix> {
    if records.is_empty() {
        return Err(ElmError::NoRecords);
    }
    let data = records
        .iter()
        .flat_map(|r| encode_features(r, stats))
        .collect();
    Matrix::new(records.len(), FEATURE_COUNT, data)
}

/// 0/1 class vector; fails when any record is unlabelled.
pub fn class_labels(records: &[QuestionnaireRecord]) -> Result<Vec<u8>> {
    records
        .iter()
        .map(|r| r.label.map(Label::class).ok_or(ElmError::LabelsRequired))
        .collect()
}
