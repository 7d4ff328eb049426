//! Questionnaire-level training and prediction built on [`ElmModel`].

use crate::data::{class_labels, encode_matrix, fit_normalizer, Label, QuestionnaireRecord, FEATURE_COUNT};
use crate::elm::{threshold, ElmConfig, ElmModel};
use crate::error::{ElmError, Result};
use crate::metrics::{confusion, ConfusionMatrix};

/// Fits the age normalizer on `train`, then draws and fits an ELM on the
/// encoded records. The returned model carries the normalizer.
pub fn train(train: &[QuestionnaireRecord], config: ElmConfig) -> Result<ElmModel> {
    if train.is_empty() {
        return Err(ElmError::NoRecords);
    }
    let stats = fit_normalizer(train)?;
    let x = encode_matrix(train, &stats)?;
    let labels = class_labels(train)?;
    let model = ElmModel::init_random(config, FEATURE_COUNT, &x)?.fit(&x, &labels)?;
    Ok(model.with_normalizer(stats))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Prediction {
    pub label: Label,
    pub raw_score: f64,
}

/// Scores questionnaire records with a model that carries its normalizer.
pub fn predict(model: &ElmModel, records: &[QuestionnaireRecord]) -> Result<Vec<Prediction>> {
    let stats = model
        .normalizer()
        .ok_or_else(|| ElmError::ModelFormat("model has no age normalizer".into()))?;
    if model.feature_dim() != FEATURE_COUNT {
        return Err(ElmError::DimensionMismatch {
            expected: model.feature_dim(),
            found: FEATURE_COUNT,
        });
    }
    let x = encode_matrix(records, stats)?;
    Ok(model
        .predict_scores(&x)?
        .into_iter()
        .map(|raw_score| Prediction {
            label: Label::from_class(threshold(raw_score)),
            raw_score,
        })
        .collect())
}

/// Confusion matrix of `model` on labelled `records`.
pub fn evaluate(model: &ElmModel, records: &[QuestionnaireRecord]) -> Result<ConfusionMatrix> {
    if records.is_empty() {
        return Err(ElmError::NoRecords);
    }
    let actual = class_labels(records)?;
    let predicted: Vec<u8> = predict(model, records)?.iter().map(|p| p.label.class()).collect();
    confusion(&predicted, &actual)
}
