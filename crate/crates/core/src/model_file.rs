//! Versioned JSON persistence for fitted models.
//!
//! Weights are written as JSON numbers in shortest round-trip form and read
//! back with exact float parsing, so `load(save(m))` reproduces every weight
//! bit for bit.

use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::data::NormalizerStats;
use crate::elm::{ElmConfig, ElmModel};
use crate::error::{ElmError, Result};
use crate::numerics::Matrix;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub format_version: u32,
    /// Seconds since the Unix epoch.
    pub created_unix_s: u64,
    pub config: ElmConfig,
    pub normalizer: Option<NormalizerStats>,
    pub input_weights: Matrix,
    pub biases: Vec<f64>,
    pub centers: Matrix,
    pub output_weights: Matrix,
}

impl ModelFile {
    pub fn from_model(model: &ElmModel) -> Result<ModelFile> {
        let beta = model.output_weights().ok_or(ElmError::NotFitted)?;
        let created_unix_s = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        Ok(ModelFile {
            format_version: FORMAT_VERSION,
            created_unix_s,
            config: *model.config(),
            normalizer: model.normalizer().copied(),
            input_weights: model.input_weights().clone(),
            biases: model.biases().to_vec(),
            centers: model.centers().clone(),
            output_weights: beta.clone(),
        })
    }

    pub fn into_model(self) -> Result<ElmModel> {
        if self.format_version != FORMAT_VERSION {
            return Err(ElmError::ModelFormat(format!(
                "unsupported format_version {} (expected {FORMAT_VERSION})",
                self.format_version
            )));
        }
        ElmModel::from_parts(
            self.config,
            self.input_weights,
            self.biases,
            self.centers,
            Some(self.output_weights),
            self.normalizer,
        )
        .map_err(|e| ElmError::ModelFormat(e.to_string()))
    }
}

pub fn to_json(model: &ElmModel) -> Result<String> {
    Ok(serde_json::to_string_pretty(&ModelFile::from_model(model)?)?)
}

pub fn from_json(text: &str) -> Result<ElmModel> {
    let file: ModelFile =
        serde_json::from_str(text).map_err(|e| ElmError::ModelFormat(e.to_string()))?;
    file.into_model()
}

pub fn save_model(model: &ElmModel, path: impl AsRef<Path>) -> Result<()> {
    let mut text = to_json(model)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn load_model(path: impl AsRef<Path>) -> Result<ElmModel> {
    from_json(&fs::read_to_string(path)?)
}
