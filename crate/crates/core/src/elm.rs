//! Single-hidden-layer extreme learning machine.
//!
//! Hidden weights, biases and RBF centers are drawn once from a seeded
//! generator and never trained. Only the output weights are fitted, in closed
//! form, as the minimum-norm least-squares solution of `Hβ = t` where `H` is
//! the hidden-layer output matrix. A sample's raw score is `Σ βᵢ hᵢ(x)`.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::data::NormalizerStats;
use crate::error::{ElmError, Result};
use crate::numerics::{self, Matrix};

/// Raw scores at or above this value are classified as 1.
pub const DECISION_THRESHOLD: f64 = 0.5;

/// Hidden-node transfer functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActivationKind {
    /// `1` if `r >= 0`, else `0`.
    HardLim,
    Tanh,
    Sine,
    /// Triangular basis `max(0, 1 - |r|)`.
    TriBas,
    /// `exp(-r²)`.
    Gaussian,
    /// `sqrt(1 + r²)`.
    MultiQuadric,
}

impl ActivationKind {
    pub const ALL: [ActivationKind; 6] = [
        ActivationKind::HardLim,
        ActivationKind::Tanh,
        ActivationKind::Sine,
        ActivationKind::TriBas,
        ActivationKind::Gaussian,
        ActivationKind::MultiQuadric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ActivationKind::HardLim => "hardlim",
            ActivationKind::Tanh => "tanh",
            ActivationKind::Sine => "sine",
            ActivationKind::TriBas => "tribas",
            ActivationKind::Gaussian => "gaussian",
            ActivationKind::MultiQuadric => "multiquadric",
        }
    }

    #[inline]
    pub fn apply(self, r: f64) -> f64 {
        match self {
            ActivationKind::HardLim => {
                if r >= 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            ActivationKind::Tanh => r.tanh(),
            ActivationKind::Sine => r.sin(),
            ActivationKind::TriBas => (1.0 - r.abs()).max(0.0),
            ActivationKind::Gaussian => (-r * r).exp(),
            ActivationKind::MultiQuadric => r.hypot(1.0),
        }
    }
}

pub fn apply_activation(kind: ActivationKind, r: f64) -> f64 {
    kind.apply(r)
}

impl fmt::Display for ActivationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ActivationKind {
    type Err = ElmError;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace(['_', '-'], "");
        match norm.as_str() {
            "hardlim" => Ok(ActivationKind::HardLim),
            "tanh" => Ok(ActivationKind::Tanh),
            "sine" | "sin" => Ok(ActivationKind::Sine),
            "tribas" => Ok(ActivationKind::TriBas),
            "gaussian" => Ok(ActivationKind::Gaussian),
            "multiquadric" | "multiquadratic" => Ok(ActivationKind::MultiQuadric),
            _ => Err(ElmError::InvalidConfig(format!("unknown activation \"{s}\""))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElmConfig {
    pub hidden_count: usize,
    pub activation: ActivationKind,
    /// Blend between the dot-product term (1.0) and the RBF distance term (0.0).
    pub alpha: f64,
    /// Scale of the distance term.
    pub rbf_width: f64,
    pub ridge: f64,
    pub rcond: f64,
    pub seed: u64,
}

impl Default for ElmConfig {
    fn default() -> Self {
        ElmConfig {
            hidden_count: 50,
            activation: ActivationKind::MultiQuadric,
            alpha: 1.0,
            rbf_width: 1.0,
            ridge: 0.0,
            rcond: numerics::DEFAULT_RCOND,
            seed: 0,
        }
    }
}

impl ElmConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(ElmError::InvalidConfig(msg));
        if self.hidden_count == 0 {
            return bad("hidden_count must be at least 1".into());
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return bad(format!("alpha must lie in [0, 1], got {}", self.alpha));
        }
        if !(self.rbf_width.is_finite() && self.rbf_width > 0.0) {
            return bad(format!("rbf_width must be positive, got {}", self.rbf_width));
        }
        for (name, v) in [("ridge", self.ridge), ("rcond", self.rcond)] {
            if !(v.is_finite() && v >= 0.0) {
                return bad(format!("{name} must be nonnegative, got {v}"));
            }
        }
        Ok(())
    }
}

/// Random hidden layer plus (once fitted) output weights.
///
/// Fitting returns a new model; a fitted model is never mutated and can be
/// shared across threads for prediction.
#[derive(Clone, Debug)]
pub struct ElmModel {
    config: ElmConfig,
    input_weights: Matrix,
    biases: Vec<f64>,
    centers: Matrix,
    output_weights: Option<Matrix>,
    normalizer: Option<NormalizerStats>,
    train_time: Option<Duration>,
}

impl PartialEq for ElmModel {
    /// Compares everything except the recorded training time.
    fn eq(&self, other: &Self) -> bool {
        self.config == other.config
            && self.input_weights == other.input_weights
            && self.biases == other.biases
            && self.centers == other.centers
            && self.output_weights == other.output_weights
            && self.normalizer == other.normalizer
    }
}

impl ElmModel {
    /// Draws an unfitted model: weights and biases uniform on [-1, 1], centers
    /// sampled with replacement from the rows of `training_inputs`.
    pub fn init_random(config: ElmConfig, feature_dim: usize, training_inputs: &Matrix) -> Result<ElmModel> {
        config.validate()?;
        if feature_dim == 0 {
            return Err(ElmError::EmptyFeatureSpace);
        }
        if training_inputs.cols() != feature_dim {
            return Err(ElmError::DimensionMismatch {
                expected: feature_dim,
                found: training_inputs.cols(),
            });
        }
        let l = config.hidden_count;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let weights: Vec<f64> = (0..l * feature_dim).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let biases: Vec<f64> = (0..l).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let mut centers = Vec::with_capacity(l * feature_dim);
        for _ in 0..l {
            let row = rng.gen_range(0..training_inputs.rows());
            centers.extend_from_slice(training_inputs.row(row));
        }
        Ok(ElmModel {
            config,
            input_weights: Matrix::new(l, feature_dim, weights)?,
            biases,
            centers: Matrix::new(l, feature_dim, centers)?,
            output_weights: None,
            normalizer: None,
            train_time: None,
        })
    }

    /// Assembles a model from explicit parameters, e.g. when loading from disk.
    pub fn from_parts(
        config: ElmConfig,
        input_weights: Matrix,
        biases: Vec<f64>,
        centers: Matrix,
        output_weights: Option<Matrix>,
        normalizer: Option<NormalizerStats>,
    ) -> Result<ElmModel> {
        config.validate()?;
        let l = config.hidden_count;
        if input_weights.rows() != l || centers.shape() != input_weights.shape() || biases.len() != l {
            return Err(ElmError::IncompatibleShapes(format!(
                "hidden layer of {l} nodes needs {l}xd weights and centers and {l} biases, got {:?}, {:?}, {}",
                input_weights.shape(),
                centers.shape(),
                biases.len()
            )));
        }
        if !biases.iter().all(|b| b.is_finite()) {
            return Err(ElmError::NonFinite);
        }
        if let Some(beta) = &output_weights {
            if beta.shape() != (l, 1) {
                return Err(ElmError::IncompatibleShapes(format!(
                    "output weights must be {l}x1, got {:?}",
                    beta.shape()
                )));
            }
        }
        Ok(ElmModel {
            config,
            input_weights,
            biases,
            centers,
            output_weights,
            normalizer,
            train_time: None,
        })
    }

    pub fn with_normalizer(mut self, stats: NormalizerStats) -> ElmModel {
        self.normalizer = Some(stats);
        self
    }

    pub fn config(&self) -> &ElmConfig {
        &self.config
    }

    pub fn activation(&self) -> ActivationKind {
        self.config.activation
    }

    pub fn hidden_count(&self) -> usize {
        self.config.hidden_count
    }

    pub fn feature_dim(&self) -> usize {
        self.input_weights.cols()
    }

    pub fn input_weights(&self) -> &Matrix {
        &self.input_weights
    }

    pub fn biases(&self) -> &[f64] {
        &self.biases
    }

    pub fn centers(&self) -> &Matrix {
        &self.centers
    }

    pub fn output_weights(&self) -> Option<&Matrix> {
        self.output_weights.as_ref()
    }

    pub fn normalizer(&self) -> Option<&NormalizerStats> {
        self.normalizer.as_ref()
    }

    pub fn is_fitted(&self) -> bool {
        self.output_weights.is_some()
    }

    /// Wall-clock time of the last [`fit`](Self::fit), if it happened in this process.
    pub fn train_time(&self) -> Option<Duration> {
        self.train_time
    }

    fn check_dim(&self, x: &Matrix) -> Result<()> {
        if x.cols() != self.feature_dim() {
            return Err(ElmError::DimensionMismatch {
                expected: self.feature_dim(),
                found: x.cols(),
            });
        }
        Ok(())
    }

    /// Hidden-layer output matrix `H` (`N x L`).
    ///
    /// `H[j][i] = φ(α(aᵢ·xⱼ + bᵢ) + (1 − α)γ‖xⱼ − cᵢ‖)`.
    pub fn hidden_matrix(&self, x: &Matrix) -> Result<Matrix> {
        self.check_dim(x)?;
        let ElmConfig {
            activation,
            alpha,
            rbf_width,
            hidden_count: l,
            ..
        } = self.config;
        let mut data = Vec::with_capacity(x.rows() * l);
        for j in 0..x.rows() {
            let xj = x.row(j);
            for i in 0..l {
                let mut pre = 0.0;
                if alpha > 0.0 {
                    let dot: f64 = self.input_weights.row(i).iter().zip(xj).map(|(a, b)| a * b).sum();
                    pre += alpha * (dot + self.biases[i]);
                }
                if alpha < 1.0 {
                    let dist = self
                        .centers
                        .row(i)
                        .iter()
                        .zip(xj)
                        .map(|(c, v)| (v - c) * (v - c))
                        .sum::<f64>()
                        .sqrt();
                    pre += (1.0 - alpha) * rbf_width * dist;
                }
                data.push(activation.apply(pre));
            }
        }
        Matrix::new(x.rows(), l, data)
    }

    /// Solves the output weights for 0/1 `labels` and returns the fitted model.
    pub fn fit(&self, x: &Matrix, labels: &[u8]) -> Result<ElmModel> {
        if let Some(&bad) = labels.iter().find(|&&t| t > 1) {
            return Err(ElmError::InvalidLabel(bad));
        }
        if labels.len() != x.rows() {
            return Err(ElmError::IncompatibleShapes(format!(
                "{} samples but {} labels",
                x.rows(),
                labels.len()
            )));
        }
        let targets: Vec<f64> = labels.iter().map(|&t| f64::from(t)).collect();
        let t = Matrix::column(&targets)?;

        let start = Instant::now();
        let h = self.hidden_matrix(x)?;
        let beta = numerics::lstsq_solve_rcond(&h, &t, self.config.ridge, self.config.rcond)?;
        let elapsed = start.elapsed();

        Ok(ElmModel {
            output_weights: Some(beta),
            train_time: Some(elapsed),
            ..self.clone()
        })
    }

    /// Raw scores `H·β`, one per row of `x`.
    pub fn predict_scores(&self, x: &Matrix) -> Result<Vec<f64>> {
        let beta = self.output_weights.as_ref().ok_or(ElmError::NotFitted)?;
        let h = self.hidden_matrix(x)?;
        Ok(h.matmul(beta)?.into_vec())
    }

    pub fn predict_class(&self, x: &Matrix) -> Result<Vec<u8>> {
        Ok(self.predict_scores(x)?.into_iter().map(threshold).collect())
    }
}

/// Class for a raw score; ties at the threshold go to class 1.
pub fn threshold(score: f64) -> u8 {
    u8::from(score >= DECISION_THRESHOLD)
}
