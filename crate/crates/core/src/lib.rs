//! Extreme learning machine (ELM) for questionnaire-based early diabetes
//! screening.
//!
//! The crate covers the whole path from a survey CSV to a served prediction:
//!
//! - [`numerics`]: dense matrices, Jacobi SVD, pseudoinverse and least squares
//! - [`elm`]: random hidden layer, six transfer functions, closed-form fit
//! - [`data`]: CSV parsing, feature encoding, age normalization, 70/10/20 split
//! - [`metrics`]: confusion matrix, precision/recall/F1/accuracy, benchmark
//! - [`pipeline`]: questionnaire-level train / predict / evaluate helpers
//! - [`model_file`]: versioned JSON model persistence
//! - [`service`]: HTTP prediction API
//! - [`cli`]: the `elm` command line
//!
//! Predictions are a screening aid and not a medical diagnosis.

pub mod cli;
pub mod data;
pub mod elm;
pub mod error;
pub mod metrics;
pub mod model_file;
pub mod numerics;
pub mod pipeline;
pub mod service;

pub use data::{NormalizerStats, QuestionnaireRecord};
pub use elm::{ActivationKind, ElmConfig, ElmModel};
pub use error::{ElmError, Result};
pub use metrics::{BenchmarkTable, ConfusionMatrix, MetricsReport};
pub use numerics::Matrix;
