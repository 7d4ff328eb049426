//! Stateless HTTP prediction service.
//!
//! | method | path           | body                                  |
//! |--------|----------------|---------------------------------------|
//! | POST   | `/api/predict` | JSON object with the 16 answer fields |
//! | GET    | `/api/health`  | -                                     |
//! | GET    | `/api/model`   | -                                     |
//!
//! Submitted answers are never stored. The model is loaded once and shared
//! read-only between request handlers.

use std::net::SocketAddr;
use std::sync::Arc;

use axum::extract::State;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Serialize;
use serde_json::{json, Map, Value};
use tower_http::cors::CorsLayer;

use crate::data::{Gender, QuestionnaireRecord, Symptom, FEATURE_KEYS, FEATURE_LABELS, SYMPTOM_COUNT};
use crate::elm::ElmModel;
use crate::model_file::FORMAT_VERSION;
use crate::pipeline;

pub const DISCLAIMER: &str = "not a medical diagnosis";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PredictResponse {
    /// `"diabetes"` or `"normal"`.
    pub prediction: String,
    pub raw_score: f64,
    pub model_activation: String,
    pub disclaimer: String,
}

/// A rejected request body, naming the offending field when there is one.
#[derive(Clone, Debug, PartialEq)]
pub struct RequestError {
    pub field: Option<String>,
    pub message: String,
}

impl RequestError {
    fn field(name: &str, message: impl Into<String>) -> Self {
        RequestError {
            field: Some(name.to_string()),
            message: message.into(),
        }
    }
}

/// Validates a request object: exactly the 16 answer keys, integer age,
/// `"male"`/`"female"` gender and JSON booleans for every symptom.
pub fn parse_request(body: &Value) -> Result<QuestionnaireRecord, RequestError> {
    let obj: &Map<String, Value> = body.as_object().ok_or(RequestError {
        field: None,
        message: "request body must be a JSON object".into(),
    })?;
    if let Some(unknown) = obj.keys().find(|k| !FEATURE_KEYS.contains(&k.as_str())) {
        return Err(RequestError::field(unknown, format!("unknown field \"{unknown}\"")));
    }
    let get = |key: &str| obj.get(key).ok_or_else(|| RequestError::field(key, format!("missing field \"{key}\"")));

    let age = get("age")?
        .as_u64()
        .and_then(|a| u32::try_from(a).ok())
        .ok_or_else(|| RequestError::field("age", "age must be a nonnegative integer"))?;
    let gender = get("gender")?
        .as_str()
        .and_then(|g| g.parse::<Gender>().ok())
        .ok_or_else(|| RequestError::field("gender", "gender must be \"male\" or \"female\""))?;
    let mut symptoms = [false; SYMPTOM_COUNT];
    for s in Symptom::ALL {
        symptoms[s.index()] = get(s.key())?
            .as_bool()
            .ok_or_else(|| RequestError::field(s.key(), format!("{} must be true or false", s.key())))?;
    }
    Ok(QuestionnaireRecord {
        age,
        gender,
        symptoms,
        label: None,
    })
}

/// Scores one parsed request with `model`.
pub fn predict_response(model: &ElmModel, record: &QuestionnaireRecord) -> crate::Result<PredictResponse> {
    let p = pipeline::predict(model, std::slice::from_ref(record))?[0];
    Ok(PredictResponse {
        prediction: p.label.to_string().to_lowercase(),
        raw_score: p.raw_score,
        model_activation: model.activation().name().to_string(),
        disclaimer: DISCLAIMER.to_string(),
    })
}

type SharedModel = Option<Arc<ElmModel>>;

fn no_model() -> Response {
    (StatusCode::SERVICE_UNAVAILABLE, Json(json!({ "error": "no model loaded" }))).into_response()
}

async fn handle_predict(State(model): State<SharedModel>, body: axum::body::Bytes) -> Response {
    let Some(model) = model else {
        return no_model();
    };
    let value: Value = match serde_json::from_slice(&body) {
        Ok(v) => v,
        Err(e) => {
            return (StatusCode::BAD_REQUEST, Json(json!({ "error": format!("invalid JSON: {e}") }))).into_response()
        }
    };
    let record = match parse_request(&value) {
        Ok(r) => r,
        Err(e) => {
            return (StatusCode::BAD_REQUEST, Json(json!({ "error": e.message, "field": e.field }))).into_response()
        }
    };
    match predict_response(&model, &record) {
        Ok(resp) => Json(resp).into_response(),
        Err(e) => (StatusCode::INTERNAL_SERVER_ERROR, Json(json!({ "error": e.to_string() }))).into_response(),
    }
}

async fn handle_health() -> &'static str {
    "ok"
}

async fn handle_model(State(model): State<SharedModel>) -> Response {
    let Some(model) = model else {
        return no_model();
    };
    let features: Vec<Value> = FEATURE_KEYS
        .iter()
        .zip(FEATURE_LABELS)
        .map(|(k, l)| json!({ "key": k, "label": l }))
        .collect();
    Json(json!({
        "activation": model.activation().name(),
        "hidden_count": model.hidden_count(),
        "alpha": model.config().alpha,
        "feature_names": FEATURE_KEYS,
        "features": features,
        "format_version": FORMAT_VERSION,
        "normalizer": model.normalizer(),
        "age_handling": "ages outside the training range are clamped, not rejected",
        "disclaimer": DISCLAIMER,
    }))
    .into_response()
}

/// Routes with permissive CORS; `model = None` answers 503 on model-backed routes.
pub fn router(model: Option<ElmModel>) -> Router {
    Router::new()
        .route("/api/predict", post(handle_predict))
        .route("/api/health", get(handle_health))
        .route("/api/model", get(handle_model))
        .layer(CorsLayer::permissive())
        .with_state(model.map(Arc::new))
}

/// Binds `addr` and serves until the process receives Ctrl-C.
pub async fn serve(addr: SocketAddr, model: Option<ElmModel>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(model))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
