//! Start the HTTP service in-process and send it one request.
//!
//! Run with `cargo run --example prediction_service`.

use diabetes_elm::data::synthetic;
use diabetes_elm::{pipeline, service, ElmConfig};
use serde_json::json;

#[tokio::main]
async fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = pipeline::train(&synthetic::generate(300, 5), ElmConfig { seed: 5, ..ElmConfig::default() })?;
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await?;
    let base = format!("http://{}", listener.local_addr()?);
    tokio::spawn(async move { axum::serve(listener, service::router(Some(model))).await });

    let body = json!({
        "age": 45, "gender": "female",
        "polyuria": true, "polydipsia": true, "sudden_weight_loss": false,
        "weakness": true, "polyphagia": false, "genital_thrush": false,
        "visual_blurring": false, "itching": false, "irritability": false,
        "delayed_healing": false, "partial_paresis": false, "muscle_stiffness": false,
        "alopecia": false, "obesity": false,
    });
    let client = reqwest::Client::new();
    let reply: serde_json::Value = client.post(format!("{base}/api/predict")).json(&body).send().await?.json().await?;
    println!("POST /api/predict -> {reply}");
    let meta: serde_json::Value = client.get(format!("{base}/api/model")).send().await?.json().await?;
    println!("GET /api/model -> activation {}, {} hidden nodes", meta["activation"], meta["hidden_count"]);
    Ok(())
}
