use diabetes_elm::data::{synthetic, Gender, NormalizerStats, QuestionnaireRecord, Symptom, FEATURE_KEYS};
use diabetes_elm::elm::{ActivationKind, ElmConfig, ElmModel};
use diabetes_elm::{pipeline, service, Matrix};
use serde_json::{json, Value};

async fn spawn(model: Option<ElmModel>) -> String {
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(async move { axum::serve(listener, service::router(model)).await.unwrap() });
    format!("http://{addr}")
}

fn trained(seed: u64) -> (ElmModel, Vec<QuestionnaireRecord>) {
    let records = synthetic::generate(300, seed);
    let model = pipeline::train(&records, ElmConfig { seed, ..ElmConfig::default() }).unwrap();
    (model, records)
}

fn request_body(r: &QuestionnaireRecord) -> Value {
    let mut v = json!({
        "age": r.age,
        "gender": if r.gender == Gender::Male { "male" } else { "female" },
    });
    for s in Symptom::ALL {
        v[s.key()] = json!(r.symptom(s));
    }
    v
}

/// β = 0 model whose training statistics map a 20-year-old to feature 0.
fn zero_model() -> ElmModel {
    let cfg = ElmConfig {
        hidden_count: 3,
        activation: ActivationKind::Gaussian,
        ..ElmConfig::default()
    };
    ElmModel::from_parts(
        cfg,
        Matrix::zeros(3, 16),
        vec![0.1, 0.2, 0.3],
        Matrix::zeros(3, 16),
        Some(Matrix::zeros(3, 1)),
        Some(NormalizerStats::new(20, 65).unwrap()),
    )
    .unwrap()
}

#[tokio::test]
async fn health_and_unloaded_model() {
    let base = spawn(None).await;
    let client = reqwest::Client::new();
    let r = client.get(format!("{base}/api/health")).send().await.unwrap();
    assert_eq!(r.status(), 200);
    assert_eq!(r.text().await.unwrap(), "ok");

    let r = client.get(format!("{base}/api/model")).send().await.unwrap();
    assert_eq!(r.status(), 503);
    let body = request_body(&synthetic::generate(1, 1)[0]);
    let r = client.post(format!("{base}/api/predict")).json(&body).send().await.unwrap();
    assert_eq!(r.status(), 503);
}

#[tokio::test]
async fn model_metadata() {
    let (model, _) = trained(1);
    let base = spawn(Some(model)).await;
    let v: Value = reqwest::get(format!("{base}/api/model")).await.unwrap().json().await.unwrap();
    assert_eq!(v["hidden_count"], 50);
    assert_eq!(v["activation"], "multiquadric");
    assert_eq!(v["format_version"], 1);
    let names: Vec<&str> = v["feature_names"].as_array().unwrap().iter().map(|n| n.as_str().unwrap()).collect();
    assert_eq!(names, FEATURE_KEYS);
}

#[tokio::test]
async fn zero_weight_model_answers_normal() {
    let base = spawn(Some(zero_model())).await;
    let record = QuestionnaireRecord {
        age: 20,
        gender: Gender::Female,
        symptoms: [false; 14],
        label: None,
    };
    let r = reqwest::Client::new()
        .post(format!("{base}/api/predict"))
        .json(&request_body(&record))
        .send()
        .await
        .unwrap();
    assert_eq!(r.status(), 200);
    let v: Value = r.json().await.unwrap();
    assert_eq!(v["prediction"], "normal");
    assert_eq!(v["raw_score"], 0.0);
    assert_eq!(v["model_activation"], "gaussian");
    assert_eq!(v["disclaimer"], "not a medical diagnosis");
}

#[tokio::test]
async fn invalid_requests_are_400_with_field() {
    let base = spawn(Some(zero_model())).await;
    let client = reqwest::Client::new();
    let mut body = request_body(&synthetic::generate(1, 2)[0]);
    body.as_object_mut().unwrap().remove("polyuria");
    let r = client.post(format!("{base}/api/predict")).json(&body).send().await.unwrap();
    assert_eq!(r.status(), 400);
    let v: Value = r.json().await.unwrap();
    assert_eq!(v["field"], "polyuria");

    let r = client
        .post(format!("{base}/api/predict"))
        .header("content-type", "application/json")
        .body("{not json")
        .send()
        .await
        .unwrap();
    assert_eq!(r.status(), 400);
}

#[tokio::test]
async fn service_agrees_with_library_and_is_repeatable() {
    let (model, records) = trained(3);
    let base = spawn(Some(model.clone())).await;
    let client = reqwest::Client::new();
    let probes = synthetic::generate(40, 99);
    let expected = pipeline::predict(&model, &probes).unwrap();
    for (r, p) in probes.iter().zip(&expected) {
        let v: Value = client
            .post(format!("{base}/api/predict"))
            .json(&request_body(r))
            .send()
            .await
            .unwrap()
            .json()
            .await
            .unwrap();
        assert_eq!(v["prediction"], p.label.to_string().to_lowercase());
        assert_eq!(v["raw_score"].as_f64().unwrap(), p.raw_score);
    }

    // concurrent identical requests see the same read-only model
    let body = request_body(&records[0]);
    let handles: Vec<_> = (0..16)
        .map(|_| {
            let (client, url, body) = (client.clone(), format!("{base}/api/predict"), body.clone());
            tokio::spawn(async move { client.post(url).json(&body).send().await.unwrap().text().await.unwrap() })
        })
        .collect();
    let mut responses = Vec::new();
    for h in handles {
        responses.push(h.await.unwrap());
    }
    assert!(responses.windows(2).all(|w| w[0] == w[1]));
}

#[tokio::test]
async fn cors_is_permissive() {
    let base = spawn(Some(zero_model())).await;
    let r = reqwest::Client::new()
        .request(reqwest::Method::OPTIONS, format!("{base}/api/predict"))
        .header("origin", "http://localhost:5173")
        .header("access-control-request-method", "POST")
        .header("access-control-request-headers", "content-type")
        .send()
        .await
        .unwrap();
    assert!(r.status().is_success());
    assert_eq!(r.headers()["access-control-allow-origin"], "*");
}
