mod common;

use std::time::Duration;

use axum::http::StatusCode;
use common::{app, app_with, call, config};
use q4eda_core::query::parse;
use serde_json::{json, Value};

fn valley() -> Value {
    json!({
        "dataset_names": ["life expectancy"],
        "keys": ["united states"],
        "year_ranges": [[1860, 1866]],
    })
}

fn with(mut base: Value, extra: Value) -> Value {
    for (k, v) in extra.as_object().unwrap() {
        base[k] = v.clone();
    }
    base
}

fn assert_error(body: &Value, code: &str) {
    assert_eq!(body["code"], code, "{body}");
    assert!(body["message"].is_string());
    assert!(body.get("detail").is_some());
}

#[tokio::test]
async fn convert_returns_parseable_ir() {
    let app = app("q4eda.json");
    let (status, body) = call(&app, "POST", "/v1/convert", Some(valley())).await;
    assert_eq!(status, StatusCode::OK, "{body}");
    let ir = body["ir_text"].as_str().unwrap();
    assert_eq!(parse(ir).unwrap().to_string(), ir);
    assert!(body["es_query"].as_str().unwrap().contains("+"));
    assert_eq!(body["pattern"], "valley");
    assert!(body["pf"].as_f64().unwrap() < -1.5);

    // side-effect free
    let (_, again) = call(&app, "POST", "/v1/convert", Some(valley())).await;
    assert_eq!(again, body);
}

#[tokio::test]
async fn convert_errors() {
    let app = app("q4eda.json");
    let cases = [
        (json!({ "keys": ["atlantis"] }), StatusCode::BAD_REQUEST, "unknown_key"),
        (json!({ "dataset_names": ["gdp"] }), StatusCode::BAD_REQUEST, "unknown_dataset"),
        (json!({ "year_ranges": [[1866, 1860]] }), StatusCode::BAD_REQUEST, "invalid_range"),
        (json!({ "year_ranges": [[1950, 1960]] }), StatusCode::UNPROCESSABLE_ENTITY, "empty_slice"),
        (json!({ "keys": [] }), StatusCode::BAD_REQUEST, "invalid_request"),
        (json!({ "collection": "other" }), StatusCode::NOT_FOUND, "not_found"),
        (json!({ "profile": "cubic" }), StatusCode::BAD_REQUEST, "invalid_json"),
    ];
    for (patch, status, code) in cases {
        let (got, body) = call(&app, "POST", "/v1/convert", Some(with(valley(), patch.clone()))).await;
        assert_eq!(got, status, "{patch} -> {body}");
        assert_error(&body, code);
    }
}

#[tokio::test]
async fn query_returns_documents_and_suggestions() {
    let app = app("q4eda.json");
    let req = with(valley(), json!({ "top_k": 3, "text_mode": "indirect", "pattern_method": "dtw" }));
    let (status, body) = call(&app, "POST", "/v1/query", Some(req)).await;
    assert_eq!(status, StatusCode::OK, "{body}");
    let docs = body["documents"].as_array().unwrap();
    assert_eq!(docs.len(), 3);
    assert_eq!(body["per_document_suggestions"].as_array().unwrap().len(), 3);
    assert!(!body["pattern_suggestions"]["keys"]["entries"].as_array().unwrap().is_empty());

    let (_, one) = call(&app, "POST", "/v1/query", Some(with(valley(), json!({ "top_k": 1 })))).await;
    assert_eq!(one["documents"].as_array().unwrap().len(), 1);

    let (status, body) = call(&app, "POST", "/v1/query", Some(with(valley(), json!({ "top_k": 0 })))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_error(&body, "invalid_request");
}

#[tokio::test]
async fn single_year_pearson_has_empty_pattern_suggestions() {
    let app = app("q4eda.json");
    let req = with(
        valley(),
        json!({ "year_ranges": [[1863, 1863]], "pattern_method": "pearson" }),
    );
    let (status, body) = call(&app, "POST", "/v1/query", Some(req)).await;
    assert_eq!(status, StatusCode::OK, "{body}");
    assert_eq!(body["pattern_suggestions"]["keys"]["entries"], json!([]));
    assert_eq!(body["pattern_suggestions"]["datasets"]["entries"], json!([]));
}

#[tokio::test]
async fn unreachable_es_backend_is_502() {
    let mut cfg = config("q4eda.json");
    let port = std::net::TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
    cfg.es.url = format!("http://127.0.0.1:{port}");
    cfg.es.timeout_ms = 500;
    let app = app_with(cfg);
    let (status, body) = call(&app, "POST", "/v1/query", Some(with(valley(), json!({ "backend": "es" })))).await;
    assert_eq!(status, StatusCode::BAD_GATEWAY);
    assert_error(&body, "backend_unreachable");
}

#[tokio::test]
async fn browsing() {
    let app = app("q4eda.json");
    let (status, body) = call(&app, "GET", "/v1/collections", None).await;
    assert_eq!(status, StatusCode::OK);
    let list = body.as_array().unwrap();
    assert_eq!(list.len(), 1);
    let id = list[0]["id"].as_str().unwrap();

    let (status, body) = call(&app, "GET", &format!("/v1/collections/{id}/datasets"), None).await;
    assert_eq!(status, StatusCode::OK);
    let names: Vec<&str> = body.as_array().unwrap().iter().map(|d| d["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"life expectancy"));

    let (status, _) = call(&app, "GET", "/v1/collections/nope/datasets", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);

    let (status, body) = call(&app, "GET", "/v1/series?dataset=life%20expectancy&key=sweden", None).await;
    assert_eq!(status, StatusCode::OK);
    let years = body["years"].as_array().unwrap();
    assert_eq!(years.len(), body["values"].as_array().unwrap().len());
    assert_eq!(years[0], 1840);

    let (status, body) = call(&app, "GET", "/v1/series?dataset=life%20expectancy&key=atlantis", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_error(&body, "unknown_key");
    let (status, _) = call(&app, "GET", "/v1/series?dataset=life%20expectancy", None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    let (status, body) = call(&app, "GET", "/v1/health", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["documents"], 25);
    assert_eq!(body["version"], env!("CARGO_PKG_VERSION"));
}

#[tokio::test]
async fn stability_job_lifecycle() {
    let app = app("stability.json");
    let (status, body) = call(&app, "GET", "/v1/stability/999", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_error(&body, "not_found");

    let (status, _) = call(&app, "POST", "/v1/stability", Some(json!({ "window": 2 }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    let (status, body) = call(&app, "POST", "/v1/stability", None).await;
    assert_eq!(status, StatusCode::ACCEPTED);
    let job = body["job"].as_u64().unwrap();
    let uri = format!("/v1/stability/{job}");
    for _ in 0..600 {
        let (status, body) = call(&app, "GET", &uri, None).await;
        assert_eq!(status, StatusCode::OK);
        match body["status"].as_str().unwrap() {
            "running" => tokio::time::sleep(Duration::from_millis(50)).await,
            "done" => {
                let report = &body["report"];
                assert!(report["overall_mean"].as_f64().unwrap() > 0.0);
                assert!(report["per_pattern_type"]["peak"].is_object());
                return;
            }
            other => panic!("job ended {other}: {body}"),
        }
    }
    panic!("stability job did not finish");
}
