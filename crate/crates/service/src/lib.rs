//! JSON-over-HTTP API for the q4eda engine.
//!
//! Every route lives under `/v1`. Compute-heavy handlers run on the blocking
//! pool; the loaded [`Engine`] is shared read-only and the stability job
//! registry is the only mutable state.

mod error;
mod jobs;

use std::net::SocketAddr;
use std::sync::Arc;

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::routing::{get, post};
use axum::{Json, Router};
use q4eda_core::config::BackendKind;
use q4eda_core::convert::{Pattern, Trend};
use q4eda_core::data::Selection;
use q4eda_core::engine::{Conversion, DocSuggestions, FindingInfo, PatternSuggestions, QueryOptions};
use q4eda_core::search::DocHit;
use q4eda_core::stability::{run_stability, StabilityConfig};
use q4eda_core::suggest::{PatternMethod, TextMode};
use q4eda_core::{Engine, Execution};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use error::ApiError;
pub use jobs::{JobState, Jobs};

type ApiResult<T> = Result<Json<T>, ApiError>;

#[derive(Debug, Clone)]
pub struct AppState {
    pub engine: Arc<Engine>,
    pub jobs: Arc<Jobs>,
}

impl AppState {
    pub fn new(engine: Engine) -> Self {
        AppState {
            engine: Arc::new(engine),
            jobs: Arc::default(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct ConvertRequest {
    /// Must name the loaded collection when given.
    #[serde(default)]
    pub collection: Option<String>,
    #[serde(flatten)]
    pub selection: Selection,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvertResponse {
    pub ir_text: String,
    pub es_query: String,
    /// Trend, pattern and factor of the first finding.
    pub trend: Trend,
    pub pattern: Pattern,
    pub pf: f64,
    pub findings: Vec<FindingInfo>,
}

impl From<Conversion> for ConvertResponse {
    fn from(c: Conversion) -> Self {
        let first = &c.findings[0];
        ConvertResponse {
            trend: first.trend,
            pattern: first.pattern,
            pf: first.pf,
            ir_text: c.ir_text,
            es_query: c.es_query,
            findings: c.findings,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct QueryRequest {
    #[serde(flatten)]
    pub convert: ConvertRequest,
    #[serde(default)]
    pub backend: Option<BackendKind>,
    #[serde(default)]
    pub top_k: Option<usize>,
    #[serde(default)]
    pub text_mode: TextMode,
    #[serde(default)]
    pub pattern_method: PatternMethod,
}

#[derive(Debug, Clone, Serialize)]
pub struct QueryResponse {
    #[serde(flatten)]
    pub conversion: ConvertResponse,
    pub documents: Vec<DocHit>,
    pub per_document_suggestions: Vec<DocSuggestions>,
    pub pattern_suggestions: PatternSuggestions,
}

/// Optional overrides of the configured stability run.
#[derive(Debug, Clone, Default, Deserialize)]
pub struct StabilityRequest {
    pub top_n: Option<usize>,
    pub window: Option<usize>,
    pub top_k: Option<usize>,
    pub backend: Option<BackendKind>,
}

#[derive(Debug, Deserialize)]
struct SeriesQuery {
    dataset: String,
    key: String,
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/v1/health", get(health))
        .route("/v1/convert", post(convert))
        .route("/v1/query", post(query))
        .route("/v1/collections", get(collections))
        .route("/v1/collections/{id}/datasets", get(datasets))
        .route("/v1/series", get(series))
        .route("/v1/stability", post(start_stability))
        .route("/v1/stability/{job}", get(stability_job))
        .with_state(state)
}

/// Serves until ctrl-c. `on_bound` sees the actual address, which differs
/// from `addr` when binding port 0.
pub async fn serve(
    engine: Engine,
    addr: SocketAddr,
    on_bound: impl FnOnce(SocketAddr),
) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    on_bound(listener.local_addr()?);
    axum::serve(listener, router(AppState::new(engine)))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

async fn blocking<T, F>(f: F) -> Result<T, ApiError>
where
    T: Send + 'static,
    F: FnOnce() -> Result<T, ApiError> + Send + 'static,
{
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))?
}

fn check_collection(engine: &Engine, req: &ConvertRequest) -> Result<(), ApiError> {
    match &req.collection {
        Some(id) if *id != engine.collection.id => Err(ApiError::not_found("collection", id)),
        _ => Ok(()),
    }
}

async fn health(State(s): State<AppState>) -> Json<Value> {
    let e = &s.engine;
    Json(json!({
        "status": "ok",
        "version": env!("CARGO_PKG_VERSION"),
        "collection": e.collection.id,
        "datasets": e.collection.datasets.len(),
        "series": e.collection.all_series().count(),
        "documents": e.corpus.len(),
        "terms": e.index.term_count(),
        "vocabulary": e.nlp.model.len(),
        "countries": e.gazetteer.len(),
        "backend": e.config.backend,
    }))
}

async fn convert(
    State(s): State<AppState>,
    body: Result<Json<ConvertRequest>, JsonRejection>,
) -> ApiResult<ConvertResponse> {
    let Json(req) = body?;
    blocking(move || {
        check_collection(&s.engine, &req)?;
        Ok(Json(s.engine.convert(&req.selection)?.into()))
    })
    .await
}

async fn query(
    State(s): State<AppState>,
    body: Result<Json<QueryRequest>, JsonRejection>,
) -> ApiResult<QueryResponse> {
    let Json(req) = body?;
    let top_k = req.top_k.unwrap_or(s.engine.config.top_k);
    if top_k == 0 {
        return Err(ApiError::bad_request("top_k must be at least 1"));
    }
    blocking(move || {
        check_collection(&s.engine, &req.convert)?;
        let options = QueryOptions {
            top_k,
            text_mode: req.text_mode,
            pattern_method: req.pattern_method,
            backend: req.backend,
        };
        let r = s.engine.query(&req.convert.selection, options, Execution::Parallel)?;
        Ok(Json(QueryResponse {
            conversion: r.conversion.into(),
            documents: r.documents,
            per_document_suggestions: r.per_document_suggestions,
            pattern_suggestions: r.pattern_suggestions,
        }))
    })
    .await
}

async fn collections(State(s): State<AppState>) -> Json<Value> {
    let c = &s.engine.collection;
    Json(json!([{ "id": c.id, "datasets": c.datasets.len() }]))
}

async fn datasets(State(s): State<AppState>, Path(id): Path<String>) -> ApiResult<Value> {
    if id != s.engine.collection.id {
        return Err(ApiError::not_found("collection", &id));
    }
    let list: Vec<Value> = s
        .engine
        .catalogue()
        .into_iter()
        .map(|(name, keys)| json!({ "name": name, "keys": keys }))
        .collect();
    Ok(Json(Value::Array(list)))
}

async fn series(
    State(s): State<AppState>,
    q: Result<Query<SeriesQuery>, QueryRejection>,
) -> ApiResult<Value> {
    let Query(q) = q?;
    let series = s.engine.collection.series(&q.dataset, &q.key).map_err(|e| {
        let mut err = ApiError::from(e);
        err.status = StatusCode::NOT_FOUND;
        err
    })?;
    Ok(Json(json!({
        "dataset": q.dataset,
        "key": series.key,
        "years": series.years(),
        "values": series.values(),
    })))
}

async fn start_stability(
    State(s): State<AppState>,
    body: Option<Json<StabilityRequest>>,
) -> Result<(StatusCode, Json<Value>), ApiError> {
    let req = body.map(|Json(r)| r).unwrap_or_default();
    let mut config: StabilityConfig = s.engine.config.stability.clone();
    config.top_n = req.top_n.unwrap_or(config.top_n);
    config.window = req.window.unwrap_or(config.window);
    config.top_k = req.top_k.unwrap_or(config.top_k);
    config.validate()?;
    let backend = req.backend.unwrap_or(s.engine.config.backend);

    let id = s.jobs.start();
    tokio::task::spawn_blocking(move || {
        let state = match run_stability(&s.engine, s.engine.backend_of(backend), &config, Execution::Parallel) {
            Ok(report) => JobState::Done { report },
            Err(e) => JobState::Failed { message: e.to_string() },
        };
        s.jobs.finish(id, state);
    });
    Ok((StatusCode::ACCEPTED, Json(json!({ "job": id, "status": "running" }))))
}

async fn stability_job(State(s): State<AppState>, Path(job): Path<String>) -> ApiResult<Value> {
    let state = job
        .parse()
        .ok()
        .and_then(|id| s.jobs.get(id))
        .ok_or_else(|| ApiError::not_found("job", &job))?;
    let mut body = serde_json::to_value(state).expect("job state serializes");
    body["job"] = json!(job);
    Ok(Json(body))
}
