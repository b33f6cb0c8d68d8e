use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use q4eda_core::Error;
use serde::Serialize;
use serde_json::{json, Value};

/// Error body returned by every endpoint.
#[derive(Debug, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: StatusCode,
    pub code: &'static str,
    pub message: String,
    pub detail: Value,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            code,
            message: message.into(),
            detail: Value::Null,
        }
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = detail;
        self
    }

    pub fn not_found(what: &str, id: &str) -> Self {
        ApiError::new(StatusCode::NOT_FOUND, "not_found", format!("unknown {what} {id:?}"))
            .with_detail(json!({ what: id }))
    }

    pub fn bad_request(message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "invalid_request", message)
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        use StatusCode as S;
        let message = e.to_string();
        let (status, code, detail) = match e {
            Error::UnknownDataset(name) => (S::BAD_REQUEST, "unknown_dataset", json!({ "dataset": name })),
            Error::UnknownKey { dataset, key } => {
                (S::BAD_REQUEST, "unknown_key", json!({ "dataset": dataset, "key": key }))
            }
            Error::UnknownCountry { name, near } => {
                (S::BAD_REQUEST, "unknown_key", json!({ "key": name, "near": near }))
            }
            Error::InvalidRange { start, end } => {
                (S::BAD_REQUEST, "invalid_range", json!({ "start": start, "end": end }))
            }
            Error::InvalidSelection(_)
            | Error::Config(_)
            | Error::Parse(_)
            | Error::InvalidTerm { .. }
            | Error::InvalidWeight(_)
            | Error::Arity { .. }
            | Error::EmptyKeyword(_) => (S::BAD_REQUEST, "invalid_request", Value::Null),
            Error::EmptySlice { dataset, key, start, end } => (
                S::UNPROCESSABLE_ENTITY,
                "empty_slice",
                json!({ "dataset": dataset, "key": key, "start": start, "end": end }),
            ),
            Error::Connection(_) => (S::BAD_GATEWAY, "backend_unreachable", Value::Null),
            Error::Backend { status, .. } => {
                (S::BAD_GATEWAY, "backend_error", json!({ "status": status }))
            }
            _ => (S::INTERNAL_SERVER_ERROR, "internal", Value::Null),
        };
        ApiError { status, code, message, detail }
    }
}

impl From<JsonRejection> for ApiError {
    fn from(r: JsonRejection) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "invalid_json", r.body_text())
    }
}

impl From<QueryRejection> for ApiError {
    fn from(r: QueryRejection) -> Self {
        ApiError::bad_request(r.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self)).into_response()
    }
}
