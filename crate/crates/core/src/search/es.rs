//! Thin blocking client for an Elasticsearch-compatible `_search` endpoint.

use std::sync::OnceLock;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::DocHit;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EsConfig {
    pub url: String,
    pub index: String,
    pub timeout_ms: u64,
}

impl Default for EsConfig {
    fn default() -> Self {
        EsConfig {
            url: "http://127.0.0.1:9200".into(),
            index: "enwiki".into(),
            timeout_ms: 5000,
        }
    }
}

/// The HTTP client is built on first use: a blocking client cannot be
/// created from inside an async runtime, and engines are often loaded there.
#[derive(Debug, Clone)]
pub struct EsClient {
    config: EsConfig,
    http: OnceLock<reqwest::blocking::Client>,
}

const SNIPPET_WORDS: usize = 31;

impl EsClient {
    pub fn new(config: EsConfig) -> Self {
        EsClient {
            config,
            http: OnceLock::new(),
        }
    }

    fn http(&self) -> Result<&reqwest::blocking::Client> {
        if let Some(c) = self.http.get() {
            return Ok(c);
        }
        let built = reqwest::blocking::Client::builder()
            .timeout(Duration::from_millis(self.config.timeout_ms))
            .build()
            .map_err(|e| Error::Connection(e.to_string()))?;
        Ok(self.http.get_or_init(|| built))
    }

    pub fn config(&self) -> &EsConfig {
        &self.config
    }

    pub fn request_body(query_text: &str, top_k: usize) -> Value {
        json!({
            "size": top_k,
            "query": {
                "simple_query_string": {
                    "query": query_text,
                    "fields": ["title", "body"],
                }
            }
        })
    }

    /// `POST {url}/{index}/_search` with a `simple_query_string` clause.
    pub fn search(&self, query_text: &str, top_k: usize) -> Result<Vec<DocHit>> {
        let url = format!(
            "{}/{}/_search",
            self.config.url.trim_end_matches('/'),
            self.config.index
        );
        let response = self
            .http()?
            .post(&url)
            .json(&Self::request_body(query_text, top_k))
            .send()
            .map_err(|e| Error::Connection(e.to_string()))?;
        let status = response.status();
        let body = response
            .text()
            .map_err(|e| Error::Connection(e.to_string()))?;
        if !status.is_success() {
            return Err(Error::Backend {
                status: status.as_u16(),
                message: server_message(&body),
            });
        }
        let parsed: SearchResponse = serde_json::from_str(&body).map_err(|e| Error::Backend {
            status: status.as_u16(),
            message: format!("unreadable response: {e}"),
        })?;
        Ok(parsed
            .hits
            .hits
            .into_iter()
            .take(top_k)
            .map(|h| DocHit {
                snippet: h.source.snippet(),
                doc_id: h.id,
                score: h.score.unwrap_or(0.0),
            })
            .collect())
    }
}

fn server_message(body: &str) -> String {
    let parsed: Option<Value> = serde_json::from_str(body).ok();
    parsed
        .as_ref()
        .and_then(|v| {
            v.pointer("/error/root_cause/0/reason")
                .or_else(|| v.pointer("/error/reason"))
                .or_else(|| v.get("error"))
        })
        .map(|v| v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string()))
        .unwrap_or_else(|| body.chars().take(500).collect())
}

#[derive(Deserialize)]
struct SearchResponse {
    hits: Hits,
}

#[derive(Deserialize)]
struct Hits {
    hits: Vec<Hit>,
}

#[derive(Deserialize)]
struct Hit {
    #[serde(rename = "_id")]
    id: String,
    #[serde(rename = "_score")]
    score: Option<f64>,
    #[serde(rename = "_source", default)]
    source: Source,
}

#[derive(Deserialize, Default)]
struct Source {
    #[serde(default)]
    body: Option<String>,
    #[serde(default)]
    text: Option<String>,
    #[serde(default)]
    title: Option<String>,
}

impl Source {
    fn snippet(&self) -> String {
        let text = self
            .body
            .as_deref()
            .or(self.text.as_deref())
            .or(self.title.as_deref())
            .unwrap_or("");
        text.split_whitespace()
            .take(SNIPPET_WORDS)
            .collect::<Vec<_>>()
            .join(" ")
    }
}
