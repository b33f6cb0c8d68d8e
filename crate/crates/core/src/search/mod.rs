//! Search backends: the built-in positional index and an Elasticsearch
//! client behind one [`SearchBackend`] contract.

mod es;
mod index;

use serde::{Deserialize, Serialize};

pub use es::{EsClient, EsConfig};
pub use index::Index;

use crate::format::{to_es_simple, to_local};
use crate::par::Execution;
use crate::query::QueryExpr;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocHit {
    pub doc_id: String,
    pub score: f64,
    pub snippet: String,
}

/// Anything that can run a query IR and return ranked hits.
pub trait SearchBackend: Sync {
    fn search(&self, expr: &QueryExpr, top_k: usize) -> Result<Vec<DocHit>>;
}

impl SearchBackend for Index {
    fn search(&self, expr: &QueryExpr, top_k: usize) -> Result<Vec<DocHit>> {
        Ok(self.execute(&to_local(expr), top_k, Execution::Sequential))
    }
}

impl SearchBackend for EsClient {
    fn search(&self, expr: &QueryExpr, top_k: usize) -> Result<Vec<DocHit>> {
        EsClient::search(self, &to_es_simple(expr), top_k)
    }
}
