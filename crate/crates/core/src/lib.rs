//! Visual-selection-to-search-query compilation over time-series collections.
//!
//! A [`Selection`](data::Selection) (datasets, categorical keys, year ranges)
//! is converted data-type by data-type into sub-expressions of the weighted
//! boolean [`QueryExpr`](query::QueryExpr), combined, and formatted for a
//! search backend. Retrieved documents and the selected values feed two
//! suggestion engines, and [`stability`] measures how robust retrieval is to
//! imprecise selections.

pub mod combine;
pub mod config;
pub mod convert;
pub mod data;
pub mod embeddings;
pub mod engine;
mod error;
pub mod format;
pub mod par;
pub mod query;
pub mod search;
pub mod stability;
pub mod suggest;
pub mod text;

pub use engine::{Conversion, Engine};
pub use error::{Error, Result};
pub use par::Execution;
