//! Time-series collections, selections, the country gazetteer and the
//! document corpus, with their file loaders.

mod collection;
mod corpus;
mod gazetteer;
mod selection;

pub use collection::{parse_wide_csv, Dataset, DatasetCollection, Series};
pub use corpus::{load_corpus, parse_corpus, Document};
pub use gazetteer::{CountryEntry, Gazetteer};
pub use selection::{Selection, WeightProfile, YearRange};
