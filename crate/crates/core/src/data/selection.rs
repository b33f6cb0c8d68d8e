use std::fmt;

use serde::{Deserialize, Serialize};

use super::DatasetCollection;
use crate::{Error, Result};

/// Inclusive year interval. Serialized as `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(i32, i32)", into = "(i32, i32)")]
pub struct YearRange {
    pub start: i32,
    pub end: i32,
}

impl YearRange {
    pub fn new(start: i32, end: i32) -> Result<Self> {
        let r = YearRange { start, end };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(self) -> Result<()> {
        if self.start > self.end {
            return Err(Error::InvalidRange {
                start: self.start,
                end: self.end,
            });
        }
        Ok(())
    }

    pub fn len(self) -> usize {
        (self.end - self.start + 1).max(0) as usize
    }

    pub fn is_empty(self) -> bool {
        self.start > self.end
    }
}

impl From<(i32, i32)> for YearRange {
    fn from((start, end): (i32, i32)) -> Self {
        YearRange { start, end }
    }
}

impl From<YearRange> for (i32, i32) {
    fn from(r: YearRange) -> Self {
        (r.start, r.end)
    }
}

impl fmt::Display for YearRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightProfile {
    #[default]
    Uniform,
    Gaussian,
}

/// A visual selection: which datasets, keys and year ranges were brushed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Selection {
    pub dataset_names: Vec<String>,
    pub keys: Vec<String>,
    pub year_ranges: Vec<YearRange>,
    #[serde(default)]
    pub profile: WeightProfile,
}

impl Selection {
    pub fn single(dataset: &str, key: &str, range: YearRange, profile: WeightProfile) -> Self {
        Selection {
            dataset_names: vec![dataset.to_string()],
            keys: vec![key.to_string()],
            year_ranges: vec![range],
            profile,
        }
    }

    /// Checks that every (dataset, key, range) combination resolves.
    pub fn validate(&self, collection: &DatasetCollection) -> Result<()> {
        if self.dataset_names.is_empty() || self.keys.is_empty() || self.year_ranges.is_empty() {
            return Err(Error::InvalidSelection(
                "needs at least one dataset, key and year range".into(),
            ));
        }
        for r in &self.year_ranges {
            r.validate()?;
        }
        for name in &self.dataset_names {
            for key in &self.keys {
                collection.series(name, key)?;
            }
        }
        Ok(())
    }

    /// Combinations in key, dataset, range order.
    pub fn combinations(&self) -> impl Iterator<Item = (&str, &str, YearRange)> + '_ {
        self.keys.iter().flat_map(move |k| {
            self.dataset_names.iter().flat_map(move |n| {
                self.year_ranges.iter().map(move |r| (k.as_str(), n.as_str(), *r))
            })
        })
    }
}
