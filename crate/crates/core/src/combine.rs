//! Combines per-data-type sub-expressions of a multi-input selection into
//! one query: every (key, dataset, range) combination becomes an `And`, and
//! the result is the intersection of all combinations at double weight
//! united with their union.

use std::collections::HashMap;

use indexmap::IndexMap;

use crate::data::YearRange;
use crate::query::{scale, simplify, QueryExpr};
use crate::{Error, Result};

pub type FindingKey = (String, String, YearRange);

#[derive(Debug, Clone, Default)]
pub struct ConversionBundle {
    pub country_exprs: IndexMap<String, QueryExpr>,
    pub dataset_exprs: IndexMap<String, QueryExpr>,
    pub year_exprs: IndexMap<YearRange, QueryExpr>,
    /// Indexed by (key, dataset, range); `None` when the finding had no
    /// terms.
    pub finding_exprs: HashMap<FindingKey, Option<QueryExpr>>,
}

impl ConversionBundle {
    /// One `And` per combination, keys outermost, ranges innermost.
    pub fn combination_sets(&self) -> Vec<QueryExpr> {
        let mut sets = Vec::new();
        for (key, country) in &self.country_exprs {
            for (name, dataset) in &self.dataset_exprs {
                for (range, years) in &self.year_exprs {
                    let mut parts = vec![country.clone(), dataset.clone(), years.clone()];
                    if let Some(Some(finding)) =
                        self.finding_exprs.get(&(key.clone(), name.clone(), *range))
                    {
                        parts.push(finding.clone());
                    }
                    sets.push(QueryExpr::And(parts));
                }
            }
        }
        sets
    }
}

/// `simplify((T_I)^2 | T_U)` with `T_I`/`T_U` the `And`/`Or` over every
/// combination set.
pub fn combine(bundle: &ConversionBundle) -> Result<QueryExpr> {
    if bundle.country_exprs.is_empty()
        || bundle.dataset_exprs.is_empty()
        || bundle.year_exprs.is_empty()
    {
        return Err(Error::InvalidSelection(
            "cannot combine an empty conversion bundle".into(),
        ));
    }
    let sets = combination_sets_checked(bundle)?;
    let intersection = QueryExpr::all_of(sets.clone()).expect("non-empty");
    let union = QueryExpr::any_of(sets).expect("non-empty");
    let doubled = scale(&intersection, 2.0)?;
    Ok(simplify(&QueryExpr::Or(vec![doubled, union])))
}

fn combination_sets_checked(bundle: &ConversionBundle) -> Result<Vec<QueryExpr>> {
    let expected =
        bundle.country_exprs.len() * bundle.dataset_exprs.len() * bundle.year_exprs.len();
    if !bundle.finding_exprs.is_empty() && bundle.finding_exprs.len() != expected {
        return Err(Error::InvalidSelection(format!(
            "expected {expected} finding entries, got {}",
            bundle.finding_exprs.len()
        )));
    }
    Ok(bundle.combination_sets())
}
