use serde::{Deserialize, Serialize};

use super::{Ranking, RankingKind};
use crate::convert::std_dev;
use crate::data::{DatasetCollection, YearRange};
use crate::par::{self, Execution};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PatternMethod {
    #[default]
    Pearson,
    Dtw,
}

/// Pearson correlation with population normalization, clamped to [-1, 1].
pub fn pearson(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    if a.len() < 2 {
        return Err(Error::ZeroVariance);
    }
    let n = a.len() as f64;
    let (ma, mb) = (a.iter().sum::<f64>() / n, b.iter().sum::<f64>() / n);
    let (sa, sb) = (std_dev(a), std_dev(b));
    if sa == 0.0 || sb == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let cov = a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum::<f64>() / n;
    Ok((cov / (sa * sb)).clamp(-1.0, 1.0))
}

/// Dynamic time warping distance with point cost `|a - b|` and no window.
pub fn dtw(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySeries);
    }
    let m = b.len();
    let mut prev = vec![f64::INFINITY; m + 1];
    let mut cur = vec![f64::INFINITY; m + 1];
    prev[0] = 0.0;
    for x in a {
        cur[0] = f64::INFINITY;
        for j in 1..=m {
            let best = prev[j - 1].min(prev[j]).min(cur[j - 1]);
            cur[j] = (x - b[j - 1]).abs() + best;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev[m])
}

/// `1 / (1 + dtw)`, in (0, 1].
pub fn dtw_sim(a: &[f64], b: &[f64]) -> Result<f64> {
    Ok(1.0 / (1.0 + dtw(a, b)?))
}

fn similarity(method: PatternMethod, anchor: &[f64], other: &[f64]) -> f64 {
    let score = match method {
        PatternMethod::Pearson => pearson(anchor, other),
        PatternMethod::Dtw => dtw_sim(anchor, other),
    };
    // incomparable candidates stay in the ranking at zero
    score.unwrap_or(0.0)
}

/// Key and dataset rankings by similarity to the anchor finding.
///
/// Keys are the other keys of the anchor's dataset, datasets the other
/// datasets holding the anchor key, both sliced to the same range. Under
/// Pearson a finding with fewer than two values or no variance has nothing
/// to correlate with, and both rankings come back empty.
pub fn suggest_from_pattern(
    collection: &DatasetCollection,
    dataset: &str,
    key: &str,
    range: YearRange,
    method: PatternMethod,
    exec: Execution,
) -> Result<(Ranking, Ranking)> {
    range.validate()?;
    let anchor_dataset = collection.dataset(dataset)?;
    let anchor_series = collection.series(dataset, key)?;
    let anchor = anchor_series.slice(range.start, range.end);
    if anchor.is_empty() {
        return Err(Error::EmptySlice {
            dataset: anchor_dataset.name.clone(),
            key: anchor_series.key.clone(),
            start: range.start,
            end: range.end,
        });
    }
    if method == PatternMethod::Pearson && (anchor.len() < 2 || std_dev(&anchor) == 0.0) {
        return Ok((Ranking::empty(RankingKind::Key), Ranking::empty(RankingKind::Dataset)));
    }

    let keys: Vec<&crate::data::Series> = anchor_dataset
        .series
        .values()
        .filter(|s| s.key != anchor_series.key)
        .collect();
    let key_scores = par::map(exec, &keys, |s| {
        let slice = s.slice(range.start, range.end);
        (s.key.clone(), similarity(method, &anchor, &slice))
    });

    let others: Vec<(&str, &crate::data::Series)> = collection
        .datasets
        .values()
        .filter(|d| d.name != anchor_dataset.name)
        .filter_map(|d| d.get(&anchor_series.key).map(|s| (d.name.as_str(), s)))
        .collect();
    let dataset_scores = par::map(exec, &others, |(name, s)| {
        let slice = s.slice(range.start, range.end);
        (name.to_string(), similarity(method, &anchor, &slice))
    });

    Ok((
        Ranking::new(RankingKind::Key, key_scores),
        Ranking::new(RankingKind::Dataset, dataset_scores),
    ))
}
