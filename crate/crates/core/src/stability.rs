//! Robustness of retrieval to imprecise selections.
//!
//! The most prominent peaks and valleys of every series are selected, each
//! selection is re-run with its endpoints nudged by up to a year, and the
//! overlap between the original and the nudged top-k document lists is
//! averaged per pattern type.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::convert::{detect_pattern, find_peaks, ConverterConfig, Pattern};
use crate::data::{Selection, Series, WeightProfile, YearRange};
use crate::engine::Engine;
use crate::par::{self, Execution};
use crate::search::SearchBackend;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct StabilityConfig {
    /// Patterns kept per series.
    pub top_n: usize,
    /// Odd count of offsets applied to each endpoint.
    pub window: usize,
    /// Documents compared per query.
    pub top_k: usize,
    pub profile: WeightProfile,
}

impl Default for StabilityConfig {
    fn default() -> Self {
        StabilityConfig {
            top_n: 6,
            window: 3,
            top_k: 10,
            profile: WeightProfile::Uniform,
        }
    }
}

impl StabilityConfig {
    pub fn validate(&self) -> Result<()> {
        if self.window.is_multiple_of(2) {
            return Err(Error::Config("stability window must be odd".into()));
        }
        if self.top_k == 0 {
            return Err(Error::Config("stability top_k must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtractedPattern {
    pub range: YearRange,
    pub pattern: Pattern,
    /// Year of the extremum.
    pub year: i32,
    pub prominence: f64,
}

/// The `n` most prominent peaks and valleys of a series, most prominent
/// first. Each spans its width (rounded up) on both sides of the extremum,
/// clipped to the series, and is classified from the values it spans.
pub fn extract_top_patterns(series: &Series, n: usize, config: &ConverterConfig) -> Vec<ExtractedPattern> {
    let values = series.values();
    let years = series.years();
    if values.len() < 3 || n == 0 {
        return Vec::new();
    }
    let negated: Vec<f64> = values.iter().map(|v| -v).collect();
    let mut found: Vec<_> = find_peaks(&values, config.width_rel_height)
        .into_iter()
        .chain(find_peaks(&negated, config.width_rel_height))
        .collect();
    // stable: equal prominences keep peaks before valleys, left to right
    found.sort_by(|a, b| b.prominence.total_cmp(&a.prominence));
    found.truncate(n);
    found
        .into_iter()
        .map(|p| {
            let half = p.width.ceil() as usize;
            let lo = p.index.saturating_sub(half);
            let hi = (p.index + half).min(values.len() - 1);
            ExtractedPattern {
                range: YearRange {
                    start: years[lo],
                    end: years[hi],
                },
                pattern: detect_pattern(&values[lo..=hi], config).pattern,
                year: years[p.index],
                prominence: p.prominence,
            }
        })
        .collect()
}

/// The original range followed by every distinct variant with each endpoint
/// shifted by up to `window / 2` years, clamped to `bounds`. Variants that
/// invert after clamping are dropped.
pub fn perturb(range: YearRange, window: usize, bounds: (i32, i32)) -> Vec<YearRange> {
    let h = (window / 2) as i32;
    let mut out = vec![range];
    for ds in -h..=h {
        for de in -h..=h {
            let r = YearRange {
                start: (range.start + ds).clamp(bounds.0, bounds.1),
                end: (range.end + de).clamp(bounds.0, bounds.1),
            };
            if r.start <= r.end && !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out
}

/// Mean share of the original list's documents found in each derived list:
/// `Σ |D ∩ Dᵢ| / (|D|·|Δ|)`.
pub fn stability<S: AsRef<str>>(original: &[S], derived: &[Vec<S>]) -> Result<f64> {
    if original.is_empty() {
        return Err(Error::EmptyResultList);
    }
    if derived.is_empty() {
        return Err(Error::NoDerivedLists);
    }
    let d: HashSet<&str> = original.iter().map(AsRef::as_ref).collect();
    let hits: usize = derived
        .iter()
        .map(|list| {
            let di: HashSet<&str> = list.iter().map(AsRef::as_ref).collect();
            d.intersection(&di).count()
        })
        .sum();
    Ok(hits as f64 / (original.len() * derived.len()) as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternStability {
    pub dataset: String,
    pub key: String,
    pub range: YearRange,
    pub pattern: Pattern,
    pub stability: f64,
    /// Derived queries that returned a list.
    pub derived: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TypeStats {
    pub mean: f64,
    pub std: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub patterns: Vec<PatternStability>,
    pub per_pattern_type: BTreeMap<Pattern, TypeStats>,
    pub overall_mean: f64,
    /// Queries issued, failed ones included.
    pub query_count: usize,
    /// Queries whose conversion or retrieval failed.
    pub failures: usize,
    /// Patterns left out because the original query found nothing or every
    /// derived query failed.
    pub skipped: usize,
}

impl StabilityReport {
    fn from_parts(patterns: Vec<PatternStability>, query_count: usize, failures: usize, skipped: usize) -> Self {
        let mut groups: BTreeMap<Pattern, Vec<f64>> = BTreeMap::new();
        for p in &patterns {
            groups.entry(p.pattern).or_default().push(p.stability);
        }
        let per_pattern_type = groups
            .into_iter()
            .map(|(k, v)| {
                let n = v.len() as f64;
                let mean = v.iter().sum::<f64>() / n;
                let var = v.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / n;
                (k, TypeStats { mean, std: var.sqrt(), count: v.len() })
            })
            .collect();
        let overall_mean = if patterns.is_empty() {
            0.0
        } else {
            patterns.iter().map(|p| p.stability).sum::<f64>() / patterns.len() as f64
        };
        StabilityReport {
            patterns,
            per_pattern_type,
            overall_mean,
            query_count,
            failures,
            skipped,
        }
    }

    /// Aligned per-type summary.
    pub fn to_table(&self) -> String {
        let mut out = format!("{:<10} {:>6} {:>8} {:>8}\n", "pattern", "count", "mean", "std");
        for (p, s) in &self.per_pattern_type {
            let _ = writeln!(out, "{:<10} {:>6} {:>8.4} {:>8.4}", p.name(), s.count, s.mean, s.std);
        }
        let _ = writeln!(
            out,
            "{:<10} {:>6} {:>8.4} {:>8}",
            "overall",
            self.patterns.len(),
            self.overall_mean,
            ""
        );
        let _ = write!(
            out,
            "queries {}, failures {}, skipped patterns {}",
            self.query_count, self.failures, self.skipped
        );
        out
    }
}

struct SeriesOutcome {
    patterns: Vec<PatternStability>,
    queries: usize,
    failures: usize,
    skipped: usize,
}

fn evaluate_series(
    engine: &Engine,
    backend: &dyn SearchBackend,
    config: &StabilityConfig,
    dataset: &str,
    series: &Series,
) -> SeriesOutcome {
    let mut out = SeriesOutcome {
        patterns: Vec::new(),
        queries: 0,
        failures: 0,
        skipped: 0,
    };
    let (Some(first), Some(last)) = (series.first_year(), series.last_year()) else {
        return out;
    };
    for found in extract_top_patterns(series, config.top_n, &engine.config.converter) {
        let mut lists: Vec<Option<Vec<String>>> = Vec::new();
        for range in perturb(found.range, config.window, (first, last)) {
            out.queries += 1;
            let selection = Selection::single(dataset, &series.key, range, config.profile);
            let hits = engine
                .convert(&selection)
                .and_then(|c| backend.search(&c.expr, config.top_k));
            match hits {
                Ok(h) => lists.push(Some(h.into_iter().map(|h| h.doc_id).collect())),
                Err(_) => {
                    out.failures += 1;
                    lists.push(None);
                }
            }
        }
        let mut lists = lists.into_iter();
        let original = lists.next().flatten();
        let derived: Vec<Vec<String>> = lists.flatten().collect();
        match original.map(|d| stability(&d, &derived)) {
            Some(Ok(s)) => out.patterns.push(PatternStability {
                dataset: dataset.to_string(),
                key: series.key.clone(),
                range: found.range,
                pattern: found.pattern,
                stability: s,
                derived: derived.len(),
            }),
            _ => out.skipped += 1,
        }
    }
    out
}

/// Runs the perturbation study over every series of the engine's
/// collection. Series are evaluated independently; the report lists
/// patterns in collection order whatever the execution mode.
pub fn run_stability(
    engine: &Engine,
    backend: &dyn SearchBackend,
    config: &StabilityConfig,
    exec: Execution,
) -> Result<StabilityReport> {
    config.validate()?;
    let all: Vec<(&str, &Series)> = engine
        .collection
        .all_series()
        .map(|(d, s)| (d.name.as_str(), s))
        .collect();
    let outcomes = par::map(exec, &all, |(dataset, series)| {
        evaluate_series(engine, backend, config, dataset, series)
    });
    let (mut patterns, mut queries, mut failures, mut skipped) = (Vec::new(), 0, 0, 0);
    for o in outcomes {
        patterns.extend(o.patterns);
        queries += o.queries;
        failures += o.failures;
        skipped += o.skipped;
    }
    Ok(StabilityReport::from_parts(patterns, queries, failures, skipped))
}
