//! Trend and pattern classification of the selected values.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::peaks::find_peaks;
use super::{convert_keyword, ConverterConfig};
use crate::embeddings::Nlp;
use crate::query::QueryExpr;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Trend {
    Ascending,
    Descending,
    Neutral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pattern {
    Stable,
    Peak,
    Valley,
    Unstable,
}

impl Trend {
    /// Keyword expanded into query terms; neutral contributes nothing.
    pub fn keyword(self) -> Option<&'static str> {
        match self {
            Trend::Ascending => Some("ascending"),
            Trend::Descending => Some("descending"),
            Trend::Neutral => None,
        }
    }
}

impl Pattern {
    pub const ALL: [Pattern; 4] = [Pattern::Stable, Pattern::Peak, Pattern::Valley, Pattern::Unstable];

    /// Keyword expanded into query terms; stable contributes nothing.
    pub fn keyword(self) -> Option<&'static str> {
        match self {
            Pattern::Stable => None,
            Pattern::Peak => Some("peak"),
            Pattern::Valley => Some("valley"),
            Pattern::Unstable => Some("unstable"),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Pattern::Stable => "stable",
            Pattern::Peak => "peak",
            Pattern::Valley => "valley",
            Pattern::Unstable => "unstable",
        }
    }
}

impl fmt::Display for Trend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Trend::Ascending => "ascending",
            Trend::Descending => "descending",
            Trend::Neutral => "neutral",
        })
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Centered moving average with half-window `w`, averaging only the
/// neighbours that exist near the boundaries.
pub fn moving_average(x: &[f64], w: usize) -> Vec<f64> {
    let n = x.len();
    (0..n)
        .map(|i| {
            let lo = i.saturating_sub(w);
            let hi = (i + w).min(n - 1);
            x[lo..=hi].iter().sum::<f64>() / (hi - lo + 1) as f64
        })
        .collect()
}

/// Sum of the signs of consecutive differences of the smoothed series.
pub fn trend_score(x: &[f64], w: usize) -> i64 {
    moving_average(x, w)
        .windows(2)
        .map(|p| match p[1].partial_cmp(&p[0]) {
            Some(std::cmp::Ordering::Greater) => 1,
            Some(std::cmp::Ordering::Less) => -1,
            _ => 0,
        })
        .sum()
}

pub fn detect_trend(x: &[f64], config: &ConverterConfig) -> Trend {
    if x.len() < 2 {
        return Trend::Neutral;
    }
    match trend_score(x, config.ma_window) {
        s if s > 0 => Trend::Ascending,
        s if s < 0 => Trend::Descending,
        _ => Trend::Neutral,
    }
}

/// Population standard deviation; 0 for an empty slice.
pub fn std_dev(x: &[f64]) -> f64 {
    if x.is_empty() {
        return 0.0;
    }
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    (x.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PatternAnalysis {
    pub pattern: Pattern,
    /// Pattern factor: count × (Σ width·prominence of peaks − same for
    /// valleys) / σ.
    pub pf: f64,
}

pub fn pattern_factor(x: &[f64], rel_height: f64) -> f64 {
    let sigma = std_dev(x);
    if sigma == 0.0 {
        return 0.0;
    }
    let area = |peaks: Vec<super::Peak>| -> f64 {
        peaks.iter().map(|p| p.width * p.prominence).sum()
    };
    let negated: Vec<f64> = x.iter().map(|v| -v).collect();
    let up = area(find_peaks(x, rel_height));
    let down = area(find_peaks(&negated, rel_height));
    x.len() as f64 * (up - down) / sigma
}

pub fn detect_pattern(x: &[f64], config: &ConverterConfig) -> PatternAnalysis {
    if std_dev(x) < config.lambda1 {
        return PatternAnalysis {
            pattern: Pattern::Stable,
            pf: 0.0,
        };
    }
    let pf = pattern_factor(x, config.width_rel_height);
    let pattern = if pf > config.lambda2 {
        Pattern::Peak
    } else if pf < -config.lambda2 {
        Pattern::Valley
    } else {
        Pattern::Unstable
    };
    PatternAnalysis { pattern, pf }
}

/// Trend and pattern of a finding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FindingSummary {
    pub trend: Trend,
    pub pattern: Pattern,
    pub pf: f64,
}

pub fn summarize(x: &[f64], config: &ConverterConfig) -> FindingSummary {
    let PatternAnalysis { pattern, pf } = detect_pattern(x, config);
    FindingSummary {
        trend: detect_trend(x, config),
        pattern,
        pf,
    }
}

/// Query terms describing the finding: the `And` of the expanded trend and
/// pattern keywords. Nothing for fewer than two values or a neutral, stable
/// finding.
pub fn convert_finding(x: &[f64], config: &ConverterConfig, nlp: &Nlp) -> Result<Option<QueryExpr>> {
    if x.len() <= 1 {
        return Ok(None);
    }
    let summary = summarize(x, config);
    let mut parts = Vec::new();
    for word in [summary.trend.keyword(), summary.pattern.keyword()].into_iter().flatten() {
        parts.push(convert_keyword(word, nlp, config.neighbor_k)?);
    }
    Ok(QueryExpr::all_of(parts))
}
