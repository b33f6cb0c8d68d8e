//! Nominal suggestions: related datasets and keys ranked either by how
//! strongly retrieved text mentions them or by how closely their series
//! follow the selected values.

mod pattern;
mod text;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use pattern::{dtw, dtw_sim, pearson, suggest_from_pattern, PatternMethod};
pub use text::{count_phrase, suggest_from_text, TextMode, TextSuggester};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankingKind {
    Dataset,
    Key,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankEntry {
    pub nominal: String,
    pub score: f64,
}

/// Nominals ordered by score, highest first, ties by name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranking {
    pub kind: RankingKind,
    pub entries: Vec<RankEntry>,
}

impl Ranking {
    pub fn new(kind: RankingKind, scores: impl IntoIterator<Item = (String, f64)>) -> Self {
        let mut entries: Vec<RankEntry> = scores
            .into_iter()
            .map(|(nominal, score)| RankEntry { nominal, score })
            .collect();
        entries.sort_by(|a, b| b.score.total_cmp(&a.score).then_with(|| a.nominal.cmp(&b.nominal)));
        Ranking { kind, entries }
    }

    pub fn empty(kind: RankingKind) -> Self {
        Ranking {
            kind,
            entries: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.nominal.as_str()).collect()
    }

    pub fn score_of(&self, nominal: &str) -> Option<f64> {
        self.entries.iter().find(|e| e.nominal == nominal).map(|e| e.score)
    }
}

macro_rules! name_enum {
    ($ty:ty { $($variant:ident => $name:literal),+ $(,)? }) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $(Self::$variant => $name),+ })
            }
        }

        impl FromStr for $ty {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, String> {
                match s.to_ascii_lowercase().as_str() {
                    $($name => Ok(Self::$variant),)+
                    other => Err(format!(
                        "unknown value {other:?}, expected one of: {}",
                        [$($name),+].join(", ")
                    )),
                }
            }
        }
    };
}

name_enum!(TextMode { Direct => "direct", Indirect => "indirect", Nlp => "nlp" });
name_enum!(PatternMethod { Pearson => "pearson", Dtw => "dtw" });
