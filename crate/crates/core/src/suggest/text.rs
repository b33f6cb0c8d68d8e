use serde::{Deserialize, Serialize};

use super::{Ranking, RankingKind};
use crate::convert::{convert_country, convert_keyword};
use crate::data::{DatasetCollection, Document, Gazetteer};
use crate::embeddings::{cosine, extract_keywords, CorpusStats, Nlp, WeightedTerm};
use crate::query::QueryExpr;
use crate::text::normalize;
use crate::Result;

/// Document keywords compared against nominal expansions in `nlp` mode.
const DOC_KEYWORDS: usize = 10;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TextMode {
    #[default]
    Direct,
    Indirect,
    Nlp,
}

/// Occurrences of the word sequence `needle` in `haystack`, overlapping
/// allowed. An empty needle never occurs.
pub fn count_phrase(haystack: &[String], needle: &[String]) -> usize {
    if needle.is_empty() || needle.len() > haystack.len() {
        return 0;
    }
    haystack.windows(needle.len()).filter(|w| *w == needle).count()
}

#[derive(Debug, Clone)]
struct Nominal {
    name: String,
    /// Lowercase words of the name, stopwords kept.
    words: Vec<String>,
    /// Tokenized positive expansion terms.
    expansion: Vec<Vec<String>>,
    embedding: Option<Vec<f64>>,
}

/// Scores every dataset name and categorical key of a collection against
/// documents. Expansions and their embeddings are computed once up front.
#[derive(Debug, Clone, Default)]
pub struct TextSuggester {
    datasets: Vec<Nominal>,
    keys: Vec<Nominal>,
}

impl TextSuggester {
    /// Keys resolving in the gazetteer expand like countries, everything
    /// else like keywords.
    pub fn new(
        collection: &DatasetCollection,
        nlp: &Nlp,
        gazetteer: &Gazetteer,
        neighbor_k: usize,
    ) -> Self {
        let nominal = |name: &str, expr: Option<QueryExpr>| {
            let terms: Vec<WeightedTerm> = expr
                .map(|e| {
                    e.terms()
                        .into_iter()
                        .filter(|t| !t.is_negative())
                        .map(|t| WeightedTerm::positive(t.text(), t.weight()))
                        .collect()
                })
                .unwrap_or_default();
            Nominal {
                name: name.to_string(),
                words: normalize(name).split(' ').filter(|w| !w.is_empty()).map(str::to_string).collect(),
                expansion: terms
                    .iter()
                    .map(|t| nlp.tokenizer.tokenize(&t.term))
                    .filter(|t| !t.is_empty())
                    .collect(),
                embedding: nlp.embed(&terms).ok(),
            }
        };
        let datasets = collection
            .datasets
            .keys()
            .map(|name| nominal(name, convert_keyword(name, nlp, neighbor_k).ok()))
            .collect();
        let mut keys: Vec<Nominal> = Vec::new();
        for (_, series) in collection.all_series() {
            if keys.iter().any(|k| k.name == series.key) {
                continue;
            }
            let expr = convert_country(&series.key, gazetteer)
                .or_else(|_| convert_keyword(&series.key, nlp, neighbor_k))
                .ok();
            keys.push(nominal(&series.key, expr));
        }
        TextSuggester { datasets, keys }
    }

    /// (dataset ranking, key ranking) for one document's title and body.
    pub fn suggest(
        &self,
        nlp: &Nlp,
        doc: &Document,
        mode: TextMode,
        stats: &dyn CorpusStats,
    ) -> (Ranking, Ranking) {
        let text = doc.full_text();
        let scorer: Box<dyn Fn(&Nominal) -> f64> = match mode {
            TextMode::Direct => {
                let words: Vec<String> = normalize(&text).split(' ').map(str::to_string).collect();
                Box::new(move |n| count_phrase(&words, &n.words) as f64)
            }
            TextMode::Indirect => {
                let tokens = nlp.tokenizer.tokenize(&text);
                Box::new(move |n| {
                    if n.expansion.is_empty() {
                        return 0.0;
                    }
                    let total: usize = n.expansion.iter().map(|t| count_phrase(&tokens, t)).sum();
                    total as f64 / n.expansion.len() as f64
                })
            }
            TextMode::Nlp => {
                let keywords: Vec<WeightedTerm> =
                    extract_keywords(&text, stats, &nlp.tokenizer, DOC_KEYWORDS)
                        .into_iter()
                        .map(|(t, w)| WeightedTerm::positive(t, w))
                        .collect();
                let doc_vec = nlp.embed(&keywords).ok();
                Box::new(move |n| match (&doc_vec, &n.embedding) {
                    (Some(d), Some(e)) => cosine(d, e).unwrap_or(0.0),
                    _ => 0.0,
                })
            }
        };
        let rank = |kind, list: &[Nominal]| {
            Ranking::new(kind, list.iter().map(|n| (n.name.clone(), scorer(n))))
        };
        (rank(RankingKind::Dataset, &self.datasets), rank(RankingKind::Key, &self.keys))
    }
}

/// One-shot form of [`TextSuggester::suggest`].
pub fn suggest_from_text(
    doc: &Document,
    collection: &DatasetCollection,
    mode: TextMode,
    nlp: &Nlp,
    gazetteer: &Gazetteer,
    stats: &dyn CorpusStats,
    neighbor_k: usize,
) -> Result<(Ranking, Ranking)> {
    Ok(TextSuggester::new(collection, nlp, gazetteer, neighbor_k).suggest(nlp, doc, mode, stats))
}
