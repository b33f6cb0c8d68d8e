//! Word vectors and the NLP operations built on them: keyword expansion by
//! nearest neighbours, term-set embedding and tf·idf keyword extraction.

use std::collections::{HashMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::par::{self, Execution};
use crate::text::{normalize, Tokenizer};
use crate::{Error, Result};

/// Dense word vectors, stored row-major with precomputed norms.
#[derive(Debug, Clone)]
pub struct EmbeddingModel {
    dimension: usize,
    words: Vec<String>,
    index: HashMap<String, usize>,
    data: Vec<f64>,
    norms: Vec<f64>,
}

impl EmbeddingModel {
    /// Loads the word-vector text format: `word v1 .. vD` per line.
    /// Duplicate words keep their first vector.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut dimension = 0;
        let mut words = Vec::new();
        let mut index = HashMap::new();
        let mut data = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let word = fields.next().expect("non-empty line").to_string();
            let values = fields
                .map(|f| f.parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::format(origin, line_no, format!("bad vector component: {e}")))?;
            if values.is_empty() {
                return Err(Error::format(origin, line_no, "word without a vector"));
            }
            if values.iter().any(|v| !v.is_finite()) {
                return Err(Error::format(origin, line_no, "non-finite vector component"));
            }
            if dimension == 0 {
                dimension = values.len();
            } else if values.len() != dimension {
                return Err(Error::format(
                    origin,
                    line_no,
                    format!("expected {dimension} components, found {}", values.len()),
                ));
            }
            if index.contains_key(&word) {
                continue;
            }
            index.insert(word.clone(), words.len());
            words.push(word);
            data.extend(values);
        }
        if words.is_empty() {
            return Err(Error::EmptyVocabulary(origin.to_path_buf()));
        }
        let norms = data.chunks(dimension).map(norm).collect();
        Ok(EmbeddingModel {
            dimension,
            words,
            index,
            data,
            norms,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn vector(&self, word: &str) -> Option<&[f64]> {
        self.index.get(word).map(|&i| self.row(i))
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dimension..(i + 1) * self.dimension]
    }

    /// The `k` vocabulary words most cosine-similar to `query`, best first,
    /// ties broken by word. Words in `exclude` and zero vectors are skipped.
    pub fn nearest(
        &self,
        query: &[f64],
        k: usize,
        exclude: &HashSet<&str>,
        exec: Execution,
    ) -> Vec<(String, f64)> {
        if k == 0 {
            return Vec::new();
        }
        let qn = norm(query);
        if qn == 0.0 {
            return Vec::new();
        }
        let scores = par::map_range(exec, self.words.len(), |i| {
            if self.norms[i] == 0.0 || exclude.contains(self.words[i].as_str()) {
                None
            } else {
                Some(dot(self.row(i), query) / (self.norms[i] * qn))
            }
        });
        let mut ranked: Vec<(usize, f64)> = scores
            .into_iter()
            .enumerate()
            .filter_map(|(i, s)| s.map(|s| (i, s)))
            .collect();
        ranked.sort_by(|a, b| {
            b.1.total_cmp(&a.1)
                .then_with(|| self.words[a.0].cmp(&self.words[b.0]))
        });
        ranked
            .into_iter()
            .take(k)
            .map(|(i, s)| (self.words[i].clone(), s))
            .collect()
    }

    /// Mean vector of the tokens of `text` that are in the vocabulary.
    pub fn mean_vector(&self, tokens: &[String]) -> Option<Vec<f64>> {
        let mut acc = vec![0.0; self.dimension];
        let mut n = 0usize;
        for v in tokens.iter().filter_map(|t| self.vector(t)) {
            acc.iter_mut().zip(v).for_each(|(a, x)| *a += x);
            n += 1;
        }
        (n > 0).then(|| {
            acc.iter_mut().for_each(|a| *a /= n as f64);
            acc
        })
    }
}

/// Curated negative terms per keyword. File format: `keyword: term, term`.
#[derive(Debug, Clone, Default)]
pub struct AntonymLexicon {
    entries: HashMap<String, Vec<String>>,
}

impl AntonymLexicon {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut entries: HashMap<String, Vec<String>> = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, terms) = line
                .split_once(':')
                .ok_or_else(|| Error::format(origin, i + 1, "expected `keyword: term, term`"))?;
            let key = normalize(key);
            if key.is_empty() {
                return Err(Error::format(origin, i + 1, "empty keyword"));
            }
            let list = entries.entry(key).or_default();
            for term in terms.split(',').map(normalize).filter(|t| !t.is_empty()) {
                if !list.contains(&term) {
                    list.push(term);
                }
            }
        }
        Ok(AntonymLexicon { entries })
    }

    pub fn negatives(&self, keyword: &str) -> &[String] {
        self.entries
            .get(&normalize(keyword))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// The NLP resources shared by converters and suggestions.
#[derive(Debug, Clone)]
pub struct Nlp {
    pub model: EmbeddingModel,
    pub lexicon: AntonymLexicon,
    pub tokenizer: Tokenizer,
}

impl Nlp {
    pub fn new(model: EmbeddingModel, lexicon: AntonymLexicon) -> Self {
        Nlp {
            model,
            lexicon,
            tokenizer: Tokenizer::default(),
        }
    }

    pub fn expand(&self, keyword: &str, k: usize) -> Vec<WeightedTerm> {
        expand(keyword, &self.model, &self.lexicon, &self.tokenizer, k)
    }

    pub fn embed(&self, terms: &[WeightedTerm]) -> Result<Vec<f64>> {
        embed_terms(terms, &self.model, &self.tokenizer)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedTerm {
    pub term: String,
    pub weight: f64,
    pub negative: bool,
}

impl WeightedTerm {
    pub fn positive(term: impl Into<String>, weight: f64) -> Self {
        WeightedTerm {
            term: term.into(),
            weight,
            negative: false,
        }
    }
}

/// Neighbour weights are cosine similarities rounded to two decimals.
fn neighbor_weight(cosine: f64) -> f64 {
    (cosine.min(1.0) * 100.0).round() / 100.0
}

/// Related terms for `keyword`.
///
/// The keyword's own tokens come first with weight 1, then up to `k`
/// nearest vocabulary words to the mean token vector (weight = cosine,
/// non-positive similarities dropped), then the lexicon's negative terms.
/// A keyword with no in-vocabulary token yields its tokens only.
pub fn expand(
    keyword: &str,
    model: &EmbeddingModel,
    lexicon: &AntonymLexicon,
    tokenizer: &Tokenizer,
    k: usize,
) -> Vec<WeightedTerm> {
    let mut tokens = tokenizer.tokenize(keyword);
    let mut seen = HashSet::new();
    tokens.retain(|t| seen.insert(t.clone()));

    let mut out: Vec<WeightedTerm> = tokens
        .iter()
        .map(|t| WeightedTerm::positive(t.clone(), 1.0))
        .collect();

    let Some(centroid) = model.mean_vector(&tokens) else {
        return out;
    };
    let negatives = lexicon.negatives(keyword);
    let mut exclude: HashSet<&str> = tokens.iter().map(String::as_str).collect();
    exclude.extend(negatives.iter().map(String::as_str));

    for (word, cos) in model.nearest(&centroid, k, &exclude, Execution::Sequential) {
        let weight = neighbor_weight(cos);
        if weight > 0.0 {
            out.push(WeightedTerm::positive(word, weight));
        }
    }
    for neg in negatives {
        out.push(WeightedTerm {
            term: neg.clone(),
            weight: 1.0,
            negative: true,
        });
    }
    out
}

pub fn cosine(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(a.len(), b.len()));
    }
    let (na, nb) = (norm(a), norm(b));
    if na == 0.0 || nb == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok((dot(a, b) / (na * nb)).clamp(-1.0, 1.0))
}

/// Weighted mean of the vectors of the non-negative terms that have at least
/// one in-vocabulary token. A multi-word term contributes its token mean.
pub fn embed_terms(
    terms: &[WeightedTerm],
    model: &EmbeddingModel,
    tokenizer: &Tokenizer,
) -> Result<Vec<f64>> {
    let mut acc = vec![0.0; model.dimension()];
    let mut total = 0.0;
    for t in terms.iter().filter(|t| !t.negative && t.weight > 0.0) {
        let v = match model.vector(&t.term) {
            Some(v) => v.to_vec(),
            None => match model.mean_vector(&tokenizer.tokenize(&t.term)) {
                Some(v) => v,
                None => continue,
            },
        };
        acc.iter_mut().zip(&v).for_each(|(a, x)| *a += t.weight * x);
        total += t.weight;
    }
    if total == 0.0 {
        return Err(Error::NoUsableTerm);
    }
    acc.iter_mut().for_each(|a| *a /= total);
    Ok(acc)
}

/// Document frequencies over a corpus.
pub trait CorpusStats {
    fn doc_count(&self) -> usize;
    fn doc_freq(&self, term: &str) -> usize;
}

/// Top-`k` tokens of `text` by tf·idf with idf = ln(1 + N/df). Terms unseen
/// in the corpus count as df = 1. Ties go to the lexicographically smaller
/// term.
pub fn extract_keywords(
    text: &str,
    stats: &dyn CorpusStats,
    tokenizer: &Tokenizer,
    k: usize,
) -> Vec<(String, f64)> {
    if k == 0 {
        return Vec::new();
    }
    let mut tf: HashMap<String, usize> = HashMap::new();
    for t in tokenizer.tokenize(text) {
        *tf.entry(t).or_default() += 1;
    }
    let n = stats.doc_count().max(1) as f64;
    let mut scored: Vec<(String, f64)> = tf
        .into_iter()
        .map(|(term, count)| {
            let df = stats.doc_freq(&term).max(1) as f64;
            let score = count as f64 * (1.0 + n / df).ln();
            (term, score)
        })
        .collect();
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    scored.truncate(k);
    scored
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::path::PathBuf;

    fn origin() -> PathBuf {
        PathBuf::from("test.vec")
    }

    fn toy_model() -> EmbeddingModel {
        let text = "\
life 1 0 0 0
expectancy 0.9 0.1 0 0
longevity 0.95 0.05 0.1 0
lifetime 0.8 0.2 0 0.1
death -1 0 0.2 0
war 0 1 0 0
peace 0 -1 0 0
";
        EmbeddingModel::parse(text, &origin()).unwrap()
    }

    #[test]
    fn load_rejects_bad_input() {
        assert!(matches!(
            EmbeddingModel::parse("", &origin()),
            Err(Error::EmptyVocabulary(_))
        ));
        match EmbeddingModel::parse("a 1 2 3\nb 1 2\n", &origin()) {
            Err(Error::Format { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match EmbeddingModel::parse("a 1 2\nb 1 x\n", &origin()) {
            Err(Error::Format { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_word_keeps_first() {
        let m = EmbeddingModel::parse("a 1 0\na 0 1\nb 1 1\n", &origin()).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.vector("a"), Some(&[1.0, 0.0][..]));
    }

    #[test]
    fn cosine_basics() {
        let v = [0.3, -1.2, 2.0];
        let neg: Vec<f64> = v.iter().map(|x| -x).collect();
        assert!((cosine(&v, &v).unwrap() - 1.0).abs() < 1e-12);
        assert!((cosine(&v, &neg).unwrap() + 1.0).abs() < 1e-12);
        assert_eq!(cosine(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
        assert!(matches!(cosine(&[0.0, 0.0], &[1.0, 0.0]), Err(Error::ZeroVector)));
        assert!(matches!(cosine(&[1.0], &[1.0, 0.0]), Err(Error::DimensionMismatch(1, 2))));
    }

    #[test]
    fn expansion_keeps_literals_and_appends_negatives() {
        let m = toy_model();
        let lex = AntonymLexicon::parse("life expectancy: mortality, death\n", &origin()).unwrap();
        let tok = Tokenizer::default();
        let out = expand("Life Expectancy", &m, &lex, &tok, 2);
        assert_eq!(out[0], WeightedTerm::positive("life", 1.0));
        assert_eq!(out[1], WeightedTerm::positive("expectancy", 1.0));
        let neighbors: Vec<&str> = out[2..4].iter().map(|t| t.term.as_str()).collect();
        assert_eq!(neighbors, vec!["longevity", "lifetime"]);
        assert!(out[2..4].iter().all(|t| t.weight > 0.0 && t.weight <= 1.0));
        let negs: Vec<&str> = out.iter().filter(|t| t.negative).map(|t| t.term.as_str()).collect();
        assert_eq!(negs, vec!["mortality", "death"]);
    }

    #[test]
    fn out_of_vocabulary_keyword_is_literal() {
        let out = expand(
            "zzz-unknown",
            &toy_model(),
            &AntonymLexicon::default(),
            &Tokenizer::default(),
            5,
        );
        assert_eq!(
            out,
            vec![WeightedTerm::positive("zzz", 1.0), WeightedTerm::positive("unknown", 1.0)]
        );
    }

    #[test]
    fn embed_terms_means() {
        let m = toy_model();
        let tok = Tokenizer::default();
        let single = embed_terms(&[WeightedTerm::positive("war", 1.0)], &m, &tok).unwrap();
        assert_eq!(single, vec![0.0, 1.0, 0.0, 0.0]);
        let mid = embed_terms(
            &[WeightedTerm::positive("war", 0.5), WeightedTerm::positive("peace", 0.5)],
            &m,
            &tok,
        )
        .unwrap();
        assert_eq!(mid, vec![0.0, 0.0, 0.0, 0.0]);
        let negative_only = WeightedTerm {
            term: "war".into(),
            weight: 1.0,
            negative: true,
        };
        assert!(embed_terms(&[negative_only], &m, &tok).is_err());
        assert!(embed_terms(&[WeightedTerm::positive("qqq", 1.0)], &m, &tok).is_err());
    }

    struct Stats(Vec<Vec<String>>);

    impl CorpusStats for Stats {
        fn doc_count(&self) -> usize {
            self.0.len()
        }
        fn doc_freq(&self, term: &str) -> usize {
            self.0.iter().filter(|d| d.iter().any(|t| t == term)).count()
        }
    }

    #[test]
    fn keywords_by_tfidf() {
        let tok = Tokenizer::default();
        let docs = ["war war war peace", "peace treaty"];
        let stats = Stats(docs.iter().map(|d| tok.tokenize(d)).collect());
        let top = extract_keywords(docs[0], &stats, &tok, 1);
        assert_eq!(top[0].0, "war");
        // war: 3·ln(1 + 2/1), peace: 1·ln(1 + 2/2)
        assert!((top[0].1 - 3.0 * 3f64.ln()).abs() < 1e-12);
        assert!(extract_keywords(docs[0], &stats, &tok, 0).is_empty());
        assert!(extract_keywords("", &stats, &tok, 3).is_empty());
        // in the second doc, "treaty" (df 1) outranks the shared "peace" (df 2)
        let second = extract_keywords(docs[1], &stats, &tok, 2);
        assert_eq!(second[0].0, "treaty");
        assert!((second[0].1 - 3f64.ln()).abs() < 1e-12);
        assert!((second[1].1 - 2f64.ln()).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn cosine_symmetric(a in prop::collection::vec(-10.0f64..10.0, 6),
                            b in prop::collection::vec(-10.0f64..10.0, 6)) {
            prop_assume!(norm(&a) > 1e-6 && norm(&b) > 1e-6);
            let ab = cosine(&a, &b).unwrap();
            let ba = cosine(&b, &a).unwrap();
            prop_assert!((ab - ba).abs() < 1e-12);
            prop_assert!((-1.0..=1.0).contains(&ab));
        }
    }
}
