use crate::embeddings::Nlp;
use crate::query::{QueryExpr, Term};
use crate::text::normalize;
use crate::{Error, Result};

/// `Or` over the expansion of `name`: its tokens, up to `k` embedding
/// neighbours weighted by similarity, and its lexicon antonyms as negative
/// terms.
pub fn convert_keyword(name: &str, nlp: &Nlp, k: usize) -> Result<QueryExpr> {
    let mut terms: Vec<QueryExpr> = nlp
        .expand(name, k)
        .into_iter()
        .filter_map(|t| Term::new(t.term, t.weight, t.negative).ok())
        .map(QueryExpr::Term)
        .collect();
    if terms.is_empty() {
        // all stopwords: fall back to the literal words
        terms = normalize(name)
            .split(' ')
            .filter_map(|w| Term::word(w).ok())
            .map(QueryExpr::Term)
            .collect();
    }
    QueryExpr::any_of(terms).ok_or_else(|| Error::EmptyKeyword(name.to_string()))
}
