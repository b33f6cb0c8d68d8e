use std::collections::HashMap;

use super::DocHit;
use crate::data::Document;
use crate::embeddings::CorpusStats;
use crate::format::LocalQuery;
use crate::par::{self, Execution};
use crate::query::QueryExpr;
use crate::text::{raw_words, Tokenizer};

const SNIPPET_RADIUS: usize = 15;

/// (doc, sorted positions) pairs, docs ascending.
type PostingList = Vec<(u32, Vec<u32>)>;

#[derive(Debug, Clone)]
struct IndexedDoc {
    id: String,
    /// Raw words of title + body, for snippets.
    words: Vec<String>,
    /// Raw word index of each token position.
    token_words: Vec<usize>,
}

/// In-memory positional inverted index over title + body.
#[derive(Debug, Clone)]
pub struct Index {
    tokenizer: Tokenizer,
    docs: Vec<IndexedDoc>,
    postings: HashMap<String, PostingList>,
}

impl Index {
    pub fn build(corpus: &[Document], tokenizer: Tokenizer) -> Self {
        let mut postings: HashMap<String, PostingList> = HashMap::new();
        let mut docs = Vec::with_capacity(corpus.len());
        for (d, doc) in corpus.iter().enumerate() {
            let text = doc.full_text();
            let tokens = tokenizer.tokens(&text);
            for (pos, tok) in tokens.iter().enumerate() {
                let list = postings.entry(tok.text.clone()).or_default();
                match list.last_mut() {
                    Some((last, positions)) if *last == d as u32 => positions.push(pos as u32),
                    _ => list.push((d as u32, vec![pos as u32])),
                }
            }
            docs.push(IndexedDoc {
                id: doc.id.clone(),
                words: raw_words(&text).map(str::to_string).collect(),
                token_words: tokens.iter().map(|t| t.word_index).collect(),
            });
        }
        Index {
            tokenizer,
            docs,
            postings,
        }
    }

    pub fn tokenizer(&self) -> &Tokenizer {
        &self.tokenizer
    }

    pub fn term_count(&self) -> usize {
        self.postings.len()
    }

    pub fn positions(&self, term: &str, doc_id: &str) -> Option<&[u32]> {
        let d = self.docs.iter().position(|d| d.id == doc_id)? as u32;
        self.postings
            .get(term)?
            .iter()
            .find(|(doc, _)| *doc == d)
            .map(|(_, p)| p.as_slice())
    }

    /// Occurrences of the token sequence `tokens` per document.
    fn phrase_matches(&self, tokens: &[String]) -> HashMap<u32, (usize, u32)> {
        let mut out = HashMap::new();
        let Some(first) = tokens.first().and_then(|t| self.postings.get(t)) else {
            return out;
        };
        let rest: Option<Vec<&PostingList>> =
            tokens[1..].iter().map(|t| self.postings.get(t)).collect();
        let Some(rest) = rest else { return out };
        for (doc, starts) in first {
            let lists: Option<Vec<&Vec<u32>>> = rest
                .iter()
                .map(|l| {
                    l.binary_search_by_key(doc, |(d, _)| *d)
                        .ok()
                        .map(|i| &l[i].1)
                })
                .collect();
            let Some(lists) = lists else { continue };
            let hits: Vec<u32> = starts
                .iter()
                .copied()
                .filter(|&s| {
                    lists
                        .iter()
                        .enumerate()
                        .all(|(k, l)| l.binary_search(&(s + k as u32 + 1)).is_ok())
                })
                .collect();
            if let Some(&first_hit) = hits.first() {
                out.insert(*doc, (hits.len(), first_hit));
            }
        }
        out
    }

    /// Runs `query` and returns at most `top_k` hits by score, ties by id.
    ///
    /// A term scores tf·idf·weight with idf = ln(1 + N/df); multi-token terms
    /// match as exact phrases. `Or` sums its matching children, `And` sums
    /// all children and needs each to match, `Required` children of an `Or`
    /// must match.
    pub fn execute(&self, query: &LocalQuery, top_k: usize, exec: Execution) -> Vec<DocHit> {
        let expr = query.expr();
        let mut stats: HashMap<&str, TermStats> = HashMap::new();
        for term in expr.terms() {
            stats
                .entry(term.text())
                .or_insert_with(|| self.term_stats(term.text()));
        }
        let mut candidates: Vec<u32> = stats
            .values()
            .flat_map(|s| s.per_doc.keys().copied())
            .collect();
        candidates.sort_unstable();
        candidates.dedup();

        let scored = par::map(exec, &candidates, |&doc| {
            eval(expr, doc, &stats).map(|m| (doc, m))
        });
        let mut hits: Vec<(u32, Match)> = scored.into_iter().flatten().collect();
        hits.sort_by(|a, b| {
            b.1.score
                .total_cmp(&a.1.score)
                .then_with(|| self.docs[a.0 as usize].id.cmp(&self.docs[b.0 as usize].id))
        });
        hits.truncate(top_k);
        hits.into_iter()
            .map(|(doc, m)| DocHit {
                doc_id: self.docs[doc as usize].id.clone(),
                score: m.score,
                snippet: self.snippet(doc, m.best_position),
            })
            .collect()
    }

    fn term_stats(&self, text: &str) -> TermStats {
        let tokens = self.tokenizer.tokenize(text);
        let per_doc: HashMap<u32, (usize, u32)> = match tokens.as_slice() {
            [] => HashMap::new(),
            [single] => self
                .postings
                .get(single)
                .map(|l| l.iter().map(|(d, p)| (*d, (p.len(), p[0]))).collect())
                .unwrap_or_default(),
            _ => self.phrase_matches(&tokens),
        };
        let df = per_doc.len();
        let idf = if df == 0 {
            0.0
        } else {
            (1.0 + self.docs.len() as f64 / df as f64).ln()
        };
        TermStats { idf, per_doc }
    }

    fn snippet(&self, doc: u32, position: Option<u32>) -> String {
        let d = &self.docs[doc as usize];
        let center = position
            .and_then(|p| d.token_words.get(p as usize).copied())
            .unwrap_or(0);
        let lo = center.saturating_sub(SNIPPET_RADIUS);
        let hi = (center + SNIPPET_RADIUS + 1).min(d.words.len());
        d.words[lo..hi].join(" ")
    }
}

impl CorpusStats for Index {
    fn doc_count(&self) -> usize {
        self.docs.len()
    }

    fn doc_freq(&self, term: &str) -> usize {
        self.postings.get(term).map_or(0, Vec::len)
    }
}

struct TermStats {
    idf: f64,
    /// doc -> (term frequency, first position)
    per_doc: HashMap<u32, (usize, u32)>,
}

#[derive(Debug, Clone, Copy)]
struct Match {
    score: f64,
    best_score: f64,
    best_position: Option<u32>,
}

impl Match {
    fn absorb(&mut self, other: Match) {
        self.score += other.score;
        if other.best_position.is_some()
            && (self.best_position.is_none() || other.best_score > self.best_score)
        {
            self.best_score = other.best_score;
            self.best_position = other.best_position;
        }
    }

    fn empty() -> Self {
        Match {
            score: 0.0,
            best_score: f64::NEG_INFINITY,
            best_position: None,
        }
    }
}

fn eval(expr: &QueryExpr, doc: u32, stats: &HashMap<&str, TermStats>) -> Option<Match> {
    match expr {
        QueryExpr::Term(t) => {
            let s = &stats[t.text()];
            let &(tf, first) = s.per_doc.get(&doc)?;
            let score = tf as f64 * s.idf * t.weight();
            Some(Match {
                score,
                best_score: score,
                best_position: Some(first),
            })
        }
        QueryExpr::Or(cs) => {
            let mut acc = Match::empty();
            let mut any = false;
            for c in cs {
                match eval(c, doc, stats) {
                    Some(m) => {
                        any = true;
                        acc.absorb(m);
                    }
                    None if matches!(c, QueryExpr::Required(_)) => return None,
                    None => {}
                }
            }
            any.then_some(acc)
        }
        QueryExpr::And(cs) => {
            let mut acc = Match::empty();
            for c in cs {
                acc.absorb(eval(c, doc, stats)?);
            }
            Some(acc)
        }
        QueryExpr::Required(c) => eval(c, doc, stats),
        QueryExpr::Scaled(..) => unreachable!("local queries are canonical"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::to_local;
    use crate::query::parse;

    fn doc(id: &str, body: &str) -> Document {
        Document {
            id: id.into(),
            title: String::new(),
            body: body.into(),
            url: None,
        }
    }

    fn corpus() -> Vec<Document> {
        vec![
            doc("a", "civil war war in the united states"),
            doc("b", "the war of the pacific in chile"),
            doc("c", "sweden and norway trade timber"),
        ]
    }

    fn run(index: &Index, q: &str, k: usize) -> Vec<DocHit> {
        index.execute(&to_local(&parse(q).unwrap()), k, Execution::Sequential)
    }

    #[test]
    fn document_frequencies() {
        let idx = Index::build(&corpus(), Tokenizer::default());
        assert_eq!(idx.doc_count(), 3);
        assert_eq!(idx.doc_freq("war"), 2);
        assert_eq!(idx.positions("war", "a"), Some(&[1, 2][..]));
        let empty = Index::build(&[], Tokenizer::default());
        assert_eq!(empty.doc_count(), 0);
        assert!(run(&empty, "war", 3).is_empty());
    }

    #[test]
    fn unique_term_finds_its_document() {
        let idx = Index::build(&corpus(), Tokenizer::default());
        let hits = run(&idx, "timber", 10);
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].doc_id, "c");
        assert!((hits[0].score - 4f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn phrases_need_adjacency() {
        let idx = Index::build(&corpus(), Tokenizer::default());
        assert_eq!(run(&idx, "(united states)", 10)[0].doc_id, "a");
        assert!(run(&idx, "\"(states united)\"", 10).is_empty());
        assert!(run(&idx, "(war | \"(states united)\")", 10).is_empty());
    }

    #[test]
    fn and_gates_or_sums() {
        let idx = Index::build(&corpus(), Tokenizer::default());
        let both = run(&idx, "(war & chile)", 10);
        assert_eq!(both.len(), 1);
        assert_eq!(both[0].doc_id, "b");
        let either = run(&idx, "(war | timber)", 10);
        assert_eq!(either.iter().map(|h| h.doc_id.as_str()).collect::<Vec<_>>(), ["a", "c", "b"]);
        assert_eq!(run(&idx, "(war | timber)", 1).len(), 1);
    }

    #[test]
    fn weights_scale_scores_linearly() {
        let idx = Index::build(&corpus(), Tokenizer::default());
        let one = run(&idx, "(war | chile | timber^0.5)", 10);
        let two = run(&idx, "(war^2 | chile^2 | timber)", 10);
        assert_eq!(
            one.iter().map(|h| &h.doc_id).collect::<Vec<_>>(),
            two.iter().map(|h| &h.doc_id).collect::<Vec<_>>()
        );
        for (a, b) in one.iter().zip(&two) {
            assert!((2.0 * a.score - b.score).abs() < 1e-12);
        }
    }

    #[test]
    fn snippet_centres_on_best_term() {
        let long: String = (0..60).map(|i| format!("w{i} ")).collect::<String>() + "famine";
        let idx = Index::build(&[doc("x", &long)], Tokenizer::default());
        let hit = &run(&idx, "famine", 1)[0];
        let words: Vec<&str> = hit.snippet.split(' ').collect();
        assert_eq!(words.len(), 16);
        assert_eq!(words.last(), Some(&"famine"));
    }
}
