//! Tokenization with stopword removal and a rule-based plural lemmatizer.

use std::collections::HashSet;
use std::path::Path;
use std::sync::{Arc, LazyLock};

use crate::{Error, Result};

const STOPWORDS: &str = include_str!("../resources/stopwords.txt");
const LEMMA_EXCEPTIONS: &str = include_str!("../resources/lemma_exceptions.txt");

static DEFAULT: LazyLock<Tokenizer> =
    LazyLock::new(|| Tokenizer::from_lists(STOPWORDS, LEMMA_EXCEPTIONS));

/// Lowercases, splits on non-alphanumerics, lemmatizes plurals and drops
/// stopwords.
#[derive(Debug, Clone)]
pub struct Tokenizer {
    stopwords: Arc<HashSet<String>>,
    exceptions: Arc<HashSet<String>>,
}

/// A token together with the index of the raw word it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub word_index: usize,
}

impl Default for Tokenizer {
    fn default() -> Self {
        DEFAULT.clone()
    }
}

impl Tokenizer {
    /// Builds a tokenizer from one-word-per-line lists.
    pub fn from_lists(stopwords: &str, exceptions: &str) -> Self {
        let words = |s: &str| -> HashSet<String> {
            s.lines()
                .map(|l| l.trim().to_lowercase())
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .collect()
        };
        Tokenizer {
            stopwords: Arc::new(words(stopwords)),
            exceptions: Arc::new(words(exceptions)),
        }
    }

    pub fn from_files(stopwords: &Path, exceptions: &Path) -> Result<Self> {
        let read = |p: &Path| std::fs::read_to_string(p).map_err(|e| Error::io(p, e));
        Ok(Tokenizer::from_lists(&read(stopwords)?, &read(exceptions)?))
    }

    pub fn tokenize(&self, text: &str) -> Vec<String> {
        self.tokens(text).into_iter().map(|t| t.text).collect()
    }

    /// Like [`tokenize`](Self::tokenize) but keeps each token's position in
    /// [`raw_words`].
    pub fn tokens(&self, text: &str) -> Vec<Token> {
        raw_words(text)
            .enumerate()
            .filter_map(|(word_index, raw)| {
                let lower = raw.to_lowercase();
                if self.stopwords.contains(&lower) {
                    return None;
                }
                let lemma = self.lemmatize(lower);
                (!self.stopwords.contains(&lemma)).then_some(Token {
                    text: lemma,
                    word_index,
                })
            })
            .collect()
    }

    pub fn is_stopword(&self, word: &str) -> bool {
        self.stopwords.contains(word)
    }

    fn lemmatize(&self, word: String) -> String {
        if !word.chars().all(|c| c.is_alphabetic()) || self.exceptions.contains(&word) {
            return word;
        }
        if let Some(stem) = word.strip_suffix("ies") {
            if stem.chars().count() >= 2 {
                return format!("{stem}y");
            }
        }
        if word.ends_with("ss") || word.ends_with("us") || word.ends_with("is") {
            return word;
        }
        match word.strip_suffix('s') {
            Some(stem) if stem.chars().count() >= 3 => stem.to_string(),
            _ => word,
        }
    }
}

/// Maximal alphanumeric runs of `text`, in their original case.
pub fn raw_words(text: &str) -> impl Iterator<Item = &str> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
}

/// [`Tokenizer::tokenize`] with the bundled word lists.
pub fn tokenize(text: &str) -> Vec<String> {
    DEFAULT.tokenize(text)
}

/// Lowercase words of `text` joined by single spaces, keeping stopwords and
/// plurals. Used to normalize names and lexicon keys.
pub fn normalize(text: &str) -> String {
    raw_words(text)
        .map(|w| w.to_lowercase())
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lowercase_split() {
        assert_eq!(tokenize("Life Expectancy"), vec!["life", "expectancy"]);
        assert_eq!(tokenize("zzz-unknown"), vec!["zzz", "unknown"]);
    }

    #[test]
    fn plural_rules() {
        assert_eq!(tokenize("countries"), vec!["country"]);
        assert_eq!(tokenize("United States"), vec!["united", "state"]);
        assert_eq!(tokenize("series news class virus analysis gas"), vec![
            "series", "news", "class", "virus", "analysis", "gas"
        ]);
        assert_eq!(tokenize("1850s"), vec!["1850s"]);
    }

    #[test]
    fn stopwords_removed() {
        assert!(tokenize("the of and").is_empty());
        assert!(tokenize("").is_empty());
        // lemma that lands on a stopword is dropped too
        assert!(tokenize("hers").is_empty());
    }

    #[test]
    fn token_positions_index_raw_words() {
        let toks = Tokenizer::default().tokens("The Civil War, of 1861");
        let idx: Vec<usize> = toks.iter().map(|t| t.word_index).collect();
        assert_eq!(idx, vec![1, 2, 4]);
    }

    #[test]
    fn normalize_keeps_everything() {
        assert_eq!(normalize("  United States of  America "), "united states of america");
    }

    proptest! {
        #[test]
        fn idempotent(text in "[a-zA-Z0-9 ,.'-]{0,60}") {
            let once = tokenize(&text);
            let twice = tokenize(&once.join(" "));
            prop_assert_eq!(once, twice);
        }
    }
}
