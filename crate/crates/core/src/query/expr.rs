use std::fmt;

use crate::{Error, Result};

/// A weighted, possibly negated search term.
///
/// `text` is one or more `[a-z0-9]+` words separated by single spaces; a
/// multi-word text is a phrase.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    text: String,
    weight: f64,
    negative: bool,
}

impl Term {
    pub fn new(text: impl Into<String>, weight: f64, negative: bool) -> Result<Self> {
        let text = text.into();
        validate_text(&text)?;
        check_weight(weight)?;
        Ok(Term {
            text,
            weight,
            negative,
        })
    }

    /// A positive term with weight 1.
    pub fn word(text: impl Into<String>) -> Result<Self> {
        Term::new(text, 1.0, false)
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn is_phrase(&self) -> bool {
        self.text.contains(' ')
    }

    pub fn with_weight(mut self, weight: f64) -> Result<Self> {
        check_weight(weight)?;
        self.weight = weight;
        Ok(self)
    }

    pub(crate) fn set_weight_unchecked(&mut self, weight: f64) {
        self.weight = weight;
    }

    pub fn negated(mut self) -> Self {
        self.negative = true;
        self
    }

    pub(crate) fn clear_negative(&mut self) {
        self.negative = false;
    }
}

pub(crate) fn check_weight(weight: f64) -> Result<()> {
    if weight.is_finite() && weight > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidWeight(weight))
    }
}

fn validate_text(text: &str) -> Result<()> {
    let invalid = |reason| Error::InvalidTerm {
        text: text.to_string(),
        reason,
    };
    if text.is_empty() {
        return Err(invalid("empty text"));
    }
    for word in text.split(' ') {
        if word.is_empty() {
            return Err(invalid("words must be separated by single spaces"));
        }
        if !word
            .bytes()
            .all(|b| b.is_ascii_lowercase() || b.is_ascii_digit())
        {
            return Err(invalid("only lowercase letters and digits are allowed"));
        }
    }
    Ok(())
}

/// The weighted boolean query tree.
///
/// `Or`/`And` hold at least two children when built through [`QueryExpr::or`]
/// and [`QueryExpr::and`]. `Scaled` multiplies every weight below it and only
/// exists until [`simplify`](super::simplify) pushes it down to the terms.
#[derive(Debug, Clone, PartialEq)]
pub enum QueryExpr {
    Term(Term),
    Or(Vec<QueryExpr>),
    And(Vec<QueryExpr>),
    Required(Box<QueryExpr>),
    Scaled(Box<QueryExpr>, f64),
}

impl QueryExpr {
    pub fn or(children: Vec<QueryExpr>) -> Result<Self> {
        if children.len() < 2 {
            return Err(Error::Arity {
                operator: "or",
                count: children.len(),
            });
        }
        Ok(QueryExpr::Or(children))
    }

    pub fn and(children: Vec<QueryExpr>) -> Result<Self> {
        if children.len() < 2 {
            return Err(Error::Arity {
                operator: "and",
                count: children.len(),
            });
        }
        Ok(QueryExpr::And(children))
    }

    /// `Or` over `children`, collapsing zero or one child.
    pub fn any_of(mut children: Vec<QueryExpr>) -> Option<Self> {
        match children.len() {
            0 => None,
            1 => children.pop(),
            _ => Some(QueryExpr::Or(children)),
        }
    }

    /// `And` over `children`, collapsing zero or one child.
    pub fn all_of(mut children: Vec<QueryExpr>) -> Option<Self> {
        match children.len() {
            0 => None,
            1 => children.pop(),
            _ => Some(QueryExpr::And(children)),
        }
    }

    pub fn required(child: QueryExpr) -> Self {
        QueryExpr::Required(Box::new(child))
    }

    pub fn scaled(child: QueryExpr, factor: f64) -> Result<Self> {
        check_weight(factor)?;
        Ok(QueryExpr::Scaled(Box::new(child), factor))
    }

    pub fn as_term(&self) -> Option<&Term> {
        match self {
            QueryExpr::Term(t) => Some(t),
            _ => None,
        }
    }

    /// Every term in the tree, left to right. Weights are as stored, so
    /// pending `Scaled` factors are not applied.
    pub fn terms(&self) -> Vec<&Term> {
        let mut out = Vec::new();
        self.collect_terms(&mut out);
        out
    }

    fn collect_terms<'a>(&'a self, out: &mut Vec<&'a Term>) {
        match self {
            QueryExpr::Term(t) => out.push(t),
            QueryExpr::Or(cs) | QueryExpr::And(cs) => {
                cs.iter().for_each(|c| c.collect_terms(out))
            }
            QueryExpr::Required(c) | QueryExpr::Scaled(c, _) => c.collect_terms(out),
        }
    }

    pub fn is_canonical(&self) -> bool {
        match self {
            QueryExpr::Term(_) => true,
            QueryExpr::Scaled(..) => false,
            QueryExpr::Required(c) => c.is_canonical(),
            QueryExpr::Or(cs) => {
                cs.len() >= 2
                    && cs
                        .iter()
                        .all(|c| !matches!(c, QueryExpr::Or(_)) && c.is_canonical())
            }
            QueryExpr::And(cs) => {
                cs.len() >= 2
                    && cs
                        .iter()
                        .all(|c| !matches!(c, QueryExpr::And(_)) && c.is_canonical())
            }
        }
    }
}

impl From<Term> for QueryExpr {
    fn from(t: Term) -> Self {
        QueryExpr::Term(t)
    }
}

impl fmt::Display for QueryExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::print(self))
    }
}
