//! Recursive-descent parser for the inner query dialect.
//!
//! ```text
//! expr     := group | required | term
//! group    := '(' phrase ')' weight? | '(' expr { op expr } ')' weight?
//! required := '"' expr '"'
//! term     := '-'? ( phrase | '(' phrase ')' ) weight?
//! phrase   := word { ' '+ word }
//! word     := [a-z0-9]+
//! weight   := '^' digits [ '.' digits ]
//! ```
//!
//! A group mixes `|` or `&` but never both. Consecutive words form one
//! phrase term, parenthesized or not. A parenthesized single
//! expression is plain grouping; a weight after a group scales every term in
//! it.

use std::fmt;

use super::expr::{QueryExpr, Term};
use super::scale;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

pub fn parse(input: &str) -> Result<QueryExpr, ParseError> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Clone, Copy, PartialEq)]
enum Op {
    Or,
    And,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.pos.min(self.src.len()),
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek() == Some(b' ') {
            self.pos += 1;
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), ParseError> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", byte as char)))
        }
    }

    fn expr(&mut self) -> Result<QueryExpr, ParseError> {
        match self.peek() {
            Some(b'(') => self.group(),
            Some(b'"') => {
                self.pos += 1;
                self.skip_ws();
                let inner = self.expr()?;
                self.skip_ws();
                self.expect(b'"')?;
                Ok(QueryExpr::required(inner))
            }
            Some(b'-') => {
                self.pos += 1;
                let start = self.pos;
                let text = if self.peek() == Some(b'(') {
                    self.pos += 1;
                    match self.phrase_then_close() {
                        Some(text) => text,
                        None => {
                            self.pos = start;
                            return Err(self.error("negation applies only to a word or phrase"));
                        }
                    }
                } else {
                    self.bare_phrase()?
                };
                self.term(text, true, start)
            }
            Some(b) if is_word_byte(b) => {
                let start = self.pos;
                let text = self.bare_phrase()?;
                self.term(text, false, start)
            }
            Some(_) => Err(self.error("expected a term, group or required expression")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn term(&mut self, text: String, negative: bool, start: usize) -> Result<QueryExpr, ParseError> {
        let weight = self.weight()?.unwrap_or(1.0);
        Term::new(text, weight, negative)
            .map(QueryExpr::Term)
            .map_err(|e| ParseError {
                position: start,
                message: e.to_string(),
            })
    }

    fn word(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(is_word_byte) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a word"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    /// Words up to the next operator, parenthesis, quote or weight, joined
    /// by single spaces.
    fn bare_phrase(&mut self) -> Result<String, ParseError> {
        let mut words = vec![self.word()?];
        loop {
            let save = self.pos;
            self.skip_ws();
            if self.pos > save && self.peek().is_some_and(is_word_byte) {
                words.push(self.word()?);
            } else {
                self.pos = save;
                return Ok(words.join(" "));
            }
        }
    }

    /// Tries `phrase ')'` right after an opening parenthesis. Leaves the
    /// position untouched when the group is not a plain phrase.
    fn phrase_then_close(&mut self) -> Option<String> {
        let start = self.pos;
        let mut i = start;
        loop {
            let word_start = i;
            while self.src.get(i).copied().is_some_and(is_word_byte) {
                i += 1;
            }
            if i == word_start {
                return None;
            }
            match self.src.get(i) {
                Some(b' ') => i += 1,
                Some(b')') => {
                    self.pos = i + 1;
                    return Some(String::from_utf8_lossy(&self.src[start..i]).into_owned());
                }
                _ => return None,
            }
        }
    }

    fn group(&mut self) -> Result<QueryExpr, ParseError> {
        let open = self.pos;
        self.expect(b'(')?;
        if let Some(text) = self.phrase_then_close() {
            return self.term(text, false, open + 1);
        }
        self.skip_ws();
        if self.peek() == Some(b')') {
            return Err(self.error("empty group"));
        }
        let mut children = vec![self.expr()?];
        let mut op = None;
        loop {
            self.skip_ws();
            let next = match self.peek() {
                Some(b')') => {
                    self.pos += 1;
                    break;
                }
                Some(b'|') => Op::Or,
                Some(b'&') => Op::And,
                Some(_) => return Err(self.error("expected '|', '&' or ')'")),
                None => {
                    return Err(ParseError {
                        position: open,
                        message: "unmatched '('".into(),
                    })
                }
            };
            if op.is_some_and(|o| o != next) {
                return Err(self.error("cannot mix '|' and '&' in one group"));
            }
            op = Some(next);
            self.pos += 1;
            self.skip_ws();
            children.push(self.expr()?);
        }
        let expr = match op {
            None => children.pop().expect("one child"),
            Some(Op::Or) => QueryExpr::Or(children),
            Some(Op::And) => QueryExpr::And(children),
        };
        match self.weight()? {
            Some(w) => Ok(scale(&expr, w).expect("weight validated")),
            None => Ok(expr),
        }
    }

    fn weight(&mut self) -> Result<Option<f64>, ParseError> {
        if self.peek() != Some(b'^') {
            return Ok(None);
        }
        self.pos += 1;
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.peek().is_some_and(|b| b.is_ascii_digit()) {
                p.pos += 1;
            }
            p.pos > s
        };
        if !digits(self) {
            return Err(self.error("malformed weight: expected digits after '^'"));
        }
        if self.peek() == Some(b'.') {
            self.pos += 1;
            if !digits(self) {
                return Err(self.error("malformed weight: expected digits after '.'"));
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let value: f64 = text.parse().map_err(|_| ParseError {
            position: start,
            message: format!("malformed weight {text:?}"),
        })?;
        if !(value.is_finite() && value > 0.0) {
            return Err(ParseError {
                position: start,
                message: "weight must be > 0".into(),
            });
        }
        if self.peek() == Some(b'^') {
            return Err(self.error("only one weight per operand"));
        }
        Ok(Some(value))
    }
}

fn is_word_byte(b: u8) -> bool {
    b.is_ascii_lowercase() || b.is_ascii_digit()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(text: &str) -> QueryExpr {
        Term::word(text).unwrap().into()
    }

    fn tw(text: &str, w: f64) -> QueryExpr {
        Term::new(text, w, false).unwrap().into()
    }

    #[test]
    fn keyword_expression_with_negation() {
        let e = parse("(life | expectancy | -mortality)").unwrap();
        assert_eq!(
            e,
            QueryExpr::Or(vec![
                t("life"),
                t("expectancy"),
                Term::new("mortality", 1.0, true).unwrap().into(),
            ])
        );
    }

    #[test]
    fn phrase_inside_or() {
        let e = parse("((united states) | usa)").unwrap();
        assert_eq!(e, QueryExpr::Or(vec![t("united states"), t("usa")]));
        assert!(e.as_term().is_none());
    }

    #[test]
    fn bare_phrases() {
        assert_eq!(
            parse("(united states | usa | (north america)^0.5)").unwrap(),
            QueryExpr::Or(vec![t("united states"), t("usa"), tw("north america", 0.5)])
        );
        assert_eq!(parse("a  b").unwrap(), t("a b"));
        assert_eq!(
            parse("-united states").unwrap(),
            QueryExpr::Term(Term::new("united states", 1.0, true).unwrap())
        );
    }

    #[test]
    fn single_word() {
        assert_eq!(parse("a").unwrap(), t("a"));
        assert_eq!(parse("(a)").unwrap(), t("a"));
        assert_eq!(parse("1851^0.2").unwrap(), tw("1851", 0.2));
    }

    #[test]
    fn weighted_phrase_and_required() {
        assert_eq!(parse("(north america)^0.5").unwrap(), tw("north america", 0.5));
        assert_eq!(
            parse("\"(some words)\"").unwrap(),
            QueryExpr::required(t("some words"))
        );
        assert_eq!(
            parse("-(north america)^0.5").unwrap(),
            QueryExpr::Term(Term::new("north america", 0.5, true).unwrap())
        );
    }

    #[test]
    fn group_weight_scales() {
        assert_eq!(
            parse("(a | b^0.5)^2").unwrap(),
            QueryExpr::Or(vec![tw("a", 2.0), tw("b", 1.0)])
        );
        assert_eq!(parse("(-mexico^0.5)").unwrap(), {
            QueryExpr::Term(Term::new("mexico", 0.5, true).unwrap())
        });
    }

    #[test]
    fn errors_carry_offsets() {
        let err = |s: &str| parse(s).unwrap_err();
        assert_eq!(err("(a | b").position, 0);
        assert_eq!(err("()").position, 1);
        assert_eq!(err("a^").position, 2);
        assert_eq!(err("a^.5").position, 2);
        assert_eq!(err("a^0").position, 2);
        assert_eq!(err("(a | b & c)").position, 7);
        assert_eq!(err("a b(").position, 3);
        assert_eq!(err("A").position, 0);
        assert_eq!(err("").position, 0);
        assert_eq!(err("-(a | b)").position, 1);
        assert_eq!(err("a^1^2").position, 3);
        assert_eq!(err("\"a").position, 2);
    }
}
