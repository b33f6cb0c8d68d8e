//! Output formatters: the Elasticsearch `simple_query_string` dialect and
//! the native form executed by the built-in index.
//!
//! Neither target supports the negative factor, so negated terms are kept
//! as ordinary operands.

use crate::query::{format_weight, simplify, QueryExpr};

/// Elasticsearch `simple_query_string` text.
///
/// `&` becomes `+`, phrases are double-quoted, weights use `^`, a required
/// operand becomes `+( .. )` and negation is dropped.
pub fn to_es_simple(expr: &QueryExpr) -> String {
    let mut out = String::new();
    write_es(&simplify_if_needed(expr), &mut out);
    out
}

fn simplify_if_needed(expr: &QueryExpr) -> std::borrow::Cow<'_, QueryExpr> {
    if expr.is_canonical() {
        std::borrow::Cow::Borrowed(expr)
    } else {
        std::borrow::Cow::Owned(simplify(expr))
    }
}

fn write_es(expr: &QueryExpr, out: &mut String) {
    match expr {
        QueryExpr::Term(t) => {
            if t.is_phrase() {
                out.push('"');
                out.push_str(t.text());
                out.push('"');
            } else {
                out.push_str(t.text());
            }
            if let Some(w) = format_weight(t.weight()) {
                out.push('^');
                out.push_str(&w);
            }
        }
        QueryExpr::Or(cs) => write_group(cs, " | ", out),
        QueryExpr::And(cs) => write_group(cs, " + ", out),
        QueryExpr::Required(c) => {
            out.push('+');
            if matches!(**c, QueryExpr::Or(_) | QueryExpr::And(_)) {
                write_es(c, out);
            } else {
                out.push('(');
                write_es(c, out);
                out.push(')');
            }
        }
        QueryExpr::Scaled(..) => unreachable!("simplified before formatting"),
    }
}

fn write_group(children: &[QueryExpr], sep: &str, out: &mut String) {
    out.push('(');
    for (i, c) in children.iter().enumerate() {
        if i > 0 {
            out.push_str(sep);
        }
        write_es(c, out);
    }
    out.push(')');
}

/// A query for the built-in index: the IR with every negation cleared.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalQuery(QueryExpr);

impl LocalQuery {
    pub fn expr(&self) -> &QueryExpr {
        &self.0
    }

    pub fn into_expr(self) -> QueryExpr {
        self.0
    }
}

pub fn to_local(expr: &QueryExpr) -> LocalQuery {
    let mut e = simplify_if_needed(expr).into_owned();
    clear_negation(&mut e);
    LocalQuery(e)
}

fn clear_negation(expr: &mut QueryExpr) {
    match expr {
        QueryExpr::Term(t) => t.clear_negative(),
        QueryExpr::Or(cs) | QueryExpr::And(cs) => cs.iter_mut().for_each(clear_negation),
        QueryExpr::Required(c) | QueryExpr::Scaled(c, _) => clear_negation(c),
    }
}
