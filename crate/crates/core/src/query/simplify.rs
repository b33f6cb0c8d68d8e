use super::expr::{check_weight, QueryExpr};
use crate::Result;

/// Multiplies every term weight by `factor`, resolving any `Scaled` nodes on
/// the way down.
pub fn scale(expr: &QueryExpr, factor: f64) -> Result<QueryExpr> {
    check_weight(factor)?;
    Ok(scale_unchecked(expr, factor))
}

fn scale_unchecked(expr: &QueryExpr, factor: f64) -> QueryExpr {
    match expr {
        QueryExpr::Term(t) => {
            let mut t = t.clone();
            t.set_weight_unchecked(t.weight() * factor);
            QueryExpr::Term(t)
        }
        QueryExpr::Or(cs) => QueryExpr::Or(cs.iter().map(|c| scale_unchecked(c, factor)).collect()),
        QueryExpr::And(cs) => {
            QueryExpr::And(cs.iter().map(|c| scale_unchecked(c, factor)).collect())
        }
        QueryExpr::Required(c) => QueryExpr::Required(Box::new(scale_unchecked(c, factor))),
        QueryExpr::Scaled(c, f) => scale_unchecked(c, f * factor),
    }
}

/// Rewrites `expr` into canonical form.
///
/// Bottom-up: `Scaled` nodes are pushed into the term weights, nested
/// same-operator groups are flattened, siblings with identical structure
/// (same term texts, polarity and shape, any weights) are merged keeping the
/// larger weight at each term, and single-child groups collapse. Sibling
/// order is otherwise kept.
pub fn simplify(expr: &QueryExpr) -> QueryExpr {
    match expr {
        QueryExpr::Term(_) => expr.clone(),
        QueryExpr::Scaled(c, f) => simplify(&scale_unchecked(c, *f)),
        QueryExpr::Required(c) => QueryExpr::Required(Box::new(simplify(c))),
        QueryExpr::Or(cs) => simplify_group(cs, true),
        QueryExpr::And(cs) => simplify_group(cs, false),
    }
}

fn simplify_group(children: &[QueryExpr], is_or: bool) -> QueryExpr {
    let mut flat: Vec<QueryExpr> = Vec::with_capacity(children.len());
    for child in children.iter().map(simplify) {
        match child {
            QueryExpr::Or(inner) if is_or => flat.extend(inner),
            QueryExpr::And(inner) if !is_or => flat.extend(inner),
            other => flat.push(other),
        }
    }

    let mut merged: Vec<QueryExpr> = Vec::with_capacity(flat.len());
    for child in flat {
        match merged.iter_mut().find(|m| same_shape(m, &child)) {
            Some(existing) => max_merge(existing, &child),
            None => merged.push(child),
        }
    }

    if merged.len() == 1 {
        return merged.pop().expect("len checked");
    }
    if is_or {
        QueryExpr::Or(merged)
    } else {
        QueryExpr::And(merged)
    }
}

fn same_shape(a: &QueryExpr, b: &QueryExpr) -> bool {
    match (a, b) {
        (QueryExpr::Term(x), QueryExpr::Term(y)) => {
            x.text() == y.text() && x.is_negative() == y.is_negative()
        }
        (QueryExpr::Or(xs), QueryExpr::Or(ys)) | (QueryExpr::And(xs), QueryExpr::And(ys)) => {
            xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| same_shape(x, y))
        }
        (QueryExpr::Required(x), QueryExpr::Required(y)) => same_shape(x, y),
        _ => false,
    }
}

/// Both trees must satisfy [`same_shape`].
fn max_merge(into: &mut QueryExpr, other: &QueryExpr) {
    match (into, other) {
        (QueryExpr::Term(x), QueryExpr::Term(y)) => {
            if y.weight() > x.weight() {
                x.set_weight_unchecked(y.weight());
            }
        }
        (QueryExpr::Or(xs), QueryExpr::Or(ys)) | (QueryExpr::And(xs), QueryExpr::And(ys)) => {
            for (x, y) in xs.iter_mut().zip(ys) {
                max_merge(x, y);
            }
        }
        (QueryExpr::Required(x), QueryExpr::Required(y)) => max_merge(x, y),
        _ => unreachable!("max_merge on differently shaped trees"),
    }
}
