use super::expr::{QueryExpr, Term};
use super::scale;

/// Renders `expr` in the inner dialect. `Scaled` nodes are printed with their
/// factor already applied to the terms.
pub fn print(expr: &QueryExpr) -> String {
    let mut out = String::new();
    write_expr(expr, &mut out);
    out
}

/// Shortest round-tripping decimal form, or `None` for the implicit weight 1.
pub fn format_weight(weight: f64) -> Option<String> {
    (weight != 1.0).then(|| format!("{weight}"))
}

fn write_expr(expr: &QueryExpr, out: &mut String) {
    match expr {
        QueryExpr::Term(t) => write_term(t, out),
        QueryExpr::Or(cs) => write_group(cs, " | ", out),
        QueryExpr::And(cs) => write_group(cs, " & ", out),
        QueryExpr::Required(c) => {
            out.push('"');
            write_expr(c, out);
            out.push('"');
        }
        QueryExpr::Scaled(c, f) => {
            let pushed = scale(c, *f).expect("Scaled factor is validated at construction");
            write_expr(&pushed, out);
        }
    }
}

fn write_group(children: &[QueryExpr], sep: &str, out: &mut String) {
    out.push('(');
    for (i, c) in children.iter().enumerate() {
        if i > 0 {
            out.push_str(sep);
        }
        write_expr(c, out);
    }
    out.push(')');
}

fn write_term(t: &Term, out: &mut String) {
    if t.is_negative() {
        out.push('-');
    }
    // a bare phrase reads as one term; parentheses keep a weight or a
    // negation from binding to its last or first word only
    let weight = format_weight(t.weight());
    if t.is_phrase() && (weight.is_some() || t.is_negative()) {
        out.push('(');
        out.push_str(t.text());
        out.push(')');
    } else {
        out.push_str(t.text());
    }
    if let Some(w) = weight {
        out.push('^');
        out.push_str(&w);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn term(text: &str, w: f64) -> QueryExpr {
        Term::new(text, w, false).unwrap().into()
    }

    #[test]
    fn or_with_weight() {
        let e = QueryExpr::Or(vec![term("a", 1.0), term("b", 0.5)]);
        assert_eq!(print(&e), "(a | b^0.5)");
    }

    #[test]
    fn weighted_phrase() {
        assert_eq!(print(&term("north america", 0.5)), "(north america)^0.5");
        assert_eq!(print(&term("north america", 1.0)), "north america");
    }

    #[test]
    fn required_phrase_round_trips() {
        let e = QueryExpr::required(term("some words", 1.0));
        let text = print(&e);
        assert_eq!(text, "\"some words\"");
        assert_eq!(super::super::parse(&text).unwrap(), e);
    }

    #[test]
    fn negative_and_integral_weights() {
        let neg = QueryExpr::Term(Term::new("death", 2.0, true).unwrap());
        assert_eq!(print(&neg), "-death^2");
        let and = QueryExpr::And(vec![term("a", 1.0), neg]);
        assert_eq!(print(&and), "(a & -death^2)");
    }

    #[test]
    fn scaled_is_pushed_down() {
        let e = QueryExpr::scaled(QueryExpr::Or(vec![term("a", 1.0), term("b", 0.5)]), 2.0).unwrap();
        assert_eq!(print(&e), "(a^2 | b)");
    }
}
