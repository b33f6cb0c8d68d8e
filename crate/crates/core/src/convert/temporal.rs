use crate::data::{WeightProfile, YearRange};
use crate::query::{QueryExpr, Term};
use crate::Result;

/// Bell-shaped year weight `1 / (1 + (x/γ)²)` rounded to one decimal, where
/// `x` is the distance to the range centre and `γ` a quarter of the span
/// (at least 1).
pub fn gaussian_weight(year: i32, range: YearRange) -> f64 {
    let center = (range.start as f64 + range.end as f64) / 2.0;
    let gamma = ((range.end - range.start) as f64 / 4.0).max(1.0);
    let x = (year as f64 - center) / gamma;
    (10.0 / (1.0 + x * x)).round() / 10.0
}

/// Weight of the period `[begin, begin + length]` for a selected range:
/// `1 - 2·(d_begin + d_end)/length`, where the distances count the years of
/// the period left uncovered at each end. `None` when not positive.
pub fn period_weight(range: YearRange, begin: i32, length: i32) -> Option<f64> {
    let end = begin + length;
    let uncovered = (range.start - begin).max(0) + (end - range.end).max(0);
    let numerator = length - 2 * uncovered;
    (numerator > 0).then(|| numerator as f64 / length as f64)
}

fn ordinal(n: i32) -> String {
    let suffix = match (n % 10, n % 100) {
        (_, 11..=13) => "th",
        (1, _) => "st",
        (2, _) => "nd",
        (3, _) => "rd",
        _ => "th",
    };
    format!("{n}{suffix}")
}

/// `Or` over every year of the range (weighted by `profile`), then the
/// overlapped decades (`1850s`) and centuries (`19th century`) whose
/// coverage weight stays positive.
pub fn convert_years(range: YearRange, profile: WeightProfile) -> Result<QueryExpr> {
    range.validate()?;
    let mut terms = Vec::with_capacity(range.len() + 2);
    for year in range.start..=range.end {
        let weight = match profile {
            WeightProfile::Uniform => 1.0,
            WeightProfile::Gaussian => gaussian_weight(year, range),
        };
        terms.push(QueryExpr::Term(Term::new(year.to_string(), weight, false)?));
    }
    for decade in range.start.div_euclid(10)..=range.end.div_euclid(10) {
        let begin = decade * 10;
        if let Some(w) = period_weight(range, begin, 10) {
            terms.push(QueryExpr::Term(Term::new(format!("{begin}s"), w, false)?));
        }
    }
    for century in range.start.div_euclid(100)..=range.end.div_euclid(100) {
        if let Some(w) = period_weight(range, century * 100, 100) {
            let text = format!("{} century", ordinal(century + 1));
            terms.push(QueryExpr::Term(Term::new(text, w, false)?));
        }
    }
    Ok(QueryExpr::any_of(terms).expect("a range has at least one year"))
}
