use crate::data::Gazetteer;
use crate::query::{QueryExpr, Term};
use crate::{Error, Result};

/// `Or` over the country's name, its synonyms and its region, the region
/// carrying the entry's lower weight.
pub fn convert_country(name: &str, gazetteer: &Gazetteer) -> Result<QueryExpr> {
    let (canonical, entry) = gazetteer.resolve(name).ok_or_else(|| Error::UnknownCountry {
        name: name.to_string(),
        near: gazetteer.near_matches(name),
    })?;
    let mut terms = vec![QueryExpr::Term(Term::word(canonical)?)];
    let mut seen = vec![canonical];
    for s in &entry.synonyms {
        if !seen.contains(&s.as_str()) {
            seen.push(s);
            terms.push(QueryExpr::Term(Term::word(s.as_str())?));
        }
    }
    if let Some(region) = &entry.region {
        if !seen.contains(&region.as_str()) {
            terms.push(QueryExpr::Term(Term::new(region.as_str(), entry.region_weight, false)?));
        }
    }
    Ok(QueryExpr::any_of(terms).expect("at least the name"))
}
