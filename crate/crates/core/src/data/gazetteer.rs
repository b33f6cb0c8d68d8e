use std::collections::HashMap;
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::text::normalize;
use crate::{Error, Result};

fn default_region_weight() -> f64 {
    0.5
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountryEntry {
    #[serde(default)]
    pub synonyms: Vec<String>,
    #[serde(default)]
    pub region: Option<String>,
    #[serde(default = "default_region_weight")]
    pub region_weight: f64,
}

/// Country names with synonyms and containing region, searchable by any
/// name or synonym, case-insensitively.
#[derive(Debug, Clone, Default)]
pub struct Gazetteer {
    entries: IndexMap<String, CountryEntry>,
    lookup: HashMap<String, String>,
}

impl Gazetteer {
    /// Loads a JSON map `name -> {synonyms, region, region_weight}`.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let raw: IndexMap<String, CountryEntry> = serde_json::from_str(&text)
            .map_err(|e| Error::format(path, e.line(), e.to_string()))?;
        Self::from_entries(raw).map_err(|msg| Error::format(path, 0, msg))
    }

    pub fn from_entries(raw: IndexMap<String, CountryEntry>) -> std::result::Result<Self, String> {
        let mut entries = IndexMap::new();
        for (name, mut entry) in raw {
            let name = normalize(&name);
            entry.synonyms = entry.synonyms.iter().map(|s| normalize(s)).collect();
            entry.region = entry.region.as_deref().map(normalize).filter(|r| !r.is_empty());
            if !(entry.region_weight.is_finite() && entry.region_weight > 0.0) {
                return Err(format!("{name}: region_weight must be > 0"));
            }
            if entries.insert(name.clone(), entry).is_some() {
                return Err(format!("duplicate country {name:?}"));
            }
        }
        let mut lookup = HashMap::new();
        // Canonical names win over synonyms of other entries.
        for name in entries.keys() {
            lookup.insert(name.clone(), name.clone());
        }
        for (name, entry) in &entries {
            for s in &entry.synonyms {
                lookup.entry(s.clone()).or_insert_with(|| name.clone());
            }
        }
        Ok(Gazetteer { entries, lookup })
    }

    /// Resolves a name or synonym to its canonical entry.
    pub fn resolve(&self, name: &str) -> Option<(&str, &CountryEntry)> {
        let canonical = self.lookup.get(&normalize(name))?;
        self.entries
            .get_key_value(canonical)
            .map(|(k, v)| (k.as_str(), v))
    }

    /// Up to three known names within a small edit distance of `name`.
    pub fn near_matches(&self, name: &str) -> Vec<String> {
        let name = normalize(name);
        let mut scored: Vec<(usize, &String)> = self
            .lookup
            .keys()
            .map(|k| (strsim::levenshtein(&name, k), k))
            .filter(|(d, k)| *d <= (k.len() / 3).max(1))
            .collect();
        scored.sort();
        scored.into_iter().take(3).map(|(_, k)| k.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaz() -> Gazetteer {
        let raw: IndexMap<String, CountryEntry> = serde_json::from_str(
            r#"{
              "United States": {"synonyms": ["united states of america", "American", "america", "USA"],
                                "region": "North America"},
              "Mexico": {"synonyms": ["mexican"], "region": "north america", "region_weight": 0.4},
              "Nauru": {}
            }"#,
        )
        .unwrap();
        Gazetteer::from_entries(raw).unwrap()
    }

    #[test]
    fn resolves_names_and_synonyms() {
        let g = gaz();
        let (name, entry) = g.resolve("USA").unwrap();
        assert_eq!(name, "united states");
        assert_eq!(entry.region.as_deref(), Some("north america"));
        assert_eq!(entry.region_weight, 0.5);
        assert_eq!(g.resolve("United  States").unwrap().0, "united states");
        assert!(g.resolve("nauru").unwrap().1.region.is_none());
        assert!(g.resolve("atlantis").is_none());
    }

    #[test]
    fn near_matches_for_typos() {
        assert_eq!(gaz().near_matches("mexco"), vec!["mexico".to_string()]);
    }
}
