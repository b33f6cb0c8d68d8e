use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use serde::Deserialize;

use crate::text::normalize;
use crate::{Error, Result};

/// Year-indexed values for one categorical key.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub key: String,
    pub points: BTreeMap<i32, f64>,
}

impl Series {
    /// Values at years in `[start, end]`, year-ordered.
    pub fn slice(&self, start: i32, end: i32) -> Vec<f64> {
        self.slice_points(start, end).map(|(_, v)| v).collect()
    }

    pub fn slice_points(&self, start: i32, end: i32) -> impl Iterator<Item = (i32, f64)> + '_ {
        (start <= end)
            .then(|| self.points.range(start..=end).map(|(y, v)| (*y, *v)))
            .into_iter()
            .flatten()
    }

    pub fn values(&self) -> Vec<f64> {
        self.points.values().copied().collect()
    }

    pub fn years(&self) -> Vec<i32> {
        self.points.keys().copied().collect()
    }

    pub fn first_year(&self) -> Option<i32> {
        self.points.keys().next().copied()
    }

    pub fn last_year(&self) -> Option<i32> {
        self.points.keys().next_back().copied()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: String,
    pub series: IndexMap<String, Series>,
}

impl Dataset {
    pub fn get(&self, key: &str) -> Option<&Series> {
        self.series.get(key).or_else(|| self.series.get(&normalize(key)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetCollection {
    pub id: String,
    pub datasets: IndexMap<String, Dataset>,
}

#[derive(Deserialize)]
struct Manifest {
    id: String,
    datasets: IndexMap<String, PathBuf>,
}

impl DatasetCollection {
    /// Loads a JSON manifest `{id, datasets: {name: csv_path}}`. CSV paths
    /// are relative to the manifest. Names and keys are normalized to
    /// lowercase words.
    pub fn load(manifest_path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(manifest_path).map_err(|e| Error::io(manifest_path, e))?;
        let manifest: Manifest = serde_json::from_str(&text)
            .map_err(|e| Error::format(manifest_path, e.line(), e.to_string()))?;
        let base = manifest_path.parent().unwrap_or(Path::new("."));
        let mut datasets = IndexMap::new();
        for (name, csv_path) in manifest.datasets {
            let name = normalize(&name);
            let path = base.join(csv_path);
            let file = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
            let dataset = parse_wide_csv(&name, &file, &path)?;
            if datasets.insert(name.clone(), dataset).is_some() {
                return Err(Error::format(manifest_path, 0, format!("duplicate dataset {name:?}")));
            }
        }
        Ok(DatasetCollection {
            id: manifest.id,
            datasets,
        })
    }

    pub fn dataset(&self, name: &str) -> Result<&Dataset> {
        self.datasets
            .get(name)
            .or_else(|| self.datasets.get(&normalize(name)))
            .ok_or_else(|| Error::UnknownDataset(name.to_string()))
    }

    pub fn series(&self, name: &str, key: &str) -> Result<&Series> {
        let dataset = self.dataset(name)?;
        dataset.get(key).ok_or_else(|| Error::UnknownKey {
            dataset: dataset.name.clone(),
            key: key.to_string(),
        })
    }

    /// The finding: values of `name`/`key` at years in `[start, end]`.
    pub fn slice(&self, name: &str, key: &str, start: i32, end: i32) -> Result<Vec<f64>> {
        Ok(self.series(name, key)?.slice(start, end))
    }

    /// Every (dataset, series) pair in load order.
    pub fn all_series(&self) -> impl Iterator<Item = (&Dataset, &Series)> {
        self.datasets
            .values()
            .flat_map(|d| d.series.values().map(move |s| (d, s)))
    }
}

/// Header `key,<year>,<year>..`; each row a key then values. Empty cells are
/// missing points.
pub fn parse_wide_csv(name: &str, text: &str, origin: &Path) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = reader.records();
    let header = match records.next() {
        Some(r) => r.map_err(|e| Error::format(origin, 1, e.to_string()))?,
        None => return Err(Error::format(origin, 1, "missing header row")),
    };
    let years = header
        .iter()
        .skip(1)
        .map(|cell| {
            cell.parse::<i32>()
                .map_err(|_| Error::format(origin, 1, format!("non-numeric year header {cell:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if years.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::format(origin, 1, "year columns must be strictly increasing"));
    }

    let mut series = IndexMap::new();
    for (i, record) in records.enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| Error::format(origin, line, e.to_string()))?;
        let Some(raw_key) = record.get(0) else { continue };
        let key = normalize(raw_key);
        if key.is_empty() {
            return Err(Error::format(origin, line, "empty key"));
        }
        if record.len() > years.len() + 1 {
            return Err(Error::format(origin, line, "more values than year columns"));
        }
        let mut points = BTreeMap::new();
        for (cell, year) in record.iter().skip(1).zip(&years) {
            if cell.is_empty() {
                continue;
            }
            let value: f64 = cell
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| Error::format(origin, line, format!("non-numeric value {cell:?}")))?;
            points.insert(*year, value);
        }
        if series.contains_key(&key) {
            return Err(Error::format(origin, line, format!("duplicate key {key:?}")));
        }
        series.insert(key.clone(), Series { key, points });
    }
    Ok(Dataset {
        name: name.to_string(),
        series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn csv(text: &str) -> Result<Dataset> {
        parse_wide_csv("life expectancy", text, Path::new("t.csv"))
    }

    #[test]
    fn wide_rows_become_series() {
        let d = csv("key,1950,1951\nusa,70.1,70.4\nchile,,55\n").unwrap();
        let usa = d.get("usa").unwrap();
        assert_eq!(usa.points, BTreeMap::from([(1950, 70.1), (1951, 70.4)]));
        assert_eq!(d.get("chile").unwrap().points, BTreeMap::from([(1951, 55.0)]));
        assert_eq!(d.get("USA").unwrap().key, "usa");
    }

    #[test]
    fn errors_name_the_line() {
        let line_of = |r: Result<Dataset>| match r {
            Err(Error::Format { line, .. }) => line,
            other => panic!("unexpected {other:?}"),
        };
        assert_eq!(line_of(csv("key,1950,x\n")), 1);
        assert_eq!(line_of(csv("key,1950\nusa,1\nusa,2\n")), 3);
        assert_eq!(line_of(csv("key,1950\nusa,abc\n")), 2);
    }

    #[test]
    fn slices() {
        let d = csv("key,1950,1951,1952,1953\nusa,1,2,,4\n").unwrap();
        let s = d.get("usa").unwrap();
        assert_eq!(s.slice(1950, 1953), vec![1.0, 2.0, 4.0]);
        assert_eq!(s.slice(1951, 1951), vec![2.0]);
        assert_eq!(s.slice(1952, 1952), Vec::<f64>::new());
        assert_eq!(s.slice(1900, 1949), Vec::<f64>::new());
        assert_eq!(s.slice(1953, 1950), Vec::<f64>::new());
    }
}
