//! Loaded resources plus the end-to-end pipeline: selection to query,
//! query to documents, documents and values to suggestions.

use std::collections::HashMap;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::combine::{combine, ConversionBundle};
use crate::config::{BackendKind, Config};
use crate::convert::{
    convert_country, convert_finding, convert_keyword, convert_years, summarize, Pattern, Trend,
};
use crate::data::{load_corpus, DatasetCollection, Document, Gazetteer, Selection, YearRange};
use crate::embeddings::{AntonymLexicon, EmbeddingModel, Nlp};
use crate::format::to_es_simple;
use crate::par::Execution;
use crate::query::{print, QueryExpr};
use crate::search::{DocHit, EsClient, Index, SearchBackend};
use crate::suggest::{suggest_from_pattern, PatternMethod, Ranking, TextMode, TextSuggester};
use crate::{Error, Result};

/// Trend and pattern of one (key, dataset, range) combination.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FindingInfo {
    pub key: String,
    pub dataset: String,
    pub range: YearRange,
    pub trend: Trend,
    pub pattern: Pattern,
    pub pf: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Conversion {
    pub expr: QueryExpr,
    pub ir_text: String,
    pub es_query: String,
    /// One per combination, in key, dataset, range order.
    pub findings: Vec<FindingInfo>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QueryOptions {
    pub top_k: usize,
    pub text_mode: TextMode,
    pub pattern_method: PatternMethod,
    /// Overrides the configured backend for this query.
    pub backend: Option<BackendKind>,
}

impl Default for QueryOptions {
    fn default() -> Self {
        QueryOptions {
            top_k: 10,
            text_mode: TextMode::default(),
            pattern_method: PatternMethod::default(),
            backend: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocSuggestions {
    pub doc_id: String,
    pub datasets: Ranking,
    pub keys: Ranking,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternSuggestions {
    pub keys: Ranking,
    pub datasets: Ranking,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueryResult {
    pub conversion: Conversion,
    pub documents: Vec<DocHit>,
    pub per_document_suggestions: Vec<DocSuggestions>,
    pub pattern_suggestions: PatternSuggestions,
}

pub struct Engine {
    pub config: Config,
    pub collection: DatasetCollection,
    pub nlp: Nlp,
    pub gazetteer: Gazetteer,
    pub corpus: Vec<Document>,
    pub index: Index,
    doc_lookup: HashMap<String, usize>,
    suggester: TextSuggester,
    es: EsClient,
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine")
            .field("collection", &self.collection.id)
            .field("documents", &self.corpus.len())
            .field("backend", &self.config.backend)
            .finish_non_exhaustive()
    }
}

impl Engine {
    /// Loads every resource named by `config`.
    pub fn load(config: Config) -> Result<Self> {
        let collection = DatasetCollection::load(&config.paths.manifest)?;
        let model = EmbeddingModel::load(&config.paths.embeddings)?;
        let lexicon = AntonymLexicon::load(&config.paths.antonyms)?;
        let gazetteer = Gazetteer::load(&config.paths.gazetteer)?;
        let corpus = load_corpus(&config.paths.corpus)?;
        Self::from_parts(config, collection, Nlp::new(model, lexicon), gazetteer, corpus)
    }

    pub fn from_parts(
        config: Config,
        collection: DatasetCollection,
        nlp: Nlp,
        gazetteer: Gazetteer,
        corpus: Vec<Document>,
    ) -> Result<Self> {
        config.validate()?;
        let index = Index::build(&corpus, nlp.tokenizer.clone());
        let doc_lookup = corpus.iter().enumerate().map(|(i, d)| (d.id.clone(), i)).collect();
        let suggester =
            TextSuggester::new(&collection, &nlp, &gazetteer, config.converter.neighbor_k);
        let es = EsClient::new(config.es.clone());
        Ok(Engine {
            config,
            collection,
            nlp,
            gazetteer,
            corpus,
            index,
            doc_lookup,
            suggester,
            es,
        })
    }

    /// The configured search backend.
    pub fn backend(&self) -> &dyn SearchBackend {
        self.backend_of(self.config.backend)
    }

    pub fn backend_of(&self, kind: BackendKind) -> &dyn SearchBackend {
        match kind {
            BackendKind::Local => &self.index,
            BackendKind::Es => &self.es,
        }
    }

    pub fn document(&self, id: &str) -> Option<&Document> {
        self.doc_lookup.get(id).map(|&i| &self.corpus[i])
    }

    /// Converts a selection through every data-type converter and the
    /// combiner. Keys known to the gazetteer convert as countries, others
    /// as keywords.
    pub fn convert(&self, selection: &Selection) -> Result<Conversion> {
        selection.validate(&self.collection)?;
        let cfg = &self.config.converter;
        let mut bundle = ConversionBundle::default();
        let mut findings = Vec::new();
        for (key, name, range) in selection.combinations() {
            let dataset = self.collection.dataset(name)?;
            let series = self.collection.series(name, key)?;
            if !bundle.country_exprs.contains_key(&series.key) {
                let expr = match convert_country(&series.key, &self.gazetteer) {
                    Ok(e) => e,
                    Err(Error::UnknownCountry { .. }) => {
                        convert_keyword(&series.key, &self.nlp, cfg.neighbor_k)?
                    }
                    Err(e) => return Err(e),
                };
                bundle.country_exprs.insert(series.key.clone(), expr);
            }
            if !bundle.dataset_exprs.contains_key(&dataset.name) {
                let expr = convert_keyword(&dataset.name, &self.nlp, cfg.neighbor_k)?;
                bundle.dataset_exprs.insert(dataset.name.clone(), expr);
            }
            if !bundle.year_exprs.contains_key(&range) {
                bundle.year_exprs.insert(range, convert_years(range, selection.profile)?);
            }
            let values = series.slice(range.start, range.end);
            if values.is_empty() {
                return Err(Error::EmptySlice {
                    dataset: dataset.name.clone(),
                    key: series.key.clone(),
                    start: range.start,
                    end: range.end,
                });
            }
            let summary = summarize(&values, cfg);
            findings.push(FindingInfo {
                key: series.key.clone(),
                dataset: dataset.name.clone(),
                range,
                trend: summary.trend,
                pattern: summary.pattern,
                pf: summary.pf,
            });
            bundle.finding_exprs.insert(
                (series.key.clone(), dataset.name.clone(), range),
                convert_finding(&values, cfg, &self.nlp)?,
            );
        }
        let expr = combine(&bundle)?;
        Ok(Conversion {
            ir_text: print(&expr),
            es_query: to_es_simple(&expr),
            expr,
            findings,
        })
    }

    pub fn search(&self, expr: &QueryExpr, top_k: usize) -> Result<Vec<DocHit>> {
        self.backend().search(expr, top_k)
    }

    /// Convert, retrieve, then suggest from each hit's text and from the
    /// anchor finding (the selection's first key, dataset and range).
    pub fn query(&self, selection: &Selection, options: QueryOptions, exec: Execution) -> Result<QueryResult> {
        let conversion = self.convert(selection)?;
        let backend = self.backend_of(options.backend.unwrap_or(self.config.backend));
        let documents = backend.search(&conversion.expr, options.top_k)?;
        let per_document_suggestions = documents
            .iter()
            .map(|hit| {
                let doc = self.document(&hit.doc_id).cloned().unwrap_or_else(|| Document {
                    id: hit.doc_id.clone(),
                    title: String::new(),
                    body: hit.snippet.clone(),
                    url: None,
                });
                let (datasets, keys) =
                    self.suggester.suggest(&self.nlp, &doc, options.text_mode, &self.index);
                DocSuggestions {
                    doc_id: hit.doc_id.clone(),
                    datasets,
                    keys,
                }
            })
            .collect();
        let anchor = &conversion.findings[0];
        let (keys, datasets) = suggest_from_pattern(
            &self.collection,
            &anchor.dataset,
            &anchor.key,
            anchor.range,
            options.pattern_method,
            exec,
        )?;
        Ok(QueryResult {
            conversion,
            documents,
            per_document_suggestions,
            pattern_suggestions: PatternSuggestions { keys, datasets },
        })
    }

    /// Text suggestions for one document of the corpus.
    pub fn suggest_text(&self, doc: &Document, mode: TextMode) -> (Ranking, Ranking) {
        self.suggester.suggest(&self.nlp, doc, mode, &self.index)
    }

    /// Dataset names and the keys of each, in load order.
    pub fn catalogue(&self) -> IndexMap<&str, Vec<&str>> {
        self.collection
            .datasets
            .values()
            .map(|d| (d.name.as_str(), d.series.keys().map(String::as_str).collect()))
            .collect()
    }
}
