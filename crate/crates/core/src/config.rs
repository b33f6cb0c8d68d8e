//! Engine configuration shared by the service and the command line.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::convert::ConverterConfig;
use crate::search::EsConfig;
use crate::stability::StabilityConfig;
use crate::{Error, Result};

/// Environment variable naming the configuration file.
pub const CONFIG_ENV: &str = "Q4EDA_CONFIG";
pub const DEFAULT_CONFIG_FILE: &str = "q4eda.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Paths {
    pub manifest: PathBuf,
    pub corpus: PathBuf,
    pub embeddings: PathBuf,
    pub gazetteer: PathBuf,
    pub antonyms: PathBuf,
}

impl Paths {
    fn resolve_against(&mut self, base: &Path) {
        for p in [
            &mut self.manifest,
            &mut self.corpus,
            &mut self.embeddings,
            &mut self.gazetteer,
            &mut self.antonyms,
        ] {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
    }

    /// Fails with the first path that does not exist.
    pub fn check_exist(&self) -> Result<()> {
        for p in [&self.manifest, &self.corpus, &self.embeddings, &self.gazetteer, &self.antonyms] {
            if !p.exists() {
                return Err(Error::Config(format!("{} does not exist", p.display())));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    #[default]
    Local,
    Es,
}

fn default_top_k() -> usize {
    10
}

fn default_bind() -> String {
    "127.0.0.1:8080".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub paths: Paths,
    #[serde(default)]
    pub backend: BackendKind,
    #[serde(default)]
    pub es: EsConfig,
    #[serde(default)]
    pub converter: ConverterConfig,
    #[serde(default)]
    pub stability: StabilityConfig,
    #[serde(default = "default_top_k")]
    pub top_k: usize,
    #[serde(default = "default_bind")]
    pub bind: String,
}

impl Config {
    /// Parses a JSON config; relative resource paths are taken from the
    /// config file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut config: Config = serde_json::from_str(&text)
            .map_err(|e| Error::format(path, e.line(), e.to_string()))?;
        config.paths.resolve_against(path.parent().unwrap_or(Path::new(".")));
        config.validate()?;
        Ok(config)
    }

    /// The config file to use: `explicit` if given, else `$Q4EDA_CONFIG`,
    /// else `q4eda.json` in the working directory.
    pub fn locate(explicit: Option<&Path>) -> PathBuf {
        if let Some(p) = explicit {
            return p.to_path_buf();
        }
        match std::env::var_os(CONFIG_ENV) {
            Some(v) if !v.is_empty() => PathBuf::from(v),
            _ => PathBuf::from(DEFAULT_CONFIG_FILE),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.top_k == 0 {
            return Err(Error::Config("top_k must be at least 1".into()));
        }
        self.converter.validate()?;
        self.stability.validate()
    }
}
