//! Run configuration: command-line flags layered over an optional flat
//! key-value config file, over built-in defaults.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;

use moralframe_core::{CanonicalCategory, Frame};

use crate::error::CliError;

/// Fully resolved configuration for one run. Paths are validated before any
/// computation starts.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub embeddings: PathBuf,
    /// None means the bundled seed lexicon.
    pub lexicon: Option<PathBuf>,
    /// None means the bundled valence lexicon.
    pub sentiment_lexicon: Option<PathBuf>,
    /// Source field holding a precomputed sentiment compound.
    pub sentiment_column: Option<String>,
    pub data: PathBuf,
    pub mapping: Option<PathBuf>,
    pub out: PathBuf,
    /// Expected embedding dimension; None disables the check.
    pub dim: Option<usize>,
    pub models: Vec<u8>,
    #[serde(serialize_with = "serialize_frame")]
    pub frame: Option<Frame>,
    #[serde(serialize_with = "serialize_category")]
    pub category: Option<CanonicalCategory>,
    pub min_donations: usize,
    pub max_position: Option<usize>,
    pub positive_threshold: f64,
    pub negative_threshold: f64,
    pub include_interactions: bool,
    pub seed: Option<u64>,
}

fn serialize_frame<S: serde::Serializer>(frame: &Option<Frame>, s: S) -> Result<S::Ok, S::Error> {
    match frame {
        Some(f) => s.serialize_some(f.name()),
        None => s.serialize_none(),
    }
}

fn serialize_category<S: serde::Serializer>(
    category: &Option<CanonicalCategory>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match category {
        Some(c) => s.serialize_some(c.name()),
        None => s.serialize_none(),
    }
}

/// Option-valued configuration fields, before defaults are applied. Both the
/// CLI flags and the config file parse into this shape.
#[derive(Debug, Clone, Default)]
pub struct PartialConfig {
    pub embeddings: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub sentiment_lexicon: Option<PathBuf>,
    pub sentiment_column: Option<String>,
    pub data: Option<PathBuf>,
    pub mapping: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub dim: Option<usize>,
    pub models: Option<Vec<u8>>,
    pub frame: Option<Frame>,
    pub category: Option<CanonicalCategory>,
    pub min_donations: Option<usize>,
    pub max_position: Option<usize>,
    pub positive_threshold: Option<f64>,
    pub negative_threshold: Option<f64>,
    pub include_interactions: Option<bool>,
    pub seed: Option<u64>,
}

impl PartialConfig {
    /// Fill unset fields from `fallback` (flags > config file).
    pub fn or(self, fallback: PartialConfig) -> PartialConfig {
        PartialConfig {
            embeddings: self.embeddings.or(fallback.embeddings),
            lexicon: self.lexicon.or(fallback.lexicon),
            sentiment_lexicon: self.sentiment_lexicon.or(fallback.sentiment_lexicon),
            sentiment_column: self.sentiment_column.or(fallback.sentiment_column),
            data: self.data.or(fallback.data),
            mapping: self.mapping.or(fallback.mapping),
            out: self.out.or(fallback.out),
            dim: self.dim.or(fallback.dim),
            models: self.models.or(fallback.models),
            frame: self.frame.or(fallback.frame),
            category: self.category.or(fallback.category),
            min_donations: self.min_donations.or(fallback.min_donations),
            max_position: self.max_position.or(fallback.max_position),
            positive_threshold: self.positive_threshold.or(fallback.positive_threshold),
            negative_threshold: self.negative_threshold.or(fallback.negative_threshold),
            include_interactions: self.include_interactions.or(fallback.include_interactions),
            seed: self.seed.or(fallback.seed),
        }
    }

    /// Parse a flat `key = value` config file.
    pub fn from_file(path: &Path) -> Result<PartialConfig, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Input(format!("cannot read config file {}: {e}", path.display()))
        })?;
        let mut pairs = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!(
                    "config line {}: expected `key = value`, got {line:?}",
                    i + 1
                ))
            })?;
            pairs.insert(key.trim().to_string(), value.trim().to_string());
        }
        let mut partial = PartialConfig::default();
        for (key, value) in &pairs {
            partial.apply(key, value)?;
        }
        Ok(partial)
    }

    fn apply(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let usage = |msg: String| CliError::Usage(msg);
        match key {
            "embeddings" => self.embeddings = Some(PathBuf::from(value)),
            "lexicon" => self.lexicon = Some(PathBuf::from(value)),
            "sentiment_lexicon" => self.sentiment_lexicon = Some(PathBuf::from(value)),
            "sentiment_column" => self.sentiment_column = Some(value.to_string()),
            "data" => self.data = Some(PathBuf::from(value)),
            "mapping" => self.mapping = Some(PathBuf::from(value)),
            "out" => self.out = Some(PathBuf::from(value)),
            "dim" => {
                let dim: usize = value
                    .parse()
                    .map_err(|_| usage(format!("config dim: not an integer: {value:?}")))?;
                self.dim = Some(dim);
            }
            "models" => self.models = Some(parse_models(value)?),
            "frame" => {
                self.frame = Some(
                    value
                        .parse()
                        .map_err(|_| usage(format!("config frame: unknown frame {value:?}")))?,
                )
            }
            "category" => {
                self.category =
                    Some(value.parse().map_err(|_| {
                        usage(format!("config category: unknown category {value:?}"))
                    })?)
            }
            "min_donations" => {
                self.min_donations = Some(value.parse().map_err(|_| {
                    usage(format!("config min_donations: not an integer: {value:?}"))
                })?)
            }
            "max_position" => {
                self.max_position = Some(value.parse().map_err(|_| {
                    usage(format!("config max_position: not an integer: {value:?}"))
                })?)
            }
            "positive_threshold" => {
                self.positive_threshold = Some(value.parse().map_err(|_| {
                    usage(format!(
                        "config positive_threshold: not a number: {value:?}"
                    ))
                })?)
            }
            "negative_threshold" => {
                self.negative_threshold = Some(value.parse().map_err(|_| {
                    usage(format!(
                        "config negative_threshold: not a number: {value:?}"
                    ))
                })?)
            }
            "include_interactions" => {
                self.include_interactions = Some(value.parse().map_err(|_| {
                    usage(format!(
                        "config include_interactions: expected true/false, got {value:?}"
                    ))
                })?)
            }
            "seed" => {
                self.seed = Some(
                    value
                        .parse()
                        .map_err(|_| usage(format!("config seed: not an integer: {value:?}")))?,
                )
            }
            other => return Err(usage(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    /// Apply defaults and validate. `dim` uses 200 unless overridden; 0 turns
    /// the dimension check off entirely.
    pub fn resolve(self) -> Result<RunConfig, CliError> {
        let embeddings = self
            .embeddings
            .ok_or_else(|| CliError::Usage("--embeddings is required".to_string()))?;
        let data = self
            .data
            .ok_or_else(|| CliError::Usage("--data is required".to_string()))?;
        let out = self
            .out
            .ok_or_else(|| CliError::Usage("--out is required".to_string()))?;

        let dim = match self.dim {
            Some(0) => None,
            Some(d) => Some(d),
            None => Some(200),
        };
        let models = self.models.unwrap_or_else(|| vec![1, 2, 3]);
        let positive_threshold = self.positive_threshold.unwrap_or(0.05);
        let negative_threshold = self.negative_threshold.unwrap_or(-0.05);
        if positive_threshold <= negative_threshold {
            return Err(CliError::Usage(format!(
                "positive threshold ({positive_threshold}) must exceed negative threshold \
                 ({negative_threshold})"
            )));
        }
        let min_donations = self.min_donations.unwrap_or(100);
        if min_donations < 1 {
            return Err(CliError::Usage(
                "--min-donations must be at least 1".to_string(),
            ));
        }

        let config = RunConfig {
            embeddings,
            lexicon: self.lexicon,
            sentiment_lexicon: self.sentiment_lexicon,
            sentiment_column: self.sentiment_column,
            data,
            mapping: self.mapping,
            out,
            dim,
            models,
            frame: self.frame,
            category: self.category,
            min_donations,
            max_position: self.max_position,
            positive_threshold,
            negative_threshold,
            include_interactions: self.include_interactions.unwrap_or(true),
            seed: self.seed,
        };
        config.validate_paths()?;
        Ok(config)
    }
}

impl RunConfig {
    fn validate_paths(&self) -> Result<(), CliError> {
        let mut required: Vec<(&Path, &str)> = vec![
            (&self.embeddings, "embeddings file"),
            (&self.data, "dataset file"),
        ];
        if let Some(path) = &self.lexicon {
            required.push((path, "lexicon file"));
        }
        if let Some(path) = &self.sentiment_lexicon {
            required.push((path, "sentiment lexicon file"));
        }
        if let Some(path) = &self.mapping {
            required.push((path, "mapping file"));
        }
        for (path, what) in required {
            if !path.is_file() {
                return Err(CliError::Input(format!(
                    "{what} not found: {}",
                    path.display()
                )));
            }
        }
        Ok(())
    }
}

pub fn parse_models(text: &str) -> Result<Vec<u8>, CliError> {
    let mut models = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let id: u8 = part
            .parse()
            .map_err(|_| CliError::Usage(format!("--models: not a model id: {part:?}")))?;
        if !(1..=3).contains(&id) {
            return Err(CliError::Usage(format!(
                "--models: model ids are 1, 2, 3; got {id}"
            )));
        }
        if !models.contains(&id) {
            models.push(id);
        }
    }
    if models.is_empty() {
        return Err(CliError::Usage("--models: no model ids given".to_string()));
    }
    models.sort_unstable();
    Ok(models)
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(self).unwrap_or_default())
    }
}
