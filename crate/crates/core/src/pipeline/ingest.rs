//! JSONL ingestion with per-record validation and a rejects report.
//!
//! The canonical line shape is
//! `{"id": "...", "category": "...", "appeal": "...", "goal": 500,
//!   "photos": 0, "donations": [5, 10], "comments": ["..."]}`.
//! A field-mapping config adapts other layouts by pointing each canonical
//! field at a source location, with dots descending into nested objects.

use std::collections::BTreeMap;
use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde_json::Value;

use super::{normalize_category, CampaignRecord, PipelineError};

/// Canonical field names accepted as mapping keys, paired with their default
/// source key in the JSON line.
const CANONICAL_FIELDS: [(&str, &str); 8] = [
    ("campaign_id", "id"),
    ("category", "category"),
    ("appeal_text", "appeal"),
    ("goal_amount", "goal"),
    ("photo_count", "photos"),
    ("donations", "donations"),
    ("comments", "comments"),
    ("sentiment_compound", "sentiment_compound"),
];

/// Translation from canonical field names to source dot-paths.
#[derive(Debug, Clone, Default)]
pub struct FieldMapping {
    paths: BTreeMap<String, String>,
}

impl FieldMapping {
    /// Load a flat key-value mapping file: `canonical_field = source.dot.path`
    /// per line, `#` comments and blank lines ignored.
    pub fn load(path: &Path) -> Result<Self, PipelineError> {
        let display = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| PipelineError::Unreadable {
            path: display,
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, PipelineError> {
        let mut paths = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) =
                line.split_once('=')
                    .ok_or_else(|| PipelineError::MalformedMapping {
                        line: line_no,
                        message: format!("expected `canonical_field = source.path`, got {line:?}"),
                    })?;
            let key = key.trim();
            let value = value.trim();
            if !CANONICAL_FIELDS.iter().any(|(name, _)| *name == key) {
                return Err(PipelineError::MalformedMapping {
                    line: line_no,
                    message: format!("unknown canonical field {key:?}"),
                });
            }
            if value.is_empty() {
                return Err(PipelineError::MalformedMapping {
                    line: line_no,
                    message: format!("empty source path for {key:?}"),
                });
            }
            if paths.insert(key.to_string(), value.to_string()).is_some() {
                return Err(PipelineError::MalformedMapping {
                    line: line_no,
                    message: format!("duplicate mapping for {key:?}"),
                });
            }
        }
        Ok(FieldMapping { paths })
    }

    /// Build a mapping directly from (canonical, source-path) pairs.
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Self {
        FieldMapping {
            paths: pairs
                .into_iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        }
    }

    /// Override a single canonical field's source path.
    pub fn set(&mut self, canonical: &str, source_path: &str) {
        self.paths
            .insert(canonical.to_string(), source_path.to_string());
    }

    fn source_path(&self, canonical: &str) -> &str {
        self.paths
            .get(canonical)
            .map(String::as_str)
            .unwrap_or_else(|| {
                CANONICAL_FIELDS
                    .iter()
                    .find(|(name, _)| *name == canonical)
                    .map(|(_, default)| *default)
                    .expect("canonical field names are fixed")
            })
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.paths.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}

/// One rejected input line: position, the campaign id when one could be read,
/// and the reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RejectedRecord {
    pub line: usize,
    pub campaign_id: Option<String>,
    pub reason: String,
}

/// Ingestion output: validated records plus the rejects report.
#[derive(Debug, Clone)]
pub struct IngestReport {
    pub records: Vec<CampaignRecord>,
    pub rejects: Vec<RejectedRecord>,
    /// Non-blank input lines seen.
    pub total_lines: usize,
}

/// Read and validate a JSONL dataset file.
///
/// Per-record failures are collected into the rejects report without aborting;
/// if more than half of the lines reject, the whole run aborts and the error
/// carries the report.
pub fn ingest(path: &Path, mapping: Option<&FieldMapping>) -> Result<IngestReport, PipelineError> {
    let display = path.display().to_string();
    let file = File::open(path).map_err(|source| PipelineError::Unreadable {
        path: display.clone(),
        source,
    })?;
    ingest_reader(BufReader::new(file), &display, mapping)
}

/// Ingest from any buffered reader; `source` is used in error messages.
pub fn ingest_reader(
    reader: impl BufRead,
    source: &str,
    mapping: Option<&FieldMapping>,
) -> Result<IngestReport, PipelineError> {
    let default_mapping = FieldMapping::default();
    let mapping = mapping.unwrap_or(&default_mapping);
    let mut records = Vec::new();
    let mut rejects = Vec::new();
    let mut total_lines = 0usize;
    let mut seen_ids: HashSet<String> = HashSet::new();

    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|source_err| PipelineError::Unreadable {
            path: source.to_string(),
            source: source_err,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        total_lines += 1;
        match parse_record(&line, mapping) {
            Ok(record) => {
                if !seen_ids.insert(record.campaign_id.clone()) {
                    rejects.push(RejectedRecord {
                        line: line_no,
                        campaign_id: Some(record.campaign_id.clone()),
                        reason: format!("duplicate campaign_id: {:?}", record.campaign_id),
                    });
                } else {
                    records.push(record);
                }
            }
            Err((campaign_id, reason)) => {
                rejects.push(RejectedRecord {
                    line: line_no,
                    campaign_id,
                    reason,
                });
            }
        }
    }

    if total_lines > 0 && rejects.len() * 2 > total_lines {
        return Err(PipelineError::TooManyRejects {
            rejected: rejects.len(),
            total: total_lines,
            rejects,
        });
    }

    Ok(IngestReport {
        records,
        rejects,
        total_lines,
    })
}

type RecordError = (Option<String>, String);

fn parse_record(line: &str, mapping: &FieldMapping) -> Result<CampaignRecord, RecordError> {
    let value: Value =
        serde_json::from_str(line).map_err(|e| (None, format!("invalid JSON: {e}")))?;
    if !value.is_object() {
        return Err((None, "record is not a JSON object".to_string()));
    }

    // pull the id first so later failures can name the record
    let campaign_id = match resolve(&value, mapping.source_path("campaign_id")) {
        Some(Value::String(s)) if !s.is_empty() => s.clone(),
        Some(_) => {
            return Err((
                None,
                "invalid campaign_id: must be a non-empty string".to_string(),
            ))
        }
        None => return Err((None, "missing field: campaign_id".to_string())),
    };
    let fail = |reason: String| (Some(campaign_id.clone()), reason);

    let category = match resolve(&value, mapping.source_path("category")) {
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(fail("invalid category: must be a string".to_string())),
        None => return Err(fail("missing field: category".to_string())),
    };
    if let Err(e) = normalize_category(&category) {
        return Err(fail(e.to_string()));
    }

    let appeal_text = match resolve(&value, mapping.source_path("appeal_text")) {
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(fail("invalid appeal_text: must be a string".to_string())),
        None => return Err(fail("missing field: appeal_text".to_string())),
    };

    let goal_amount = match resolve(&value, mapping.source_path("goal_amount")) {
        Some(v) => match v.as_f64() {
            Some(g) if g.is_finite() && g > 0.0 => g,
            _ => {
                return Err(fail(
                    "invalid goal_amount: must be a positive number".to_string(),
                ))
            }
        },
        None => return Err(fail("missing field: goal_amount".to_string())),
    };

    let photo_count = match resolve(&value, mapping.source_path("photo_count")) {
        Some(v) => match v.as_u64() {
            Some(c) => c,
            None => {
                return Err(fail(
                    "invalid photo_count: must be a non-negative integer".to_string(),
                ))
            }
        },
        None => return Err(fail("missing field: photo_count".to_string())),
    };

    let donations = match resolve(&value, mapping.source_path("donations")) {
        Some(Value::Array(items)) => {
            let mut amounts = Vec::with_capacity(items.len());
            for item in items {
                match item.as_f64() {
                    Some(a) if a.is_finite() && a > 0.0 => amounts.push(a),
                    _ => {
                        return Err(fail(format!(
                            "invalid donations: non-positive or non-numeric amount {item}"
                        )))
                    }
                }
            }
            amounts
        }
        Some(_) => return Err(fail("invalid donations: must be an array".to_string())),
        None => return Err(fail("missing field: donations".to_string())),
    };

    let comments = match resolve(&value, mapping.source_path("comments")) {
        Some(Value::Array(items)) => {
            let mut texts = Vec::with_capacity(items.len());
            for item in items {
                match item {
                    Value::String(s) => texts.push(s.clone()),
                    _ => {
                        return Err(fail(
                            "invalid comments: must be an array of strings".to_string(),
                        ))
                    }
                }
            }
            texts
        }
        Some(_) => return Err(fail("invalid comments: must be an array".to_string())),
        None => return Err(fail("missing field: comments".to_string())),
    };

    let sentiment_compound = match resolve(&value, mapping.source_path("sentiment_compound")) {
        Some(Value::Null) | None => None,
        Some(v) => match v.as_f64() {
            Some(c) if c.is_finite() && (-1.0..=1.0).contains(&c) => Some(c),
            _ => {
                return Err(fail(
                    "invalid sentiment_compound: must be a number in [-1, 1]".to_string(),
                ))
            }
        },
    };

    Ok(CampaignRecord {
        campaign_id,
        category,
        appeal_text,
        goal_amount,
        photo_count,
        donations,
        comments,
        sentiment_compound,
    })
}

/// Descend a dot-path through nested JSON objects.
fn resolve<'a>(value: &'a Value, path: &str) -> Option<&'a Value> {
    let mut current = value;
    for part in path.split('.') {
        current = current.as_object()?.get(part)?;
    }
    Some(current)
}
