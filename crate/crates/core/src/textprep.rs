//! Tokenization and lexicon-based sentiment classification.
//!
//! Two tokenizers with distinct contracts live here. `tokenize_for_scoring`
//! feeds the moral-axis scorer (lowercase, alphanumeric runs), while
//! `count_whitespace_tokens` defines "appeal length" and "comment length"
//! (maximal non-whitespace runs).

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use thiserror::Error;

/// Lowercase a text and split it on maximal runs of non-alphanumeric
/// characters, dropping empty tokens and preserving order.
pub fn tokenize_for_scoring(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

/// Count maximal non-whitespace runs. This, not `tokenize_for_scoring`,
/// is the definition of appeal length and comment length.
pub fn count_whitespace_tokens(text: &str) -> usize {
    text.split_whitespace().count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SentimentClass {
    Positive,
    Neutral,
    Negative,
}

impl SentimentClass {
    pub fn name(self) -> &'static str {
        match self {
            SentimentClass::Positive => "positive",
            SentimentClass::Neutral => "neutral",
            SentimentClass::Negative => "negative",
        }
    }
}

impl std::fmt::Display for SentimentClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Compound score in [-1, 1] plus its class under the configured thresholds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SentimentLabel {
    pub class: SentimentClass,
    pub compound: f64,
}

/// Class cut points on the compound score. Both boundaries are inclusive
/// toward their extreme: compound == positive is positive, compound ==
/// negative is negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SentimentThresholds {
    pub positive: f64,
    pub negative: f64,
}

impl Default for SentimentThresholds {
    fn default() -> Self {
        SentimentThresholds {
            positive: 0.05,
            negative: -0.05,
        }
    }
}

#[derive(Debug, Error)]
pub enum ValenceError {
    #[error("cannot read valence lexicon {path}: {source}")]
    Unreadable {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("valence line {line}: expected `token<TAB>valence`, got {text:?}")]
    MalformedLine { line: usize, text: String },
    #[error("valence line {line}: value {value} outside [-4, 4]")]
    OutOfRange { line: usize, value: f64 },
}

/// Token-to-valence map on the VADER scale [-4, 4].
#[derive(Debug, Clone)]
pub struct ValenceLexicon {
    map: HashMap<String, f64>,
    source: String,
}

impl ValenceLexicon {
    /// Load a TSV file of `token<TAB>valence` lines. `#` comments and blank
    /// lines are ignored; duplicate tokens keep the first value.
    pub fn load(path: &Path) -> Result<Self, ValenceError> {
        let display = path.display().to_string();
        let text = fs::read_to_string(path).map_err(|source| ValenceError::Unreadable {
            path: display.clone(),
            source,
        })?;
        Self::parse(&text, &display)
    }

    /// The compact general-purpose lexicon bundled with the crate.
    pub fn bundled() -> Self {
        Self::parse(include_str!("../data/valence.tsv"), "<bundled>")
            .expect("bundled valence lexicon must be valid")
    }

    pub fn parse(text: &str, source: &str) -> Result<Self, ValenceError> {
        let mut map = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (token, value_text) =
                line.split_once('\t')
                    .ok_or_else(|| ValenceError::MalformedLine {
                        line: line_no,
                        text: line.to_string(),
                    })?;
            let value: f64 =
                value_text
                    .trim()
                    .parse()
                    .map_err(|_| ValenceError::MalformedLine {
                        line: line_no,
                        text: line.to_string(),
                    })?;
            if !value.is_finite() || !(-4.0..=4.0).contains(&value) {
                return Err(ValenceError::OutOfRange {
                    line: line_no,
                    value,
                });
            }
            map.entry(token.trim().to_lowercase()).or_insert(value);
        }
        Ok(ValenceLexicon {
            map,
            source: source.to_string(),
        })
    }

    pub fn from_entries<'a>(entries: impl IntoIterator<Item = (&'a str, f64)>) -> Self {
        ValenceLexicon {
            map: entries
                .into_iter()
                .map(|(t, v)| (t.to_lowercase(), v))
                .collect(),
            source: "<memory>".to_string(),
        }
    }

    pub fn valence(&self, token: &str) -> Option<f64> {
        self.map.get(token).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

/// Classify a text by summed token valences.
///
/// The compound score is S / sqrt(S^2 + 15) where S sums the valences of all
/// matched token occurrences; `override_compound`, when given, replaces the
/// computed compound entirely (the path used for externally precomputed
/// sentiment columns).
pub fn classify_sentiment(
    text: &str,
    lexicon: &ValenceLexicon,
    override_compound: Option<f64>,
    thresholds: &SentimentThresholds,
) -> SentimentLabel {
    let compound = match override_compound {
        Some(value) => value.clamp(-1.0, 1.0),
        None => {
            let sum: f64 = tokenize_for_scoring(text)
                .iter()
                .filter_map(|t| lexicon.valence(t))
                .sum();
            compound_from_sum(sum)
        }
    };
    let class = if compound >= thresholds.positive {
        SentimentClass::Positive
    } else if compound <= thresholds.negative {
        SentimentClass::Negative
    } else {
        SentimentClass::Neutral
    };
    SentimentLabel { class, compound }
}

/// The standard alpha = 15 compound normalization.
fn compound_from_sum(sum: f64) -> f64 {
    if sum == 0.0 {
        0.0
    } else {
        (sum / (sum * sum + 15.0).sqrt()).clamp(-1.0, 1.0)
    }
}
