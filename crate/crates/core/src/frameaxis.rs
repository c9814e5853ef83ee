//! Moral axes built from seed-pool centroids, and per-document bias scores.
//!
//! An axis points from the vice centroid toward the virtue centroid, so a
//! positive bias score means the document leans toward the virtue pole. A
//! document's score on an axis is the term-frequency-weighted average of the
//! cosine similarities between its in-vocabulary words and the axis.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::embeddings::{cosine, EmbeddingTable};
use crate::lexicon::{Frame, Pole, SeedLexicon};

#[derive(Debug, Error)]
pub enum FrameAxisError {
    #[error("{frame}.{pole}: no seed word is in the embedding vocabulary")]
    EmptyResolvedPole { frame: Frame, pole: Pole },
    #[error("frame {frame}: vice and virtue centroids coincide (zero-norm axis)")]
    ZeroNormDirection { frame: Frame },
    #[error("group split needs at least 2 defined scores, got {got}")]
    TooFewScores { got: usize },
    #[error("group split input contains a non-finite score")]
    NonFiniteScore,
}

/// One moral axis: the direction from the vice centroid to the virtue
/// centroid, with the centroids and resolved seed counts kept for provenance.
#[derive(Debug, Clone)]
pub struct MoralAxis {
    pub frame: Frame,
    pub direction: Vec<f64>,
    pub vice_centroid: Vec<f64>,
    pub virtue_centroid: Vec<f64>,
    /// (vice, virtue) seed counts actually found in the vocabulary.
    pub resolved_counts: (usize, usize),
}

/// The care, fairness, and loyalty axes over one embedding space.
#[derive(Debug, Clone)]
pub struct MoralAxisSet {
    axes: [MoralAxis; 3],
}

impl MoralAxisSet {
    pub fn axis(&self, frame: Frame) -> &MoralAxis {
        &self.axes[match frame {
            Frame::Care => 0,
            Frame::Fairness => 1,
            Frame::Loyalty => 2,
        }]
    }

    pub fn iter(&self) -> impl Iterator<Item = &MoralAxis> {
        self.axes.iter()
    }
}

/// Bias of one document on one axis. `value` is `None` when no token of the
/// document has an embedding: an undefined score, not zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiasScore {
    pub frame: Frame,
    pub value: Option<f64>,
    /// Token occurrences that had a usable embedding.
    pub matched_token_count: usize,
    pub total_token_count: usize,
}

/// Build the three moral axes from seed-pool centroids.
///
/// Each centroid is the unweighted mean of the resolved (in-vocabulary) seed
/// vectors of one pole; the axis direction is virtue minus vice.
pub fn build_axes(
    lex: &SeedLexicon,
    table: &EmbeddingTable,
) -> Result<MoralAxisSet, FrameAxisError> {
    let mut axes = Vec::with_capacity(3);
    for frame in Frame::ALL {
        let (vice_centroid, vice_count) = pole_centroid(lex, table, frame, Pole::Vice)?;
        let (virtue_centroid, virtue_count) = pole_centroid(lex, table, frame, Pole::Virtue)?;
        let direction: Vec<f64> = virtue_centroid
            .iter()
            .zip(&vice_centroid)
            .map(|(virtue, vice)| virtue - vice)
            .collect();
        if direction.iter().all(|&d| d == 0.0) {
            return Err(FrameAxisError::ZeroNormDirection { frame });
        }
        axes.push(MoralAxis {
            frame,
            direction,
            vice_centroid,
            virtue_centroid,
            resolved_counts: (vice_count, virtue_count),
        });
    }
    let axes: [MoralAxis; 3] = axes.try_into().expect("exactly three frames");
    Ok(MoralAxisSet { axes })
}

fn pole_centroid(
    lex: &SeedLexicon,
    table: &EmbeddingTable,
    frame: Frame,
    pole: Pole,
) -> Result<(Vec<f64>, usize), FrameAxisError> {
    let mut sum = vec![0.0; table.dimension()];
    let mut count = 0usize;
    for token in lex.pool(frame, pole) {
        if let Some(vector) = table.lookup(token) {
            for (acc, v) in sum.iter_mut().zip(vector) {
                *acc += v;
            }
            count += 1;
        }
    }
    if count == 0 {
        return Err(FrameAxisError::EmptyResolvedPole { frame, pole });
    }
    for acc in &mut sum {
        *acc /= count as f64;
    }
    Ok((sum, count))
}

/// Score one tokenized document on all three axes.
///
/// For each frame the value is sum(tf(w) * cos(vec(w), axis)) / sum(tf(w))
/// over distinct in-vocabulary tokens w; out-of-vocabulary tokens are skipped
/// rather than zero-scored. Summation runs in sorted token order so results
/// do not depend on scheduling. Zero-norm vectors are treated as unmatched
/// since their cosine is undefined.
pub fn score_document(
    axes: &MoralAxisSet,
    table: &EmbeddingTable,
    tokens: &[String],
) -> [BiasScore; 3] {
    let mut tf: BTreeMap<&str, usize> = BTreeMap::new();
    for token in tokens {
        *tf.entry(token.as_str()).or_insert(0) += 1;
    }

    let matched: Vec<(&[f64], usize)> = tf
        .iter()
        .filter_map(|(token, &count)| {
            let vector = table.lookup(token)?;
            if vector.iter().all(|&v| v == 0.0) {
                return None;
            }
            Some((vector, count))
        })
        .collect();
    let matched_token_count: usize = matched.iter().map(|(_, count)| count).sum();

    let scores: Vec<BiasScore> = axes
        .iter()
        .map(|axis| {
            let value = if matched_token_count == 0 {
                None
            } else {
                let mut weighted = 0.0;
                for (vector, count) in &matched {
                    let sim = cosine(vector, &axis.direction)
                        .expect("matched vectors and axis directions have nonzero norm");
                    weighted += *count as f64 * sim;
                }
                Some(weighted / matched_token_count as f64)
            };
            BiasScore {
                frame: axis.frame,
                value,
                matched_token_count,
                total_token_count: tokens.len(),
            }
        })
        .collect();
    scores.try_into().expect("exactly three frames")
}

/// Score-group assignment relative to the mean and one sample standard
/// deviation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Group {
    Low,
    Medium,
    High,
}

impl Group {
    pub const ALL: [Group; 3] = [Group::Low, Group::Medium, Group::High];

    pub fn name(self) -> &'static str {
        match self {
            Group::Low => "low",
            Group::Medium => "medium",
            Group::High => "high",
        }
    }
}

impl std::fmt::Display for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of splitting scores into low/medium/high groups.
#[derive(Debug, Clone)]
pub struct GroupSplit {
    pub assignments: Vec<Group>,
    pub mean: f64,
    pub sd: f64,
    /// All scores identical: every element is Medium and this warning is set.
    pub zero_variance: bool,
}

/// Assign each score to low (below mean - sd), high (above mean + sd), or
/// medium (boundaries inclusive). The standard deviation uses the n-1
/// denominator.
pub fn split_groups(scores: &[f64]) -> Result<GroupSplit, FrameAxisError> {
    if scores.len() < 2 {
        return Err(FrameAxisError::TooFewScores { got: scores.len() });
    }
    if scores.iter().any(|s| !s.is_finite()) {
        return Err(FrameAxisError::NonFiniteScore);
    }
    let n = scores.len() as f64;
    let mean = scores.iter().sum::<f64>() / n;
    let var = scores.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let sd = var.sqrt();
    let zero_variance = sd == 0.0;
    let assignments = scores
        .iter()
        .map(|&s| {
            if !zero_variance && s < mean - sd {
                Group::Low
            } else if !zero_variance && s > mean + sd {
                Group::High
            } else {
                Group::Medium
            }
        })
        .collect();
    Ok(GroupSplit {
        assignments,
        mean,
        sd,
        zero_variance,
    })
}
