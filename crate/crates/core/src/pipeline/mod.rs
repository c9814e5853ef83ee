//! Dataset ingestion, feature assembly, the three regression model
//! specifications, and the group/position analyses behind the figures.

mod descriptives;
mod features;
mod figures;
mod ingest;
mod models;

pub use descriptives::{descriptives, total_raised_check, DescriptiveCell, DESCRIPTIVE_VARIABLES};
pub use features::{build_features, score_appeals, score_comments, DroppedRecord, FeatureReport};
pub use figures::{
    comment_alignment, comment_length_by_group, donation_position_curve, GroupStat, GroupTable,
    PositionStat,
};
pub use ingest::{ingest, ingest_reader, FieldMapping, IngestReport, RejectedRecord};
pub use models::{fit_model, model_spec, ModelData, ModelId, MODEL_COLUMN_COUNT};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::frameaxis::FrameAxisError;
use crate::stats::StatsError;
use crate::textprep::SentimentClass;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("cannot read {path}: {source}")]
    Unreadable {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("mapping line {line}: {message}")]
    MalformedMapping { line: usize, message: String },
    #[error("{rejected} of {total} lines rejected (more than half); aborting")]
    TooManyRejects {
        rejected: usize,
        total: usize,
        rejects: Vec<RejectedRecord>,
    },
    #[error("unknown category: {0:?}")]
    UnknownCategory(String),
    #[error("no rows available for model {model}")]
    NoRows { model: u8 },
    #[error("min_donations must be at least 1")]
    InvalidMinDonations,
    #[error("no qualifying campaigns with at least {min_donations} donations")]
    NoQualifyingCampaigns { min_donations: usize },
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    FrameAxis(#[from] FrameAxisError),
}

/// One fundraising campaign in the canonical schema: the raw unit of
/// analysis. Donations are ordered chronologically (position 1 = first).
#[derive(Debug, Clone, PartialEq)]
pub struct CampaignRecord {
    pub campaign_id: String,
    /// Raw category string as ingested; see [`normalize_category`].
    pub category: String,
    pub appeal_text: String,
    pub goal_amount: f64,
    pub photo_count: u64,
    pub donations: Vec<f64>,
    pub comments: Vec<String>,
    /// Externally precomputed sentiment compound, when the dataset carries one.
    pub sentiment_compound: Option<f64>,
}

impl CampaignRecord {
    pub fn donation_count(&self) -> usize {
        self.donations.len()
    }

    pub fn total_raised(&self) -> f64 {
        self.donations.iter().sum()
    }

    /// Mean donation amount; `None` for campaigns without donations.
    pub fn average_donation(&self) -> Option<f64> {
        if self.donations.is_empty() {
            None
        } else {
            Some(self.total_raised() / self.donations.len() as f64)
        }
    }
}

/// The four-category scheme after merging Financial Emergency into Emergency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CanonicalCategory {
    Animals,
    Emergency,
    Medical,
    Memorial,
}

impl CanonicalCategory {
    pub const ALL: [CanonicalCategory; 4] = [
        CanonicalCategory::Animals,
        CanonicalCategory::Emergency,
        CanonicalCategory::Medical,
        CanonicalCategory::Memorial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CanonicalCategory::Animals => "Animals",
            CanonicalCategory::Emergency => "Emergency",
            CanonicalCategory::Medical => "Medical",
            CanonicalCategory::Memorial => "Memorial",
        }
    }
}

impl fmt::Display for CanonicalCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CanonicalCategory {
    type Err = PipelineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        normalize_category(s)
    }
}

/// Case-insensitive category normalization. "Financial Emergency" folds into
/// Emergency; anything outside the four-category scheme is rejected.
pub fn normalize_category(raw: &str) -> Result<CanonicalCategory, PipelineError> {
    match raw.trim().to_lowercase().as_str() {
        "animals" => Ok(CanonicalCategory::Animals),
        "emergency" | "financial emergency" => Ok(CanonicalCategory::Emergency),
        "medical" => Ok(CanonicalCategory::Medical),
        "memorial" => Ok(CanonicalCategory::Memorial),
        _ => Err(PipelineError::UnknownCategory(raw.to_string())),
    }
}

/// One regression row: moral scores, sentiment class, and the log1p-transformed
/// controls and outcomes for a single campaign.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRow {
    pub campaign_id: String,
    pub category: CanonicalCategory,
    pub care: f64,
    pub fairness: f64,
    pub loyalty: f64,
    pub sentiment: SentimentClass,
    pub log_length: f64,
    pub log_photos: f64,
    pub log_goal: f64,
    pub log_n_donations: f64,
    /// Absent exactly when the campaign has no donations.
    pub log_avg_amount: Option<f64>,
    pub log_n_comments: f64,
}
