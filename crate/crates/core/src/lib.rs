//! Core library for scoring fundraising appeals along moral microframe axes
//! and fitting the associated regression models.
//!
//! The flow is: load word vectors ([`embeddings`]), load vice/virtue seed
//! pools ([`lexicon`]), build moral axes and score documents ([`frameaxis`]),
//! derive per-campaign features ([`textprep`], [`pipeline`]), and fit or
//! summarize with [`stats`]. All operations are deterministic: the same
//! inputs always produce identical outputs.

pub mod embeddings;
pub mod frameaxis;
pub mod lexicon;
pub mod pipeline;
pub mod report;
pub mod stats;
pub mod textprep;

pub use embeddings::{cosine, EmbeddingError, EmbeddingTable};
pub use frameaxis::{
    build_axes, score_document, split_groups, BiasScore, FrameAxisError, Group, GroupSplit,
    MoralAxis, MoralAxisSet,
};
pub use lexicon::{
    resolve_coverage, CoverageReport, Frame, LexiconError, Pole, PoleCoverage, SeedLexicon,
};
pub use pipeline::{
    build_features, comment_alignment, comment_length_by_group, descriptives,
    donation_position_curve, fit_model, ingest, model_spec, normalize_category, score_appeals,
    score_comments, total_raised_check, CampaignRecord, CanonicalCategory, DescriptiveCell,
    DroppedRecord, FeatureReport, FeatureRow, FieldMapping, GroupStat, GroupTable, IngestReport,
    ModelData, ModelId, PipelineError, PositionStat, RejectedRecord, MODEL_COLUMN_COUNT,
};
pub use stats::{
    describe, fit_ols, log1p_transform, mean_ci95, spearman, student_t_quantile, student_t_sf,
    two_sided_p_value, Describe, DesignMatrix, FitResult, MeanCi, StatsError,
};
pub use textprep::{
    classify_sentiment, count_whitespace_tokens, tokenize_for_scoring, SentimentClass,
    SentimentLabel, SentimentThresholds, ValenceError, ValenceLexicon,
};
