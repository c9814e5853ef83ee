//! Per-campaign feature assembly: moral scores, sentiment, and transformed
//! controls and outcomes.

use rayon::prelude::*;

use super::{normalize_category, CampaignRecord, FeatureRow, PipelineError};
use crate::embeddings::EmbeddingTable;
use crate::frameaxis::{score_document, BiasScore, MoralAxisSet};
use crate::stats::log1p_transform;
use crate::textprep::{
    classify_sentiment, count_whitespace_tokens, tokenize_for_scoring, SentimentThresholds,
    ValenceLexicon,
};

/// A campaign excluded from the regression rows, with the reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DroppedRecord {
    pub campaign_id: String,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct FeatureReport {
    pub rows: Vec<FeatureRow>,
    pub drops: Vec<DroppedRecord>,
}

/// Score every appeal and assemble the regression rows.
///
/// Campaigns whose appeal has no in-vocabulary token get undefined moral
/// scores and are dropped (and counted), not zero-filled. Scoring runs in
/// parallel per campaign; output order follows input order.
pub fn build_features(
    records: &[CampaignRecord],
    axes: &MoralAxisSet,
    table: &EmbeddingTable,
    valence: &ValenceLexicon,
    thresholds: &SentimentThresholds,
) -> Result<FeatureReport, PipelineError> {
    let built: Vec<Result<Result<FeatureRow, DroppedRecord>, PipelineError>> = records
        .par_iter()
        .map(|record| build_row(record, axes, table, valence, thresholds))
        .collect();

    let mut rows = Vec::with_capacity(records.len());
    let mut drops = Vec::new();
    for item in built {
        match item? {
            Ok(row) => rows.push(row),
            Err(drop) => drops.push(drop),
        }
    }
    Ok(FeatureReport { rows, drops })
}

fn build_row(
    record: &CampaignRecord,
    axes: &MoralAxisSet,
    table: &EmbeddingTable,
    valence: &ValenceLexicon,
    thresholds: &SentimentThresholds,
) -> Result<Result<FeatureRow, DroppedRecord>, PipelineError> {
    let category = normalize_category(&record.category)?;
    let tokens = tokenize_for_scoring(&record.appeal_text);
    let scores = score_document(axes, table, &tokens);
    let (care, fairness, loyalty) = match (scores[0].value, scores[1].value, scores[2].value) {
        (Some(c), Some(f), Some(l)) => (c, f, l),
        _ => {
            return Ok(Err(DroppedRecord {
                campaign_id: record.campaign_id.clone(),
                reason: "undefined moral scores".to_string(),
            }))
        }
    };

    let sentiment = classify_sentiment(
        &record.appeal_text,
        valence,
        record.sentiment_compound,
        thresholds,
    );
    let length = count_whitespace_tokens(&record.appeal_text);

    let row = FeatureRow {
        campaign_id: record.campaign_id.clone(),
        category,
        care,
        fairness,
        loyalty,
        sentiment: sentiment.class,
        log_length: log1p_transform(length as f64)?,
        log_photos: log1p_transform(record.photo_count as f64)?,
        log_goal: log1p_transform(record.goal_amount)?,
        log_n_donations: log1p_transform(record.donation_count() as f64)?,
        log_avg_amount: record.average_donation().map(log1p_transform).transpose()?,
        log_n_comments: log1p_transform(record.comments.len() as f64)?,
    };
    Ok(Ok(row))
}

/// Moral scores of every appeal, in input order.
pub fn score_appeals(
    records: &[CampaignRecord],
    axes: &MoralAxisSet,
    table: &EmbeddingTable,
) -> Vec<(String, [BiasScore; 3])> {
    records
        .par_iter()
        .map(|record| {
            let tokens = tokenize_for_scoring(&record.appeal_text);
            (
                record.campaign_id.clone(),
                score_document(axes, table, &tokens),
            )
        })
        .collect()
}

/// Moral scores of every comment, keyed by campaign id and comment index.
pub fn score_comments(
    records: &[CampaignRecord],
    axes: &MoralAxisSet,
    table: &EmbeddingTable,
) -> Vec<(String, usize, [BiasScore; 3])> {
    records
        .par_iter()
        .flat_map_iter(|record| {
            record.comments.iter().enumerate().map(|(i, comment)| {
                let tokens = tokenize_for_scoring(comment);
                (
                    record.campaign_id.clone(),
                    i,
                    score_document(axes, table, &tokens),
                )
            })
        })
        .collect()
}
