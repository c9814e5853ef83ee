//! Group and position analyses: comment moral alignment and comment length by
//! appeal-score group, and the mean donation amount by donation position.

use rayon::prelude::*;

use super::{normalize_category, CampaignRecord, CanonicalCategory, PipelineError};
use crate::embeddings::EmbeddingTable;
use crate::frameaxis::{score_document, split_groups, Group, MoralAxisSet};
use crate::lexicon::Frame;
use crate::stats::mean_ci95;
use crate::textprep::{count_whitespace_tokens, tokenize_for_scoring};

/// Aggregate for one appeal-score group. `mean` is `None` when the group is
/// empty; the interval is `None` when fewer than two campaigns contribute.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupStat {
    pub group: Group,
    pub n: usize,
    pub mean: Option<f64>,
    pub ci_lower: Option<f64>,
    pub ci_upper: Option<f64>,
}

/// Per-group aggregates for one frame, with the degenerate-split warning.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupTable {
    pub groups: Vec<GroupStat>,
    /// Every appeal score was identical, so all campaigns landed in Medium.
    pub zero_variance: bool,
}

/// Mean moral score of comments per appeal-score group.
///
/// Appeals in the chosen category (default Emergency) are split into
/// low/medium/high on the chosen frame; comment scores on the same frame are
/// averaged per campaign first, then per group. Campaigns without scored
/// comments are excluded from the averages but still shape the split.
pub fn comment_alignment(
    records: &[CampaignRecord],
    axes: &MoralAxisSet,
    table: &EmbeddingTable,
    frame: Frame,
    category_filter: Option<CanonicalCategory>,
) -> Result<GroupTable, PipelineError> {
    grouped_comment_stat(records, axes, table, frame, category_filter, |record| {
        let per_comment: Vec<f64> = record
            .comments
            .iter()
            .filter_map(|comment| {
                let tokens = tokenize_for_scoring(comment);
                frame_score(axes, table, frame, &tokens)
            })
            .collect();
        if per_comment.is_empty() {
            None
        } else {
            Some(per_comment.iter().sum::<f64>() / per_comment.len() as f64)
        }
    })
}

/// Mean whitespace-token length of comments per appeal-score group.
pub fn comment_length_by_group(
    records: &[CampaignRecord],
    axes: &MoralAxisSet,
    table: &EmbeddingTable,
    frame: Frame,
    category_filter: Option<CanonicalCategory>,
) -> Result<GroupTable, PipelineError> {
    grouped_comment_stat(records, axes, table, frame, category_filter, |record| {
        if record.comments.is_empty() {
            return None;
        }
        let total: usize = record
            .comments
            .iter()
            .map(|c| count_whitespace_tokens(c))
            .sum();
        Some(total as f64 / record.comments.len() as f64)
    })
}

fn grouped_comment_stat(
    records: &[CampaignRecord],
    axes: &MoralAxisSet,
    table: &EmbeddingTable,
    frame: Frame,
    category_filter: Option<CanonicalCategory>,
    per_campaign: impl Fn(&CampaignRecord) -> Option<f64> + Sync,
) -> Result<GroupTable, PipelineError> {
    let category = category_filter.unwrap_or(CanonicalCategory::Emergency);
    let filtered: Vec<&CampaignRecord> = records
        .iter()
        .filter(|r| normalize_category(&r.category).ok() == Some(category))
        .collect();

    // appeal score on the chosen frame; undefined appeals cannot be grouped
    let scored: Vec<(&CampaignRecord, f64)> = filtered
        .par_iter()
        .filter_map(|record| {
            let tokens = tokenize_for_scoring(&record.appeal_text);
            frame_score(axes, table, frame, &tokens).map(|s| (*record, s))
        })
        .collect();

    let scores: Vec<f64> = scored.iter().map(|(_, s)| s).copied().collect();
    let split = split_groups(&scores)?;

    let values: Vec<(Group, Option<f64>)> = scored
        .par_iter()
        .zip(split.assignments.par_iter())
        .map(|((record, _), group)| (*group, per_campaign(record)))
        .collect();

    let groups = Group::ALL
        .iter()
        .map(|&group| {
            let group_values: Vec<f64> = values
                .iter()
                .filter(|(g, v)| *g == group && v.is_some())
                .map(|(_, v)| v.unwrap())
                .collect();
            summarize_group(group, &group_values)
        })
        .collect();
    Ok(GroupTable {
        groups,
        zero_variance: split.zero_variance,
    })
}

fn summarize_group(group: Group, values: &[f64]) -> GroupStat {
    match values.len() {
        0 => GroupStat {
            group,
            n: 0,
            mean: None,
            ci_lower: None,
            ci_upper: None,
        },
        1 => GroupStat {
            group,
            n: 1,
            mean: Some(values[0]),
            ci_lower: None,
            ci_upper: None,
        },
        _ => {
            let ci = mean_ci95(values).expect("n >= 2");
            GroupStat {
                group,
                n: values.len(),
                mean: Some(ci.mean),
                ci_lower: Some(ci.lower),
                ci_upper: Some(ci.upper),
            }
        }
    }
}

fn frame_score(
    axes: &MoralAxisSet,
    table: &EmbeddingTable,
    frame: Frame,
    tokens: &[String],
) -> Option<f64> {
    let scores = score_document(axes, table, tokens);
    scores
        .iter()
        .find(|s| s.frame == frame)
        .and_then(|s| s.value)
}

/// Mean donation amount at each sequential donation position.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionStat {
    pub position: usize,
    pub n: usize,
    pub mean: Option<f64>,
    pub ci_lower: Option<f64>,
    pub ci_upper: Option<f64>,
}

/// Aggregate the k-th donation amount across campaigns with at least
/// `min_donations` donations, for k = 1..=`max_position` (default:
/// `min_donations`).
pub fn donation_position_curve(
    records: &[CampaignRecord],
    min_donations: usize,
    max_position: Option<usize>,
) -> Result<Vec<PositionStat>, PipelineError> {
    if min_donations < 1 {
        return Err(PipelineError::InvalidMinDonations);
    }
    let qualifying: Vec<&CampaignRecord> = records
        .iter()
        .filter(|r| r.donations.len() >= min_donations)
        .collect();
    if qualifying.is_empty() {
        return Err(PipelineError::NoQualifyingCampaigns { min_donations });
    }
    let max_position = max_position.unwrap_or(min_donations);

    Ok((1..=max_position)
        .map(|position| {
            let amounts: Vec<f64> = qualifying
                .iter()
                .filter_map(|r| r.donations.get(position - 1))
                .copied()
                .collect();
            match amounts.len() {
                0 => PositionStat {
                    position,
                    n: 0,
                    mean: None,
                    ci_lower: None,
                    ci_upper: None,
                },
                1 => PositionStat {
                    position,
                    n: 1,
                    mean: Some(amounts[0]),
                    ci_lower: None,
                    ci_upper: None,
                },
                _ => {
                    let ci = mean_ci95(&amounts).expect("n >= 2");
                    PositionStat {
                        position,
                        n: amounts.len(),
                        mean: Some(ci.mean),
                        ci_lower: Some(ci.lower),
                        ci_upper: Some(ci.upper),
                    }
                }
            }
        })
        .collect())
}
