//! Per-category descriptive statistics on untransformed scales, and the
//! total-raised diagnostic.

use std::collections::HashMap;

use super::{CampaignRecord, CanonicalCategory, FeatureRow, PipelineError};
use crate::stats::{describe, spearman};

/// Variable labels in report order.
pub const DESCRIPTIVE_VARIABLES: [&str; 9] = [
    "Number of donations",
    "Average donation amount per donor",
    "Number of comments",
    "Care score",
    "Fairness score",
    "Loyalty score",
    "Campaign appeal length",
    "Number of photos",
    "Fundraising goal",
];

/// One mean/sd cell of the descriptives table. `sd` is `None` for
/// single-observation cells, `mean` is `None` for empty ones.
#[derive(Debug, Clone, PartialEq)]
pub struct DescriptiveCell {
    pub variable: &'static str,
    pub category: CanonicalCategory,
    pub n: usize,
    pub mean: Option<f64>,
    pub sd: Option<f64>,
}

/// Mean and standard deviation per category for every reported variable, on
/// raw (untransformed) scales. Only campaigns with a feature row (those with
/// defined moral scores) contribute; the average-amount cell additionally
/// skips campaigns without donations.
pub fn descriptives(records: &[CampaignRecord], rows: &[FeatureRow]) -> Vec<DescriptiveCell> {
    let by_id: HashMap<&str, &CampaignRecord> = records
        .iter()
        .map(|r| (r.campaign_id.as_str(), r))
        .collect();

    let mut cells = Vec::with_capacity(DESCRIPTIVE_VARIABLES.len() * 4);
    for variable in DESCRIPTIVE_VARIABLES {
        for category in CanonicalCategory::ALL {
            let values: Vec<f64> = rows
                .iter()
                .filter(|row| row.category == category)
                .filter_map(|row| {
                    let record = by_id.get(row.campaign_id.as_str())?;
                    raw_value(variable, record, row)
                })
                .collect();
            let cell = match describe(&values) {
                Ok(summary) => DescriptiveCell {
                    variable,
                    category,
                    n: summary.n,
                    mean: Some(summary.mean),
                    sd: summary.sd,
                },
                Err(_) => DescriptiveCell {
                    variable,
                    category,
                    n: 0,
                    mean: None,
                    sd: None,
                },
            };
            cells.push(cell);
        }
    }
    cells
}

fn raw_value(variable: &str, record: &CampaignRecord, row: &FeatureRow) -> Option<f64> {
    match variable {
        "Number of donations" => Some(record.donation_count() as f64),
        "Average donation amount per donor" => record.average_donation(),
        "Number of comments" => Some(record.comments.len() as f64),
        "Care score" => Some(row.care),
        "Fairness score" => Some(row.fairness),
        "Loyalty score" => Some(row.loyalty),
        "Campaign appeal length" => {
            Some(crate::textprep::count_whitespace_tokens(&record.appeal_text) as f64)
        }
        "Number of photos" => Some(record.photo_count as f64),
        "Fundraising goal" => Some(record.goal_amount),
        _ => unreachable!("fixed variable list"),
    }
}

/// Spearman correlation between total raised and donation count across
/// campaigns: the diagnostic justifying the exclusion of total raised as an
/// outcome.
pub fn total_raised_check(records: &[CampaignRecord]) -> Result<f64, PipelineError> {
    let totals: Vec<f64> = records.iter().map(CampaignRecord::total_raised).collect();
    let counts: Vec<f64> = records.iter().map(|r| r.donation_count() as f64).collect();
    Ok(spearman(&totals, &counts)?)
}
