//! The three regression model specifications over the shared 21-column
//! design: category dummies, moral scores, category-by-frame interactions,
//! sentiment dummies, and transformed controls, with Animals and Negative as
//! the reference categories.

use super::{CanonicalCategory, FeatureRow, PipelineError};
use crate::stats::{fit_ols, DesignMatrix, FitResult};
use crate::textprep::SentimentClass;

/// Predictor count of the full design, intercept included.
pub const MODEL_COLUMN_COUNT: usize = 21;

/// Which outcome a model explains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelId {
    /// Model 1: log1p number of donations.
    Donations,
    /// Model 2: log1p average donation amount per donor.
    AvgAmount,
    /// Model 3: log1p number of comments.
    Comments,
}

impl ModelId {
    pub const ALL: [ModelId; 3] = [ModelId::Donations, ModelId::AvgAmount, ModelId::Comments];

    pub fn number(self) -> u8 {
        match self {
            ModelId::Donations => 1,
            ModelId::AvgAmount => 2,
            ModelId::Comments => 3,
        }
    }

    pub fn from_number(n: u8) -> Option<ModelId> {
        match n {
            1 => Some(ModelId::Donations),
            2 => Some(ModelId::AvgAmount),
            3 => Some(ModelId::Comments),
            _ => None,
        }
    }

    pub fn outcome_name(self) -> &'static str {
        match self {
            ModelId::Donations => "Number of donations",
            ModelId::AvgAmount => "Average donation amount per donor",
            ModelId::Comments => "Number of comments",
        }
    }
}

/// Design matrix plus outcome vector for one model.
#[derive(Debug, Clone)]
pub struct ModelData {
    pub design: DesignMatrix,
    pub outcome: Vec<f64>,
    /// Rows excluded because the outcome is undefined (Model 2 only).
    pub n_dropped_rows: usize,
}

const INTERACTION_CATEGORIES: [CanonicalCategory; 3] = [
    CanonicalCategory::Emergency,
    CanonicalCategory::Medical,
    CanonicalCategory::Memorial,
];

/// Column names of the full design, in the fixed output order.
pub fn column_names(include_interactions: bool) -> Vec<String> {
    let mut names = vec![
        "Intercept".to_string(),
        "Emergency".to_string(),
        "Medical".to_string(),
        "Memorial".to_string(),
        "Care".to_string(),
        "Fairness".to_string(),
        "Loyalty".to_string(),
    ];
    if include_interactions {
        for frame in ["Care", "Fairness", "Loyalty"] {
            for category in INTERACTION_CATEGORIES {
                names.push(format!("{category} x {frame}"));
            }
        }
    }
    names.extend(
        [
            "Positive sentiment",
            "Neutral sentiment",
            "Campaign appeal length",
            "Number of photos",
            "Fundraising goal",
        ]
        .map(String::from),
    );
    names
}

/// Assemble the design matrix and outcome for one model.
///
/// Model 2 keeps only rows with a defined average donation amount and counts
/// the rest as dropped. With interactions the design has exactly 21 named
/// columns; without, 12.
pub fn model_spec(
    model: ModelId,
    rows: &[FeatureRow],
    include_interactions: bool,
) -> Result<ModelData, PipelineError> {
    let usable: Vec<&FeatureRow> = match model {
        ModelId::AvgAmount => rows.iter().filter(|r| r.log_avg_amount.is_some()).collect(),
        _ => rows.iter().collect(),
    };
    let n_dropped_rows = rows.len() - usable.len();
    if usable.is_empty() {
        return Err(PipelineError::NoRows {
            model: model.number(),
        });
    }

    let names = column_names(include_interactions);
    let mut matrix_rows = Vec::with_capacity(usable.len());
    let mut outcome = Vec::with_capacity(usable.len());
    for row in &usable {
        matrix_rows.push(design_row(row, include_interactions));
        outcome.push(match model {
            ModelId::Donations => row.log_n_donations,
            ModelId::AvgAmount => row.log_avg_amount.expect("filtered above"),
            ModelId::Comments => row.log_n_comments,
        });
    }

    let design = DesignMatrix::new(names, matrix_rows)?;
    Ok(ModelData {
        design,
        outcome,
        n_dropped_rows,
    })
}

fn design_row(row: &FeatureRow, include_interactions: bool) -> Vec<f64> {
    let dummies = INTERACTION_CATEGORIES.map(|c| if row.category == c { 1.0 } else { 0.0 });
    let mut values = Vec::with_capacity(if include_interactions { 21 } else { 12 });
    values.push(1.0);
    values.extend(dummies);
    values.extend([row.care, row.fairness, row.loyalty]);
    if include_interactions {
        for frame_score in [row.care, row.fairness, row.loyalty] {
            for dummy in dummies {
                values.push(dummy * frame_score);
            }
        }
    }
    values.push(if row.sentiment == SentimentClass::Positive {
        1.0
    } else {
        0.0
    });
    values.push(if row.sentiment == SentimentClass::Neutral {
        1.0
    } else {
        0.0
    });
    values.extend([row.log_length, row.log_photos, row.log_goal]);
    values
}

/// Convenience wrapper: assemble the design and fit it, propagating the
/// dropped-row count into the result.
pub fn fit_model(
    model: ModelId,
    rows: &[FeatureRow],
    include_interactions: bool,
) -> Result<FitResult, PipelineError> {
    let data = model_spec(model, rows, include_interactions)?;
    let mut fit = fit_ols(&data.design, &data.outcome)?;
    fit.n_dropped_rows = data.n_dropped_rows;
    Ok(fit)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(
        id: &str,
        category: CanonicalCategory,
        scores: (f64, f64, f64),
        sentiment: SentimentClass,
    ) -> FeatureRow {
        FeatureRow {
            campaign_id: id.to_string(),
            category,
            care: scores.0,
            fairness: scores.1,
            loyalty: scores.2,
            sentiment,
            log_length: 4.0,
            log_photos: 0.5,
            log_goal: 7.0,
            log_n_donations: 2.0,
            log_avg_amount: Some(3.0),
            log_n_comments: 1.0,
        }
    }

    #[test]
    fn column_names_match_the_table_layout() {
        let names = column_names(true);
        assert_eq!(names.len(), MODEL_COLUMN_COUNT);
        assert_eq!(
            names,
            vec![
                "Intercept",
                "Emergency",
                "Medical",
                "Memorial",
                "Care",
                "Fairness",
                "Loyalty",
                "Emergency x Care",
                "Medical x Care",
                "Memorial x Care",
                "Emergency x Fairness",
                "Medical x Fairness",
                "Memorial x Fairness",
                "Emergency x Loyalty",
                "Medical x Loyalty",
                "Memorial x Loyalty",
                "Positive sentiment",
                "Neutral sentiment",
                "Campaign appeal length",
                "Number of photos",
                "Fundraising goal",
            ]
        );
        assert_eq!(column_names(false).len(), 12);
    }

    #[test]
    fn reference_cell_rows_are_zero_in_dummies_and_interactions() {
        let r = row(
            "ref",
            CanonicalCategory::Animals,
            (0.4, -0.2, 0.1),
            SentimentClass::Negative,
        );
        let values = design_row(&r, true);
        assert_eq!(values.len(), 21);
        // dummies (1..=3), interactions (7..=15), sentiment dummies (16, 17)
        for idx in (1..=3).chain(7..=15).chain(16..=17) {
            assert_eq!(values[idx], 0.0, "column {idx}");
        }
        assert_eq!(values[0], 1.0);
        assert_eq!(&values[4..7], &[0.4, -0.2, 0.1]);
    }

    #[test]
    fn emergency_row_activates_its_dummy_and_interactions() {
        let r = row(
            "e",
            CanonicalCategory::Emergency,
            (0.7, 0.2, -0.3),
            SentimentClass::Positive,
        );
        let values = design_row(&r, true);
        assert_eq!(values[1], 1.0); // Emergency
        assert_eq!(values[2], 0.0);
        assert_eq!(values[3], 0.0);
        assert_eq!(values[7], 0.7); // Emergency x Care
        assert_eq!(values[8], 0.0); // Medical x Care
        assert_eq!(values[10], 0.2); // Emergency x Fairness
        assert_eq!(values[13], -0.3); // Emergency x Loyalty
        assert_eq!(values[16], 1.0); // Positive sentiment
        assert_eq!(values[17], 0.0);
    }

    fn mixed_rows() -> Vec<FeatureRow> {
        // enough variation for a full-rank 21-column design
        let mut rows = Vec::new();
        let cats = CanonicalCategory::ALL;
        let sents = [
            SentimentClass::Negative,
            SentimentClass::Positive,
            SentimentClass::Neutral,
        ];
        for i in 0..120 {
            let f = i as f64;
            let mut r = row(
                &format!("c{i}"),
                cats[i % 4],
                (
                    (f * 0.37).sin() * 0.5,
                    (f * 0.73 + 1.0).cos() * 0.4,
                    ((f + 2.0) * 0.19).sin() * 0.3,
                ),
                sents[i % 3],
            );
            r.log_length = 3.0 + (f * 0.11).sin();
            r.log_photos = ((f * 1.3).sin().abs() * 3.0).ln_1p();
            r.log_goal = 6.0 + (f * 0.23).cos();
            r.log_n_donations = 2.0 + (f * 0.31).sin();
            r.log_avg_amount = if i % 10 == 0 {
                None
            } else {
                Some(3.0 + (f * 0.17).cos())
            };
            r.log_n_comments = 1.0 + (f * 0.29).sin().abs();
            rows.push(r);
        }
        rows
    }

    #[test]
    fn model2_drops_rows_without_average_amount() {
        let rows = mixed_rows();
        let data = model_spec(ModelId::AvgAmount, &rows, true).unwrap();
        assert_eq!(data.n_dropped_rows, 12);
        assert_eq!(data.design.n(), 108);
        let data1 = model_spec(ModelId::Donations, &rows, true).unwrap();
        assert_eq!(data1.n_dropped_rows, 0);
        assert_eq!(data1.design.n(), 120);
    }

    #[test]
    fn fit_model_carries_drop_count_and_recovers_outcome() {
        let rows = mixed_rows();
        let fit = fit_model(ModelId::AvgAmount, &rows, true).unwrap();
        assert_eq!(fit.n_dropped_rows, 12);
        assert_eq!(fit.coefficients.len(), 21);
        // fitted + residuals reproduces the outcome
        let data = model_spec(ModelId::AvgAmount, &rows, true).unwrap();
        for ((f, r), y) in fit.fitted.iter().zip(&fit.residuals).zip(&data.outcome) {
            assert!((f + r - y).abs() < 1e-10);
        }
    }

    #[test]
    fn absent_category_is_reported_as_rank_deficiency() {
        let rows: Vec<FeatureRow> = mixed_rows()
            .into_iter()
            .filter(|r| r.category != CanonicalCategory::Medical)
            .collect();
        let err = fit_model(ModelId::Donations, &rows, true).unwrap_err();
        match err {
            PipelineError::Stats(crate::stats::StatsError::RankDeficient { columns }) => {
                assert!(columns.iter().any(|c| c.contains("Medical")), "{columns:?}");
            }
            other => panic!("unexpected error: {other}"),
        }
    }
}
