//! Plain-TSV renderings of every analysis table. All numbers use a fixed
//! six-decimal format and all row orders are fixed, so identical inputs
//! always produce byte-identical output.

use crate::frameaxis::BiasScore;
use crate::pipeline::{DescriptiveCell, DroppedRecord, GroupStat, PositionStat, RejectedRecord};
use crate::stats::FitResult;

/// Canonical numeric format for TSV cells.
pub fn format_value(x: f64) -> String {
    format!("{x:.6}")
}

fn format_opt(x: Option<f64>) -> String {
    match x {
        Some(v) => format_value(v),
        None => "NA".to_string(),
    }
}

/// Significance stars at the conventional cutpoints (strict inequalities).
pub fn significance_stars(p: f64) -> &'static str {
    if p < 0.001 {
        "***"
    } else if p < 0.01 {
        "**"
    } else if p < 0.05 {
        "*"
    } else {
        ""
    }
}

/// Appeal score dump: one row per campaign. Undefined scores serialize as NA.
pub fn appeal_scores_tsv(entries: &[(String, [BiasScore; 3])]) -> String {
    let mut out =
        String::from("campaign_id\tcare\tfairness\tloyalty\tmatched_tokens\ttotal_tokens\n");
    for (id, scores) in entries {
        out.push_str(&format!(
            "{id}\t{}\t{}\t{}\t{}\t{}\n",
            format_opt(scores[0].value),
            format_opt(scores[1].value),
            format_opt(scores[2].value),
            scores[0].matched_token_count,
            scores[0].total_token_count,
        ));
    }
    out
}

/// Comment score dump: as the appeal dump plus the comment index.
pub fn comment_scores_tsv(entries: &[(String, usize, [BiasScore; 3])]) -> String {
    let mut out = String::from(
        "campaign_id\tcomment_index\tcare\tfairness\tloyalty\tmatched_tokens\ttotal_tokens\n",
    );
    for (id, index, scores) in entries {
        out.push_str(&format!(
            "{id}\t{index}\t{}\t{}\t{}\t{}\t{}\n",
            format_opt(scores[0].value),
            format_opt(scores[1].value),
            format_opt(scores[2].value),
            scores[0].matched_token_count,
            scores[0].total_token_count,
        ));
    }
    out
}

/// Long-format descriptives: variable x category rows with n, mean, sd.
pub fn descriptives_tsv(cells: &[DescriptiveCell]) -> String {
    let mut out = String::from("variable\tcategory\tn\tmean\tsd\n");
    for cell in cells {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            cell.variable,
            cell.category,
            cell.n,
            format_opt(cell.mean),
            format_opt(cell.sd),
        ));
    }
    out
}

/// One fitted model as term rows plus trailing summary rows, with the star
/// column derived from the p-values.
pub fn fit_tsv(fit: &FitResult) -> String {
    let mut out = String::from("term\tcoefficient\tstd_error\tt_stat\tp_value\tstars\n");
    for (i, name) in fit.column_names.iter().enumerate() {
        out.push_str(&format!(
            "{name}\t{}\t{}\t{}\t{}\t{}\n",
            format_value(fit.coefficients[i]),
            format_value(fit.std_errors[i]),
            format_value(fit.t_stats[i]),
            format_value(fit.p_values[i]),
            significance_stars(fit.p_values[i]),
        ));
    }
    out.push_str(&format!(
        "Number of observations\t{}\tNA\tNA\tNA\t\n",
        fit.n
    ));
    out.push_str(&format!(
        "Dropped rows\t{}\tNA\tNA\tNA\t\n",
        fit.n_dropped_rows
    ));
    out.push_str(&format!("R2\t{}\tNA\tNA\tNA\t\n", format_value(fit.r2)));
    out.push_str(&format!(
        "Adjusted R2\t{}\tNA\tNA\tNA\t\n",
        format_value(fit.adjusted_r2)
    ));
    out.push_str(&format!("Residual df\t{}\tNA\tNA\tNA\t\n", fit.residual_df));
    out
}

/// Group table for the comment-alignment and comment-length analyses. Each
/// entry pairs a frame name with its three group rows.
pub fn group_table_tsv(tables: &[(&str, Vec<GroupStat>)]) -> String {
    let mut out = String::from("frame\tgroup\tn\tmean\tci_lower\tci_upper\n");
    for (frame, stats) in tables {
        for stat in stats {
            out.push_str(&format!(
                "{frame}\t{}\t{}\t{}\t{}\t{}\n",
                stat.group,
                stat.n,
                format_opt(stat.mean),
                format_opt(stat.ci_lower),
                format_opt(stat.ci_upper),
            ));
        }
    }
    out
}

/// Donation-position curve rows.
pub fn position_curve_tsv(stats: &[PositionStat]) -> String {
    let mut out = String::from("position\tn\tmean\tci_lower\tci_upper\n");
    for stat in stats {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            stat.position,
            stat.n,
            format_opt(stat.mean),
            format_opt(stat.ci_lower),
            format_opt(stat.ci_upper),
        ));
    }
    out
}

/// Rejected input lines.
pub fn rejects_tsv(rejects: &[RejectedRecord]) -> String {
    let mut out = String::from("line\tcampaign_id\treason\n");
    for reject in rejects {
        out.push_str(&format!(
            "{}\t{}\t{}\n",
            reject.line,
            reject.campaign_id.as_deref().unwrap_or("NA"),
            reject.reason,
        ));
    }
    out
}

/// Campaigns dropped during feature building.
pub fn drops_tsv(drops: &[DroppedRecord]) -> String {
    let mut out = String::from("campaign_id\treason\n");
    for drop in drops {
        out.push_str(&format!("{}\t{}\n", drop.campaign_id, drop.reason));
    }
    out
}
