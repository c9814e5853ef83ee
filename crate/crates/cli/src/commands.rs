//! The four subcommands: `score`, `describe`, `fit`, `figdata`.
//!
//! Each command loads its inputs, runs the corresponding pipeline analyses,
//! writes TSV tables plus a run manifest into the output directory, and sends
//! warnings to stderr.

use serde_json::json;

use moralframe_core::pipeline::FieldMapping;
use moralframe_core::report;
use moralframe_core::{
    build_axes, build_features, comment_alignment, comment_length_by_group, descriptives,
    donation_position_curve, fit_model, ingest, resolve_coverage, score_appeals, score_comments,
    total_raised_check, CampaignRecord, EmbeddingTable, FeatureReport, Frame, ModelId,
    MoralAxisSet, SeedLexicon, SentimentClass, SentimentThresholds, ValenceLexicon,
};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::manifest::{write_atomic, RunManifest};

pub struct LoadedInputs {
    pub table: EmbeddingTable,
    pub axes: MoralAxisSet,
    pub records: Vec<CampaignRecord>,
}

/// Load embeddings, seed lexicon, axes, and the dataset; write the rejects
/// table when any line failed validation.
fn load_inputs(config: &RunConfig, manifest: &mut RunManifest) -> Result<LoadedInputs, CliError> {
    let table = EmbeddingTable::load(&config.embeddings, config.dim)?;
    if table.duplicate_count() > 0 {
        eprintln!(
            "warning: {} duplicate embedding tokens ignored (first occurrence wins)",
            table.duplicate_count()
        );
    }
    let lexicon = match &config.lexicon {
        Some(path) => SeedLexicon::load(path)?,
        None => SeedLexicon::bundled(),
    };
    let coverage = resolve_coverage(&lexicon, &table)?;
    for pole in &coverage.poles {
        if pole.low_coverage {
            eprintln!(
                "warning: {}.{} has low seed coverage: {}/{} in vocabulary",
                pole.frame,
                pole.pole,
                pole.resolved(),
                pole.declared
            );
        }
    }
    let axes = build_axes(&lexicon, &table)?;

    let mut mapping = match &config.mapping {
        Some(path) => FieldMapping::load(path)?,
        None => FieldMapping::default(),
    };
    if let Some(column) = &config.sentiment_column {
        mapping.set("sentiment_compound", column);
    }
    let ingest_report = ingest(&config.data, Some(&mapping))?;
    if !ingest_report.rejects.is_empty() {
        eprintln!(
            "warning: {} of {} lines rejected; see rejects.tsv",
            ingest_report.rejects.len(),
            ingest_report.total_lines
        );
        write_atomic(
            &config.out,
            "rejects.tsv",
            report::rejects_tsv(&ingest_report.rejects).as_bytes(),
        )?;
        manifest.outputs.push("rejects.tsv".to_string());
    }
    if ingest_report.records.is_empty() {
        return Err(CliError::Data("no records ingested".to_string()));
    }

    manifest.count("embedding_tokens", table.token_count() as u64);
    manifest.count("embedding_duplicates", table.duplicate_count() as u64);
    manifest.count("input_lines", ingest_report.total_lines as u64);
    manifest.count("records_ingested", ingest_report.records.len() as u64);
    manifest.count("records_rejected", ingest_report.rejects.len() as u64);
    for pole in &coverage.poles {
        manifest.count(
            &format!("seeds_resolved_{}_{}", pole.frame, pole.pole),
            pole.resolved() as u64,
        );
    }

    Ok(LoadedInputs {
        table,
        axes,
        records: ingest_report.records,
    })
}

fn load_valence(config: &RunConfig) -> Result<ValenceLexicon, CliError> {
    Ok(match &config.sentiment_lexicon {
        Some(path) => ValenceLexicon::load(path)?,
        None => ValenceLexicon::bundled(),
    })
}

fn thresholds(config: &RunConfig) -> SentimentThresholds {
    SentimentThresholds {
        positive: config.positive_threshold,
        negative: config.negative_threshold,
    }
}

fn build_rows(
    config: &RunConfig,
    inputs: &LoadedInputs,
    manifest: &mut RunManifest,
) -> Result<FeatureReport, CliError> {
    let valence = load_valence(config)?;
    let features = build_features(
        &inputs.records,
        &inputs.axes,
        &inputs.table,
        &valence,
        &thresholds(config),
    )?;
    if !features.drops.is_empty() {
        eprintln!(
            "warning: {} campaigns dropped during feature building; see drops.tsv",
            features.drops.len()
        );
        write_atomic(
            &config.out,
            "drops.tsv",
            report::drops_tsv(&features.drops).as_bytes(),
        )?;
        manifest.outputs.push("drops.tsv".to_string());
    }
    if features.rows.is_empty() {
        return Err(CliError::Data(
            "no campaigns with defined moral scores".to_string(),
        ));
    }
    manifest.count("feature_rows", features.rows.len() as u64);
    manifest.count("feature_drops", features.drops.len() as u64);

    let total = features.rows.len() as f64;
    let share = |class: SentimentClass| {
        let n = features
            .rows
            .iter()
            .filter(|r| r.sentiment == class)
            .count();
        n as f64 / total
    };
    manifest.diagnostic(
        "sentiment_distribution",
        json!({
            "positive": share(SentimentClass::Positive),
            "neutral": share(SentimentClass::Neutral),
            "negative": share(SentimentClass::Negative),
        }),
    );

    Ok(features)
}

/// `score`: bias scores of every appeal and every comment.
pub fn cmd_score(config: &RunConfig) -> Result<(), CliError> {
    let mut manifest = RunManifest::new("score", config)?;
    let inputs = load_inputs(config, &mut manifest)?;

    let appeals = score_appeals(&inputs.records, &inputs.axes, &inputs.table);
    write_atomic(
        &config.out,
        "appeal_scores.tsv",
        report::appeal_scores_tsv(&appeals).as_bytes(),
    )?;
    manifest.outputs.push("appeal_scores.tsv".to_string());

    let comments = score_comments(&inputs.records, &inputs.axes, &inputs.table);
    write_atomic(
        &config.out,
        "comment_scores.tsv",
        report::comment_scores_tsv(&comments).as_bytes(),
    )?;
    manifest.outputs.push("comment_scores.tsv".to_string());

    manifest.count("appeals_scored", appeals.len() as u64);
    manifest.count("comments_scored", comments.len() as u64);
    let undefined = appeals.iter().filter(|(_, s)| s[0].value.is_none()).count();
    manifest.count("appeals_undefined", undefined as u64);

    manifest.write(&config.out)
}

/// `describe`: per-category descriptive statistics on raw scales.
pub fn cmd_describe(config: &RunConfig) -> Result<(), CliError> {
    let mut manifest = RunManifest::new("describe", config)?;
    let inputs = load_inputs(config, &mut manifest)?;
    let features = build_rows(config, &inputs, &mut manifest)?;

    let cells = descriptives(&inputs.records, &features.rows);
    write_atomic(
        &config.out,
        "descriptives.tsv",
        report::descriptives_tsv(&cells).as_bytes(),
    )?;
    manifest.outputs.push("descriptives.tsv".to_string());

    // diagnostic justifying the excluded total-raised outcome
    match total_raised_check(&inputs.records) {
        Ok(rho) => manifest.diagnostic("spearman_total_raised_vs_donation_count", json!(rho)),
        Err(e) => eprintln!("warning: total-raised diagnostic skipped: {e}"),
    }

    manifest.write(&config.out)
}

/// `fit`: the requested regression models, one TSV per model.
pub fn cmd_fit(config: &RunConfig) -> Result<(), CliError> {
    let mut manifest = RunManifest::new("fit", config)?;
    let inputs = load_inputs(config, &mut manifest)?;
    let features = build_rows(config, &inputs, &mut manifest)?;

    for &number in &config.models {
        let model = ModelId::from_number(number).expect("validated model ids");
        let fit = fit_model(model, &features.rows, config.include_interactions)?;
        let name = format!("fit_model{number}.tsv");
        write_atomic(&config.out, &name, report::fit_tsv(&fit).as_bytes())?;
        manifest.outputs.push(name);
        manifest.count(&format!("model{number}_n"), fit.n as u64);
        manifest.count(&format!("model{number}_dropped"), fit.n_dropped_rows as u64);
        manifest.diagnostic(
            &format!("model{number}_adjusted_r2"),
            json!(fit.adjusted_r2),
        );
    }

    manifest.write(&config.out)
}

/// `figdata`: group tables for the comment analyses and the donation-position
/// curve.
pub fn cmd_figdata(config: &RunConfig) -> Result<(), CliError> {
    let mut manifest = RunManifest::new("figdata", config)?;
    let inputs = load_inputs(config, &mut manifest)?;

    let frames: Vec<Frame> = match config.frame {
        Some(frame) => vec![frame],
        None => Frame::ALL.to_vec(),
    };

    let mut alignment_tables = Vec::new();
    let mut length_tables = Vec::new();
    for &frame in &frames {
        let alignment = comment_alignment(
            &inputs.records,
            &inputs.axes,
            &inputs.table,
            frame,
            config.category,
        )?;
        if alignment.zero_variance {
            eprintln!(
                "warning: {frame} appeal scores have zero variance; every campaign is in the \
                 medium group"
            );
        }
        alignment_tables.push((frame.name(), alignment.groups));
        let length = comment_length_by_group(
            &inputs.records,
            &inputs.axes,
            &inputs.table,
            frame,
            config.category,
        )?;
        length_tables.push((frame.name(), length.groups));
    }
    write_atomic(
        &config.out,
        "figure2_comment_scores.tsv",
        report::group_table_tsv(&alignment_tables).as_bytes(),
    )?;
    manifest
        .outputs
        .push("figure2_comment_scores.tsv".to_string());
    write_atomic(
        &config.out,
        "figure3_comment_length.tsv",
        report::group_table_tsv(&length_tables).as_bytes(),
    )?;
    manifest
        .outputs
        .push("figure3_comment_length.tsv".to_string());

    let curve =
        donation_position_curve(&inputs.records, config.min_donations, config.max_position)?;
    write_atomic(
        &config.out,
        "figure4_donation_positions.tsv",
        report::position_curve_tsv(&curve).as_bytes(),
    )?;
    manifest
        .outputs
        .push("figure4_donation_positions.tsv".to_string());
    manifest.count("position_curve_positions", curve.len() as u64);

    manifest.write(&config.out)
}
