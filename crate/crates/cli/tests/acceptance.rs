//! Acceptance suite. Each test exercises one numbered criterion at its stated
//! tolerance and prints one pass line; a failed assertion is the fail line.
//!
//! Criterion 9 is an optional real-data integration check, enabled by setting
//! MORALFRAME_DATA and MORALFRAME_EMBEDDINGS; it is skipped (and passes)
//! otherwise.

// oracle implementations below keep the textbook index form on purpose
#![allow(clippy::needless_range_loop)]

mod common;

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{gauss, run_cli, FixtureDir};
use moralframe_core::{
    build_axes, build_features, fit_ols, model_spec, score_document, spearman, student_t_sf,
    two_sided_p_value, CampaignRecord, DesignMatrix, EmbeddingTable, ModelId, SeedLexicon,
    SentimentThresholds, ValenceLexicon, MODEL_COLUMN_COUNT,
};

fn pass(n: u32, what: &str) {
    println!("[acceptance] criterion {n} PASS - {what}");
}

// ---------------------------------------------------------------------------
// 1. OLS oracle equivalence
// ---------------------------------------------------------------------------

/// Solve (X'X) b = X'y by Gauss-Jordan elimination, and invert X'X the same
/// way for oracle standard errors. Deliberately the textbook normal-equations
/// route, independent of the QR path under test.
fn normal_equations_oracle(rows: &[Vec<f64>], y: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = rows.len();
    let p = rows[0].len();
    let mut xtx = vec![vec![0.0f64; p]; p];
    let mut xty = vec![0.0f64; p];
    for (row, &yi) in rows.iter().zip(y) {
        for i in 0..p {
            for j in 0..p {
                xtx[i][j] += row[i] * row[j];
            }
            xty[i] += row[i] * yi;
        }
    }
    let inv = invert(&xtx);
    let beta: Vec<f64> = (0..p)
        .map(|i| (0..p).map(|j| inv[i][j] * xty[j]).sum())
        .collect();
    let mut rss = 0.0;
    for (row, &yi) in rows.iter().zip(y) {
        let fitted: f64 = row.iter().zip(&beta).map(|(x, b)| x * b).sum();
        rss += (yi - fitted) * (yi - fitted);
    }
    let sigma2 = rss / (n - p) as f64;
    let se: Vec<f64> = (0..p).map(|j| (sigma2 * inv[j][j]).sqrt()).collect();
    (beta, se)
}

fn invert(matrix: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let p = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..p).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..p {
        let pivot = (col..p)
            .max_by(|&r1, &r2| a[r1][col].abs().total_cmp(&a[r2][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        let pv = a[col][col];
        for j in 0..2 * p {
            a[col][j] /= pv;
        }
        for r in 0..p {
            if r != col {
                let factor = a[r][col];
                for j in 0..2 * p {
                    a[r][j] -= factor * a[col][j];
                }
            }
        }
    }
    a.into_iter().map(|row| row[p..].to_vec()).collect()
}

#[test]
fn criterion_1_ols_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for trial in 0..100 {
        let p = rng.random_range(2..=25usize);
        let n = rng.random_range((p + 5).max(10)..=200usize);
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| {
                let mut row = vec![1.0];
                row.extend((1..p).map(|_| rng.random_range(-3.0..3.0)));
                row
            })
            .collect();
        let beta_true: Vec<f64> = (0..p).map(|_| rng.random_range(-2.0..2.0)).collect();
        let y: Vec<f64> = rows
            .iter()
            .map(|row| {
                row.iter().zip(&beta_true).map(|(x, b)| x * b).sum::<f64>() + gauss(&mut rng)
            })
            .collect();

        let names: Vec<String> = (0..p).map(|j| format!("x{j}")).collect();
        let design = DesignMatrix::new(names, rows.clone()).unwrap();
        let fit = fit_ols(&design, &y).unwrap();
        let (oracle_beta, oracle_se) = normal_equations_oracle(&rows, &y);
        for j in 0..p {
            assert!(
                (fit.coefficients[j] - oracle_beta[j]).abs() < 1e-8,
                "trial {trial} coef {j}: {} vs {}",
                fit.coefficients[j],
                oracle_beta[j]
            );
            assert!(
                (fit.std_errors[j] - oracle_se[j]).abs() < 1e-8,
                "trial {trial} se {j}: {} vs {}",
                fit.std_errors[j],
                oracle_se[j]
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "100 systems took {elapsed:?}, budget is 5 s"
    );
    pass(
        1,
        &format!("100 random systems match the normal-equations oracle within 1e-8 ({elapsed:?})"),
    );
}

// ---------------------------------------------------------------------------
// 2. Bias-score oracle equivalence + antisymmetry
// ---------------------------------------------------------------------------

fn oracle_cosine(u: &[f64], v: &[f64]) -> f64 {
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    let nu: f64 = u.iter().map(|a| a * a).sum::<f64>().sqrt();
    let nv: f64 = v.iter().map(|b| b * b).sum::<f64>().sqrt();
    dot / (nu * nv)
}

/// Direct per-occurrence summation over the raw token list, no tf map.
fn oracle_bias(tokens: &[String], table: &EmbeddingTable, direction: &[f64]) -> Option<f64> {
    let mut sum = 0.0;
    let mut count = 0usize;
    // sort to mirror the deterministic summation-order contract
    let mut sorted: Vec<&String> = tokens.iter().collect();
    sorted.sort();
    for token in sorted {
        if let Some(vector) = table.lookup(token) {
            sum += oracle_cosine(vector, direction);
            count += 1;
        }
    }
    if count == 0 {
        None
    } else {
        Some(sum / count as f64)
    }
}

#[test]
fn criterion_2_bias_score_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut done = 0;
    while done < 100 {
        let dim = rng.random_range(2..=5usize);
        let vocab_size = rng.random_range(4..=10usize);
        let vocab: Vec<String> = (0..vocab_size).map(|i| format!("w{i}")).collect();
        let table = EmbeddingTable::from_entries(vocab.iter().map(|w| {
            let v: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
            (w.clone(), v)
        }))
        .unwrap();

        // disjoint one-or-two-word pools per frame from a shuffled vocabulary
        let mut order: Vec<usize> = (0..vocab_size).collect();
        for i in (1..order.len()).rev() {
            order.swap(i, rng.random_range(0..=i));
        }
        let vice = &vocab[order[0]];
        let virtue = &vocab[order[1]];
        let lexicon_text = format!(
            "[care.vice]\n{vice}\n[care.virtue]\n{virtue}\n\
             [fairness.vice]\n{vice}\n[fairness.virtue]\n{virtue}\n\
             [loyalty.vice]\n{vice}\n[loyalty.virtue]\n{virtue}\n"
        );
        let lexicon = SeedLexicon::parse(&lexicon_text, "<acceptance>").unwrap();
        let axes = match build_axes(&lexicon, &table) {
            Ok(axes) => axes,
            Err(_) => continue, // coinciding centroids; try another draw
        };

        let len = rng.random_range(1..=40usize);
        let tokens: Vec<String> = (0..len)
            .map(|_| {
                if rng.random::<f64>() < 0.15 {
                    "zz-oov".to_string()
                } else {
                    vocab[rng.random_range(0..vocab_size)].clone()
                }
            })
            .collect();

        let scores = score_document(&axes, &table, &tokens);
        for axis in axes.iter() {
            let expected = oracle_bias(&tokens, &table, &axis.direction);
            let got = scores.iter().find(|s| s.frame == axis.frame).unwrap().value;
            match (got, expected) {
                (None, None) => {}
                (Some(a), Some(b)) => {
                    assert!((a - b).abs() < 1e-10, "{a} vs {b}");
                }
                other => panic!("defined-ness mismatch: {other:?}"),
            }
        }

        // pole swap negates every defined score exactly
        let swapped = build_axes(&lexicon.with_swapped_poles(), &table).unwrap();
        let flipped = score_document(&swapped, &table, &tokens);
        for (a, b) in scores.iter().zip(&flipped) {
            match (a.value, b.value) {
                (None, None) => {}
                (Some(x), Some(y)) => assert_eq!(x, -y, "antisymmetry must be exact"),
                other => panic!("defined-ness mismatch: {other:?}"),
            }
        }
        done += 1;
    }
    pass(
        2,
        "100 toy corpora match direct summation within 1e-10; pole swap negates exactly",
    );
}

// ---------------------------------------------------------------------------
// 3. Student-t correctness vs numerical integration
// ---------------------------------------------------------------------------

/// Simpson integration of the t density via x = tan(theta). The integrand
/// simplifies to (1 + x^2) * (1 + x^2/v)^(-(v+1)/2), which stays finite at
/// the endpoints.
fn oracle_t_tail(t: f64, df: usize) -> f64 {
    let v = df as f64;
    let g = |theta: f64| -> f64 {
        let x = theta.tan();
        let x2 = x * x;
        (1.0 + x2) * (1.0 + x2 / v).powf(-(v + 1.0) / 2.0)
    };
    let simpson = |a: f64, b: f64, n: usize| -> f64 {
        let h = (b - a) / n as f64;
        let mut acc = g(a) + g(b);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * g(a + i as f64 * h);
        }
        acc * h / 3.0
    };
    let half_pi = std::f64::consts::FRAC_PI_2;
    let tail = simpson(t.atan(), half_pi, 20_000);
    let total = simpson(-half_pi, half_pi, 40_000);
    tail / total
}

#[test]
fn criterion_3_student_t_matches_integration_oracle() {
    for df in [1usize, 5, 10, 100] {
        assert!(
            (student_t_sf(0.0, df) - 0.5).abs() < 1e-12,
            "sf(0, {df}) must be 0.5"
        );
        for t in [0.5f64, 1.0, 2.0, 3.0] {
            let oracle_two_sided = 2.0 * oracle_t_tail(t, df);
            let got = two_sided_p_value(t, df);
            assert!(
                (got - oracle_two_sided).abs() < 1e-4,
                "t={t} df={df}: {got} vs oracle {oracle_two_sided}"
            );
        }
    }
    pass(
        3,
        "two-sided p-values match Simpson integration within 1e-4; sf(0, df) = 0.5",
    );
}

// ---------------------------------------------------------------------------
// 4. Synthetic effect recovery through the full pipeline
// ---------------------------------------------------------------------------

const TRUE_BETA: [f64; MODEL_COLUMN_COUNT] = [
    0.8, 1.0, 0.7, 1.2, // intercept + category dummies
    2.0, 0.5, -1.2, // frame mains
    -3.5, -0.4, -1.0, // care interactions
    -8.0, -1.5, -3.7, // fairness interactions
    9.0, 4.3, 3.0, // loyalty interactions
    -0.01, -0.09, // sentiment dummies
    0.05, 0.03, 0.28, // length, photos, goal
];

fn synthetic_records(rng: &mut ChaCha8Rng, n: usize) -> Vec<CampaignRecord> {
    let categories = ["Animals", "Emergency", "Medical", "Memorial"];
    (0..n)
        .map(|i| CampaignRecord {
            campaign_id: format!("s{i}"),
            category: categories[rng.random_range(0..4usize)].to_string(),
            appeal_text: common::synthesize_appeal(rng),
            goal_amount: rng.random_range(4.0..10.0f64).exp(),
            photo_count: rng.random_range(0..9u64),
            donations: vec![1.0],
            comments: vec![],
            sentiment_compound: None,
        })
        .collect()
}

#[test]
fn criterion_4_synthetic_effect_recovery() {
    let start = Instant::now();
    let mut hits = 0usize;
    let mut total = 0usize;
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(4_000 + seed);
        let emb_text = common::embedding_file_text(&mut rng);
        let table =
            EmbeddingTable::from_reader(std::io::Cursor::new(emb_text), "<synthetic>", Some(6))
                .unwrap();
        let lexicon = SeedLexicon::parse(&common::lexicon_file_text(), "<synthetic>").unwrap();
        let axes = build_axes(&lexicon, &table).unwrap();
        let valence = ValenceLexicon::from_entries([("goodtok", 3.0), ("badtok", -3.0)]);

        let records = synthetic_records(&mut rng, 2000);
        let features = build_features(
            &records,
            &axes,
            &table,
            &valence,
            &SentimentThresholds::default(),
        )
        .unwrap();
        assert!(
            features.drops.is_empty(),
            "synthetic appeals are in-vocabulary"
        );

        let data = model_spec(ModelId::Donations, &features.rows, true).unwrap();
        assert_eq!(data.design.p(), MODEL_COLUMN_COUNT);
        // outcome generated from the realized design with known coefficients
        let y: Vec<f64> = (0..data.design.n())
            .map(|i| {
                let mut mu = 0.0;
                for j in 0..MODEL_COLUMN_COUNT {
                    mu += data.design.value(i, j) * TRUE_BETA[j];
                }
                mu + 0.5 * gauss(&mut rng)
            })
            .collect();
        let fit = fit_ols(&data.design, &y).unwrap();
        for j in 0..MODEL_COLUMN_COUNT {
            total += 1;
            if (fit.coefficients[j] - TRUE_BETA[j]).abs() <= 3.0 * fit.std_errors[j] {
                hits += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    let needed = (total as f64 * 0.95).ceil() as usize;
    assert!(
        hits >= needed,
        "{hits}/{total} coefficients within 3 SEs; need {needed}"
    );
    assert!(
        elapsed.as_secs_f64() < 60.0,
        "20 seeds took {elapsed:?}, budget is 60 s"
    );
    pass(
        4,
        &format!("{hits}/{total} coefficients within 3 reported SEs across 20 seeds ({elapsed:?})"),
    );
}

// ---------------------------------------------------------------------------
// 5. Design-matrix contract
// ---------------------------------------------------------------------------

#[test]
fn criterion_5_design_matrix_contract() {
    let expected_names = [
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
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let lexicon = SeedLexicon::parse(&common::lexicon_file_text(), "<acceptance>").unwrap();
    let valence = ValenceLexicon::from_entries([("goodtok", 3.0), ("badtok", -3.0)]);
    for _trial in 0..10 {
        let emb_text = common::embedding_file_text(&mut rng);
        let table =
            EmbeddingTable::from_reader(std::io::Cursor::new(emb_text), "<synthetic>", Some(6))
                .unwrap();
        let axes = build_axes(&lexicon, &table).unwrap();
        let records = synthetic_records(&mut rng, 120);
        let features = build_features(
            &records,
            &axes,
            &table,
            &valence,
            &SentimentThresholds::default(),
        )
        .unwrap();
        let data = model_spec(ModelId::Donations, &features.rows, true).unwrap();

        assert_eq!(data.design.p(), MODEL_COLUMN_COUNT);
        assert_eq!(data.design.column_names(), &expected_names);

        let mut checked_reference_row = false;
        for (i, row) in features.rows.iter().enumerate() {
            if row.category == moralframe_core::CanonicalCategory::Animals
                && row.sentiment == moralframe_core::SentimentClass::Negative
            {
                for col in (1..=3).chain(7..=17) {
                    assert_eq!(
                        data.design.value(i, col),
                        0.0,
                        "reference row {i} must be zero in column {col}"
                    );
                }
                checked_reference_row = true;
            }
        }
        assert!(
            checked_reference_row,
            "fixture must contain an Animals/Negative row"
        );
    }
    pass(5, "21 named columns in fixed order; Animals/Negative rows are zero in every dummy and interaction column");
}

// ---------------------------------------------------------------------------
// 6. Figure-4 fixture
// ---------------------------------------------------------------------------

#[test]
fn criterion_6_donation_position_fixture() {
    let amounts: Vec<f64> = (1..=110).map(|k| 100.0 / k as f64).collect();
    let make = |id: &str, donations: Vec<f64>| CampaignRecord {
        campaign_id: id.to_string(),
        category: "Animals".to_string(),
        appeal_text: "x".to_string(),
        goal_amount: 1.0,
        photo_count: 0,
        donations,
        comments: vec![],
        sentiment_compound: None,
    };
    let records = vec![
        make("a", amounts.clone()),
        make("b", amounts.clone()),
        make("just-short", vec![7.0; 99]),
    ];
    let curve = moralframe_core::donation_position_curve(&records, 100, None).unwrap();
    assert_eq!(curve.len(), 100);
    for stat in &curve {
        assert_eq!(stat.n, 2, "the 99-donation campaign must be excluded");
        let expected = 100.0 / stat.position as f64;
        assert_eq!(stat.mean, Some(expected), "position {}", stat.position);
        assert_eq!(stat.ci_lower, Some(expected), "zero-width CI");
        assert_eq!(stat.ci_upper, Some(expected), "zero-width CI");
    }
    pass(6, "planted 100/k curve reproduced exactly with zero-width CIs; 99-donation campaign filtered out");
}

// ---------------------------------------------------------------------------
// 7. Spearman oracle
// ---------------------------------------------------------------------------

fn oracle_average_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut ranks = vec![0.0f64; n];
    for i in 0..n {
        let mut below = 0usize;
        let mut equal = 0usize;
        for j in 0..n {
            if values[j] < values[i] {
                below += 1;
            } else if values[j] == values[i] {
                equal += 1;
            }
        }
        // ranks below+1 ..= below+equal share their average
        ranks[i] = below as f64 + (equal as f64 + 1.0) / 2.0;
    }
    ranks
}

fn oracle_spearman(x: &[f64], y: &[f64]) -> f64 {
    let rx = oracle_average_ranks(x);
    let ry = oracle_average_ranks(y);
    let n = x.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    sxy / (sxx * syy).sqrt()
}

#[test]
fn criterion_7_spearman_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    for trial in 0..50 {
        let n = rng.random_range(3..=60usize);
        // draw from a small integer grid so ties are common
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(0..8u32) as f64).collect();
        let y: Vec<f64> = (0..n)
            .map(|i| x[i] * 0.5 + rng.random_range(0..6u32) as f64)
            .collect();
        let got = match spearman(&x, &y) {
            Ok(rho) => rho,
            Err(_) => continue, // zero rank variance draw
        };
        let expected = oracle_spearman(&x, &y);
        assert!(
            (got - expected).abs() < 1e-12,
            "trial {trial}: {got} vs {expected}"
        );

        // strictly monotone transforms leave the value exactly unchanged
        let tx: Vec<f64> = x.iter().map(|v| (v + 1.0).powi(3)).collect();
        let ty: Vec<f64> = y.iter().map(|v| v * 10.0 - 4.0).collect();
        assert_eq!(got, spearman(&tx, &ty).unwrap());
    }
    pass(7, "50 tied/untied draws match the averaged-rank oracle within 1e-12; monotone invariance exact");
}

// ---------------------------------------------------------------------------
// 8. CLI determinism
// ---------------------------------------------------------------------------

#[test]
fn criterion_8_cli_determinism() {
    let fx = FixtureDir::new(808, 120);
    let commands: [(&str, Vec<String>); 4] = [
        ("score", vec![]),
        ("describe", vec![]),
        ("fit", vec!["--models".into(), "1,2,3".into()]),
        (
            "figdata",
            vec![
                "--min-donations".into(),
                "5".into(),
                "--max-position".into(),
                "10".into(),
            ],
        ),
    ];
    for (command, extra) in &commands {
        let out_a = fx.path(&format!("{command}_a"));
        let out_b = fx.path(&format!("{command}_b"));
        for out in [&out_a, &out_b] {
            let mut args = vec![command.to_string()];
            args.extend(fx.base_args(out));
            args.extend(extra.clone());
            let output = run_cli(args);
            assert!(
                output.status.success(),
                "{command}: {}",
                String::from_utf8_lossy(&output.stderr)
            );
        }
        let mut names: Vec<String> = std::fs::read_dir(&out_a)
            .unwrap()
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .filter(|n| n.ends_with(".tsv"))
            .collect();
        names.sort();
        assert!(!names.is_empty(), "{command} wrote no tables");
        for name in names {
            let a = std::fs::read(out_a.join(&name)).unwrap();
            let b = std::fs::read(out_b.join(&name)).unwrap();
            assert_eq!(a, b, "{command}/{name} differs between runs");
        }
    }
    pass(
        8,
        "two runs of every subcommand produce byte-identical TSVs",
    );
}

// ---------------------------------------------------------------------------
// 9. Optional real-data integration (sign/ordering checks only)
// ---------------------------------------------------------------------------

#[test]
fn criterion_9_real_data_directional_checks() {
    let (data, embeddings) = match (
        std::env::var("MORALFRAME_DATA"),
        std::env::var("MORALFRAME_EMBEDDINGS"),
    ) {
        (Ok(d), Ok(e)) => (d, e),
        _ => {
            println!(
                "[acceptance] criterion 9 SKIP - optional integration; set MORALFRAME_DATA and \
                 MORALFRAME_EMBEDDINGS to enable"
            );
            return;
        }
    };
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let mut base = vec![
        "--embeddings".to_string(),
        embeddings,
        "--data".to_string(),
        data,
        "--out".to_string(),
        out.display().to_string(),
        "--dim".to_string(),
        "0".to_string(),
    ];
    if let Ok(mapping) = std::env::var("MORALFRAME_MAPPING") {
        base.extend(["--mapping".to_string(), mapping]);
    }

    let output = run_cli(std::iter::once("describe".to_string()).chain(base.clone()));
    assert!(
        output.status.success(),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );
    let desc = std::fs::read_to_string(out.join("descriptives.tsv")).unwrap();
    let mut donations_mean = std::collections::HashMap::new();
    for line in desc.lines().skip(1) {
        let cols: Vec<&str> = line.split('\t').collect();
        if cols[0] == "Number of donations" {
            donations_mean.insert(cols[1].to_string(), cols[3].parse::<f64>().unwrap());
        }
    }
    let order = ["Medical", "Memorial", "Emergency", "Animals"];
    for pair in order.windows(2) {
        assert!(
            donations_mean[pair[0]] > donations_mean[pair[1]],
            "mean donation counts must order {order:?}, got {donations_mean:?}"
        );
    }

    let mut fit_args = vec!["fit".to_string()];
    fit_args.extend(base);
    fit_args.extend(["--models".to_string(), "1".to_string()]);
    let output = run_cli(fit_args);
    assert!(
        output.status.success(),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );
    let table = std::fs::read_to_string(out.join("fit_model1.tsv")).unwrap();
    let coef = |term: &str| -> f64 {
        table
            .lines()
            .find(|l| l.starts_with(&format!("{term}\t")))
            .unwrap_or_else(|| panic!("term {term} missing"))
            .split('\t')
            .nth(1)
            .unwrap()
            .parse()
            .unwrap()
    };
    assert!(coef("Emergency x Care") < 0.0);
    assert!(coef("Emergency x Fairness") < 0.0);
    assert!(coef("Emergency x Loyalty") > 0.0);
    pass(
        9,
        "real-data ordering of donation counts and interaction signs reproduced",
    );
}
