//! Deterministic numerical statistics: OLS with inference, Spearman rank
//! correlation, descriptive summaries, mean confidence intervals, and the
//! Student-t tail probabilities backing p-values.

mod ols;
mod tdist;

pub use ols::fit_ols;
pub use tdist::{student_t_quantile, student_t_sf, two_sided_p_value};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("empty input")]
    EmptyInput,
    #[error("need at least {needed} observations, got {got}")]
    TooFewObservations { needed: usize, got: usize },
    #[error("input lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("input contains a non-finite value")]
    NonFiniteInput,
    #[error("duplicate design column name: {name:?}")]
    DuplicateColumn { name: String },
    #[error("first design column must be an all-ones intercept")]
    MissingIntercept,
    #[error("design rows have inconsistent widths: expected {expected}, row {row} has {found}")]
    RaggedRows {
        expected: usize,
        row: usize,
        found: usize,
    },
    #[error("need more observations than predictors: n = {n}, p = {p}")]
    TooManyPredictors { n: usize, p: usize },
    #[error("design matrix is rank deficient; collinear columns: {}", columns.join(", "))]
    RankDeficient { columns: Vec<String> },
    #[error("zero rank variance in {side} input")]
    ZeroRankVariance { side: &'static str },
    #[error("log1p transform requires a non-negative input, got {value}")]
    NegativeInput { value: f64 },
}

/// Named predictor matrix with the intercept first. Construction validates
/// shape, finiteness, name uniqueness, and the all-ones leading column.
#[derive(Debug, Clone)]
pub struct DesignMatrix {
    n: usize,
    p: usize,
    column_names: Vec<String>,
    values: Vec<f64>, // row-major, n * p
}

impl DesignMatrix {
    pub fn new(column_names: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self, StatsError> {
        let p = column_names.len();
        let n = rows.len();
        if n == 0 || p == 0 {
            return Err(StatsError::EmptyInput);
        }
        if n <= p {
            return Err(StatsError::TooManyPredictors { n, p });
        }
        for (i, a) in column_names.iter().enumerate() {
            if column_names[i + 1..].contains(a) {
                return Err(StatsError::DuplicateColumn { name: a.clone() });
            }
        }
        let mut values = Vec::with_capacity(n * p);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != p {
                return Err(StatsError::RaggedRows {
                    expected: p,
                    row: i + 1,
                    found: row.len(),
                });
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(StatsError::NonFiniteInput);
            }
            if row[0] != 1.0 {
                return Err(StatsError::MissingIntercept);
            }
            values.extend_from_slice(row);
        }
        Ok(DesignMatrix {
            n,
            p,
            column_names,
            values,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn column_names(&self) -> &[String] {
        &self.column_names
    }

    pub fn value(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.p + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.values[row * self.p..(row + 1) * self.p]
    }

    pub fn column(&self, col: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.value(i, col)).collect()
    }

    pub(crate) fn raw_values(&self) -> &[f64] {
        &self.values
    }
}

/// Coefficients with classical OLS inference for one fitted model.
#[derive(Debug, Clone)]
pub struct FitResult {
    pub column_names: Vec<String>,
    pub coefficients: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub t_stats: Vec<f64>,
    pub p_values: Vec<f64>,
    pub r2: f64,
    pub adjusted_r2: f64,
    pub residual_df: usize,
    pub n: usize,
    /// Rows excluded upstream (for example, campaigns with no donations in
    /// the average-amount model). The fit itself never drops rows.
    pub n_dropped_rows: usize,
    pub fitted: Vec<f64>,
    pub residuals: Vec<f64>,
}

/// Mean, sample standard deviation (n-1 denominator, undefined for n = 1),
/// and count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Describe {
    pub mean: f64,
    pub sd: Option<f64>,
    pub n: usize,
}

pub fn describe(values: &[f64]) -> Result<Describe, StatsError> {
    if values.is_empty() {
        return Err(StatsError::EmptyInput);
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(StatsError::NonFiniteInput);
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let sd = if n >= 2 {
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
        Some(var.sqrt())
    } else {
        None
    };
    Ok(Describe { mean, sd, n })
}

/// Mean with a 95% confidence interval: mean +/- t(0.975, n-1) * sd / sqrt(n).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanCi {
    pub mean: f64,
    pub lower: f64,
    pub upper: f64,
}

pub fn mean_ci95(values: &[f64]) -> Result<MeanCi, StatsError> {
    if values.len() < 2 {
        return Err(StatsError::TooFewObservations {
            needed: 2,
            got: values.len(),
        });
    }
    let summary = describe(values)?;
    let sd = summary.sd.expect("n >= 2 has a defined sd");
    let half = student_t_quantile(0.975, summary.n - 1) * sd / (summary.n as f64).sqrt();
    Ok(MeanCi {
        mean: summary.mean,
        lower: summary.mean - half,
        upper: summary.mean + half,
    })
}

/// Natural log of (1 + x); the zero-safe transform applied to every skewed
/// count and amount variable.
pub fn log1p_transform(x: f64) -> Result<f64, StatsError> {
    if !x.is_finite() || x < 0.0 {
        return Err(StatsError::NegativeInput { value: x });
    }
    Ok(x.ln_1p())
}

/// Spearman rank correlation with averaged ranks for ties.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64, StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 3 {
        return Err(StatsError::TooFewObservations {
            needed: 3,
            got: x.len(),
        });
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(StatsError::NonFiniteInput);
    }
    let rx = average_ranks(x);
    let ry = average_ranks(y);
    pearson(&rx, &ry)
}

/// Ranks 1..n with ties receiving the mean of their rank range.
fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        // positions i..=j share the average of ranks i+1..=j+1
        let avg = (i + j + 2) as f64 / 2.0;
        for &idx in &order[i..=j] {
            ranks[idx] = avg;
        }
        i = j + 1;
    }
    ranks
}

fn pearson(x: &[f64], y: &[f64]) -> Result<f64, StatsError> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 {
        return Err(StatsError::ZeroRankVariance { side: "first" });
    }
    if syy == 0.0 {
        return Err(StatsError::ZeroRankVariance { side: "second" });
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}
