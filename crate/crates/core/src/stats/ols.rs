//! Ordinary least squares via QR decomposition, with classical inference.

use nalgebra::{DMatrix, DVector};

use super::tdist::two_sided_p_value;
use super::{DesignMatrix, FitResult, StatsError};

/// Relative singular-value cutoff below which the design is treated as rank
/// deficient.
const RANK_TOLERANCE: f64 = 1e-10;

/// Fit y = X b by least squares.
///
/// The solve goes through an orthogonal (QR) decomposition rather than the
/// normal equations. Standard errors come from sigma^2 (X'X)^-1 with
/// sigma^2 = RSS / (n - p); p-values are two-sided Student-t on n - p
/// degrees of freedom; adjusted R^2 = 1 - (1 - R^2)(n - 1)/(n - p).
pub fn fit_ols(design: &DesignMatrix, y: &[f64]) -> Result<FitResult, StatsError> {
    let n = design.n();
    let p = design.p();
    if y.len() != n {
        return Err(StatsError::LengthMismatch {
            left: n,
            right: y.len(),
        });
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(StatsError::NonFiniteInput);
    }

    let x = DMatrix::from_row_slice(n, p, design.raw_values());
    let yv = DVector::from_column_slice(y);

    // Rank check on the singular-value ratio; offending columns are named by
    // a Gram-Schmidt sweep in original column order.
    let singular_values = x.clone().svd(false, false).singular_values;
    let s_max = singular_values.iter().cloned().fold(0.0f64, f64::max);
    let s_min = singular_values
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    if s_max == 0.0 || s_min <= RANK_TOLERANCE * s_max {
        return Err(StatsError::RankDeficient {
            columns: dependent_columns(&x, design.column_names(), s_max),
        });
    }

    let qr = x.clone().qr();
    let q = qr.q();
    let r = qr.r();
    let qty = q.transpose() * &yv;
    let coef = r
        .solve_upper_triangular(&qty)
        .ok_or_else(|| StatsError::RankDeficient {
            columns: dependent_columns(&x, design.column_names(), s_max),
        })?;

    let fitted = &x * &coef;
    let residuals = &yv - &fitted;
    let rss = residuals.norm_squared().max(0.0);
    let y_mean = yv.sum() / n as f64;
    let tss: f64 = yv.iter().map(|v| (v - y_mean).powi(2)).sum();
    let r2 = if tss > 0.0 {
        let raw = 1.0 - rss / tss;
        if raw < 0.0 && raw > -1e-12 {
            0.0
        } else {
            raw
        }
    } else {
        0.0
    };

    let residual_df = n - p;
    let sigma2 = rss / residual_df as f64;
    let r_inv = r
        .solve_upper_triangular(&DMatrix::identity(p, p))
        .ok_or_else(|| StatsError::RankDeficient {
            columns: dependent_columns(&x, design.column_names(), s_max),
        })?;
    let xtx_inv = &r_inv * r_inv.transpose();

    let mut std_errors = Vec::with_capacity(p);
    let mut t_stats = Vec::with_capacity(p);
    let mut p_values = Vec::with_capacity(p);
    for j in 0..p {
        let se = (sigma2 * xtx_inv[(j, j)]).max(0.0).sqrt();
        let b = coef[j];
        let t = if se > 0.0 {
            b / se
        } else if b == 0.0 {
            0.0
        } else {
            // exact fit: the coefficient is determined with no residual noise
            b.signum() * f64::INFINITY
        };
        std_errors.push(se);
        t_stats.push(t);
        p_values.push(two_sided_p_value(t, residual_df));
    }

    let adjusted_r2 = 1.0 - (1.0 - r2) * (n as f64 - 1.0) / residual_df as f64;

    Ok(FitResult {
        column_names: design.column_names().to_vec(),
        coefficients: coef.iter().copied().collect(),
        std_errors,
        t_stats,
        p_values,
        r2,
        adjusted_r2,
        residual_df,
        n,
        n_dropped_rows: 0,
        fitted: fitted.iter().copied().collect(),
        residuals: residuals.iter().copied().collect(),
    })
}

/// Name the columns that are (numerically) linear combinations of earlier
/// ones, by modified Gram-Schmidt with a threshold tied to the largest
/// singular value.
fn dependent_columns(x: &DMatrix<f64>, names: &[String], s_max: f64) -> Vec<String> {
    let threshold = RANK_TOLERANCE * s_max.max(f64::MIN_POSITIVE);
    let mut basis: Vec<DVector<f64>> = Vec::new();
    let mut flagged = Vec::new();
    for (j, name) in names.iter().enumerate().take(x.ncols()) {
        let mut v = x.column(j).clone_owned();
        for b in &basis {
            let proj = b.dot(&v);
            v -= b * proj;
        }
        let norm = v.norm();
        if norm <= threshold {
            flagged.push(name.clone());
        } else {
            basis.push(v / norm);
        }
    }
    if flagged.is_empty() {
        // ill-conditioned without a single nameable culprit
        flagged.push(names.last().cloned().unwrap_or_default());
    }
    flagged
}
