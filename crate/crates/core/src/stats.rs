//! Statistical primitives shared by the simulation harness and the
//! connectivity pipeline.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};
use statrs::function::beta::beta_reg;

use crate::error::{Result, WqaError};

/// Relative condition number above which a design is treated as singular.
pub const CONDITION_LIMIT: f64 = 1e10;

pub fn mean(v: &[f64]) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    v.iter().sum::<f64>() / v.len() as f64
}

/// Median; for an even count the mean of the two middle order statistics.
pub fn median(v: &[f64]) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    if n % 2 == 1 {
        s[n / 2]
    } else {
        0.5 * (s[n / 2 - 1] + s[n / 2])
    }
}

/// Standard deviation with divisor `n - 1`; 0 for fewer than two values.
pub fn sample_std(v: &[f64]) -> f64 {
    if v.len() < 2 {
        return 0.0;
    }
    let m = mean(v);
    let ss: f64 = v.iter().map(|x| (x - m) * (x - m)).sum();
    (ss / (v.len() - 1) as f64).sqrt()
}

/// `(v - mean) / sample_std`. Constant input maps to all zeros.
pub fn zscore(v: &[f64]) -> Result<Vec<f64>> {
    if v.len() < 2 {
        return Err(WqaError::InvalidInput(format!(
            "z-scoring needs at least 2 values, got {}",
            v.len()
        )));
    }
    let m = mean(v);
    let sd = sample_std(v);
    if sd == 0.0 || !sd.is_finite() {
        return Ok(vec![0.0; v.len()]);
    }
    Ok(v.iter().map(|x| (x - m) / sd).collect())
}

pub fn rmse(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(WqaError::LengthMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    if a.is_empty() {
        return Err(WqaError::InvalidInput("RMSE of empty sequences".into()));
    }
    let ss: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    Ok((ss / a.len() as f64).sqrt())
}

/// Linear-interpolation (type 7) quantile of already sorted data.
fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Equal-tailed percentile interval at the given coverage level.
pub fn percentile_ci(values: &[f64], level: f64) -> Result<(f64, f64)> {
    if values.is_empty() {
        return Err(WqaError::InvalidInput("percentile interval of empty data".into()));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(WqaError::InvalidInput(format!("level must be in (0,1), got {level}")));
    }
    let mut s = values.to_vec();
    s.sort_by(f64::total_cmp);
    let p = (1.0 - level) / 2.0;
    Ok((quantile_sorted(&s, p), quantile_sorted(&s, 1.0 - p)))
}

/// CDF of Student's t distribution via the regularized incomplete beta.
pub fn student_t_cdf(t: f64, df: f64) -> f64 {
    if t.is_nan() {
        return f64::NAN;
    }
    if t == f64::INFINITY {
        return 1.0;
    }
    if t == f64::NEG_INFINITY {
        return 0.0;
    }
    let tail = 0.5 * beta_reg(df / 2.0, 0.5, df / (df + t * t));
    if t >= 0.0 {
        1.0 - tail
    } else {
        tail
    }
}

/// Two-sided p-value for a t statistic.
pub fn two_sided_p(t: f64, df: f64) -> f64 {
    if t.is_infinite() {
        return 0.0;
    }
    let x = df / (df + t * t);
    beta_reg(df / 2.0, 0.5, x).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModelFit {
    pub coefficients: Vec<f64>,
    pub standard_errors: Vec<f64>,
    pub t_statistics: Vec<f64>,
    pub p_values: Vec<f64>,
    pub residual_variance: f64,
}

/// Ordinary least squares with t-based inference.
///
/// `design` is row-major, `n` rows of `p` columns, and is expected to contain
/// the intercept column. Singularity is judged on the column-equilibrated
/// normal matrix so that rescaling a predictor does not change the verdict.
pub fn ols_fit(y: &[f64], design: &[Vec<f64>]) -> Result<LinearModelFit> {
    let n = y.len();
    if design.len() != n {
        return Err(WqaError::LengthMismatch {
            expected: n,
            actual: design.len(),
        });
    }
    let p = design.first().map_or(0, Vec::len);
    if p == 0 {
        return Err(WqaError::InvalidInput("design has no columns".into()));
    }
    if let Some(bad) = design.iter().position(|r| r.len() != p) {
        return Err(WqaError::InvalidInput(format!(
            "design row {} has {} columns, expected {p}",
            bad + 1,
            design[bad].len()
        )));
    }
    if n <= p {
        return Err(WqaError::InvalidInput(format!(
            "need more observations ({n}) than predictors ({p})"
        )));
    }
    if y.iter().chain(design.iter().flatten()).any(|v| !v.is_finite()) {
        return Err(WqaError::InvalidInput("non-finite value in regression data".into()));
    }

    let x = DMatrix::from_fn(n, p, |r, c| design[r][c]);
    let yv = DVector::from_column_slice(y);
    let xtx = x.transpose() * &x;

    let scale: Vec<f64> = (0..p).map(|c| xtx[(c, c)].sqrt()).collect();
    if scale.iter().any(|&s| s == 0.0) {
        return Err(WqaError::RankDeficient {
            condition: f64::INFINITY,
        });
    }
    let scaled = DMatrix::from_fn(p, p, |r, c| xtx[(r, c)] / (scale[r] * scale[c]));
    let eig = SymmetricEigen::new(scaled.clone());
    let max = eig.eigenvalues.max();
    let min = eig.eigenvalues.min();
    let condition = if min <= 0.0 { f64::INFINITY } else { max / min };
    if condition > CONDITION_LIMIT {
        return Err(WqaError::RankDeficient { condition });
    }

    // (X'X)^-1 = S^-1 (scaled)^-1 S^-1
    let scaled_inv = eig.eigenvectors.clone()
        * DMatrix::from_diagonal(&eig.eigenvalues.map(|l| 1.0 / l))
        * eig.eigenvectors.transpose();
    let inv = DMatrix::from_fn(p, p, |r, c| scaled_inv[(r, c)] / (scale[r] * scale[c]));
    let beta = &inv * (x.transpose() * &yv);
    let resid = &yv - &x * &beta;
    let df = (n - p) as f64;
    let residual_variance = resid.dot(&resid) / df;

    let mut standard_errors = Vec::with_capacity(p);
    let mut t_statistics = Vec::with_capacity(p);
    let mut p_values = Vec::with_capacity(p);
    for c in 0..p {
        let se = (residual_variance * inv[(c, c)]).max(0.0).sqrt();
        let (t, pv) = if se == 0.0 {
            if beta[c] == 0.0 {
                (0.0, 1.0)
            } else {
                (beta[c].signum() * f64::INFINITY, 0.0)
            }
        } else {
            let t = beta[c] / se;
            (t, two_sided_p(t, df))
        };
        standard_errors.push(se);
        t_statistics.push(t);
        p_values.push(pv);
    }

    Ok(LinearModelFit {
        coefficients: beta.iter().copied().collect(),
        standard_errors,
        t_statistics,
        p_values,
        residual_variance,
    })
}

/// Benjamini–Hochberg step-up procedure; returns one significance flag per
/// input p-value, in input order.
pub fn bh_fdr(p_values: &[f64], q: f64) -> Result<Vec<bool>> {
    if !(q > 0.0 && q < 1.0) {
        return Err(WqaError::InvalidInput(format!("FDR level must be in (0,1), got {q}")));
    }
    if let Some(bad) = p_values.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(WqaError::InvalidInput(format!("p-value {bad} outside [0,1]")));
    }
    let m = p_values.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| p_values[a].total_cmp(&p_values[b]));
    let cutoff = order
        .iter()
        .enumerate()
        .rev()
        .find(|(rank, &idx)| p_values[idx] <= (rank + 1) as f64 * q / m as f64)
        .map(|(_, &idx)| p_values[idx]);
    Ok(match cutoff {
        Some(c) => p_values.iter().map(|&p| p <= c).collect(),
        None => vec![false; m],
    })
}
