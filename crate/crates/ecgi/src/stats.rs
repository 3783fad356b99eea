//! Paired-sample comparison: t-test, percentage breakdown, and boxplot
//! summaries.

use crate::error::{Error, Result};
use crate::special::regularized_incomplete_beta;

/// Scores for one image pair. `delta = s_a - s_b`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct PairScore {
    pub pair_id: String,
    pub s_a: f64,
    pub s_b: f64,
    pub delta: f64,
}

impl PairScore {
    pub fn new(pair_id: impl Into<String>, s_a: f64, s_b: f64) -> Self {
        Self {
            pair_id: pair_id.into(),
            s_a,
            s_b,
            delta: s_a - s_b,
        }
    }
}

/// Five-number boxplot summary with Tukey 1.5 IQR whiskers.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BoxplotSummary {
    pub median: f64,
    pub q25: f64,
    pub q75: f64,
    /// Smallest observation at or above `q25 - 1.5 IQR`.
    pub whisker_low: f64,
    /// Largest observation at or below `q75 + 1.5 IQR`.
    pub whisker_high: f64,
    /// Observations beyond the whiskers, ascending.
    pub outliers: Vec<f64>,
}

/// Corpus-level comparison of the two sides.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedReport {
    pub n: usize,
    pub mean_a: f64,
    pub mean_b: f64,
    pub t_statistic: f64,
    pub p_value: f64,
    /// Percentage of pairs where side A scored strictly higher.
    pub pct_a_greater: f64,
    pub boxplot_a: BoxplotSummary,
    pub boxplot_b: BoxplotSummary,
}

/// Two-tailed paired t-test on equal-length samples.
///
/// Returns `(t, p)`. Degenerate inputs where every difference is identical
/// give `(0, 1)` when the common difference is zero and `(+-inf, 0)`
/// otherwise.
pub fn paired_t_test(a: &[f64], b: &[f64]) -> Result<(f64, f64)> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let n = a.len();
    if n < 2 {
        return Err(Error::TooFewSamples { n });
    }
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let mean = diffs.iter().sum::<f64>() / n as f64;
    let ss = diffs.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>();
    let sd = (ss / (n - 1) as f64).sqrt();
    if sd == 0.0 {
        return Ok(if mean == 0.0 {
            (0.0, 1.0)
        } else {
            (mean.signum() * f64::INFINITY, 0.0)
        });
    }
    let t = mean * (n as f64).sqrt() / sd;
    let df = (n - 1) as f64;
    let p = regularized_incomplete_beta(df / (df + t * t), df / 2.0, 0.5);
    Ok((t, p))
}

/// Quantile with linear interpolation on the (n-1) basis.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = (n - 1) as f64 * q;
    let lo = h.floor() as usize;
    let frac = h - lo as f64;
    if lo + 1 >= n {
        return sorted[n - 1];
    }
    sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
}

/// Boxplot statistics of a nonempty sample.
pub fn boxplot_stats(values: &[f64]) -> BoxplotSummary {
    assert!(!values.is_empty(), "boxplot of an empty sample");
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(|a, b| a.total_cmp(b));
    let q25 = quantile(&sorted, 0.25);
    let median = quantile(&sorted, 0.5);
    let q75 = quantile(&sorted, 0.75);
    let iqr = q75 - q25;
    let fence_low = q25 - 1.5 * iqr;
    let fence_high = q75 + 1.5 * iqr;
    let whisker_low = sorted
        .iter()
        .copied()
        .find(|&v| v >= fence_low)
        .unwrap_or(sorted[0]);
    let whisker_high = sorted
        .iter()
        .rev()
        .copied()
        .find(|&v| v <= fence_high)
        .unwrap_or(sorted[sorted.len() - 1]);
    let outliers = sorted
        .iter()
        .copied()
        .filter(|&v| v < fence_low || v > fence_high)
        .collect();
    BoxplotSummary {
        median,
        q25,
        q75,
        whisker_low,
        whisker_high,
        outliers,
    }
}

/// Builds the corpus report from per-pair scores.
pub fn summarize(pairs: &[PairScore]) -> Result<PairedReport> {
    if pairs.len() < 2 {
        return Err(Error::TooFewSamples { n: pairs.len() });
    }
    let a: Vec<f64> = pairs.iter().map(|p| p.s_a).collect();
    let b: Vec<f64> = pairs.iter().map(|p| p.s_b).collect();
    let (t, p) = paired_t_test(&a, &b)?;
    let n = pairs.len();
    let greater = pairs.iter().filter(|p| p.s_a > p.s_b).count();
    Ok(PairedReport {
        n,
        mean_a: a.iter().sum::<f64>() / n as f64,
        mean_b: b.iter().sum::<f64>() / n as f64,
        t_statistic: t,
        p_value: p,
        pct_a_greater: 100.0 * greater as f64 / n as f64,
        boxplot_a: boxplot_stats(&a),
        boxplot_b: boxplot_stats(&b),
    })
}
