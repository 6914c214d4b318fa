//! Log-log exponent fitting: the empirical stand-in for a complexity claim.
//!
//! Costs for repeated runs at the same size are averaged, then an ordinary
//! least-squares line is fitted through `(log2 n, log2 mean_cost)`. A slope
//! near 1 is linear growth, near 2 quadratic.

use std::collections::BTreeMap;

use anyhow::{bail, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    /// Least-squares slope of `log2(cost)` against `log2(n)`.
    pub exponent: f64,
    /// Squared correlation coefficient of the fitted line.
    pub r2: f64,
    /// Number of distinct sizes entering the fit.
    pub points: usize,
}

/// Fit over `(n, cost)` samples; repeated `n` values are averaged first.
/// Needs at least three distinct sizes and positive costs.
pub fn fit_exponent(samples: &[(u64, f64)]) -> Result<FitResult> {
    let mut grouped: BTreeMap<u64, (f64, u32)> = BTreeMap::new();
    for &(n, cost) in samples {
        if n == 0 || cost <= 0.0 {
            bail!("sizes and costs must be positive (got n={n}, cost={cost})");
        }
        let entry = grouped.entry(n).or_insert((0.0, 0));
        entry.0 += cost;
        entry.1 += 1;
    }
    if grouped.len() < 3 {
        bail!("need at least 3 distinct sizes, got {}", grouped.len());
    }

    let points: Vec<(f64, f64)> = grouped
        .iter()
        .map(|(&n, &(sum, count))| ((n as f64).log2(), (sum / count as f64).log2()))
        .collect();

    let count = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / count;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / count;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for &(x, y) in &points {
        sxx += (x - mean_x) * (x - mean_x);
        syy += (y - mean_y) * (y - mean_y);
        sxy += (x - mean_x) * (y - mean_y);
    }
    if sxx == 0.0 {
        bail!("degenerate fit: all sizes equal");
    }

    let exponent = sxy / sxx;
    // A flat cost line is a perfect fit with slope zero.
    let r2 = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy) / (sxx * syy)
    };
    Ok(FitResult {
        exponent,
        r2,
        points: points.len(),
    })
}
