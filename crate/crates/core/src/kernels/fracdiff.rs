//! Fractional differencing (I - B)^delta with truncated binomial weights.

use crate::error::{ModelError, Result};

/// Default truncation depth; weights decay like j^{-1-delta}.
pub const DEFAULT_TRUNCATION: usize = 512;

/// Binomial expansion weights of (1 - z)^delta: pi_0 = 1,
/// pi_j = pi_{j-1} (j - 1 - delta) / j.
pub fn fracdiff_weights(delta: f64, truncation: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(truncation + 1);
    w.push(1.0);
    for j in 1..=truncation {
        let jf = j as f64;
        let prev = w[j - 1];
        w.push(prev * (jf - 1.0 - delta) / jf);
    }
    w
}

/// Apply (I - B)^delta to `series`.
///
/// For non-integer delta the filter is truncated at `truncation` lags and the
/// first `truncation` outputs (the burn-in that lacks full history) are
/// dropped, so the result has length `series.len() - truncation`. For integer
/// delta the differencing is exact, `truncation` is ignored, and the result
/// has length `series.len() - delta`.
pub fn fractional_difference(series: &[f64], delta: f64, truncation: usize) -> Result<Vec<f64>> {
    if series.is_empty() {
        return Err(ModelError::EmptyInput);
    }
    if delta < 0.0 {
        return Err(ModelError::Domain(format!(
            "differencing order must be >= 0, got {delta}"
        )));
    }
    let lags = if delta.fract() == 0.0 {
        delta as usize
    } else {
        truncation
    };
    if lags >= series.len() {
        return Err(ModelError::Domain(format!(
            "truncation {lags} must be smaller than series length {}",
            series.len()
        )));
    }
    let weights = fracdiff_weights(delta, lags);
    let out_len = series.len() - lags;
    let mut out = Vec::with_capacity(out_len);
    for i in 0..out_len {
        let k = lags + i;
        let mut acc = 0.0;
        for (j, &w) in weights.iter().enumerate() {
            acc += w * series[k - j];
        }
        out.push(acc);
    }
    Ok(out)
}
