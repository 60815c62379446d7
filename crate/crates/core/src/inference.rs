//! Estimators and test statistics: mean return, sample variance,
//! t-statistic, normalized partial sums, median-based scaling exponent,
//! Hill tail index and the two-sample Kolmogorov–Smirnov distance.

use rayon::prelude::*;

use crate::durations::DurationSample;
use crate::error::{ModelError, Result};
use crate::rng::RandomStream;

/// Point estimate with a Monte Carlo standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateWithError {
    pub value: f64,
    pub std_error: f64,
    pub replicates: usize,
}

/// Arithmetic mean of the returns, r-bar_n.
pub fn mean_return(returns: &[f64]) -> Result<f64> {
    if returns.is_empty() {
        return Err(ModelError::EmptyInput);
    }
    Ok(returns.iter().sum::<f64>() / returns.len() as f64)
}

/// (n-1)-denominator sample variance s_n^2.
pub fn sample_variance_s2(returns: &[f64]) -> Result<f64> {
    if returns.len() < 2 {
        return Err(ModelError::DegenerateSample(
            "need at least 2 returns for s_n^2".into(),
        ));
    }
    let mean = mean_return(returns)?;
    Ok(returns.iter().map(|r| (r - mean) * (r - mean)).sum::<f64>()
        / (returns.len() as f64 - 1.0))
}

/// t_n = sqrt(n) (r-bar_n - mu0*) / s_n.
pub fn t_statistic(returns: &[f64], mu0_star: f64) -> Result<f64> {
    let s2 = sample_variance_s2(returns)?;
    if s2 <= 0.0 {
        return Err(ModelError::DegenerateSample(
            "zero sample variance".into(),
        ));
    }
    let n = returns.len() as f64;
    Ok(n.sqrt() * (mean_return(returns)? - mu0_star) / s2.sqrt())
}

/// n^{-gamma} sum of (tau_k - 1/lambda) over the whole sample.
pub fn normalized_partial_sum(sample: &DurationSample, gamma: f64) -> f64 {
    partial_sum_at(sample, sample.durations.len(), gamma)
}

/// Same, restricted to the first `n` durations.
pub fn partial_sum_at(sample: &DurationSample, n: usize, gamma: f64) -> f64 {
    let mean = sample.theoretical_mean;
    let s: f64 = sample.durations[..n].iter().map(|t| t - mean).sum();
    s / (n as f64).powf(gamma)
}

/// Ordinary least-squares slope of y on x.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let num: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}

/// Estimate the partial-sum scaling exponent gamma.
///
/// For each n in the grid the median over replicates of the absolute
/// centered partial sum is computed, and gamma-hat is the least-squares
/// slope of log median on log n. The median (rather than a variance) keeps
/// the estimator finite in the infinite-variance stable regime. The
/// standard error comes from a bootstrap over replicates.
///
/// Consumes stream ids [stream.stream_id, stream.stream_id + replicates].
pub fn scaling_exponent<F>(
    sampler: F,
    n_grid: &[usize],
    replicates: usize,
    stream: RandomStream,
) -> Result<EstimateWithError>
where
    F: Fn(usize, RandomStream) -> Result<DurationSample> + Sync,
{
    if n_grid.len() < 4 {
        return Err(ModelError::Domain(
            "n_grid must contain at least 4 points".into(),
        ));
    }
    let n_max = *n_grid.iter().max().unwrap();
    let abs_sums: Vec<Vec<f64>> = (0..replicates)
        .into_par_iter()
        .map(|r| {
            let sample = sampler(n_max, stream.substream(r as u64))?;
            Ok(n_grid
                .iter()
                .map(|&n| partial_sum_at(&sample, n, 0.0).abs())
                .collect())
        })
        .collect::<Result<_>>()?;

    let log_n: Vec<f64> = n_grid.iter().map(|&n| (n as f64).ln()).collect();
    let slope_of = |indices: &[usize]| -> Result<f64> {
        let mut log_med = Vec::with_capacity(n_grid.len());
        // column-major walk over the replicate-by-grid matrix
        #[allow(clippy::needless_range_loop)]
        for j in 0..n_grid.len() {
            let mut col: Vec<f64> = indices.iter().map(|&i| abs_sums[i][j]).collect();
            let med = median_in_place(&mut col);
            if med <= 0.0 {
                return Err(ModelError::DegenerateSample(
                    "median absolute partial sum is zero".into(),
                ));
            }
            log_med.push(med.ln());
        }
        Ok(least_squares_slope(&log_n, &log_med))
    };

    let all: Vec<usize> = (0..replicates).collect();
    let value = slope_of(&all)?;

    // bootstrap over replicates
    let boot = 200;
    let mut rng = stream.substream(replicates as u64).rng();
    let mut slopes = Vec::with_capacity(boot);
    for _ in 0..boot {
        let idx: Vec<usize> = (0..replicates)
            .map(|_| rand::Rng::gen_range(&mut rng, 0..replicates))
            .collect();
        if let Ok(s) = slope_of(&idx) {
            slopes.push(s);
        }
    }
    let std_error = if slopes.len() > 1 {
        let m = slopes.iter().sum::<f64>() / slopes.len() as f64;
        (slopes.iter().map(|s| (s - m) * (s - m)).sum::<f64>() / (slopes.len() as f64 - 1.0))
            .sqrt()
    } else {
        0.0
    };
    Ok(EstimateWithError {
        value,
        std_error,
        replicates,
    })
}

fn median_in_place(xs: &mut [f64]) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

/// Median of a sample, allocating a scratch copy.
pub fn median(xs: &[f64]) -> f64 {
    let mut scratch = xs.to_vec();
    median_in_place(&mut scratch)
}

/// Hill estimator of the tail index over the `top_k` largest order
/// statistics; std_error uses the asymptotic value/sqrt(k) approximation.
pub fn hill_estimator(sample: &[f64], top_k: usize) -> Result<EstimateWithError> {
    if sample.iter().any(|&x| x <= 0.0) {
        return Err(ModelError::Domain(
            "Hill estimator requires strictly positive entries".into(),
        ));
    }
    if top_k < 10 || top_k >= sample.len() {
        return Err(ModelError::Domain(format!(
            "need 10 <= top_k < sample length, got top_k {top_k} for length {}",
            sample.len()
        )));
    }
    let mut sorted = sample.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let threshold = sorted[top_k];
    let mean_log_excess: f64 = sorted[..top_k]
        .iter()
        .map(|&x| (x / threshold).ln())
        .sum::<f64>()
        / top_k as f64;
    let value = 1.0 / mean_log_excess;
    Ok(EstimateWithError {
        value,
        std_error: value / (top_k as f64).sqrt(),
        replicates: top_k,
    })
}

/// Kolmogorov–Smirnov sup-distance between the empirical CDFs of two
/// samples; lies in [0, 1].
pub fn two_sample_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(ModelError::EmptyInput);
    }
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(|p, q| p.partial_cmp(q).unwrap());
    ys.sort_by(|p, q| p.partial_cmp(q).unwrap());
    let (na, nb) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < xs.len() && j < ys.len() {
        let (x, y) = (xs[i], ys[j]);
        // advance through ties on both sides before measuring the gap
        if x <= y {
            while i < xs.len() && xs[i] == x {
                i += 1;
            }
        }
        if y <= x {
            while j < ys.len() && ys[j] == y {
                j += 1;
            }
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d.max(1.0 - (i as f64 / na).min(j as f64 / nb)).min(1.0))
}
