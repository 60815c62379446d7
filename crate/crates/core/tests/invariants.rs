//! Cross-module distributional invariants that are cheap enough to run with
//! the regular suite but too slow for per-module unit tests.

use rayon::prelude::*;

use tickdrift::durations::{LmsdParams, SigmaFn};
use tickdrift::experiments::ks_critical_1pct;
use tickdrift::inference::{median, partial_sum_at, two_sample_distance};
use tickdrift::kernels::{sample_stable_skewed, InnovationSpec};
use tickdrift::RandomStream;

#[test]
fn stable_sums_close_under_rescaling() {
    // strictly stable: the rescaled sum of b i.i.d. draws has the law of a
    // single draw, so the two-sample distance stays below the 1% critical
    // value
    let alpha = 1.5;
    let b = 64usize;
    let m = 4_000usize;
    let pool = sample_stable_skewed(alpha, 1.0, b * m, RandomStream::new(610, 0)).unwrap();
    let scale = (b as f64).powf(-1.0 / alpha);
    let sums: Vec<f64> = pool.chunks(b).map(|c| scale * c.iter().sum::<f64>()).collect();
    let fresh = sample_stable_skewed(alpha, 1.0, m, RandomStream::new(610, 1)).unwrap();
    let d = two_sample_distance(&sums, &fresh).unwrap();
    let crit = ks_critical_1pct(m);
    assert!(d < crit, "distance {d} vs critical {crit}");
}

#[test]
fn partial_sums_tight_at_the_classified_rate_only() {
    // at the classifier's gamma the median magnitude of the normalized sums
    // is stable in n; at gamma + 0.15 it decays like n^{-0.15}
    let p = LmsdParams {
        hurst: 0.9,
        sigma_fn: SigmaFn::Exponential,
        innovation: InnovationSpec::UnitExponential,
    };
    let gamma = 0.9;
    let (n_small, n_large) = (1usize << 8, 1usize << 14);
    let reps = 400u64;
    let medians = |n: usize, g: f64| -> f64 {
        let vals: Vec<f64> = (0..reps)
            .into_par_iter()
            .map(|r| {
                let s = tickdrift::durations::simulate_lmsd(&p, n, RandomStream::new(611, r))
                    .unwrap();
                partial_sum_at(&s, n, g).abs()
            })
            .collect();
        median(&vals)
    };
    let right_ratio = medians(n_large, gamma) / medians(n_small, gamma);
    let wrong_ratio = medians(n_large, gamma + 0.15) / medians(n_small, gamma + 0.15);
    assert!(
        right_ratio > 0.6 && right_ratio < 1.67,
        "right-rate ratio {right_ratio}"
    );
    // (2^14 / 2^8)^{-0.15} = 0.536
    assert!(
        wrong_ratio < 0.65 * right_ratio,
        "wrong-rate ratio {wrong_ratio} vs right-rate ratio {right_ratio}"
    );
}
