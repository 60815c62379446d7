//! LMSD durations: tau_k = eps_k sigma(Y_k) for a long-memory standard
//! Gaussian process Y, plus the Hermite rank of sigma - E[sigma(Y)].

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::kernels::fgn::{sample_fgn_with_rng, FgnSpec};
use crate::kernels::InnovationSpec;
use crate::quadrature::{gaussian_expectation, hermite_he};
use crate::rng::RandomStream;

use super::{DurationSample, ModelTag};

/// Highest Hermite order probed when determining the rank.
const RANK_J_MAX: usize = 8;

/// Volatility function applied to the Gaussian path; must be positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case", deny_unknown_fields)]
pub enum SigmaFn {
    Exponential,
    Square,
    ShiftedPolynomial { coeffs: Vec<f64> },
}

impl SigmaFn {
    pub fn eval(&self, y: f64) -> f64 {
        match self {
            SigmaFn::Exponential => y.exp(),
            SigmaFn::Square => y * y,
            SigmaFn::ShiftedPolynomial { coeffs } => {
                coeffs.iter().rev().fold(0.0, |acc, &c| acc * y + c)
            }
        }
    }

    /// E[sigma(Y)] for standard Gaussian Y; closed form where available.
    pub fn gaussian_mean(&self) -> f64 {
        match self {
            SigmaFn::Exponential => 0.5f64.exp(),
            SigmaFn::Square => 1.0,
            _ => gaussian_expectation(|y| self.eval(y), 128),
        }
    }

    fn validate(&self) -> Result<()> {
        if let SigmaFn::ShiftedPolynomial { coeffs } = self {
            if coeffs.is_empty() {
                return Err(ModelError::Domain("empty polynomial".into()));
            }
            // grid check of positivity over the effective Gaussian range
            let mut y = -12.0;
            while y <= 12.0 {
                if self.eval(y) <= 0.0 {
                    return Err(ModelError::Domain(format!(
                        "sigma function is not positive at y = {y}"
                    )));
                }
                y += 0.01;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LmsdParams {
    pub hurst: f64,
    pub sigma_fn: SigmaFn,
    pub innovation: InnovationSpec,
}

impl LmsdParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.hurst > 0.5 && self.hurst < 1.0) {
            return Err(ModelError::Domain(format!(
                "Hurst parameter must lie in (1/2, 1), got {}",
                self.hurst
            )));
        }
        self.sigma_fn.validate()?;
        self.innovation.validate()
    }

    /// 1/lambda = E[eps] E[sigma(Y)] = E[sigma(Y)].
    pub fn stationary_mean(&self) -> Result<f64> {
        self.validate()?;
        Ok(self.sigma_fn.gaussian_mean())
    }
}

/// Simulate `n` LMSD durations. The fGn path is exactly stationary, so no
/// burn-in is needed.
pub fn simulate_lmsd(params: &LmsdParams, n: usize, stream: RandomStream) -> Result<DurationSample> {
    Ok(simulate_lmsd_with_path(params, n, 0, stream)?.0)
}

/// Simulate durations together with the underlying Gaussian path, extended
/// by `extra` leading values so leverage noise can be built from the same
/// path with full filter history. Durations use the trailing `n` values of
/// the returned path.
pub fn simulate_lmsd_with_path(
    params: &LmsdParams,
    n: usize,
    extra: usize,
    stream: RandomStream,
) -> Result<(DurationSample, Vec<f64>)> {
    params.validate()?;
    if n < 2 {
        return Err(ModelError::Domain(format!("need n >= 2, got {n}")));
    }
    let spec = FgnSpec::new(params.hurst, n + extra)?;
    let mut rng = stream.rng();
    let path = sample_fgn_with_rng(&spec, &mut rng)?;
    let durations: Vec<f64> = path[extra..]
        .iter()
        .map(|&y| params.innovation.draw(&mut rng) * params.sigma_fn.eval(y))
        .collect();
    let sample = DurationSample {
        durations,
        model_tag: ModelTag::Lmsd,
        theoretical_mean: params.sigma_fn.gaussian_mean(),
    };
    Ok((sample, path))
}

/// Smallest j >= 1 with |E[sigma(Y) He_j(Y)]| > tol, by 128-node
/// Gauss–Hermite quadrature.
pub fn hermite_rank(sigma_fn: &SigmaFn, tol: f64) -> Result<usize> {
    for j in 1..=RANK_J_MAX {
        let c = gaussian_expectation(|y| sigma_fn.eval(y) * hermite_he(j, y), 128);
        if c.abs() > tol {
            return Ok(j);
        }
    }
    Err(ModelError::RankUndetermined)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_rank_of_shipped_sigmas() {
        assert_eq!(hermite_rank(&SigmaFn::Exponential, 1e-8).unwrap(), 1);
        assert_eq!(hermite_rank(&SigmaFn::Square, 1e-8).unwrap(), 2);
        let constant = SigmaFn::ShiftedPolynomial { coeffs: vec![3.0] };
        assert!(matches!(
            hermite_rank(&constant, 1e-8),
            Err(ModelError::RankUndetermined)
        ));
    }

    #[test]
    fn even_sigma_has_even_rank() {
        let even = SigmaFn::ShiftedPolynomial {
            coeffs: vec![1.0, 0.0, 0.0, 0.0, 0.5],
        };
        let rank = hermite_rank(&even, 1e-8).unwrap();
        assert_eq!(rank % 2, 0, "rank {rank}");
    }

    #[test]
    fn exponential_sigma_mean_is_sqrt_e() {
        // single-path means are long-memory inflated (SD ~ n^{H-1}), so the
        // tolerance is calibrated on the replicate-pooled grand mean
        let p = LmsdParams {
            hurst: 0.9,
            sigma_fn: SigmaFn::Exponential,
            innovation: InnovationSpec::UnitExponential,
        };
        let reps = 1000u64;
        let n = 1 << 16;
        let grand: f64 = (0..reps)
            .map(|r| {
                let s = simulate_lmsd(&p, n, RandomStream::new(31, r)).unwrap();
                s.durations.iter().sum::<f64>() / n as f64
            })
            .sum::<f64>()
            / reps as f64;
        assert!((grand - 0.5f64.exp()).abs() < 0.03, "grand mean {grand}");
        assert!((p.stationary_mean().unwrap() - 0.5f64.exp()).abs() < 1e-12);
    }

    #[test]
    fn constant_sigma_gives_iid_exponential() {
        let p = LmsdParams {
            hurst: 0.7,
            sigma_fn: SigmaFn::ShiftedPolynomial { coeffs: vec![2.5] },
            innovation: InnovationSpec::UnitExponential,
        };
        let s = simulate_lmsd(&p, 200_000, RandomStream::new(32, 0)).unwrap();
        let mean = s.durations.iter().sum::<f64>() / s.durations.len() as f64;
        assert!((mean - 2.5).abs() < 0.02, "mean {mean}");
        let n = s.durations.len();
        let var: f64 = s
            .durations
            .iter()
            .map(|&t| (t - mean) * (t - mean))
            .sum::<f64>()
            / (n - 1) as f64;
        // exponential with mean 2.5 has variance 6.25
        assert!((var - 6.25).abs() < 0.2, "var {var}");
    }

    #[test]
    fn log_durations_inherit_fgn_covariance() {
        // log tau_k = log eps_k + Y_k; at long lags the covariance of log
        // durations is the fGn covariance.
        use crate::kernels::fgn_autocovariance;
        let p = LmsdParams {
            hurst: 0.8,
            sigma_fn: SigmaFn::Exponential,
            innovation: InnovationSpec::UnitExponential,
        };
        let lag = 1000usize;
        let reps = 60;
        let n = 1 << 15;
        // center by the known mean E[log tau] = E[log eps] = -EulerGamma;
        // empirical centering would soak up the low-frequency power and
        // bias long-lag covariances downward
        let log_mean = -0.577_215_664_901_532_9;
        let mut covs = Vec::with_capacity(reps as usize);
        for r in 0..reps {
            let s = simulate_lmsd(&p, n, RandomStream::new(33, r)).unwrap();
            let logs: Vec<f64> = s.durations.iter().map(|t| t.ln()).collect();
            let c: f64 = (0..n - lag)
                .map(|k| (logs[k] - log_mean) * (logs[k + lag] - log_mean))
                .sum::<f64>()
                / (n - lag) as f64;
            covs.push(c);
        }
        let mean_cov = covs.iter().sum::<f64>() / covs.len() as f64;
        let se = (covs
            .iter()
            .map(|c| (c - mean_cov) * (c - mean_cov))
            .sum::<f64>()
            / (covs.len() as f64 - 1.0)
            / covs.len() as f64)
            .sqrt();
        let theo = fgn_autocovariance(0.8, lag).unwrap();
        assert!(
            (mean_cov - theo).abs() < 3.0 * se + 0.01,
            "cov {mean_cov} vs {theo} (se {se})"
        );
    }

    #[test]
    fn nonpositive_polynomial_rejected() {
        let p = LmsdParams {
            hurst: 0.7,
            sigma_fn: SigmaFn::ShiftedPolynomial { coeffs: vec![0.0, 1.0] },
            innovation: InnovationSpec::UnitExponential,
        };
        assert!(p.validate().is_err());
    }
}
