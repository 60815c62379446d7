//! Stationary duration-process generators (Poisson, ACD, LMSD) and the
//! classifier mapping model parameters to the predicted partial-sum limit
//! (normalization rate gamma and limit family).

pub mod acd;
pub mod lmsd;
pub mod poisson;

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};

pub use acd::{acd_moment, acd_second_moment_condition, acd_tail_index, simulate_acd, AcdParams};
pub use lmsd::{hermite_rank, simulate_lmsd, simulate_lmsd_with_path, LmsdParams, SigmaFn};
pub use poisson::simulate_poisson_durations;

/// Tolerance used to detect the classifier's boundary cases.
const BOUNDARY_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelTag {
    Poisson,
    Acd,
    Lmsd,
}

/// A finite realization of a stationary duration process.
#[derive(Debug, Clone)]
pub struct DurationSample {
    pub durations: Vec<f64>,
    pub model_tag: ModelTag,
    /// Stationary mean 1/lambda of the generating model.
    pub theoretical_mean: f64,
}

impl DurationSample {
    pub fn intensity(&self) -> f64 {
        1.0 / self.theoretical_mean
    }
}

/// Limit family of the normalized centered partial sums of durations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LimitFamily {
    Gaussian,
    FbmIncrement { hurst: f64 },
    Hermite { order: usize, hurst: f64 },
    Stable { index: f64 },
}

/// Predicted normalization rate and limit family for a model configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoreticalLimit {
    pub gamma: f64,
    pub family: LimitFamily,
    /// The limit-scale constants are not computed; tests check rates and
    /// shape only.
    pub scale_known: bool,
}

/// Model parameters accepted by the classifier and the experiment harness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSpec {
    Poisson { rate: f64 },
    Acd(AcdParams),
    Lmsd(LmsdParams),
}

impl ModelSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            ModelSpec::Poisson { rate } => {
                if *rate > 0.0 {
                    Ok(())
                } else {
                    Err(ModelError::Domain(format!("rate must be > 0, got {rate}")))
                }
            }
            ModelSpec::Acd(p) => p.validate(),
            ModelSpec::Lmsd(p) => p.validate(),
        }
    }

    /// Stationary mean duration 1/lambda.
    pub fn theoretical_mean(&self) -> Result<f64> {
        match self {
            ModelSpec::Poisson { rate } => Ok(1.0 / rate),
            ModelSpec::Acd(p) => Ok(p.stationary_mean()),
            ModelSpec::Lmsd(p) => p.stationary_mean(),
        }
    }
}

/// Map a duration model to its predicted (gamma, limit family).
///
/// Poisson and finite-second-moment ACD give the CLT branch. Heavy-tailed
/// ACD gives the skewed stable branch at rate 1/kappa. LMSD follows the
/// Hermite-rank dichotomy, against 1/2 for finite-variance innovations and
/// against 1/alpha for Pareto innovations with index in (1,2). Boundary
/// equalities are rejected.
pub fn classify_limit(model: &ModelSpec) -> Result<TheoreticalLimit> {
    model.validate()?;
    match model {
        ModelSpec::Poisson { .. } => Ok(TheoreticalLimit {
            gamma: 0.5,
            family: LimitFamily::Gaussian,
            scale_known: false,
        }),
        ModelSpec::Acd(p) => classify_acd(p),
        ModelSpec::Lmsd(p) => classify_lmsd(p),
    }
}

fn classify_acd(p: &AcdParams) -> Result<TheoreticalLimit> {
    let (holds, _margin) = acd_second_moment_condition(p);
    if holds {
        return Ok(TheoreticalLimit {
            gamma: 0.5,
            family: LimitFamily::Gaussian,
            scale_known: false,
        });
    }
    let kappa = acd_tail_index(p, 1e-10)?;
    if kappa <= 1.0 + BOUNDARY_EPS || kappa >= 2.0 - BOUNDARY_EPS {
        return Err(ModelError::OutsideRegime(format!(
            "ACD tail index {kappa} not in the open interval (1, 2)"
        )));
    }
    Ok(TheoreticalLimit {
        gamma: 1.0 / kappa,
        family: LimitFamily::Stable { index: kappa },
        scale_known: false,
    })
}

fn classify_lmsd(p: &LmsdParams) -> Result<TheoreticalLimit> {
    let m = hermite_rank(&p.sigma_fn, 1e-8)?;
    let h = p.hurst;
    let memory_term = m as f64 * (1.0 - h);
    // heavy = Some(alpha) when the innovations themselves have infinite
    // variance; then the dichotomy threshold is 1/alpha instead of 1/2
    let heavy = match p.innovation.tail_index() {
        Some(a) if (a - 2.0).abs() <= BOUNDARY_EPS => {
            return Err(ModelError::OutsideRegime(
                "Pareto innovation index exactly 2 is outside the covered regimes".into(),
            ))
        }
        Some(a) if a < 2.0 => Some(a),
        _ => None, // finite-variance innovations
    };
    let threshold = heavy.map_or(0.5, |a| 1.0 / a);
    if (memory_term - threshold).abs() <= BOUNDARY_EPS {
        return Err(ModelError::BoundaryCase(format!(
            "m(1-H) = {memory_term} equals the dichotomy threshold {threshold}"
        )));
    }
    if memory_term < threshold {
        let gamma = 1.0 - memory_term;
        let family = if m == 1 {
            LimitFamily::FbmIncrement { hurst: h }
        } else {
            LimitFamily::Hermite { order: m, hurst: h }
        };
        Ok(TheoreticalLimit {
            gamma,
            family,
            scale_known: false,
        })
    } else if let Some(index) = heavy {
        // above the threshold with infinite-variance innovations: stable
        // limit at rate 1/alpha
        Ok(TheoreticalLimit {
            gamma: 1.0 / index,
            family: LimitFamily::Stable { index },
            scale_known: false,
        })
    } else {
        Ok(TheoreticalLimit {
            gamma: 0.5,
            family: LimitFamily::Gaussian,
            scale_known: false,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::InnovationSpec;

    #[test]
    fn poisson_is_clt_branch() {
        let limit = classify_limit(&ModelSpec::Poisson { rate: 1.0 }).unwrap();
        assert_eq!(limit.gamma, 0.5);
        assert_eq!(limit.family, LimitFamily::Gaussian);
        assert!(!limit.scale_known);
    }

    #[test]
    fn lmsd_exponential_long_memory_branch() {
        let p = LmsdParams {
            hurst: 0.9,
            sigma_fn: SigmaFn::Exponential,
            innovation: InnovationSpec::UnitExponential,
        };
        let limit = classify_limit(&ModelSpec::Lmsd(p)).unwrap();
        assert!((limit.gamma - 0.9).abs() < 1e-12);
        assert_eq!(limit.family, LimitFamily::FbmIncrement { hurst: 0.9 });
    }

    #[test]
    fn lmsd_rank_two_short_branch() {
        let p = LmsdParams {
            hurst: 0.6,
            sigma_fn: SigmaFn::Square,
            innovation: InnovationSpec::UnitExponential,
        };
        let limit = classify_limit(&ModelSpec::Lmsd(p)).unwrap();
        assert_eq!(limit.gamma, 0.5);
        assert_eq!(limit.family, LimitFamily::Gaussian);
    }

    #[test]
    fn lmsd_pareto_keeps_long_memory_branch() {
        let p = LmsdParams {
            hurst: 0.9,
            sigma_fn: SigmaFn::Exponential,
            innovation: InnovationSpec::UnitPareto { tail_index: 1.5 },
        };
        let limit = classify_limit(&ModelSpec::Lmsd(p)).unwrap();
        assert!((limit.gamma - 0.9).abs() < 1e-12);
        assert_eq!(limit.family, LimitFamily::FbmIncrement { hurst: 0.9 });
    }

    #[test]
    fn lmsd_pareto_stable_branch() {
        // m = 2, H = 0.6 -> m(1-H) = 0.8 > 1/alpha = 2/3
        let p = LmsdParams {
            hurst: 0.6,
            sigma_fn: SigmaFn::Square,
            innovation: InnovationSpec::UnitPareto { tail_index: 1.5 },
        };
        let limit = classify_limit(&ModelSpec::Lmsd(p)).unwrap();
        assert!((limit.gamma - 1.0 / 1.5).abs() < 1e-12);
        assert_eq!(limit.family, LimitFamily::Stable { index: 1.5 });
    }

    #[test]
    fn heavy_tailed_acd_stable_branch() {
        let p = AcdParams {
            omega: 0.2,
            alpha: 0.8,
            beta: 0.1,
            innovation: InnovationSpec::UnitExponential,
        };
        let limit = classify_limit(&ModelSpec::Acd(p.clone())).unwrap();
        match limit.family {
            LimitFamily::Stable { index } => {
                assert!(index > 1.0 && index < 2.0);
                assert!((limit.gamma - 1.0 / index).abs() < 1e-12);
            }
            other => panic!("expected stable family, got {other:?}"),
        }
    }

    #[test]
    fn finite_variance_acd_gaussian_branch() {
        let p = AcdParams {
            omega: 0.2,
            alpha: 0.1,
            beta: 0.8,
            innovation: InnovationSpec::UnitExponential,
        };
        let limit = classify_limit(&ModelSpec::Acd(p)).unwrap();
        assert_eq!(limit.gamma, 0.5);
        assert_eq!(limit.family, LimitFamily::Gaussian);
    }

    #[test]
    fn boundary_case_rejected() {
        // m = 2, H = 0.75: m(1 - H) = 1/2 exactly.
        let p = LmsdParams {
            hurst: 0.75,
            sigma_fn: SigmaFn::Square,
            innovation: InnovationSpec::UnitExponential,
        };
        assert!(matches!(
            classify_limit(&ModelSpec::Lmsd(p)),
            Err(ModelError::BoundaryCase(_))
        ));
    }
}
