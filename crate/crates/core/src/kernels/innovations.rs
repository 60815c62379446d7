//! Unit-mean positive innovation laws for duration models.
//!
//! Every family is normalized so the population mean is exactly 1; heavy
//! tails enter only through the Pareto family's tail index.

use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::rng::RandomStream;

/// Innovation distribution, mean 1 by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum InnovationSpec {
    UnitExponential,
    /// Pareto on [x_m, inf) with x_m = (alpha-1)/alpha, so the mean is 1.
    /// Variance is infinite iff tail_index <= 2.
    UnitPareto { tail_index: f64 },
    /// exp(s Z - s^2/2) for Z standard normal; s = 0 degenerates to 1.
    UnitLognormal { log_sd: f64 },
}

impl InnovationSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            InnovationSpec::UnitExponential => Ok(()),
            InnovationSpec::UnitPareto { tail_index } => {
                if tail_index > 1.0 && tail_index.is_finite() {
                    Ok(())
                } else {
                    Err(ModelError::Domain(format!(
                        "pareto tail index must be > 1, got {tail_index}"
                    )))
                }
            }
            InnovationSpec::UnitLognormal { log_sd } => {
                if log_sd >= 0.0 && log_sd.is_finite() {
                    Ok(())
                } else {
                    Err(ModelError::Domain(format!(
                        "lognormal log_sd must be >= 0, got {log_sd}"
                    )))
                }
            }
        }
    }

    /// E[eps^2]; `None` when infinite.
    pub fn second_moment(&self) -> Option<f64> {
        match *self {
            InnovationSpec::UnitExponential => Some(2.0),
            InnovationSpec::UnitPareto { tail_index: a } => {
                if a > 2.0 {
                    let xm = (a - 1.0) / a;
                    Some(a * xm * xm / (a - 2.0))
                } else {
                    None
                }
            }
            InnovationSpec::UnitLognormal { log_sd } => Some((log_sd * log_sd).exp()),
        }
    }

    /// Power-law tail index, when the family has one.
    pub fn tail_index(&self) -> Option<f64> {
        match *self {
            InnovationSpec::UnitPareto { tail_index } => Some(tail_index),
            _ => None,
        }
    }

    /// True when the support is unbounded above (needed for the ACD tail
    /// equation to have a root).
    pub fn unbounded_support(&self) -> bool {
        match *self {
            InnovationSpec::UnitLognormal { log_sd } => log_sd > 0.0,
            _ => true,
        }
    }

    /// One draw from the law.
    pub fn draw<R: Rng>(&self, rng: &mut R) -> f64 {
        match *self {
            InnovationSpec::UnitExponential => Exp1.sample(rng),
            InnovationSpec::UnitPareto { tail_index: a } => {
                let xm = (a - 1.0) / a;
                let u: f64 = rng.gen_range(0.0..1.0);
                // inverse CDF of Pareto(a, xm); 1-u avoids u = 0
                xm * (1.0 - u).powf(-1.0 / a)
            }
            InnovationSpec::UnitLognormal { log_sd: s } => {
                if s == 0.0 {
                    1.0
                } else {
                    let z: f64 = StandardNormal.sample(rng);
                    (s * z - 0.5 * s * s).exp()
                }
            }
        }
    }
}

/// n i.i.d. draws, all nonnegative, population mean 1.
pub fn sample_innovations(spec: &InnovationSpec, n: usize, stream: RandomStream) -> Vec<f64> {
    debug_assert!(n >= 1);
    let mut rng = stream.rng();
    (0..n).map(|_| spec.draw(&mut rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inference::hill_estimator;

    #[test]
    fn exponential_mean_near_one() {
        let xs = sample_innovations(&InnovationSpec::UnitExponential, 1_000_000, RandomStream::new(11, 0));
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        // 3 sigma / sqrt(n) with sigma = 1
        assert!((mean - 1.0).abs() < 0.005, "mean {mean}");
        assert!(xs.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn pareto_tail_index_recovered_by_hill() {
        let spec = InnovationSpec::UnitPareto { tail_index: 1.5 };
        let xs = sample_innovations(&spec, 100_000, RandomStream::new(12, 0));
        let est = hill_estimator(&xs, 1000).unwrap();
        assert!((est.value - 1.5).abs() < 0.15, "hill {}", est.value);
    }

    #[test]
    fn degenerate_lognormal_is_constant_one() {
        let spec = InnovationSpec::UnitLognormal { log_sd: 0.0 };
        let xs = sample_innovations(&spec, 100, RandomStream::new(1, 0));
        assert!(xs.iter().all(|&x| x == 1.0));
    }

    #[test]
    fn pareto_second_moment_matches_formula() {
        let spec = InnovationSpec::UnitPareto { tail_index: 3.0 };
        let m2 = spec.second_moment().unwrap();
        // a=3, xm=2/3: E[X^2] = 3*(4/9)/1 = 4/3
        assert!((m2 - 4.0 / 3.0).abs() < 1e-12);
        assert!(InnovationSpec::UnitPareto { tail_index: 1.8 }.second_moment().is_none());
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(InnovationSpec::UnitPareto { tail_index: 1.0 }.validate().is_err());
        assert!(InnovationSpec::UnitLognormal { log_sd: -0.1 }.validate().is_err());
    }
}
