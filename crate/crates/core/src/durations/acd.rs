//! ACD(1,1) durations: tau_k = psi_k eps_k with
//! psi_k = omega + alpha tau_{k-1} + beta psi_{k-1},
//! plus the tail-index equation E[(alpha eps + beta)^kappa] = 1 and the
//! finite-second-moment criterion.

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::kernels::InnovationSpec;
use crate::quadrature::{adaptive_simpson, gauss_hermite};
use crate::rng::RandomStream;

use super::{DurationSample, ModelTag};

/// Burn-in used to approximate the stationary start.
pub const DEFAULT_BURNIN: usize = 10_000;

/// Upper end of the kappa search bracket.
const KAPPA_MAX: f64 = 50.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AcdParams {
    pub omega: f64,
    pub alpha: f64,
    pub beta: f64,
    pub innovation: InnovationSpec,
}

impl AcdParams {
    pub fn validate(&self) -> Result<()> {
        self.innovation.validate()?;
        if self.omega <= 0.0 {
            return Err(ModelError::Domain(format!(
                "omega must be > 0, got {}",
                self.omega
            )));
        }
        if self.alpha < 0.0 || self.beta < 0.0 {
            return Err(ModelError::Domain("alpha and beta must be >= 0".into()));
        }
        if self.alpha + self.beta >= 1.0 {
            return Err(ModelError::Stationarity(format!(
                "alpha + beta = {} must be < 1",
                self.alpha + self.beta
            )));
        }
        Ok(())
    }

    /// omega / (1 - alpha - beta).
    pub fn stationary_mean(&self) -> f64 {
        self.omega / (1.0 - self.alpha - self.beta)
    }
}

/// Simulate `n` durations after discarding `burnin`, starting the recursion
/// at the unconditional mean psi_0 = omega / (1 - alpha - beta).
pub fn simulate_acd(
    params: &AcdParams,
    n: usize,
    burnin: usize,
    stream: RandomStream,
) -> Result<DurationSample> {
    params.validate()?;
    let mut rng = stream.rng();
    let mut psi = params.stationary_mean();
    let mut tau_prev = psi; // enters the recursion only through the first step
    let mut out = Vec::with_capacity(n);
    for k in 0..burnin + n {
        if k > 0 {
            psi = params.omega + params.alpha * tau_prev + params.beta * psi;
        }
        let tau = psi * params.innovation.draw(&mut rng);
        tau_prev = tau;
        if k >= burnin {
            out.push(tau);
        }
    }
    Ok(DurationSample {
        durations: out,
        model_tag: ModelTag::Acd,
        theoretical_mean: params.stationary_mean(),
    })
}

/// E[(alpha eps + beta)^kappa] for the given innovation law; infinity is
/// represented by `f64::INFINITY`.
pub fn acd_moment(params: &AcdParams, kappa: f64) -> f64 {
    let a = params.alpha;
    let b = params.beta;
    match params.innovation {
        InnovationSpec::UnitExponential => {
            // integrand (a x + b)^kappa e^{-x}; mode at kappa - b/a
            let mode = (kappa - b / a).max(0.0);
            let upper = mode + 250.0;
            let f = |x: f64| (a * x + b).powf(kappa) * (-x).exp();
            // coarse pre-scale so the adaptive tolerance is relative
            let coarse: f64 = (0..1024)
                .map(|i| f(upper * (i as f64 + 0.5) / 1024.0))
                .sum::<f64>()
                * upper
                / 1024.0;
            let tol = (coarse.abs() * 1e-12).max(1e-14);
            adaptive_simpson(&f, 0.0, upper, tol)
        }
        InnovationSpec::UnitPareto { tail_index: ai } => {
            if kappa >= ai {
                return f64::INFINITY;
            }
            // eps = xm u^{-1/ai}; substitute u = v^m to tame the u -> 0
            // singularity of order kappa/ai.
            let xm = (ai - 1.0) / ai;
            let m = 16.0;
            let f = |v: f64| {
                if v <= 0.0 {
                    return 0.0;
                }
                let u = v.powf(m);
                (a * xm * u.powf(-1.0 / ai) + b).powf(kappa) * m * v.powf(m - 1.0)
            };
            let coarse: f64 = (0..2048)
                .map(|i| f((i as f64 + 0.5) / 2048.0))
                .sum::<f64>()
                / 2048.0;
            let tol = (coarse.abs() * 1e-11).max(1e-14);
            adaptive_simpson(&f, 0.0, 1.0, tol)
        }
        InnovationSpec::UnitLognormal { log_sd: s } => {
            if s == 0.0 {
                return (a + b).powf(kappa);
            }
            let (x, w) = gauss_hermite(256);
            let inv_sqrt_pi = 1.0 / std::f64::consts::PI.sqrt();
            let sqrt2 = std::f64::consts::SQRT_2;
            x.iter()
                .zip(&w)
                .map(|(&xi, &wi)| {
                    let eps = (s * sqrt2 * xi - 0.5 * s * s).exp();
                    wi * (a * eps + b).powf(kappa)
                })
                .sum::<f64>()
                * inv_sqrt_pi
        }
    }
}

/// Solve E[(alpha eps + beta)^kappa] = 1 for the unique kappa > 1.
///
/// The moment function is convex with value alpha + beta < 1 at kappa = 1,
/// so the root beyond the minimum is unique; it is bracketed by doubling and
/// then bisected until the quadrature residual is within `tol`.
pub fn acd_tail_index(params: &AcdParams, tol: f64) -> Result<f64> {
    params.validate()?;
    if params.alpha == 0.0 {
        return Err(ModelError::NoTailIndex(
            "alpha = 0: E[beta^kappa] < 1 for all kappa > 0".into(),
        ));
    }
    if !params.innovation.unbounded_support() {
        return Err(ModelError::NoTailIndex(
            "innovation support is bounded; tail equation has no root".into(),
        ));
    }
    let g = |kappa: f64| acd_moment(params, kappa) - 1.0;

    let mut lo = 1.0 + 1e-6;
    if g(lo) >= 0.0 {
        return Err(ModelError::OutsideRegime(
            "moment already exceeds 1 at kappa = 1; stationary mean would be infinite".into(),
        ));
    }
    let mut hi = 2.0;
    while g(hi) < 0.0 {
        hi *= 1.5;
        if hi > KAPPA_MAX {
            return Err(ModelError::NoTailIndex(format!(
                "E[(alpha eps + beta)^kappa] stays below 1 up to kappa = {KAPPA_MAX}"
            )));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let val = g(mid);
        if val.abs() <= tol {
            return Ok(mid);
        }
        if val < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-14 {
            break;
        }
    }
    let kappa = 0.5 * (lo + hi);
    if g(kappa).abs() <= tol.max(1e-8) {
        Ok(kappa)
    } else {
        Err(ModelError::NoTailIndex(format!(
            "bisection failed to meet residual tolerance at kappa = {kappa}"
        )))
    }
}

/// Check alpha^2 E[eps^2] + 2 alpha beta + beta^2 < 1 and report the margin
/// 1 - that quantity. Infinite E[eps^2] gives (false, -inf).
pub fn acd_second_moment_condition(params: &AcdParams) -> (bool, f64) {
    match params.innovation.second_moment() {
        None => (false, f64::NEG_INFINITY),
        Some(m2) => {
            let q = params.alpha * params.alpha * m2
                + 2.0 * params.alpha * params.beta
                + params.beta * params.beta;
            let margin = 1.0 - q;
            (margin > 0.0, margin)
        }
    }
}
