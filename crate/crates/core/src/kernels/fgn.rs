//! Exact fractional Gaussian noise synthesis by circulant embedding
//! (Davies–Harte). The output has standard Gaussian marginals and the
//! closed-form fGn autocovariance at every lag, which the long-memory
//! scaling tests depend on.

use rand_distr::{Distribution, StandardNormal};
use rustfft::{num_complex::Complex, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::rng::RandomStream;

/// Eigenvalues this far below zero are treated as exact zeros; anything
/// worse is reported instead of clipped.
const SPECTRUM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FgnSpec {
    pub hurst: f64,
    pub length: usize,
}

impl FgnSpec {
    pub fn new(hurst: f64, length: usize) -> Result<Self> {
        check_hurst(hurst)?;
        if length < 2 {
            return Err(ModelError::Domain(format!(
                "fGn length must be >= 2, got {length}"
            )));
        }
        Ok(Self { hurst, length })
    }
}

fn check_hurst(h: f64) -> Result<()> {
    if h > 0.5 && h < 1.0 {
        Ok(())
    } else {
        Err(ModelError::Domain(format!(
            "Hurst parameter must lie in (1/2, 1), got {h}"
        )))
    }
}

/// Autocovariance of standard fGn:
/// rho(k) = (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}) / 2.
pub fn fgn_autocovariance(hurst: f64, lag: usize) -> Result<f64> {
    check_hurst(hurst)?;
    if lag == 0 {
        return Ok(1.0);
    }
    let k = lag as f64;
    let h2 = 2.0 * hurst;
    Ok(0.5 * ((k + 1.0).powf(h2) - 2.0 * k.powf(h2) + (k - 1.0).powf(h2)))
}

/// One exact fGn realization of length `spec.length`.
pub fn sample_fgn(spec: &FgnSpec, stream: RandomStream) -> Result<Vec<f64>> {
    sample_fgn_with_rng(spec, &mut stream.rng())
}

/// Synthesis driven by an existing generator, for callers that draw further
/// variates from the same stream afterwards.
pub fn sample_fgn_with_rng<R: rand::Rng>(spec: &FgnSpec, rng: &mut R) -> Result<Vec<f64>> {
    let n = spec.length;
    let m = 2 * n;
    // First row of the circulant embedding: rho_0 .. rho_n, rho_{n-1} .. rho_1.
    let mut row = Vec::with_capacity(m);
    for k in 0..=n {
        row.push(fgn_autocovariance(spec.hurst, k)?);
    }
    for k in (1..n).rev() {
        row.push(row[k]);
    }

    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(m);

    let mut spectrum: Vec<Complex<f64>> = row.iter().map(|&r| Complex::new(r, 0.0)).collect();
    fft.process(&mut spectrum);

    let mut eig = Vec::with_capacity(m);
    for c in &spectrum {
        let v = c.re;
        if v < -SPECTRUM_TOL {
            return Err(ModelError::NegativeSpectrum(v));
        }
        eig.push(v.max(0.0));
    }

    // Complex Gaussian amplitudes with conjugate symmetry.
    let mut w = vec![Complex::new(0.0, 0.0); m];
    let z0: f64 = StandardNormal.sample(rng);
    let zn: f64 = StandardNormal.sample(rng);
    w[0] = Complex::new(eig[0].sqrt() * z0, 0.0);
    w[n] = Complex::new(eig[n].sqrt() * zn, 0.0);
    for k in 1..n {
        let a: f64 = StandardNormal.sample(rng);
        let b: f64 = StandardNormal.sample(rng);
        let s = (eig[k] / 2.0).sqrt();
        w[k] = Complex::new(s * a, s * b);
        w[m - k] = w[k].conj();
    }

    fft.process(&mut w);
    let scale = 1.0 / (m as f64).sqrt();
    Ok(w.into_iter().take(n).map(|c| c.re * scale).collect())
}
