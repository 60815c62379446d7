//! Wiring between model specs and the generators: event-count duration
//! sampling and calendar-horizon return simulation.

use crate::durations::{
    acd::DEFAULT_BURNIN, simulate_acd, simulate_lmsd, simulate_lmsd_with_path,
    simulate_poisson_durations, DurationSample, ModelSpec,
};
use crate::error::{ModelError, Result};
use crate::price::{build_ticks, calendar_returns, MicrostructureSpec, TickSeries};
use crate::rng::RandomStream;

/// n durations from the model, stationary start (burn-in for ACD).
pub fn sample_durations(model: &ModelSpec, n: usize, stream: RandomStream) -> Result<DurationSample> {
    match model {
        ModelSpec::Poisson { rate } => simulate_poisson_durations(*rate, n, stream),
        ModelSpec::Acd(p) => simulate_acd(p, n, DEFAULT_BURNIN, stream),
        ModelSpec::Lmsd(p) => simulate_lmsd(p, n, stream),
    }
}

/// Durations plus the tick series over them, honoring the microstructure
/// spec (the leverage kind reuses the LMSD Gaussian path).
pub fn sample_ticks(
    model: &ModelSpec,
    n_events: usize,
    mu: f64,
    sigma_e: f64,
    micro: &MicrostructureSpec,
    stream: RandomStream,
) -> Result<TickSeries> {
    // the tick stream must differ from the duration stream; carve out the
    // top bit of the stream id for the shock draws
    let shock_stream = RandomStream::new(stream.master_seed, stream.stream_id | (1 << 63));
    match micro {
        MicrostructureSpec::FractionalLeverage { delta, truncation } => {
            let p = match model {
                ModelSpec::Lmsd(p) => p,
                _ => {
                    return Err(ModelError::Domain(
                        "fractional leverage requires an LMSD duration model".into(),
                    ))
                }
            };
            let depth = if delta.fract() == 0.0 {
                *delta as usize
            } else {
                *truncation
            };
            let (durations, path) = simulate_lmsd_with_path(p, n_events, depth, stream)?;
            build_ticks(&durations, mu, sigma_e, micro, shock_stream, Some(&path))
        }
        _ => {
            let durations = sample_durations(model, n_events, stream)?;
            build_ticks(&durations, mu, sigma_e, micro, shock_stream, None)
        }
    }
}

/// `count` calendar returns at the given spacing. The number of simulated
/// events starts at a 25% margin over the expected lambda * horizon and is
/// doubled (rebuilding deterministically from the same stream) until the
/// path covers the horizon.
pub fn simulate_returns(
    model: &ModelSpec,
    count: usize,
    spacing: f64,
    mu: f64,
    sigma_e: f64,
    micro: &MicrostructureSpec,
    stream: RandomStream,
) -> Result<Vec<f64>> {
    let horizon = count as f64 * spacing;
    let lambda = 1.0 / model.theoretical_mean()?;
    let mut n_events = ((1.25 * lambda * horizon).ceil() as usize).max(64) + 64;
    for _ in 0..20 {
        let ticks = sample_ticks(model, n_events, mu, sigma_e, micro, stream)?;
        match calendar_returns(&ticks, spacing, count) {
            Ok(rets) => return Ok(rets),
            Err(ModelError::Horizon(_)) => n_events *= 2,
            Err(e) => return Err(e),
        }
    }
    Err(ModelError::Horizon(format!(
        "could not cover horizon {horizon} after repeated doubling"
    )))
}
