//! Poisson baseline: i.i.d. exponential durations.

use rand_distr::{Distribution, Exp1};

use crate::error::{ModelError, Result};
use crate::rng::RandomStream;

use super::{DurationSample, ModelTag};

pub fn simulate_poisson_durations(rate: f64, n: usize, stream: RandomStream) -> Result<DurationSample> {
    if rate <= 0.0 {
        return Err(ModelError::Domain(format!("rate must be > 0, got {rate}")));
    }
    let mut rng = stream.rng();
    let durations = (0..n)
        .map(|_| {
            let e: f64 = Exp1.sample(&mut rng);
            e / rate
        })
        .collect();
    Ok(DurationSample {
        durations,
        model_tag: ModelTag::Poisson,
        theoretical_mean: 1.0 / rate,
    })
}
