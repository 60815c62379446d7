//! Pure-jump log-price paths: event times from durations, per-event jumps
//! mu + e_k + eta_k, and calendar-time queries (counting process, log price,
//! spaced returns).

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::durations::DurationSample;
use crate::error::{ModelError, Result};
use crate::kernels::fracdiff::fractional_difference;
use crate::rng::RandomStream;

/// Microstructure noise attached to each jump.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MicrostructureSpec {
    None,
    /// eta = (I - B)^delta applied to the Gaussian path behind the LMSD
    /// durations; requires delta > H - 1/2 so the noise partial sums are
    /// negligible at rate sqrt(n).
    FractionalLeverage { delta: f64, truncation: usize },
    IidNoise { sd: f64 },
}

/// An immutable tick-level realization; the log price is a deterministic
/// right-continuous step function of it.
#[derive(Debug, Clone)]
pub struct TickSeries {
    pub event_times: Vec<f64>,
    pub mu: f64,
    pub sigma_e: f64,
    pub shocks: Vec<f64>,
    pub noise: Vec<f64>,
    /// prefix[k] = sum of (e_i + eta_i) for i <= k (1-based), prefix[0] = 0
    cum_shock: Vec<f64>,
}

impl TickSeries {
    pub fn len(&self) -> usize {
        self.event_times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.event_times.is_empty()
    }

    /// Jump size at event k (0-based): mu + e_k + eta_k.
    pub fn jump(&self, k: usize) -> f64 {
        self.mu + self.shocks[k] + self.noise[k]
    }
}

/// Assemble a tick series from durations. Efficient shocks are i.i.d.
/// Gaussian(0, sigma_e^2), independent of the durations. For the leverage
/// kind, `gaussian_path` must be the path behind the durations, extended by
/// the filter depth: its length must equal durations + truncation (or
/// durations + delta when delta is an integer).
pub fn build_ticks(
    durations: &DurationSample,
    mu: f64,
    sigma_e: f64,
    micro: &MicrostructureSpec,
    stream: RandomStream,
    gaussian_path: Option<&[f64]>,
) -> Result<TickSeries> {
    if sigma_e < 0.0 {
        return Err(ModelError::Domain(format!(
            "sigma_e must be >= 0, got {sigma_e}"
        )));
    }
    let m = durations.durations.len();
    let mut event_times = Vec::with_capacity(m);
    let mut t = 0.0;
    for &tau in &durations.durations {
        t += tau;
        event_times.push(t);
    }

    let mut rng = stream.rng();
    let shocks: Vec<f64> = if sigma_e == 0.0 {
        vec![0.0; m]
    } else {
        (0..m)
            .map(|_| {
                let z: f64 = StandardNormal.sample(&mut rng);
                sigma_e * z
            })
            .collect()
    };

    let noise = match micro {
        MicrostructureSpec::None => vec![0.0; m],
        MicrostructureSpec::IidNoise { sd } => {
            if *sd <= 0.0 {
                return Err(ModelError::Domain(format!(
                    "iid noise sd must be > 0, got {sd}"
                )));
            }
            (0..m)
                .map(|_| {
                    let z: f64 = StandardNormal.sample(&mut rng);
                    sd * z
                })
                .collect()
        }
        MicrostructureSpec::FractionalLeverage { delta, truncation } => {
            let path = gaussian_path.ok_or_else(|| {
                ModelError::LengthMismatch(
                    "fractional leverage requires the Gaussian path behind the durations".into(),
                )
            })?;
            let eta = fractional_difference(path, *delta, *truncation)?;
            if eta.len() != m {
                return Err(ModelError::LengthMismatch(format!(
                    "leverage noise length {} does not match {} durations; \
                     supply a path extended by the filter depth",
                    eta.len(),
                    m
                )));
            }
            eta
        }
    };

    let mut cum_shock = Vec::with_capacity(m + 1);
    cum_shock.push(0.0);
    for k in 0..m {
        cum_shock.push(cum_shock[k] + shocks[k] + noise[k]);
    }

    Ok(TickSeries {
        event_times,
        mu,
        sigma_e,
        shocks,
        noise,
        cum_shock,
    })
}

/// N(t): number of events in (0, t].
pub fn counting_process(ticks: &TickSeries, t: f64) -> usize {
    debug_assert!(t >= 0.0);
    ticks.event_times.partition_point(|&s| s <= t)
}

/// y(t) = mu N(t) + sum_{k <= N(t)} (e_k + eta_k); y(0) = 0.
pub fn log_price(ticks: &TickSeries, t: f64) -> f64 {
    let n = counting_process(ticks, t);
    ticks.mu * n as f64 + ticks.cum_shock[n]
}

/// Calendar-time returns r_j = y(jT) - y((j-1)T) for j = 1..=count.
pub fn calendar_returns(ticks: &TickSeries, spacing: f64, count: usize) -> Result<Vec<f64>> {
    if spacing <= 0.0 {
        return Err(ModelError::Domain(format!(
            "spacing must be > 0, got {spacing}"
        )));
    }
    let horizon = count as f64 * spacing;
    let last = ticks.event_times.last().copied().unwrap_or(0.0);
    if horizon > last {
        return Err(ModelError::Horizon(format!(
            "requested horizon {horizon} exceeds last event time {last}"
        )));
    }
    let mut out = Vec::with_capacity(count);
    let mut prev = 0.0;
    for j in 1..=count {
        let cur = log_price(ticks, j as f64 * spacing);
        out.push(cur - prev);
        prev = cur;
    }
    Ok(out)
}

/// CSV export with columns (k, t_k, jump_k).
pub fn write_ticks_csv<W: std::io::Write>(ticks: &TickSeries, w: W) -> std::io::Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["k", "t_k", "jump_k"])?;
    for k in 0..ticks.len() {
        wtr.write_record(&[
            (k + 1).to_string(),
            ticks.event_times[k].to_string(),
            ticks.jump(k).to_string(),
        ])?;
    }
    wtr.flush()
}

/// CSV export with columns (j, r_j).
pub fn write_returns_csv<W: std::io::Write>(returns: &[f64], w: W) -> std::io::Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["j", "r_j"])?;
    for (j, r) in returns.iter().enumerate() {
        wtr.write_record(&[(j + 1).to_string(), r.to_string()])?;
    }
    wtr.flush()
}
