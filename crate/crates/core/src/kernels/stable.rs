//! Totally right-skewed alpha-stable variates via the Chambers–Mallows–Stuck
//! transform. Used as the reference law for the heavy-tailed duration limits.

use rand::Rng;
use rand_distr::{Distribution, Exp1};
use std::f64::consts::FRAC_PI_2;

use crate::error::{ModelError, Result};
use crate::rng::RandomStream;

/// i.i.d. draws from the alpha-stable law with skewness +1, zero shift and
/// the given scale, for alpha in (1, 2]. At alpha = 2 this is Gaussian with
/// variance 2 scale^2.
pub fn sample_stable_skewed(
    index: f64,
    scale: f64,
    n: usize,
    stream: RandomStream,
) -> Result<Vec<f64>> {
    if !(index > 1.0 && index <= 2.0) {
        return Err(ModelError::Domain(format!(
            "stable index must lie in (1, 2], got {index}"
        )));
    }
    if scale <= 0.0 {
        return Err(ModelError::Domain(format!(
            "stable scale must be positive, got {scale}"
        )));
    }
    let mut rng = stream.rng();
    Ok((0..n).map(|_| scale * draw_standard(index, &mut rng)).collect())
}

/// One standard (scale 1) draw, beta = +1.
fn draw_standard<R: Rng>(alpha: f64, rng: &mut R) -> f64 {
    let u: f64 = rng.gen_range(-FRAC_PI_2..FRAC_PI_2);
    let w: f64 = Exp1.sample(rng);
    if alpha == 2.0 {
        // transform degenerates cleanly: 2 sin(U) sqrt(W) ~ N(0, 2)
        return 2.0 * u.sin() * w.sqrt();
    }
    let beta = 1.0_f64;
    let zeta = beta * (FRAC_PI_2 * alpha).tan();
    let b = zeta.atan() / alpha;
    let s = (1.0 + zeta * zeta).powf(0.5 / alpha);
    let t = alpha * (u + b);
    s * t.sin() / u.cos().powf(1.0 / alpha)
        * ((u - t).cos() / w).powf((1.0 - alpha) / alpha)
}
