//! Deterministic quadrature helpers: adaptive Simpson on a finite interval
//! and Gauss–Hermite rules for expectations against the standard Gaussian.

/// Physicists' Gauss–Hermite nodes and weights (weight function e^{-x^2}).
///
/// Nodes are found by Newton iteration on the orthonormal recurrence; the
/// returned arrays are ordered from the largest root down.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    const EPS: f64 = 3e-14;
    const PIM4: f64 = 0.751_125_544_464_942_5; // pi^{-1/4}
    let m = n.div_ceil(2);
    let nf = n as f64;
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut z = 0.0_f64;
    for i in 0..m {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..200 {
            let mut p1 = PIM4;
            let mut p2 = 0.0;
            for j in 0..n {
                let jf = j as f64;
                let p3 = p2;
                p2 = p1;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= EPS {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Expectation E[g(Y)] for Y ~ N(0,1) by an `n`-node Gauss–Hermite rule.
pub fn gaussian_expectation<F: Fn(f64) -> f64>(g: F, n: usize) -> f64 {
    let (x, w) = gauss_hermite(n);
    let inv_sqrt_pi = 1.0 / std::f64::consts::PI.sqrt();
    let sqrt2 = std::f64::consts::SQRT_2;
    x.iter()
        .zip(&w)
        .map(|(&xi, &wi)| wi * g(sqrt2 * xi))
        .sum::<f64>()
        * inv_sqrt_pi
}

/// Probabilists' Hermite polynomial He_j(y).
pub fn hermite_he(j: usize, y: f64) -> f64 {
    let mut p0 = 1.0;
    if j == 0 {
        return p0;
    }
    let mut p1 = y;
    for k in 1..j {
        let p2 = y * p1 - (k as f64) * p0;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Adaptive Simpson quadrature of `f` on [a, b] to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let c = 0.5 * (a + b);
    let fa = f(a);
    let fb = f(b);
    let fc = f(c);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fc + fb);
    simpson_rec(f, a, b, fa, fb, fc, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    fc: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let c = 0.5 * (a + b);
    let d = 0.5 * (a + c);
    let e = 0.5 * (c + b);
    let fd = f(d);
    let fe = f(e);
    let left = (c - a) / 6.0 * (fa + 4.0 * fd + fc);
    let right = (b - c) / 6.0 * (fc + 4.0 * fe + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_rec(f, a, c, fa, fc, fd, left, 0.5 * tol, depth - 1)
            + simpson_rec(f, c, b, fc, fb, fe, right, 0.5 * tol, depth - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_hermite_integrates_polynomials() {
        // E[Y^2] = 1, E[Y^4] = 3 for standard Gaussian.
        assert!((gaussian_expectation(|y| y * y, 128) - 1.0).abs() < 1e-12);
        assert!((gaussian_expectation(|y| y.powi(4), 128) - 3.0).abs() < 1e-11);
    }

    #[test]
    fn gauss_hermite_lognormal_mean() {
        // E[e^Y] = e^{1/2}
        let got = gaussian_expectation(f64::exp, 128);
        assert!((got - 0.5_f64.exp()).abs() < 1e-12, "got {got}");
    }

    #[test]
    fn hermite_polynomials_small_orders() {
        assert_eq!(hermite_he(0, 1.3), 1.0);
        assert_eq!(hermite_he(1, 1.3), 1.3);
        assert!((hermite_he(2, 1.3) - (1.3 * 1.3 - 1.0)).abs() < 1e-15);
        assert!((hermite_he(3, 2.0) - (8.0 - 3.0 * 2.0)).abs() < 1e-12);
    }

    #[test]
    fn simpson_exponential_integral() {
        let got = adaptive_simpson(&|x: f64| (-x).exp(), 0.0, 60.0, 1e-12);
        assert!((got - 1.0).abs() < 1e-10);
    }
}
