use crate::error::{Error, Result};

use super::Pmf;

/// Standard normal distribution function, `erfc(-x / sqrt 2) / 2`.
///
/// `libm::erfc` is the FreeBSD msun rational approximation (error below one ulp),
/// so the absolute error here stays under 1e-15.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// Kolmogorov distance between the law of `(X - mean) / sigma` and `N(0, 1)`.
///
/// Between atoms the pmf's CDF is flat and `Φ` is monotone, so the supremum is
/// attained at an atom, approached from the left or the right.
pub fn ks_distance_to_normal(pmf: &Pmf, mean: f64, sigma: f64) -> Result<f64> {
    if sigma.is_nan() || sigma <= 0.0 || !sigma.is_finite() {
        return Err(Error::domain(format!(
            "sigma must be positive, got {sigma}"
        )));
    }
    let cumulative = pmf.cumulative();
    let mut before = 0.0f64;
    let mut sup = 0.0f64;
    for (k, &after) in cumulative.iter().enumerate() {
        let phi = normal_cdf((k as f64 - mean) / sigma);
        sup = sup.max((before - phi).abs()).max((after - phi).abs());
        before = after;
    }
    Ok(sup.min(1.0))
}
