//! Size-bias coupling bounds on the Kolmogorov distance between the
//! standardized crossing count and a standard Gaussian.

use num_bigint::BigUint;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::moments::{ClosedFormMoments, MomentReport};
use crate::rational::{from_int, from_uint, ratio, to_f64, Rational};

/// Graph statistics the bounds are built from.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundInputs {
    pub edge_count: usize,
    pub max_degree: usize,
    pub m2: BigUint,
    pub m4: BigUint,
    pub variance: Rational,
}

impl From<&MomentReport> for BoundInputs {
    fn from(r: &MomentReport) -> Self {
        BoundInputs {
            edge_count: r.edge_count,
            max_degree: r.max_degree,
            m2: r.m2.clone(),
            m4: r.m4.clone(),
            variance: r.variance.clone(),
        }
    }
}

impl From<&ClosedFormMoments> for BoundInputs {
    fn from(c: &ClosedFormMoments) -> Self {
        BoundInputs {
            edge_count: c.edge_count,
            max_degree: c.max_degree,
            m2: c.m2.clone(),
            m4: c.m4.clone(),
            variance: c.trusted_variance(),
        }
    }
}

impl BoundInputs {
    fn degenerate_check(&self) -> Result<()> {
        if self.m2.is_zero() {
            return Err(Error::domain("degenerate: no 2-matchings"));
        }
        Ok(())
    }

    /// `1 - 6 m4 / m2^2`, the share of ordered pairs whose 2-matchings touch.
    fn touching_share(&self) -> Rational {
        let m2 = from_uint(&self.m2);
        Rational::from_integer(1.into()) - from_int(6) * from_uint(&self.m4) / (&m2 * &m2)
    }

    /// `1 - 6 m4/m2^2 + (Δ-1)^2 m / (2 m2)`.
    pub fn radicand(&self) -> Result<Rational> {
        self.degenerate_check()?;
        let d1 = from_int(self.max_degree as i64 - 1);
        let m = from_int(self.edge_count as i64);
        Ok(self.touching_share() + &d1 * &d1 * m / (from_int(2) * from_uint(&self.m2)))
    }
}

/// Upper bound on `Var(E[X^s - X | X])`:
/// `4 Δ^2 (m-1)^2 (1 - 6 m4/m2^2 + (Δ-1)^2 (m-4) / (2 m2))`.
pub fn psi_variance_bound(inputs: &BoundInputs) -> Result<f64> {
    inputs.degenerate_check()?;
    let delta = from_int(inputs.max_degree as i64);
    let m = inputs.edge_count as i64;
    let d1 = from_int(inputs.max_degree as i64 - 1);
    let inner = inputs.touching_share()
        + &d1 * &d1 * from_int(m - 4) / (from_int(2) * from_uint(&inputs.m2));
    let m1 = from_int(m - 1);
    Ok(to_f64(&(from_int(4) * &delta * &delta * &m1 * &m1 * inner)))
}

/// Everything that enters the Kolmogorov bound, plus the bound itself.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub edge_count: usize,
    pub max_degree: usize,
    pub m2: BigUint,
    pub m4: BigUint,
    pub sigma: f64,
    /// Coupling bound `A = 2 Δ m` on `|X^s - X|`.
    pub coupling_bound: f64,
    pub radicand: f64,
    /// `2 Δ m sqrt(radicand)`, bounding `Ψ`.
    pub psi_bound: f64,
    pub kolmogorov_bound: f64,
}

/// `d_Kol(W, Z) <= 4 m2 Δ m / (3 σ^2) * (6 Δ m / σ + sqrt(radicand))`.
///
/// The exact rational pieces (prefactor, `σ^2`, radicand) are each rounded to the
/// nearest `f64` once; only the square roots and the final product happen in
/// floating point.
pub fn kolmogorov_bound(inputs: &BoundInputs) -> Result<BoundReport> {
    inputs.degenerate_check()?;
    if !inputs.variance.is_positive() {
        return Err(Error::domain("bound undefined: σ=0"));
    }
    let radicand = inputs.radicand()?;
    debug_assert!(!radicand.is_negative());
    let delta_m = (inputs.max_degree * inputs.edge_count) as i64;
    let prefactor =
        from_int(4) * from_uint(&inputs.m2) * from_int(delta_m) / (from_int(3) * &inputs.variance);
    let variance = to_f64(&inputs.variance);
    let sigma = variance.sqrt();
    let radicand = to_f64(&radicand);
    let root = radicand.sqrt();
    let coupling_bound = 2.0 * delta_m as f64;
    let bound = to_f64(&prefactor) * (6.0 * delta_m as f64 / sigma + root);
    Ok(BoundReport {
        edge_count: inputs.edge_count,
        max_degree: inputs.max_degree,
        m2: inputs.m2.clone(),
        m4: inputs.m4.clone(),
        sigma,
        coupling_bound,
        radicand,
        psi_bound: coupling_bound * root,
        kolmogorov_bound: bound,
    })
}

/// The general size-bias bound `6 μ A^2 / σ^3 + 2 μ Ψ / σ^2`.
pub fn size_bias_kolmogorov_bound(mean: f64, sigma: f64, coupling_bound: f64, psi: f64) -> f64 {
    6.0 * mean * coupling_bound * coupling_bound / sigma.powi(3)
        + 2.0 * mean * psi / (sigma * sigma)
}

/// The radicand as printed in the introduction, `... + m (Δ-1)^2 / m2` (no factor 1/2).
/// Exposed for comparison only; [`kolmogorov_bound`] uses [`BoundInputs::radicand`].
pub fn intro_radicand(inputs: &BoundInputs) -> Result<Rational> {
    let half = inputs.radicand()? - inputs.touching_share();
    Ok(inputs.touching_share() + half * ratio(2, 1))
}
