//! Random and exhaustive embeddings: sampling, exact laws, the size-bias
//! coupling, and Kolmogorov distance to the standard normal.

mod exact;
mod kernel;
mod ks;
mod sampling;
mod size_bias;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::rational::{to_f64, Rational};

pub use exact::{exact_distribution, star_tail_pmf};
pub use kernel::CrossingKernel;
pub use ks::{ks_distance_to_normal, normal_cdf};
pub use sampling::{block_rng, empirical_distribution, sample_embedding, BLOCK_SAMPLES};
pub use size_bias::{
    coupling_run, size_bias_exact_law, size_bias_sample, CoupledSample, CouplingSummary,
    SizeBiasSampler,
};

/// Probability mass function of a crossing count, indexed by the count.
#[derive(Debug, Clone, PartialEq)]
pub enum Pmf {
    Exact { probabilities: Vec<Rational> },
    Empirical { counts: Vec<u64>, samples: u64 },
}

impl Pmf {
    pub fn is_exact(&self) -> bool {
        matches!(self, Pmf::Exact { .. })
    }

    /// One past the largest listed support point.
    pub fn len(&self) -> usize {
        match self {
            Pmf::Exact { probabilities } => probabilities.len(),
            Pmf::Empirical { counts, .. } => counts.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn sample_count(&self) -> Option<u64> {
        match self {
            Pmf::Exact { .. } => None,
            Pmf::Empirical { samples, .. } => Some(*samples),
        }
    }

    /// Exact probability of `k`; `None` for empirical pmfs.
    pub fn exact_probability(&self, k: usize) -> Option<Rational> {
        match self {
            Pmf::Exact { probabilities } => {
                Some(probabilities.get(k).cloned().unwrap_or_else(Rational::zero))
            }
            Pmf::Empirical { .. } => None,
        }
    }

    pub fn probability(&self, k: usize) -> f64 {
        match self {
            Pmf::Exact { probabilities } => probabilities.get(k).map_or(0.0, to_f64),
            Pmf::Empirical { counts, samples } => {
                counts.get(k).map_or(0.0, |&c| c as f64 / *samples as f64)
            }
        }
    }

    pub fn probabilities(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.probability(k)).collect()
    }

    /// Running `P(X <= k)` for every listed `k`; exact pmfs accumulate exactly.
    pub fn cumulative(&self) -> Vec<f64> {
        match self {
            Pmf::Exact { probabilities } => {
                let mut acc = Rational::zero();
                probabilities
                    .iter()
                    .map(|p| {
                        acc += p;
                        to_f64(&acc)
                    })
                    .collect()
            }
            Pmf::Empirical { counts, samples } => {
                let mut acc = 0u64;
                counts
                    .iter()
                    .map(|&c| {
                        acc += c;
                        acc as f64 / *samples as f64
                    })
                    .collect()
            }
        }
    }

    pub fn exact_mean(&self) -> Option<Rational> {
        match self {
            Pmf::Exact { probabilities } => Some(
                probabilities
                    .iter()
                    .enumerate()
                    .map(|(k, p)| p * Rational::from_integer(BigInt::from(k)))
                    .sum(),
            ),
            Pmf::Empirical { .. } => None,
        }
    }

    pub fn exact_variance(&self) -> Option<Rational> {
        let Pmf::Exact { probabilities } = self else {
            return None;
        };
        let mean = self.exact_mean()?;
        let second: Rational = probabilities
            .iter()
            .enumerate()
            .map(|(k, p)| p * Rational::from_integer(BigInt::from(k * k)))
            .sum();
        Some(second - &mean * &mean)
    }

    pub fn mean(&self) -> f64 {
        match self {
            Pmf::Exact { .. } => to_f64(&self.exact_mean().unwrap()),
            Pmf::Empirical { counts, samples } => {
                counts
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| k as f64 * c as f64)
                    .sum::<f64>()
                    / *samples as f64
            }
        }
    }

    /// Population variance of the listed law (no Bessel correction).
    pub fn variance(&self) -> f64 {
        match self {
            Pmf::Exact { .. } => to_f64(&self.exact_variance().unwrap()),
            Pmf::Empirical { counts, samples } => {
                let mean = self.mean();
                counts
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| c as f64 * (k as f64 - mean).powi(2))
                    .sum::<f64>()
                    / *samples as f64
            }
        }
    }

    /// Exact laws agree on every point, with missing trailing points read as zero.
    pub fn same_law(&self, other: &Pmf) -> bool {
        let len = self.len().max(other.len());
        match (self, other) {
            (Pmf::Exact { .. }, Pmf::Exact { .. }) => {
                (0..len).all(|k| self.exact_probability(k) == other.exact_probability(k))
            }
            _ => (0..len).all(|k| self.probability(k) == other.probability(k)),
        }
    }
}
