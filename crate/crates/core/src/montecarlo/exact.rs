use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;
use crate::permutations::{factorial, fold_permutations};
use crate::rational::Rational;

use super::{CrossingKernel, Pmf};

pub(super) fn check_exact_limit(g: &Graph, limits: &Limits) -> Result<()> {
    if g.vertex_count() > limits.exact_vertex_limit {
        return Err(Error::capacity(
            format!("exact enumeration over {} vertices", g.vertex_count()),
            limits.exact_vertex_limit as u64,
        ));
    }
    Ok(())
}

pub(super) fn tallies_to_pmf(tally: Vec<u64>, total: u64) -> Pmf {
    let total = BigInt::from(total);
    Pmf::Exact {
        probabilities: tally
            .into_iter()
            .map(|c| Rational::new(BigInt::from(c), total.clone()))
            .collect(),
    }
}

pub(super) fn merge_tallies(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
    a
}

/// Exact law of the crossing count, by enumerating all `n!` embeddings.
pub fn exact_distribution(g: &Graph, limits: &Limits) -> Result<Pmf> {
    check_exact_limit(g, limits)?;
    let kernel = CrossingKernel::new(g, limits)?;
    let support = kernel.matching_count() + 1;
    let tally = fold_permutations(
        g.vertex_count(),
        || vec![0u64; support],
        |acc, pos| acc[kernel.count(pos)] += 1,
        merge_tallies,
    );
    Ok(tallies_to_pmf(tally, factorial(g.vertex_count())))
}

/// Closed-form law of the star-with-tail crossing count,
/// `P(X = k) = 2 (n - 2 - k) / ((n - 1)(n - 2))` for `k = 0..=n-2`.
pub fn star_tail_pmf(n: usize) -> Result<Pmf> {
    if n < 4 {
        return Err(Error::domain(format!(
            "star_with_tail requires n >= 4, got {n}"
        )));
    }
    let den = BigInt::from((n - 1) * (n - 2));
    Ok(Pmf::Exact {
        probabilities: (0..=n - 2)
            .map(|k| Rational::new(BigInt::from(2 * (n - 2 - k)), den.clone()))
            .collect(),
    })
}
