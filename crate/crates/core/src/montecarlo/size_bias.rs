//! The size-bias coupling of the crossing count.
//!
//! Draw a uniform embedding and, independently, a uniform 2-matching `I = {e, f}`.
//! If `I` already crosses the embedding is kept. Otherwise the four endpoint
//! slots read `e f f e` cyclically from a unique starting point; calling those
//! vertices `u1 v1 v2 u2`, a uniformly chosen vertex decides which pair is swapped:
//! `u1` or `v1` swaps the slots of `v2` and `u2`, `v2` or `u2` swaps `v1` and `u1`.
//! Either swap makes `I` cross.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;
use crate::permutations::{factorial, fold_permutations};

use super::exact::{check_exact_limit, merge_tallies, tallies_to_pmf};
use super::sampling::{block_rng, BLOCK_SAMPLES};
use super::{CrossingKernel, Pmf};

/// One draw of the coupled pair `(X, X^s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoupledSample {
    pub x: usize,
    pub xs: usize,
    /// Index of `I` among the lexicographically ordered 2-matchings.
    pub matching_index: usize,
    /// Whether slots were swapped to force `I` to cross.
    pub repaired: bool,
}

/// Swap performed on a non-crossing 2-matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Repair {
    /// `u1` or `v1` was chosen.
    SwapTail,
    /// `v2` or `u2` was chosen.
    SwapHead,
}

/// The vertices `[u1, v1, v2, u2]` of a non-crossing 2-matching `(a, b), (c, d)`,
/// listed in the cyclic slot order that reads `e f f e`.
fn cyclic_labels(positions: &[usize], quad: [u32; 4]) -> [usize; 4] {
    let mut ends = [
        (positions[quad[0] as usize], quad[0] as usize, true),
        (positions[quad[1] as usize], quad[1] as usize, true),
        (positions[quad[2] as usize], quad[2] as usize, false),
        (positions[quad[3] as usize], quad[3] as usize, false),
    ];
    ends.sort_unstable();
    let start = (0..4)
        .find(|&r| ends[r].2 && !ends[(r + 1) % 4].2 && !ends[(r + 2) % 4].2 && ends[(r + 3) % 4].2)
        .expect("non-crossing 2-matching has an e f f e rotation");
    std::array::from_fn(|k| ends[(start + k) % 4].1)
}

fn apply_repair(positions: &mut [usize], labels: [usize; 4], repair: Repair) {
    let [u1, v1, v2, u2] = labels;
    match repair {
        Repair::SwapTail => positions.swap(v2, u2),
        Repair::SwapHead => positions.swap(v1, u1),
    }
}

/// Draws coupled samples for a fixed graph.
#[derive(Debug, Clone)]
pub struct SizeBiasSampler {
    kernel: CrossingKernel,
    vertex_count: usize,
    gap_bound: usize,
}

impl SizeBiasSampler {
    pub fn new(g: &Graph, limits: &Limits) -> Result<Self> {
        let kernel = CrossingKernel::new(g, limits)?;
        if kernel.matching_count() == 0 {
            return Err(Error::domain(
                "size-bias coupling needs at least one 2-matching",
            ));
        }
        Ok(SizeBiasSampler {
            kernel,
            vertex_count: g.vertex_count(),
            gap_bound: 2 * g.max_degree() * (g.edge_count() - 1),
        })
    }

    /// `2 Δ (m - 1)`, the largest possible `|X^s - X|`.
    pub fn gap_bound(&self) -> usize {
        self.gap_bound
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> CoupledSample {
        let mut positions: Vec<usize> = (0..self.vertex_count).collect();
        positions.shuffle(rng);
        self.sample_from(&mut positions, rng)
    }

    /// Couples the embedding in `positions`, which is left holding `π^s`.
    fn sample_from<R: Rng + ?Sized>(&self, positions: &mut [usize], rng: &mut R) -> CoupledSample {
        let x = self.kernel.count(positions);
        let index = rng.random_range(0..self.kernel.matching_count());
        if self.kernel.crosses(positions, index) {
            return CoupledSample {
                x,
                xs: x,
                matching_index: index,
                repaired: false,
            };
        }
        let labels = cyclic_labels(positions, self.kernel.quads()[index]);
        let repair = if rng.random_range(0..4) < 2 {
            Repair::SwapTail
        } else {
            Repair::SwapHead
        };
        apply_repair(positions, labels, repair);
        debug_assert!(self.kernel.crosses(positions, index));
        let xs = self.kernel.count(positions);
        debug_assert!(xs.abs_diff(x) <= self.gap_bound);
        CoupledSample {
            x,
            xs,
            matching_index: index,
            repaired: true,
        }
    }
}

/// One coupled draw; builds a sampler for `g` on every call.
pub fn size_bias_sample<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<CoupledSample> {
    Ok(SizeBiasSampler::new(g, &Limits::default())?.sample(rng))
}

/// Exact law of `X^s` produced by the coupling, summing over every embedding,
/// every 2-matching and every repair choice.
pub fn size_bias_exact_law(g: &Graph, limits: &Limits) -> Result<Pmf> {
    check_exact_limit(g, limits)?;
    let sampler = SizeBiasSampler::new(g, limits)?;
    let kernel = &sampler.kernel;
    let m2 = kernel.matching_count();
    let tally = fold_permutations(
        g.vertex_count(),
        || vec![0u64; m2 + 1],
        |acc, pos| {
            let x = kernel.count(pos);
            let mut work = pos.to_vec();
            for index in 0..m2 {
                if kernel.crosses(pos, index) {
                    acc[x] += 4;
                    continue;
                }
                let labels = cyclic_labels(pos, kernel.quads()[index]);
                // each repair is chosen by two of the four vertices
                for repair in [Repair::SwapTail, Repair::SwapHead] {
                    apply_repair(&mut work, labels, repair);
                    acc[kernel.count(&work)] += 2;
                    apply_repair(&mut work, labels, repair);
                }
            }
        },
        merge_tallies,
    );
    Ok(tallies_to_pmf(
        tally,
        factorial(g.vertex_count()) * m2 as u64 * 4,
    ))
}

/// Aggregate of a seeded run of coupled samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingSummary {
    pub samples: u64,
    pub gap_bound: usize,
    pub max_gap: usize,
    /// Samples with `|X^s - X|` above the bound.
    pub violations: u64,
    pub repaired: u64,
    pub mean_x: f64,
    pub mean_xs: f64,
}

/// Draws `samples` coupled pairs using the same block substreams as
/// [`super::empirical_distribution`].
pub fn coupling_run(
    g: &Graph,
    samples: u64,
    seed: u64,
    limits: &Limits,
) -> Result<CouplingSummary> {
    if samples == 0 {
        return Err(Error::domain("at least one sample is required"));
    }
    let sampler = SizeBiasSampler::new(g, limits)?;
    let bound = sampler.gap_bound();
    let blocks = samples.div_ceil(BLOCK_SAMPLES);
    // (max gap, violations, repaired, sum x, sum xs)
    let (max_gap, violations, repaired, sum_x, sum_xs) = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = block_rng(seed, b);
            let mut acc = (0usize, 0u64, 0u64, 0u64, 0u64);
            for _ in 0..BLOCK_SAMPLES.min(samples - b * BLOCK_SAMPLES) {
                let s = sampler.sample(&mut rng);
                let gap = s.xs.abs_diff(s.x);
                acc.0 = acc.0.max(gap);
                acc.1 += (gap > bound) as u64;
                acc.2 += s.repaired as u64;
                acc.3 += s.x as u64;
                acc.4 += s.xs as u64;
            }
            acc
        })
        .reduce(
            || (0, 0, 0, 0, 0),
            |a, b| (a.0.max(b.0), a.1 + b.1, a.2 + b.2, a.3 + b.3, a.4 + b.4),
        );
    Ok(CouplingSummary {
        samples,
        gap_bound: bound,
        max_gap,
        violations,
        repaired,
        mean_x: sum_x as f64 / samples as f64,
        mean_xs: sum_xs as f64 / samples as f64,
    })
}
