use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Embedding, Graph};
use crate::limits::Limits;

use super::{CrossingKernel, Pmf};

/// Samples drawn from one random substream.
pub const BLOCK_SAMPLES: u64 = 4096;

/// Random source for block `block` of a run seeded with `seed`: ChaCha8 keyed by
/// `seed` (via `seed_from_u64`) on stream number `block`. Blocks never share a
/// stream, so the output does not depend on how blocks map to threads.
pub fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

/// Uniform embedding by a Fisher-Yates shuffle of the slots.
pub fn sample_embedding<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Embedding {
    let mut positions: Vec<usize> = (0..g.vertex_count()).collect();
    positions.shuffle(rng);
    Embedding::from_permutation_unchecked(positions)
}

/// Frequency table of the crossing count over `samples` uniform embeddings.
pub fn empirical_distribution(g: &Graph, samples: u64, seed: u64, limits: &Limits) -> Result<Pmf> {
    if samples == 0 {
        return Err(Error::domain("at least one sample is required"));
    }
    let kernel = CrossingKernel::new(g, limits)?;
    let support = kernel.matching_count() + 1;
    let n = g.vertex_count();
    let blocks = samples.div_ceil(BLOCK_SAMPLES);
    let counts = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = block_rng(seed, b);
            let mut tally = vec![0u64; support];
            let mut positions: Vec<usize> = (0..n).collect();
            let todo = BLOCK_SAMPLES.min(samples - b * BLOCK_SAMPLES);
            for _ in 0..todo {
                positions.shuffle(&mut rng);
                tally[kernel.count(&positions)] += 1;
            }
            tally
        })
        .reduce(
            || vec![0u64; support],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(Pmf::Empirical { counts, samples })
}
