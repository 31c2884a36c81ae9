//! Lexicographic permutation enumeration split into fixed-size rank blocks.

use rayon::prelude::*;

/// Permutations per parallel block.
const BLOCK: u64 = 5040;

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Rearranges `perm` into its lexicographic successor; false once it was the last.
pub fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// The permutation of `0..n` with lexicographic rank `rank`.
pub fn unrank(n: usize, mut rank: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for k in (0..n).rev() {
        let f = factorial(k);
        let idx = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(idx));
    }
    out
}

/// Folds every permutation of `0..n` into a per-block accumulator and merges the
/// accumulators. The result does not depend on the rayon thread count as long as
/// `merge` is associative and commutative.
pub fn fold_permutations<T, F, M>(n: usize, init: impl Fn() -> T + Sync, visit: F, merge: M) -> T
where
    T: Send,
    F: Fn(&mut T, &[usize]) + Sync,
    M: Fn(T, T) -> T + Sync + Send,
{
    let total = factorial(n);
    let blocks = total.div_ceil(BLOCK);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut acc = init();
            let start = b * BLOCK;
            let end = (start + BLOCK).min(total);
            let mut perm = unrank(n, start);
            for r in start..end {
                visit(&mut acc, &perm);
                if r + 1 < end {
                    next_permutation(&mut perm);
                }
            }
            acc
        })
        .reduce(&init, &merge)
}
