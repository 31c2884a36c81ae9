//! Work caps shared by the enumeration routines.

use std::env;

pub const PAIR_CAP_ENV: &str = "CROSSINGS_PAIR_CAP";
pub const MATCHING_CAP_ENV: &str = "CROSSINGS_MATCHING_CAP";
pub const EXACT_LIMIT_ENV: &str = "CROSSINGS_EXACT_LIMIT";

pub const DEFAULT_PAIR_CAP: u64 = 1_000_000_000;
pub const DEFAULT_MATCHING_CAP: u64 = 200_000_000;
pub const DEFAULT_EXACT_LIMIT: usize = 10;

/// Upper bounds on the amount of combinatorial work a call may perform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of ordered 2-matching pairs classified by the census.
    pub pair_cap: u64,
    /// Maximum number of matchings materialized, or search nodes visited when counting.
    pub matching_cap: u64,
    /// Largest vertex count accepted by full permutation enumeration.
    pub exact_vertex_limit: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            pair_cap: DEFAULT_PAIR_CAP,
            matching_cap: DEFAULT_MATCHING_CAP,
            exact_vertex_limit: DEFAULT_EXACT_LIMIT,
        }
    }
}

impl Limits {
    /// Defaults, overridden by `CROSSINGS_PAIR_CAP`, `CROSSINGS_MATCHING_CAP` and
    /// `CROSSINGS_EXACT_LIMIT` when those are set to valid integers.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(v) = read_env(PAIR_CAP_ENV) {
            limits.pair_cap = v;
        }
        if let Some(v) = read_env(MATCHING_CAP_ENV) {
            limits.matching_cap = v;
        }
        if let Some(v) = read_env(EXACT_LIMIT_ENV) {
            limits.exact_vertex_limit = v as usize;
        }
        limits
    }

    pub fn with_pair_cap(mut self, cap: u64) -> Self {
        self.pair_cap = cap;
        self
    }

    pub fn with_matching_cap(mut self, cap: u64) -> Self {
        self.matching_cap = cap;
        self
    }

    pub fn with_exact_vertex_limit(mut self, limit: usize) -> Self {
        self.exact_vertex_limit = limit;
        self
    }
}

fn read_env(key: &str) -> Option<u64> {
    env::var(key).ok()?.trim().replace('_', "").parse().ok()
}
