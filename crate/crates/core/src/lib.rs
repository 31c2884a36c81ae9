//! Crossings of graphs embedded uniformly at random on points in convex position.
//!
//! The crate computes the exact mean and variance of the crossing count from a
//! census of 2-matching pairs, evaluates the size-bias Kolmogorov bound, and
//! checks both against exhaustive enumeration and seeded simulation.

pub mod bounds;
pub mod error;
pub mod graph;
pub mod limits;
pub mod matchings;
pub mod moments;
pub mod montecarlo;
pub mod permutations;
pub mod rational;
pub mod verify;

pub use bounds::{kolmogorov_bound, psi_variance_bound, BoundInputs, BoundReport};
pub use error::{Error, Result};
pub use graph::{count_crossings, edges_cross, parse_edge_list, Embedding, Graph};
pub use limits::Limits;
pub use matchings::{
    classify_pair, count_matchings, enumerate_matchings, pair_census, Matching, PairCensus,
    PairClass,
};
pub use moments::{
    class_probability, closed_form_moments, exact_moments, make_family, verify_class_probability,
    ClosedFormMoments, FamilyKind, GraphFamily, MomentReport, Trust,
};
pub use montecarlo::{
    empirical_distribution, exact_distribution, ks_distance_to_normal, normal_cdf,
    sample_embedding, size_bias_exact_law, size_bias_sample, star_tail_pmf, CoupledSample, Pmf,
};
pub use rational::Rational;
