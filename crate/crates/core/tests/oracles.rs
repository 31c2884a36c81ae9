//! Exact formulas and samplers checked against independent enumeration.

use crossing_core::montecarlo::{block_rng, coupling_run};
use crossing_core::rational::ratio;
use crossing_core::verify;
use crossing_core::{
    closed_form_moments, empirical_distribution, exact_distribution, exact_moments,
    ks_distance_to_normal, make_family, normal_cdf, sample_embedding, size_bias_exact_law,
    star_tail_pmf, FamilyKind, Graph, GraphFamily, Limits, Pmf, Rational,
};
use num_bigint::BigInt;
use std::collections::HashMap;

fn family(kind: FamilyKind, n: usize) -> Graph {
    make_family(GraphFamily::new(kind, n).unwrap()).unwrap()
}

#[test]
fn curated_moments_equal_enumeration() {
    for check in verify::moment_checks(&Limits::default()).unwrap() {
        assert!(check.passed, "{}: {}", check.name, check.detail);
    }
}

#[test]
fn five_path_size_bias_law() {
    let lim = Limits::default();
    let g = family(FamilyKind::Path, 5);
    let law = exact_distribution(&g, &lim).unwrap();
    let biased = size_bias_exact_law(&g, &lim).unwrap();
    // m2 = 3, so P(X^s = k) = k P(X = k) * 3 / 3
    for k in 0..4 {
        let want = Rational::from_integer(BigInt::from(k)) * law.exact_probability(k).unwrap();
        assert_eq!(biased.exact_probability(k).unwrap(), want, "k={k}");
    }
}

#[test]
fn five_cycle_size_bias_mean() {
    let lim = Limits::default();
    let biased = size_bias_exact_law(&family(FamilyKind::Cycle, 5), &lim).unwrap();
    assert_eq!(biased.exact_mean().unwrap(), ratio(5, 2));
}

#[test]
fn size_bias_identity_on_small_graphs() {
    for check in verify::size_bias_checks(&Limits::default()).unwrap() {
        assert!(check.passed, "{}", check.name);
    }
}

#[test]
fn star_tail_matches_enumeration() {
    for check in verify::star_tail_checks(&Limits::default()).unwrap() {
        assert!(check.passed, "{}", check.name);
    }
    let p = star_tail_pmf(11).unwrap();
    let total: Rational = (0..p.len()).map(|k| p.exact_probability(k).unwrap()).sum();
    assert_eq!(total, ratio(1, 1));
}

#[test]
fn closed_forms_flagged_correctly() {
    for check in verify::closed_form_checks(&Limits::default()).unwrap() {
        assert!(check.passed, "{}: {}", check.name, check.detail);
    }
}

#[test]
fn closed_form_ranges() {
    let lim = Limits::default();
    let exact = |k, n| exact_moments(&family(k, n), &lim).unwrap();
    let cf = |k, n| closed_form_moments(GraphFamily::new(k, n).unwrap()).unwrap();
    for n in 2..=12 {
        let (c, e) = (cf(FamilyKind::Pairing, n), exact(FamilyKind::Pairing, n));
        assert_eq!(
            (c.mean.value, c.variance.value),
            (e.mean, e.variance),
            "pairing {n}"
        );
    }
    for n in 1..=8 {
        let (c, e) = (
            cf(FamilyKind::Triangles, n),
            exact(FamilyKind::Triangles, n),
        );
        assert_eq!(c.variance.value, e.variance, "triangles {n}");
    }
    for n in 5..=12 {
        assert_eq!(
            cf(FamilyKind::Path, n).variance.value,
            exact(FamilyKind::Path, n).variance
        );
        assert_eq!(
            cf(FamilyKind::Cycle, n).second_moment.value,
            exact(FamilyKind::Cycle, n).second_moment
        );
    }
    for n in 4..=12 {
        let (c, e) = (
            cf(FamilyKind::StarWithTail, n),
            exact(FamilyKind::StarWithTail, n),
        );
        assert_eq!(c.second_moment.value, e.second_moment);
        assert_eq!(c.variance.value, e.variance);
    }
}

#[test]
fn uniform_shuffles_on_three_vertices() {
    let g = Graph::new(3, []).unwrap();
    let mut rng = block_rng(11, 0);
    let mut freq: HashMap<Vec<usize>, u32> = HashMap::new();
    let samples = 600_000;
    for _ in 0..samples {
        *freq
            .entry(sample_embedding(&g, &mut rng).positions().to_vec())
            .or_default() += 1;
    }
    assert_eq!(freq.len(), 6);
    for (perm, count) in freq {
        let f = count as f64 / samples as f64;
        assert!((f - 1.0 / 6.0).abs() < 0.005, "{perm:?}: {f}");
    }
}

#[test]
fn sampling_is_deterministic() {
    let g = family(FamilyKind::Cycle, 9);
    let lim = Limits::default();
    let a = empirical_distribution(&g, 10_000, 7, &lim).unwrap();
    let b = empirical_distribution(&g, 10_000, 7, &lim).unwrap();
    assert_eq!(a, b);
    let single = empirical_distribution(&g, 1, 7, &lim).unwrap();
    assert_eq!(
        single.probabilities().iter().filter(|&&p| p == 1.0).count(),
        1
    );
    let mut r1 = block_rng(5, 2);
    let mut r2 = block_rng(5, 2);
    for _ in 0..50 {
        assert_eq!(sample_embedding(&g, &mut r1), sample_embedding(&g, &mut r2));
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let g = family(FamilyKind::Path, 12);
    let lim = Limits::default();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                (
                    empirical_distribution(&g, 20_000, 99, &lim).unwrap(),
                    coupling_run(&g, 20_000, 99, &lim).unwrap(),
                    exact_moments(&g, &lim).unwrap(),
                )
            })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn empirical_error_shrinks_with_samples() {
    let g = family(FamilyKind::Cycle, 8);
    let lim = Limits::default();
    let exact = 20.0 / 3.0;
    let rms = |samples| {
        let sq: f64 = (0..24)
            .map(|seed| {
                let m = empirical_distribution(&g, samples, seed, &lim)
                    .unwrap()
                    .mean();
                (m - exact).powi(2)
            })
            .sum();
        (sq / 24.0).sqrt()
    };
    let small = rms(2_000);
    let large = rms(8_000);
    // 4x the samples should roughly halve the error
    assert!(large < 0.8 * small, "rms {small} -> {large}");
}

/// Brute-force Kolmogorov distance: `F` evaluated by direct summation, probed just
/// left of and at every atom.
fn brute_ks(probs: &[f64], mean: f64, sigma: f64) -> f64 {
    let cdf = |z: f64| -> f64 {
        probs
            .iter()
            .enumerate()
            .filter(|(k, _)| (*k as f64 - mean) / sigma <= z)
            .map(|(_, p)| p)
            .sum()
    };
    let mut sup = 0.0f64;
    for k in 0..probs.len() {
        let w = (k as f64 - mean) / sigma;
        for z in [w - 1e-11, w] {
            sup = sup.max((cdf(z) - normal_cdf(z)).abs());
        }
    }
    sup
}

#[test]
fn star_tail_is_far_from_normal_at_eight() {
    let pmf = star_tail_pmf(8).unwrap();
    let (mean, sigma) = (5.0 / 3.0, (8.0f64 * 5.0 / 18.0).sqrt());
    let ks = ks_distance_to_normal(&pmf, mean, sigma).unwrap();
    let oracle = brute_ks(&pmf.probabilities(), mean, sigma);
    assert!((ks - oracle).abs() < 1e-9, "{ks} vs {oracle}");
    // frozen from an independent double-precision evaluation with math.erfc
    assert!((ks - 0.196_449_100_800_235_2).abs() < 1e-12);
    assert!(ks > 0.1);
}

#[test]
fn ks_of_empirical_pairing_matches_brute_force() {
    let g = family(FamilyKind::Pairing, 12);
    let pmf = empirical_distribution(&g, 30_000, 1, &Limits::default()).unwrap();
    let (mean, sigma) = (22.0, (12.0f64 * 11.0 * 15.0 / 45.0).sqrt());
    let ks = ks_distance_to_normal(&pmf, mean, sigma).unwrap();
    assert!((ks - brute_ks(&pmf.probabilities(), mean, sigma)).abs() < 1e-9);
    assert!(matches!(
        pmf,
        Pmf::Empirical {
            samples: 30_000,
            ..
        }
    ));
}
