use crossing_core::matchings::PairClass;
use crossing_core::{
    classify_pair, count_crossings, count_matchings, edges_cross, enumerate_matchings,
    exact_distribution, exact_moments, pair_census, Embedding, Graph, Limits,
};
use num_bigint::BigUint;
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
            let edges = pairs
                .iter()
                .zip(mask)
                .filter_map(|(&e, keep)| keep.then_some(e));
            Graph::new(n, edges).unwrap()
        })
    })
}

fn graph_and_embedding(max_n: usize) -> impl Strategy<Value = (Graph, Embedding)> {
    graph_strategy(max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|(g, p)| (g, Embedding::new(p).unwrap()))
    })
}

fn has_four_cycle(g: &Graph) -> bool {
    let n = g.vertex_count();
    // two distinct vertices with two common neighbours
    (0..n).any(|a| (a + 1..n).any(|b| g.neighbors(a).intersection(g.neighbors(b)).count() >= 2))
}

fn degree_formula_m2(g: &Graph) -> BigUint {
    let m = g.edge_count() as u64;
    let touching: u64 = (0..g.vertex_count())
        .map(|v| {
            let d = g.degree(v) as u64;
            d * d.saturating_sub(1) / 2
        })
        .sum();
    BigUint::from(m * m.saturating_sub(1) / 2 - touching)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn crossings_invariant_under_rotation_and_reflection((g, emb) in graph_and_embedding(10), shift in 0usize..10) {
        let base = count_crossings(&g, &emb).unwrap();
        let n = g.vertex_count();
        prop_assert_eq!(count_crossings(&g, &emb.rotated(shift % n.max(1))).unwrap(), base);
        prop_assert_eq!(count_crossings(&g, &emb.reflected()).unwrap(), base);
        let m2 = count_matchings(&g, 2, &Limits::default()).unwrap();
        prop_assert!(BigUint::from(base) <= m2);
    }

    #[test]
    fn crossing_predicate_is_symmetric((g, emb) in graph_and_embedding(9)) {
        let mut total = 0;
        for e in 0..g.edge_count() {
            for f in 0..g.edge_count() {
                let (a, b) = g.edge(e);
                let (c, d) = g.edge(f);
                if e == f || a == c || a == d || b == c || b == d {
                    prop_assert!(edges_cross(&g, &emb, e, f).is_err());
                    continue;
                }
                let x = edges_cross(&g, &emb, e, f).unwrap();
                prop_assert_eq!(x, edges_cross(&g, &emb, f, e).unwrap());
                total += x as usize;
            }
        }
        prop_assert_eq!(total / 2, count_crossings(&g, &emb).unwrap());
    }

    #[test]
    fn census_identities_hold(g in graph_strategy(10)) {
        let lim = Limits::default();
        let census = pair_census(&g, &lim).unwrap();
        let m2 = count_matchings(&g, 2, &lim).unwrap();
        let m3 = count_matchings(&g, 3, &lim).unwrap();
        let m4 = count_matchings(&g, 4, &lim).unwrap();
        prop_assert_eq!(&m2, &degree_formula_m2(&g));
        for r in 1..=4 {
            let listed = enumerate_matchings(&g, r, &lim).unwrap().len();
            prop_assert_eq!(count_matchings(&g, r, &lim).unwrap(), BigUint::from(listed));
        }
        census.check_identities(&m2, &m3, &m4).unwrap();
        if !has_four_cycle(&g) {
            prop_assert_eq!(census.count(PairClass::C9), &BigUint::from(0u32));
        }
    }

    #[test]
    fn classification_is_symmetric(g in graph_strategy(9)) {
        let lim = Limits::default();
        let all = enumerate_matchings(&g, 2, &lim).unwrap();
        for i in &all {
            for j in &all {
                prop_assert_eq!(classify_pair(&g, i, j).unwrap(), classify_pair(&g, j, i).unwrap());
            }
        }
    }

    #[test]
    fn moments_match_enumeration(g in graph_strategy(7)) {
        let lim = Limits::default();
        let report = exact_moments(&g, &lim).unwrap();
        let pmf = exact_distribution(&g, &lim).unwrap();
        prop_assert_eq!(pmf.exact_mean().unwrap(), report.mean.clone());
        prop_assert_eq!(pmf.exact_variance().unwrap(), report.variance.clone());
        prop_assert!(report.variance >= crossing_core::Rational::from_integer(0.into()));
    }
}

#[test]
fn isolated_vertices_leave_the_law_unchanged() {
    let lim = Limits::default();
    for g in [
        Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap(),
        Graph::new(4, [(0, 1), (2, 3), (0, 2)]).unwrap(),
    ] {
        let base = exact_distribution(&g, &lim).unwrap();
        for extra in 1..=3 {
            let padded = exact_distribution(&g.with_isolated(extra), &lim).unwrap();
            assert!(
                base.same_law(&padded),
                "{extra} isolated vertices changed the law"
            );
        }
    }
}
