//! Exact mean, second moment and variance of the crossing count.
//!
//! Writing `X` as a sum of crossing indicators over 2-matchings, `E[X] = m2 / 3`
//! and `E[X^2]` is the census of ordered 2-matching pairs weighted by the
//! probability that both members cross, which depends only on the pair class.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{slots_alternate, Graph};
use crate::limits::Limits;
use crate::matchings::{pair_census, PairCensus, PairClass};
use crate::permutations::fold_permutations;
use crate::rational::{from_int, from_uint, ratio, Rational};

/// Probability that both 2-matchings of a pair of the given class cross.
pub fn class_probability(class: PairClass) -> Rational {
    match class {
        PairClass::C1 => ratio(1, 9),
        PairClass::C2 => ratio(1, 9),
        PairClass::C3 => ratio(2, 15),
        PairClass::C4 => ratio(7, 60),
        PairClass::C5 => ratio(1, 10),
        PairClass::C6 => ratio(1, 12),
        PairClass::C7 => ratio(1, 6),
        PairClass::C8 => ratio(1, 3),
        PairClass::C9 => Rational::zero(),
    }
}

/// Two disjoint vertex pairs forming a 2-matching.
pub type PairMatching = [(usize, usize); 2];

/// Smallest graph realizing `class`, with the two 2-matchings as vertex pairs.
pub fn class_representative(class: PairClass) -> (usize, PairMatching, PairMatching) {
    match class {
        PairClass::C1 => (8, [(0, 1), (2, 3)], [(4, 5), (6, 7)]),
        PairClass::C2 => (7, [(0, 1), (2, 3)], [(3, 4), (5, 6)]),
        PairClass::C3 => (6, [(0, 1), (2, 3)], [(0, 1), (4, 5)]),
        PairClass::C4 => (6, [(0, 1), (3, 4)], [(1, 2), (4, 5)]),
        PairClass::C5 => (6, [(0, 1), (2, 3)], [(1, 2), (4, 5)]),
        PairClass::C6 => (5, [(0, 1), (2, 3)], [(1, 2), (3, 4)]),
        PairClass::C7 => (5, [(0, 1), (2, 3)], [(0, 1), (3, 4)]),
        PairClass::C8 => (4, [(0, 1), (2, 3)], [(0, 1), (2, 3)]),
        PairClass::C9 => (4, [(0, 1), (2, 3)], [(1, 2), (0, 3)]),
    }
}

/// Recomputes [`class_probability`] by enumerating every placement of the class
/// representative's vertices and counting those where both 2-matchings cross.
pub fn verify_class_probability(class: PairClass) -> Rational {
    let (n, i, j) = class_representative(class);
    let crosses = |pos: &[usize], m: &[(usize, usize); 2]| {
        slots_alternate(pos[m[0].0], pos[m[0].1], pos[m[1].0], pos[m[1].1])
    };
    let (both, total) = fold_permutations(
        n,
        || (0u64, 0u64),
        |acc, pos| {
            acc.1 += 1;
            if crosses(pos, &i) && crosses(pos, &j) {
                acc.0 += 1;
            }
        },
        |a, b| (a.0 + b.0, a.1 + b.1),
    );
    Rational::new(BigInt::from(both), BigInt::from(total))
}

/// Exact moments of the crossing count of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    pub mean: Rational,
    pub second_moment: Rational,
    pub variance: Rational,
    pub census: PairCensus,
    pub m2: BigUint,
    pub m3: BigUint,
    pub m4: BigUint,
    pub max_degree: usize,
    pub edge_count: usize,
}

/// Mean, second moment and variance from the pair census.
pub fn exact_moments(g: &Graph, limits: &Limits) -> Result<MomentReport> {
    let census = pair_census(g, limits)?;
    let m2 = census.count(PairClass::C8).clone();
    let m3 = census.subgraphs(PairClass::C3);
    let m4 = census.subgraphs(PairClass::C1);
    let mean = from_uint(&m2) / from_int(3);
    let second_moment = PairClass::ALL
        .iter()
        .map(|&c| from_uint(census.count(c)) * class_probability(c))
        .fold(Rational::zero(), |acc, t| acc + t);
    let variance = &second_moment - &mean * &mean;
    debug_assert!(!variance.is_negative());
    Ok(MomentReport {
        mean,
        second_moment,
        variance,
        census,
        m2,
        m3,
        m4,
        max_degree: g.max_degree(),
        edge_count: g.edge_count(),
    })
}

/// `E[X^2]` as the weighted sum of matching and subgraph counts
/// `6/9 m4 + 4/5 m3 + 1/3 m2 + 4/9 S2 + 7/15 S4 + 1/5 S5 + 1/6 S6 + 1/3 S7`,
/// with `S_k` recovered from the census by dividing out pair multiplicities.
pub fn subgraph_formula_second_moment(census: &PairCensus) -> Rational {
    let s = |c: PairClass| from_uint(&census.subgraphs(c));
    ratio(6, 9) * s(PairClass::C1)
        + ratio(4, 5) * s(PairClass::C3)
        + ratio(1, 3) * s(PairClass::C8)
        + ratio(4, 9) * s(PairClass::C2)
        + ratio(7, 15) * s(PairClass::C4)
        + ratio(1, 5) * s(PairClass::C5)
        + ratio(1, 6) * s(PairClass::C6)
        + ratio(1, 3) * s(PairClass::C7)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// Disjoint copies of K2.
    Pairing,
    Path,
    Cycle,
    /// Disjoint copies of K3.
    Triangles,
    /// Star on `n - 1` vertices with a pendant edge hung off one leaf.
    StarWithTail,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 5] = [
        FamilyKind::Pairing,
        FamilyKind::Path,
        FamilyKind::Cycle,
        FamilyKind::Triangles,
        FamilyKind::StarWithTail,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Pairing => "pairing",
            FamilyKind::Path => "path",
            FamilyKind::Cycle => "cycle",
            FamilyKind::Triangles => "triangles",
            FamilyKind::StarWithTail => "star_with_tail",
        }
    }

    fn min_size(self) -> usize {
        match self {
            FamilyKind::Pairing | FamilyKind::Path | FamilyKind::Triangles => 1,
            FamilyKind::Cycle => 3,
            FamilyKind::StarWithTail => 4,
        }
    }

    /// Smallest size for which the closed-form polynomials apply.
    fn min_closed_form_size(self) -> usize {
        match self {
            FamilyKind::Path => 4,
            FamilyKind::Cycle => 5,
            other => other.min_size(),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown graph family {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GraphFamily {
    pub kind: FamilyKind,
    pub size: usize,
}

impl GraphFamily {
    pub fn new(kind: FamilyKind, size: usize) -> Result<Self> {
        if size < kind.min_size() {
            return Err(Error::domain(format!(
                "{kind} requires size >= {}, got {size}",
                kind.min_size()
            )));
        }
        Ok(GraphFamily { kind, size })
    }
}

/// Builds the named family member.
pub fn make_family(family: GraphFamily) -> Result<Graph> {
    let GraphFamily { kind, size: n } = GraphFamily::new(family.kind, family.size)?;
    match kind {
        FamilyKind::Pairing => Graph::new(2 * n, (0..n).map(|i| (2 * i, 2 * i + 1))),
        FamilyKind::Path => Graph::new(n, (1..n).map(|i| (i - 1, i))),
        FamilyKind::Cycle => Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))),
        FamilyKind::Triangles => Graph::new(
            3 * n,
            (0..n).flat_map(|t| {
                let b = 3 * t;
                [(b, b + 1), (b + 1, b + 2), (b, b + 2)]
            }),
        ),
        FamilyKind::StarWithTail => Graph::new(
            n,
            (1..n - 1)
                .map(|i| (0, i))
                .chain(std::iter::once((n - 2, n - 1))),
        ),
    }
}

/// Whether a published closed form agrees with the exact computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trust {
    Verified,
    /// Contradicts the exact moments; kept for reference only.
    Disputed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormValue {
    pub value: Rational,
    pub trust: Trust,
}

/// Published closed-form statistics of a family member.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormMoments {
    pub family: GraphFamily,
    pub mean: ClosedFormValue,
    pub second_moment: ClosedFormValue,
    pub variance: ClosedFormValue,
    pub m2: BigUint,
    pub m3: BigUint,
    pub m4: BigUint,
    pub edge_count: usize,
    pub max_degree: usize,
}

impl ClosedFormMoments {
    /// The variance, derived from the second moment when the printed variance is disputed.
    pub fn trusted_variance(&self) -> Rational {
        match self.variance.trust {
            Trust::Verified => self.variance.value.clone(),
            Trust::Disputed => &self.second_moment.value - &self.mean.value * &self.mean.value,
        }
    }

    pub fn trusted_second_moment(&self) -> Rational {
        match self.second_moment.trust {
            Trust::Verified => self.second_moment.value.clone(),
            Trust::Disputed => &self.variance.value + &self.mean.value * &self.mean.value,
        }
    }
}

fn binom(n: i64, k: i64) -> BigUint {
    if k < 0 || n < k {
        return BigUint::zero();
    }
    (0..k).fold(BigUint::one(), |acc, i| {
        acc * BigUint::from((n - i) as u64) / BigUint::from((i + 1) as u64)
    })
}

/// Evaluates `sum coeffs[k] * n^k` with rational coefficients `(num, den)`.
fn poly(n: usize, coeffs: &[(i64, i64)]) -> Rational {
    let x = from_int(n as i64);
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, &(p, q)| acc * &x + ratio(p, q))
}

/// The family's closed-form mean, second moment and variance, each flagged by
/// whether it matches the exact moments.
pub fn closed_form_moments(family: GraphFamily) -> Result<ClosedFormMoments> {
    let GraphFamily { kind, size: n } = GraphFamily::new(family.kind, family.size)?;
    if n < kind.min_closed_form_size() {
        return Err(Error::domain(format!(
            "closed forms for {kind} hold for size >= {}, got {n}",
            kind.min_closed_form_size()
        )));
    }
    let ni = n as i64;
    let ok = |value| ClosedFormValue {
        value,
        trust: Trust::Verified,
    };
    let disputed = |value| ClosedFormValue {
        value,
        trust: Trust::Disputed,
    };
    // coefficients listed from the constant term upward
    let (mean, second, variance, [m2, m3, m4], edges, degree) = match kind {
        FamilyKind::Pairing => (
            ratio(ni * (ni - 1), 6),
            ok(poly(n, &[(0, 1), (-1, 15), (13, 180), (-1, 30), (1, 36)])),
            ok(Rational::new(
                BigInt::from(ni * (ni - 1) * (ni + 3)),
                BigInt::from(45),
            )),
            [binom(ni, 2), binom(ni, 3), binom(ni, 4)],
            n,
            1,
        ),
        FamilyKind::Path => (
            from_uint(&binom(ni - 2, 2)) / from_int(3),
            disputed(poly(n, &[(-5, 3), (-86, 45), (35, 36), (-23, 90), (1, 36)])),
            ok(poly(n, &[(2, 3), (-11, 45), (-1, 18), (1, 45)])),
            [binom(ni - 2, 2), binom(ni - 3, 3), binom(ni - 4, 4)],
            n - 1,
            2,
        ),
        FamilyKind::Cycle => {
            let cycle_matchings =
                |r: i64| BigUint::from(n) * binom(ni - r - 1, r - 1) / BigUint::from(r as u64);
            (
                ratio(ni * (ni - 3), 6),
                ok(poly(n, &[(0, 1), (-1, 3), (47, 180), (-13, 90), (1, 36)])),
                disputed(poly(n, &[(0, 1), (-1, 3), (-1, 90), (1, 45)])),
                [cycle_matchings(2), cycle_matchings(3), cycle_matchings(4)],
                n,
                2,
            )
        }
        FamilyKind::Triangles => (
            ratio(3 * ni * (ni - 1), 2),
            ok(poly(n, &[(0, 1), (-9, 10), (51, 20), (-39, 10), (9, 4)])),
            ok(poly(n, &[(0, 1), (-9, 10), (3, 10), (3, 5)])),
            [
                binom(ni, 2) * 9u32,
                binom(ni, 3) * 27u32,
                binom(ni, 4) * 81u32,
            ],
            3 * n,
            2,
        ),
        FamilyKind::StarWithTail => (
            ratio(ni - 3, 3),
            ok(ratio((ni - 2) * (ni - 3), 6)),
            ok(ratio(ni * (ni - 3), 18)),
            [BigUint::from(n - 3), BigUint::zero(), BigUint::zero()],
            n - 1,
            n - 2,
        ),
    };
    Ok(ClosedFormMoments {
        family: GraphFamily { kind, size: n },
        mean: ok(mean),
        second_moment: second,
        variance,
        m2,
        m3,
        m4,
        edge_count: edges,
        max_degree: degree,
    })
}
