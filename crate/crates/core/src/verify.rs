//! Self-checks that compare every exact formula against exhaustive enumeration.

use num_bigint::BigInt;

use crate::error::Result;
use crate::graph::Graph;
use crate::limits::Limits;
use crate::matchings::PairClass;
use crate::moments::{
    class_probability, closed_form_moments, exact_moments, make_family, verify_class_probability,
    FamilyKind, GraphFamily, Trust,
};
use crate::montecarlo::{exact_distribution, size_bias_exact_law, star_tail_pmf};
use crate::rational::{fraction_string, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

fn family(kind: FamilyKind, n: usize) -> Result<Graph> {
    make_family(GraphFamily::new(kind, n)?)
}

/// Small graphs whose moments are cross-checked by enumeration.
pub fn curated_graphs() -> Result<Vec<(String, Graph)>> {
    let mut out = Vec::new();
    for n in 4..=7 {
        out.push((format!("path({n})"), family(FamilyKind::Path, n)?));
        out.push((format!("cycle({n})"), family(FamilyKind::Cycle, n)?));
    }
    for n in 2..=3 {
        out.push((format!("pairing({n})"), family(FamilyKind::Pairing, n)?));
    }
    for n in 1..=2 {
        out.push((format!("triangles({n})"), family(FamilyKind::Triangles, n)?));
    }
    for n in 5..=7 {
        out.push((
            format!("star_with_tail({n})"),
            family(FamilyKind::StarWithTail, n)?,
        ));
    }
    out.push(("K4".into(), complete(4)));
    out.push(("K5".into(), complete(5)));
    Ok(out)
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        .expect("valid complete graph")
}

pub fn class_probability_checks() -> Vec<CheckResult> {
    PairClass::ALL
        .iter()
        .map(|&c| {
            let got = verify_class_probability(c);
            let want = class_probability(c);
            check(
                format!("class probability {c}"),
                got == want,
                format!(
                    "enumerated {} table {}",
                    fraction_string(&got),
                    fraction_string(&want)
                ),
            )
        })
        .collect()
}

pub fn moment_checks(limits: &Limits) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for (name, g) in curated_graphs()? {
        let report = exact_moments(&g, limits)?;
        let pmf = exact_distribution(&g, limits)?;
        let mean = pmf.exact_mean().expect("exact pmf");
        let variance = pmf.exact_variance().expect("exact pmf");
        out.push(check(
            format!("moments {name}"),
            mean == report.mean && variance == report.variance,
            format!(
                "census mean {} var {}, enumeration mean {} var {}",
                fraction_string(&report.mean),
                fraction_string(&report.variance),
                fraction_string(&mean),
                fraction_string(&variance)
            ),
        ));
    }
    Ok(out)
}

pub fn size_bias_checks(limits: &Limits) -> Result<Vec<CheckResult>> {
    let cases = [
        ("path(5)", family(FamilyKind::Path, 5)?),
        ("cycle(5)", family(FamilyKind::Cycle, 5)?),
        ("pairing(3)", family(FamilyKind::Pairing, 3)?),
        ("star_with_tail(6)", family(FamilyKind::StarWithTail, 6)?),
    ];
    let mut out = Vec::new();
    for (name, g) in cases {
        let law = exact_distribution(&g, limits)?;
        let biased = size_bias_exact_law(&g, limits)?;
        let mean = law.exact_mean().expect("exact pmf");
        let len = law.len().max(biased.len());
        let holds = (0..len).all(|k| {
            &mean * biased.exact_probability(k).unwrap()
                == Rational::from_integer(BigInt::from(k)) * law.exact_probability(k).unwrap()
        });
        out.push(check(
            format!("size-bias identity {name}"),
            holds,
            "mu P(X^s = k) = k P(X = k) for every k",
        ));
    }
    Ok(out)
}

pub fn star_tail_checks(limits: &Limits) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for n in 5..=8 {
        let closed = star_tail_pmf(n)?;
        let enumerated = exact_distribution(&family(FamilyKind::StarWithTail, n)?, limits)?;
        out.push(check(
            format!("star-tail pmf n={n}"),
            closed.same_law(&enumerated),
            "closed form vs enumeration",
        ));
    }
    Ok(out)
}

/// Verified closed forms must match the census moments; disputed ones must not.
pub fn closed_form_checks(limits: &Limits) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for kind in FamilyKind::ALL {
        for n in 5..=9 {
            let cf = closed_form_moments(GraphFamily::new(kind, n)?)?;
            let exact = exact_moments(&family(kind, n)?, limits)?;
            let agrees = |value: &Rational, trust: Trust, truth: &Rational| match trust {
                Trust::Verified => value == truth,
                Trust::Disputed => value != truth,
            };
            let ok = agrees(&cf.mean.value, cf.mean.trust, &exact.mean)
                && agrees(
                    &cf.second_moment.value,
                    cf.second_moment.trust,
                    &exact.second_moment,
                )
                && agrees(&cf.variance.value, cf.variance.trust, &exact.variance)
                && cf.trusted_variance() == exact.variance
                && cf.m2 == exact.m2
                && cf.m3 == exact.m3
                && cf.m4 == exact.m4;
            out.push(check(
                format!("closed form {kind}({n})"),
                ok,
                format!("exact variance {}", fraction_string(&exact.variance)),
            ));
        }
    }
    Ok(out)
}

/// Every check, in a fixed order.
pub fn run_all(limits: &Limits) -> Result<Vec<CheckResult>> {
    let mut out = class_probability_checks();
    out.extend(moment_checks(limits)?);
    out.extend(size_bias_checks(limits)?);
    out.extend(star_tail_checks(limits)?);
    out.extend(closed_form_checks(limits)?);
    Ok(out)
}
