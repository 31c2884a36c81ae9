//! r-matchings and the census of ordered pairs of 2-matchings.
//!
//! Every ordered pair `(i, j)` of 2-matchings falls into exactly one of nine
//! configuration classes, decided by how many edges and vertices the two share.
//! The probability that both members of a pair cross depends only on the class,
//! so the class census is all the second moment needs.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;

/// A set of pairwise vertex-disjoint edges, as strictly increasing edge indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    edges: Vec<usize>,
}

impl Matching {
    /// Validates that `edges` index pairwise vertex-disjoint edges of `g`.
    pub fn new(g: &Graph, mut edges: Vec<usize>) -> Result<Self> {
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::contract("matching repeats an edge"));
        }
        let mut used = vec![false; g.vertex_count()];
        for &e in &edges {
            if e >= g.edge_count() {
                return Err(Error::contract(format!("edge index {e} out of range")));
            }
            let (u, v) = g.edge(e);
            if std::mem::replace(&mut used[u], true) || std::mem::replace(&mut used[v], true) {
                return Err(Error::contract(
                    "edges of a matching must be vertex-disjoint",
                ));
            }
        }
        Ok(Matching { edges })
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }
}

/// Configuration class of an ordered pair of 2-matchings.
///
/// `C9` is two 2-matchings that cover the same four vertices without sharing an
/// edge, i.e. the two perfect matchings of a 4-cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairClass {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
}

impl PairClass {
    pub const ALL: [PairClass; 9] = [
        PairClass::C1,
        PairClass::C2,
        PairClass::C3,
        PairClass::C4,
        PairClass::C5,
        PairClass::C6,
        PairClass::C7,
        PairClass::C8,
        PairClass::C9,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9"][self.index()]
    }

    /// Number of ordered pairs that realize one subgraph of this class.
    pub fn multiplicity(self) -> u32 {
        match self {
            PairClass::C2 | PairClass::C4 => 4,
            PairClass::C5 | PairClass::C6 | PairClass::C7 | PairClass::C9 => 2,
            PairClass::C1 | PairClass::C3 => 6,
            PairClass::C8 => 1,
        }
    }
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Ordered-pair counts per class over `M2(G) x M2(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCensus {
    counts: [BigUint; 9],
}

impl Default for PairCensus {
    fn default() -> Self {
        PairCensus {
            counts: std::array::from_fn(|_| BigUint::zero()),
        }
    }
}

impl PairCensus {
    pub fn from_counts(counts: [BigUint; 9]) -> Self {
        PairCensus { counts }
    }

    pub fn count(&self, class: PairClass) -> &BigUint {
        &self.counts[class.index()]
    }

    pub fn counts(&self) -> &[BigUint; 9] {
        &self.counts
    }

    /// Sum of all counts, which is `m2^2`.
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Number of subgraphs of the given class, i.e. the ordered-pair count divided
    /// by [`PairClass::multiplicity`]. For `C1`, `C3`, `C8` these are `m4`, `m3`, `m2`.
    pub fn subgraphs(&self, class: PairClass) -> BigUint {
        self.count(class) / BigUint::from(class.multiplicity())
    }

    /// Checks the structural identities every census must satisfy.
    pub fn check_identities(&self, m2: &BigUint, m3: &BigUint, m4: &BigUint) -> Result<()> {
        let fail = |what: &str| Err(Error::contract(format!("census identity violated: {what}")));
        if self.total() != m2 * m2 {
            return fail("sum of counts != m2^2");
        }
        if self.count(PairClass::C8) != m2 {
            return fail("C8 != m2");
        }
        if *self.count(PairClass::C1) != m4 * 6u32 {
            return fail("C1 != 6 m4");
        }
        if *self.count(PairClass::C3) != m3 * 6u32 {
            return fail("C3 != 6 m3");
        }
        for class in PairClass::ALL {
            if !(self.count(class) % class.multiplicity()).is_zero() {
                return fail(&format!(
                    "{class} not divisible by {}",
                    class.multiplicity()
                ));
            }
        }
        Ok(())
    }
}

/// All r-matchings in lexicographic order of their edge-index sequences.
pub fn enumerate_matchings(g: &Graph, r: usize, limits: &Limits) -> Result<Vec<Matching>> {
    if r == 0 {
        return Err(Error::domain("matching size must be positive"));
    }
    let mut out = Vec::new();
    if r > g.edge_count() {
        return Ok(out);
    }
    let mut used = vec![false; g.vertex_count()];
    let mut stack = Vec::with_capacity(r);
    enumerate_from(
        g,
        r,
        0,
        &mut used,
        &mut stack,
        &mut out,
        limits.matching_cap,
    )?;
    Ok(out)
}

fn enumerate_from(
    g: &Graph,
    r: usize,
    start: usize,
    used: &mut [bool],
    stack: &mut Vec<usize>,
    out: &mut Vec<Matching>,
    cap: u64,
) -> Result<()> {
    if stack.len() == r {
        if out.len() as u64 >= cap {
            return Err(Error::capacity(
                format!("enumeration of {r}-matchings"),
                cap,
            ));
        }
        out.push(Matching {
            edges: stack.clone(),
        });
        return Ok(());
    }
    let remaining = r - stack.len();
    for e in start..=g.edge_count() - remaining {
        let (u, v) = g.edge(e);
        if used[u] || used[v] {
            continue;
        }
        used[u] = true;
        used[v] = true;
        stack.push(e);
        enumerate_from(g, r, e + 1, used, stack, out, cap)?;
        stack.pop();
        used[u] = false;
        used[v] = false;
    }
    Ok(())
}

/// `m_r(G)` without materializing the matchings.
///
/// Searches over the first `r - 1` edges and counts the admissible last edges in
/// closed form from per-vertex incidence lists. `limits.matching_cap` bounds the
/// number of search nodes.
pub fn count_matchings(g: &Graph, r: usize, limits: &Limits) -> Result<BigUint> {
    if r == 0 {
        return Err(Error::domain("matching size must be positive"));
    }
    let m = g.edge_count();
    if r > m {
        return Ok(BigUint::zero());
    }
    if r == 1 {
        return Ok(BigUint::from(m));
    }
    let counter = LastEdgeCounter::new(g);
    let mut search = CountSearch {
        g,
        counter: &counter,
        r,
        used: vec![false; g.vertex_count()],
        chosen: Vec::with_capacity(2 * r),
        nodes: 0,
        cap: limits.matching_cap,
        total: BigUint::zero(),
        partial: 0,
    };
    search.descend(0)?;
    Ok(search.total + BigUint::from(search.partial))
}

struct LastEdgeCounter {
    incident: Vec<Vec<usize>>,
    index: HashMap<(usize, usize), usize>,
    m: usize,
}

impl LastEdgeCounter {
    fn new(g: &Graph) -> Self {
        let mut incident = vec![Vec::new(); g.vertex_count()];
        let mut index = HashMap::with_capacity(g.edge_count());
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            incident[u].push(e);
            incident[v].push(e);
            index.insert((u, v), e);
        }
        LastEdgeCounter {
            incident,
            index,
            m: g.edge_count(),
        }
    }

    /// Edges with index > `last` that avoid every vertex in `chosen`.
    fn count_after(&self, last: usize, chosen: &[usize]) -> u64 {
        let mut touching = 0usize;
        for &v in chosen {
            let inc = &self.incident[v];
            touching += inc.len() - inc.partition_point(|&e| e <= last);
        }
        for (k, &a) in chosen.iter().enumerate() {
            for &b in &chosen[k + 1..] {
                if let Some(&e) = self.index.get(&(a.min(b), a.max(b))) {
                    if e > last {
                        touching -= 1;
                    }
                }
            }
        }
        (self.m - 1 - last - touching) as u64
    }
}

struct CountSearch<'a> {
    g: &'a Graph,
    counter: &'a LastEdgeCounter,
    r: usize,
    used: Vec<bool>,
    chosen: Vec<usize>,
    nodes: u64,
    cap: u64,
    total: BigUint,
    partial: u64,
}

impl CountSearch<'_> {
    fn descend(&mut self, start: usize) -> Result<()> {
        let depth = self.chosen.len() / 2;
        let m = self.g.edge_count();
        for e in start..m.saturating_sub(self.r - depth - 1) {
            let (u, v) = self.g.edge(e);
            if self.used[u] || self.used[v] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(Error::capacity(
                    format!("counting {}-matchings", self.r),
                    self.cap,
                ));
            }
            self.chosen.push(u);
            self.chosen.push(v);
            if depth + 2 == self.r {
                let add = self.counter.count_after(e, &self.chosen);
                match self.partial.checked_add(add) {
                    Some(s) => self.partial = s,
                    None => {
                        self.total += BigUint::from(self.partial) + BigUint::from(add);
                        self.partial = 0;
                    }
                }
            } else {
                self.used[u] = true;
                self.used[v] = true;
                self.descend(e + 1)?;
                self.used[u] = false;
                self.used[v] = false;
            }
            self.chosen.pop();
            self.chosen.pop();
        }
        Ok(())
    }
}

/// A 2-matching flattened to its edge indices and endpoints `[a, b, c, d]`,
/// edges `(a, b)` and `(c, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct TwoMatching {
    pub edges: [u32; 2],
    pub verts: [u32; 4],
}

impl TwoMatching {
    pub(crate) fn from_matching(g: &Graph, m: &Matching) -> Self {
        let (a, b) = g.edge(m.edges[0]);
        let (c, d) = g.edge(m.edges[1]);
        TwoMatching {
            edges: [m.edges[0] as u32, m.edges[1] as u32],
            verts: [a as u32, b as u32, c as u32, d as u32],
        }
    }

    #[inline]
    fn has_vertex(&self, v: u32) -> bool {
        self.verts.contains(&v)
    }

    #[inline]
    fn has_edge_between(&self, p: u32, q: u32) -> bool {
        let [a, b, c, d] = self.verts;
        (a == p && b == q) || (a == q && b == p) || (c == p && d == q) || (c == q && d == p)
    }

    /// Endpoints of edge slot 0 or 1.
    #[inline]
    fn endpoints(&self, slot: usize) -> (u32, u32) {
        (self.verts[2 * slot], self.verts[2 * slot + 1])
    }
}

#[inline]
pub(crate) fn classify_two(x: &TwoMatching, y: &TwoMatching) -> PairClass {
    let shared_edges = x.edges.iter().filter(|e| y.edges.contains(e)).count();
    match shared_edges {
        2 => PairClass::C8,
        1 => {
            let xs = if y.edges.contains(&x.edges[0]) { 1 } else { 0 };
            let ys = if x.edges.contains(&y.edges[0]) { 1 } else { 0 };
            let (a, b) = x.endpoints(xs);
            let (c, d) = y.endpoints(ys);
            if a == c || a == d || b == c || b == d {
                PairClass::C7
            } else {
                PairClass::C3
            }
        }
        _ => {
            let mut shared = [0u32; 4];
            let mut k = 0;
            for &v in &x.verts {
                if y.has_vertex(v) {
                    shared[k] = v;
                    k += 1;
                }
            }
            match k {
                0 => PairClass::C1,
                1 => PairClass::C2,
                2 => {
                    let (p, q) = (shared[0], shared[1]);
                    if x.has_edge_between(p, q) || y.has_edge_between(p, q) {
                        PairClass::C5
                    } else {
                        PairClass::C4
                    }
                }
                3 => PairClass::C6,
                _ => PairClass::C9,
            }
        }
    }
}

/// Configuration class of the ordered pair `(i, j)` of 2-matchings of `g`.
pub fn classify_pair(g: &Graph, i: &Matching, j: &Matching) -> Result<PairClass> {
    for m in [i, j] {
        if m.size() != 2 {
            return Err(Error::contract("classify_pair expects 2-matchings"));
        }
        Matching::new(g, m.edges.clone())?;
    }
    Ok(classify_two(
        &TwoMatching::from_matching(g, i),
        &TwoMatching::from_matching(g, j),
    ))
}

/// Materialized 2-matchings of `g`, with the enumeration cap applied.
pub(crate) fn two_matchings(g: &Graph, limits: &Limits) -> Result<Vec<TwoMatching>> {
    Ok(enumerate_matchings(g, 2, limits)?
        .iter()
        .map(|m| TwoMatching::from_matching(g, m))
        .collect())
}

/// Classifies every ordered pair of 2-matchings of `g`.
///
/// Fails with a capacity error, before doing any work, when `m2^2` exceeds
/// `limits.pair_cap`.
pub fn pair_census(g: &Graph, limits: &Limits) -> Result<PairCensus> {
    let m2 = count_matchings(g, 2, limits)?;
    let ops = &m2 * &m2;
    if ops > BigUint::from(limits.pair_cap) {
        return Err(Error::capacity(
            format!("pair census of {ops} ordered pairs"),
            limits.pair_cap,
        ));
    }
    let all = two_matchings(g, limits)?;
    let counts = (0..all.len())
        .into_par_iter()
        .fold(
            || [0u64; 9],
            |mut acc, i| {
                acc[PairClass::C8.index()] += 1;
                let x = &all[i];
                for y in &all[i + 1..] {
                    // every class is symmetric, so (i, j) and (j, i) agree
                    acc[classify_two(x, y).index()] += 2;
                }
                acc
            },
        )
        .reduce(
            || [0u64; 9],
            |mut a, b| {
                for (s, t) in a.iter_mut().zip(b) {
                    *s += t;
                }
                a
            },
        );
    Ok(PairCensus {
        counts: counts.map(BigUint::from),
    })
}
