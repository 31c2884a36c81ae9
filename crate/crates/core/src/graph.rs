//! Simple undirected graphs, edge-list ingestion, and the crossing predicate
//! for graphs embedded on points in convex position.
//!
//! An [`Embedding`] places vertex `v` at slot `positions[v]` on the boundary of a
//! convex polygon. Two vertex-disjoint edges cross exactly when their endpoint
//! slots alternate around the boundary, which only depends on the cyclic order
//! of the four slots.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<BTreeSet<usize>>,
    labels: Vec<String>,
}

impl Graph {
    /// Builds a graph from an edge sequence. Edges are canonicalized to `u < v`
    /// and keep their input order; self-loops and duplicates are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let labels = (0..n).map(|v| v.to_string()).collect();
        Self::with_labels(n, edges, labels)
    }

    pub fn with_labels(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        labels: Vec<String>,
    ) -> Result<Self> {
        if labels.len() != n {
            return Err(Error::contract(format!(
                "{} labels supplied for {} vertices",
                labels.len(),
                n
            )));
        }
        let mut adjacency = vec![BTreeSet::new(); n];
        let mut canonical = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::contract(format!(
                    "edge ({a},{b}) references a vertex outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::contract(format!("self-loop at vertex {a}")));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if !adjacency[u].insert(v) {
                return Err(Error::contract(format!("duplicate edge ({u},{v})")));
            }
            adjacency[v].insert(u);
            canonical.push((u, v));
        }
        Ok(Graph {
            n,
            edges: canonical,
            adjacency,
            labels,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> (usize, usize) {
        self.edges[index]
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Maximum degree, 0 for an edgeless graph.
    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].contains(&v)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    /// Same edges with `extra` isolated vertices appended.
    pub fn with_isolated(&self, extra: usize) -> Graph {
        let mut g = self.clone();
        for k in 0..extra {
            g.labels.push(format!("{}", self.n + k));
            g.adjacency.push(BTreeSet::new());
        }
        g.n += extra;
        g
    }

    /// Renders the graph in edge-list format, with an `n=` header so isolated
    /// vertices survive a round trip through [`parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "n={}", self.n).unwrap();
        for &(u, v) in &self.edges {
            writeln!(out, "{} {}", self.labels[u], self.labels[v]).unwrap();
        }
        out
    }
}

/// Parses a whitespace-separated edge list.
///
/// Lines starting with `#` and blank lines are ignored. An optional `n=<count>`
/// header before the first edge declares the vertex count; vertices beyond those
/// named by edges are isolated. Vertices are indexed by first appearance.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut declared: Option<(usize, usize)> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim_end_matches('\r').trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() == 1 {
            if let Some(count) = tokens[0].strip_prefix("n=") {
                if declared.is_some() || !edges.is_empty() {
                    return Err(Error::parse(
                        lineno,
                        "vertex-count header must precede all edges",
                    ));
                }
                let count = count
                    .parse::<usize>()
                    .map_err(|_| Error::parse(lineno, format!("invalid vertex count {count:?}")))?;
                declared = Some((count, lineno));
                continue;
            }
        }
        if tokens.len() != 2 {
            return Err(Error::parse(
                lineno,
                format!("expected 2 tokens, found {}", tokens.len()),
            ));
        }
        if tokens[0] == tokens[1] {
            return Err(Error::parse(
                lineno,
                format!("self-loop at {:?}", tokens[0]),
            ));
        }
        let mut intern = |name: &str| -> usize {
            *index.entry(name.to_string()).or_insert_with(|| {
                labels.push(name.to_string());
                labels.len() - 1
            })
        };
        let a = intern(tokens[0]);
        let b = intern(tokens[1]);
        let key = (a.min(b), a.max(b));
        if !seen.insert(key) {
            return Err(Error::parse(
                lineno,
                format!("duplicate edge {} {}", tokens[0], tokens[1]),
            ));
        }
        edges.push(key);
    }

    let named = labels.len();
    let n = match declared {
        Some((count, line)) if count < named => {
            return Err(Error::parse(
                line,
                format!("header declares n={count} but {named} vertices are named"),
            ))
        }
        Some((count, _)) => count,
        None => named,
    };
    let mut used: HashSet<String> = labels.iter().cloned().collect();
    let mut next = 0usize;
    while labels.len() < n {
        // isolated vertices get the smallest unused integer names
        while used.contains(&next.to_string()) {
            next += 1;
        }
        used.insert(next.to_string());
        labels.push(next.to_string());
    }
    Graph::with_labels(n, edges, labels)
}

/// Vertex-to-slot placement on the convex point set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Embedding {
    positions: Vec<usize>,
}

impl Embedding {
    pub fn new(positions: Vec<usize>) -> Result<Self> {
        let mut used = vec![false; positions.len()];
        for &p in &positions {
            if p >= positions.len() || std::mem::replace(&mut used[p], true) {
                return Err(Error::contract("positions are not a permutation"));
            }
        }
        Ok(Embedding { positions })
    }

    pub fn identity(n: usize) -> Self {
        Embedding {
            positions: (0..n).collect(),
        }
    }

    /// Caller guarantees `positions` is a permutation.
    pub(crate) fn from_permutation_unchecked(positions: Vec<usize>) -> Self {
        debug_assert!(Embedding::new(positions.clone()).is_ok());
        Embedding { positions }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn slot(&self, v: usize) -> usize {
        self.positions[v]
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Rotates every slot by `shift` around the polygon.
    pub fn rotated(&self, shift: usize) -> Embedding {
        let n = self.positions.len();
        Embedding {
            positions: self.positions.iter().map(|&s| (s + shift) % n).collect(),
        }
    }

    /// Mirror image: slot `s` becomes `n - 1 - s`.
    pub fn reflected(&self) -> Embedding {
        let n = self.positions.len();
        Embedding {
            positions: self.positions.iter().map(|&s| n - 1 - s).collect(),
        }
    }
}

/// Alternation test on four distinct slots: chord `(a, b)` crosses chord `(c, d)`
/// iff exactly one of `c`, `d` lies strictly between `a` and `b`.
#[inline]
pub fn slots_alternate(a: usize, b: usize, c: usize, d: usize) -> bool {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let c_in = lo < c && c < hi;
    let d_in = lo < d && d < hi;
    c_in != d_in
}

/// Whether edges `e` and `f` cross under `emb`. The edges must be vertex-disjoint.
pub fn edges_cross(g: &Graph, emb: &Embedding, e: usize, f: usize) -> Result<bool> {
    check_embedding(g, emb)?;
    if e >= g.edge_count() || f >= g.edge_count() {
        return Err(Error::contract("edge index out of range"));
    }
    let (a, b) = g.edge(e);
    let (c, d) = g.edge(f);
    if e == f || a == c || a == d || b == c || b == d {
        return Err(Error::contract(format!("edges {e} and {f} share a vertex")));
    }
    Ok(slots_alternate(
        emb.slot(a),
        emb.slot(b),
        emb.slot(c),
        emb.slot(d),
    ))
}

/// Number of crossing pairs of vertex-disjoint edges under `emb`.
pub fn count_crossings(g: &Graph, emb: &Embedding) -> Result<usize> {
    check_embedding(g, emb)?;
    let pos = emb.positions();
    let edges = g.edges();
    let mut total = 0;
    for (i, &(a, b)) in edges.iter().enumerate() {
        let (pa, pb) = (pos[a], pos[b]);
        for &(c, d) in &edges[i + 1..] {
            if c == a || c == b || d == a || d == b {
                continue;
            }
            total += slots_alternate(pa, pb, pos[c], pos[d]) as usize;
        }
    }
    Ok(total)
}

fn check_embedding(g: &Graph, emb: &Embedding) -> Result<()> {
    if emb.len() != g.vertex_count() {
        return Err(Error::contract(format!(
            "embedding places {} vertices but the graph has {}",
            emb.len(),
            g.vertex_count()
        )));
    }
    Ok(())
}
