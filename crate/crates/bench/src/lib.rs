//! Fixtures shared by the criterion benches.

use crossing_core::{make_family, FamilyKind, Graph, GraphFamily};

pub fn family(kind: FamilyKind, n: usize) -> Graph {
    make_family(GraphFamily::new(kind, n).expect("valid family size")).expect("family graph")
}
