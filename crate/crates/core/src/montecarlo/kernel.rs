use crate::error::Result;
use crate::graph::{slots_alternate, Graph};
use crate::limits::Limits;
use crate::matchings::two_matchings;

/// Precomputed 2-matchings of a graph for repeated crossing counts.
#[derive(Debug, Clone)]
pub struct CrossingKernel {
    quads: Vec<[u32; 4]>,
}

impl CrossingKernel {
    pub fn new(g: &Graph, limits: &Limits) -> Result<Self> {
        Ok(CrossingKernel {
            quads: two_matchings(g, limits)?
                .into_iter()
                .map(|m| m.verts)
                .collect(),
        })
    }

    /// Endpoints `[a, b, c, d]` of every 2-matching `{(a, b), (c, d)}`, lexicographic.
    pub fn quads(&self) -> &[[u32; 4]] {
        &self.quads
    }

    pub fn matching_count(&self) -> usize {
        self.quads.len()
    }

    #[inline]
    pub fn crosses(&self, positions: &[usize], index: usize) -> bool {
        let [a, b, c, d] = self.quads[index];
        slots_alternate(
            positions[a as usize],
            positions[b as usize],
            positions[c as usize],
            positions[d as usize],
        )
    }

    #[inline]
    pub fn count(&self, positions: &[usize]) -> usize {
        (0..self.quads.len())
            .filter(|&i| self.crosses(positions, i))
            .count()
    }
}
