//! Ground-truth checks for open conflict-free colourings.
//!
//! An edge is *satisfied* when some colour occurs exactly once among the
//! coloured edges of its open neighbourhood. Uncoloured edges never count
//! towards a colour's multiplicity, and an edge with an empty neighbourhood
//! is exempt.

use std::collections::HashMap;

use crate::coloring::PartialEdgeColoring;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};

/// Dense per-vertex tables are used while `n * colours` stays below this.
const DENSE_LIMIT: usize = 1 << 27;

/// Whether edge `e` is satisfied, by direct enumeration of its open
/// neighbourhood.
pub fn is_satisfied(graph: &Graph, coloring: &PartialEdgeColoring, e: EdgeId) -> Result<bool> {
    coloring.check_owner(graph)?;
    let idx = graph.index_of(e)?;
    Ok(satisfied_by_enumeration(graph, coloring, idx))
}

pub(crate) fn satisfied_by_enumeration(graph: &Graph, coloring: &PartialEdgeColoring, idx: usize) -> bool {
    if !graph.is_non_isolated(idx) {
        return true;
    }
    let mut seen: Vec<u32> = graph.open_neighbourhood_indices(idx).filter_map(|f| coloring.get(f)).collect();
    seen.sort_unstable();
    seen.chunk_by(|a, b| a == b).any(|run| run.len() == 1)
}

/// True iff every non-isolated edge is satisfied.
pub fn is_open_cf(graph: &Graph, coloring: &PartialEdgeColoring) -> Result<bool> {
    Ok(unsatisfied_edges(graph, coloring)?.is_empty())
}

/// Indices of the non-isolated edges that are not satisfied, increasing.
pub fn unsatisfied_edges(graph: &Graph, coloring: &PartialEdgeColoring) -> Result<Vec<usize>> {
    let index = SatisfactionIndex::new(graph, coloring)?;
    Ok((0..graph.edge_count()).filter(|&i| !index.is_satisfied(i)).collect())
}

/// True iff no two adjacent coloured edges share a colour.
pub fn is_proper(graph: &Graph, coloring: &PartialEdgeColoring) -> Result<bool> {
    coloring.check_owner(graph)?;
    let mut at_vertex: Vec<u32> = Vec::new();
    for v in 0..graph.vertex_count() {
        at_vertex.clear();
        at_vertex.extend(graph.incident(v).iter().filter_map(|&(_, f)| coloring.get(f)));
        at_vertex.sort_unstable();
        if at_vertex.windows(2).any(|w| w[0] == w[1]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of distinct colours on at least one edge.
pub fn colors_used(coloring: &PartialEdgeColoring) -> usize {
    let mut c: Vec<u32> = coloring.colors().iter().flatten().copied().collect();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Fails with [`Error::NotSatisfied`] listing the offending edges.
pub fn require_open_cf(graph: &Graph, coloring: &PartialEdgeColoring) -> Result<()> {
    let bad = unsatisfied_edges(graph, coloring)?;
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::NotSatisfied(bad.into_iter().map(|i| graph.edge(i)).collect()))
    }
}

/// Per-vertex colour multiplicities, for answering many satisfaction
/// queries on one colouring.
pub struct SatisfactionIndex<'a> {
    graph: &'a Graph,
    /// Compact colour id per edge.
    compact: Vec<Option<u32>>,
    counts: VertexColorCounts,
}

impl<'a> SatisfactionIndex<'a> {
    pub fn new(graph: &'a Graph, coloring: &PartialEdgeColoring) -> Result<Self> {
        coloring.check_owner(graph)?;
        let mut ids: HashMap<u32, u32> = HashMap::new();
        let compact: Vec<Option<u32>> = coloring
            .colors()
            .iter()
            .map(|c| {
                c.map(|c| {
                    let next = ids.len() as u32;
                    *ids.entry(c).or_insert(next)
                })
            })
            .collect();
        let mut counts = VertexColorCounts::new(graph.vertex_count(), ids.len());
        for (i, c) in compact.iter().enumerate() {
            if let Some(c) = *c {
                let e = graph.edge(i);
                counts.add(e.u, c);
                counts.add(e.v, c);
            }
        }
        Ok(SatisfactionIndex { graph, compact, counts })
    }

    /// Same answer as direct enumeration; exempts isolated edges.
    pub fn is_satisfied(&self, idx: usize) -> bool {
        if !self.graph.is_non_isolated(idx) {
            return true;
        }
        let e = self.graph.edge(idx);
        let own = self.compact[idx];
        for w in [e.u, e.v] {
            for &(_, f) in self.graph.incident(w) {
                if f == idx {
                    continue;
                }
                if let Some(c) = self.compact[f] {
                    let mut mult = self.counts.get(e.u, c) + self.counts.get(e.v, c);
                    if own == Some(c) {
                        mult -= 2;
                    }
                    if mult == 1 {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Multiplicity of each colour at each vertex: a dense table when it fits,
/// hash maps otherwise.
pub(crate) enum VertexColorCounts {
    Dense { colors: usize, counts: Vec<u32> },
    Sparse(Vec<HashMap<u32, u32>>),
}

impl VertexColorCounts {
    pub(crate) fn new(n: usize, colors: usize) -> Self {
        match n.checked_mul(colors) {
            Some(cells) if cells <= DENSE_LIMIT => {
                VertexColorCounts::Dense { colors, counts: vec![0; cells] }
            }
            _ => VertexColorCounts::Sparse(vec![HashMap::new(); n]),
        }
    }

    pub(crate) fn add(&mut self, v: usize, c: u32) {
        match self {
            VertexColorCounts::Dense { colors, counts } => counts[v * *colors + c as usize] += 1,
            VertexColorCounts::Sparse(maps) => *maps[v].entry(c).or_insert(0) += 1,
        }
    }

    pub(crate) fn get(&self, v: usize, c: u32) -> u32 {
        match self {
            VertexColorCounts::Dense { colors, counts } => counts[v * *colors + c as usize],
            VertexColorCounts::Sparse(maps) => maps[v].get(&c).copied().unwrap_or(0),
        }
    }
}
