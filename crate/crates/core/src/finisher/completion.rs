//! Turning a satisfying partial colouring into a total one with fresh
//! colours: one extra colour, or a proper colouring of the leftover edges.

use super::misra_gries::misra_gries;
use crate::coloring::{PartialEdgeColoring, Stage};
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};
use crate::verify::{is_proper, require_open_cf};

fn next_color(coloring: &PartialEdgeColoring) -> u32 {
    coloring.max_color().map_or(1, |c| c + 1)
}

/// Gives every uncoloured edge one new colour. A new colour never destroys
/// a unique colour in a neighbourhood, so the result is still satisfying.
pub fn complete_one_color(graph: &Graph, coloring: &PartialEdgeColoring) -> Result<PartialEdgeColoring> {
    require_open_cf(graph, coloring)?;
    let missing = coloring.uncolored_edges();
    let mut out = coloring.clone();
    if missing.is_empty() {
        return Ok(out);
    }
    let c = next_color(coloring);
    out.reserve(Stage::Completion, [c])?;
    for e in missing {
        out.set(e, Some(c));
    }
    Ok(out)
}

/// Properly colours the uncoloured edges `H_0` with at most `Δ(H_0) + 1`
/// new colours.
pub fn complete_proper(graph: &Graph, coloring: &PartialEdgeColoring) -> Result<PartialEdgeColoring> {
    if !is_proper(graph, coloring)? {
        return Err(Error::NotProper);
    }
    require_open_cf(graph, coloring)?;
    let missing = coloring.uncolored_edges();
    let mut out = coloring.clone();
    if missing.is_empty() {
        return Ok(out);
    }
    let set = EdgeSet::from_indices(graph, missing);
    let h0 = graph.subgraph_from_edges(&set)?;
    let local = misra_gries(&h0);
    let base = next_color(coloring);
    out.reserve(Stage::Completion, base..base + h0.max_degree_or_zero() as u32 + 1)?;
    for (j, &e) in set.indices().iter().enumerate() {
        out.set(e, local.get(j).map(|c| base + c));
    }
    Ok(out)
}
